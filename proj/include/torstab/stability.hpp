#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torstab/category_model.hpp"
#include "torstab/lifted_group.hpp"
#include "torstab/numerical_k.hpp"

namespace torstab {

/// A point of U(X) in orbit-normal form. It denotes g . sigma_label, the
/// left action g . sigma := sigma . g^{-1}: the charge is T o Z_label and a
/// base phase phi becomes lift_eval(g, phi).
///
/// Deg labels have a two-dimensional stabilizer (matrices fixing e_1 whose
/// lift fixes phase 1). The normal form replaces T by the similarity matrix
/// with the same first column and keeps the lift value at phase 1.
struct StabPoint {
  OrbitLabel label;
  LiftedAuto g;

  friend bool operator==(const StabPoint& x, const StabPoint& y) {
    return x.label == y.label && x.g == y.g;
  }
};

StabPoint make_std(int p, int d);
/// Throws kDomainError unless 1 <= p <= d - 1 and 0 < gamma < 1/2.
StabPoint make_deg(int p, const Real& gamma, int d);

/// cot(pi gamma), exact for gamma = 1/4.
Real cot_pi(const Real& gamma);

/// Z_(p) or Z_(p)^gamma = -chd - (-1)^p cot(pi gamma) rk.
CentralCharge base_charge(const OrbitLabel& label);
CentralCharge charge(const StabPoint& sigma);

StabPoint normalize(const StabPoint& sigma);
/// G . sigma.
StabPoint act(const LiftedAuto& g, const StabPoint& sigma);

/// Phase set of the stable objects of a base point, modulo Z.
struct PhaseInterval {
  double lo = 0, hi = 0;
  bool lo_closed = false, hi_closed = false;
};

struct Accumulation {
  double at = 0;
  int side = +1;  // +1: approached from above, -1: from below
};

struct SpectrumDescriptor {
  std::vector<Phase> points;            // known stable phases in (0, 1], sorted
  std::vector<PhaseInterval> unknown;   // where unlisted stable phases may lie
  std::vector<Accumulation> accumulations;
  bool complete = true;
};

/// Number of ideal-sheaf phases listed for Std(0).
inline constexpr int kDeclaredIdealSheaves = 64;

SpectrumDescriptor spectrum_descriptor(const OrbitLabel& label, int d);

struct StableFamily {
  std::string name;
  KClass cls;
  Phase phase;  // transported by g
  std::optional<FormalObject> representative;
  bool declared = false;  // listed from a known family rather than classified
};

struct StableObjects {
  SpectrumDescriptor spectrum;
  std::vector<StableFamily> families;
  bool incomplete = false;
};

/// Stable objects of g . sigma_(p). For Std(0) the ideal sheaves I_n,
/// n = 1..ideal_count, are listed as declared members.
StableObjects stable_objects(const StabPoint& sigma, int d, int ideal_count = 8);

/// Ideal sheaf of n points (class (1, -n)), a declared sigma_(0)-stable atom.
FormalSheaf ideal_sheaf(int n);

struct HNFactor {
  KClass cls;
  Phase phase;
  std::optional<FormalObject> object;  // absent for declared atoms
};

/// HN filtration of E (an object of the base heart of sigma's label),
/// phases transported through sigma.g. Throws kNotInHeart, kMissingHNData,
/// or kUndeterminedHN (non-split objects of Coh_(d-1)).
std::vector<HNFactor> hn_filtration(const StabPoint& sigma, const FormalObject& e, int d);

struct Classification {
  OrbitLabel label;
  LiftedAuto g;
};

/// Orbit-normal form of the point of U(X) with charge Z, skyscrapers of
/// phase phi_sky and Pic^0 line bundles of phase psi_line.
/// Errors: kNotNumericallyConsistent, kNotInU.
Classification classify(const CentralCharge& z, const Phase& phi_sky, const Phase& psi_line, int d);

}  // namespace torstab
