#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torstab/heart.hpp"
#include "torstab/stability.hpp"

namespace torstab {

struct GammaBounds {
  Real minus;
  Real plus;
  bool minus_exact = true;  // false: only a lower bound for the true gamma^-
  bool plus_exact = true;   // false: only an upper bound for the true gamma^+
};

/// Nearest known stable phases below and above gamma in (0, 1).
/// Throws kOnSpectrum if gamma is itself a known stable phase.
GammaBounds gamma_pm(const SpectrumDescriptor& spectrum, const Real& gamma);

struct WallDecision {
  enum class Kind { kNoBoundary, kWall };
  enum class Reason { kNone, kGammaPlusVacuous, kGammaMinusVacuous, kTwistEscape };
  Kind kind = Kind::kNoBoundary;
  Reason reason = Reason::kNone;
  std::optional<OrbitLabel> target;  // Deg label when kind == kWall
};

std::string reason_name(WallDecision::Reason r);

/// Boundary of the Std(p) orbit reached by rotating the phase gamma to 0.
WallDecision boundary_at(int p, const Real& gamma, int d);

/// Tilt of Coh_(p) at the torsion pair split by the Std(p) phase gamma.
/// The two cases without a boundary point throw kUnsupportedSpectrum.
HeartDescriptor boundary_heart(int p, const Real& gamma, int d);

/// Least n >= 1 with phase(Z(I + nE)) > gamma_minus.
long long twist_escape(KClass i_class, KClass e_class, const Real& gamma_minus,
                       const CentralCharge& z);

struct OrbitNode {
  enum class Kind { kCell, kWall };
  Kind kind = Kind::kCell;
  int p = 0;  // Std(p) for cells, W_p for walls
  std::string name() const;
  std::string homotopy() const { return kind == Kind::kCell ? "contractible" : "circle"; }
  std::string annotation() const {
    return kind == Kind::kCell ? "universal cover" : "fundamental group Z";
  }
  friend bool operator==(const OrbitNode&, const OrbitNode&) = default;
};

struct OrbitEdge {
  int wall = 0;  // node indices
  int cell = 0;
  friend bool operator==(const OrbitEdge&, const OrbitEdge&) = default;
};

struct OrbitComplex {
  std::vector<OrbitNode> nodes;
  std::vector<OrbitEdge> edges;
};

/// Std(0) - W_1 - Std(1) - ... - W_{d-1} - Std(d-1)
OrbitComplex orbit_complex(int d);
/// Keeps the listed node indices and the edges between them.
OrbitComplex subcomplex(const OrbitComplex& c, const std::vector<int>& keep);
std::vector<OrbitComplex> components(const OrbitComplex& c);

/// Relation words use +-(i + 1) for generator i and its inverse.
struct GroupPresentation {
  int initial_generators = 0;
  int initial_relations = 0;
  int generators = 0;
  std::vector<std::vector<int>> relations;
  std::string name;  // "trivial", "Z", "free group of rank n", or "presented"
};

/// Van Kampen over the graph of spaces; throws kDisconnected.
GroupPresentation pi1(const OrbitComplex& c);

struct FiberType {
  OrbitLabel family;
  std::string descriptor;  // "countable" or "positive-dimensional"
};

std::vector<FiberType> fiber_types(const CentralCharge& z, int d);

}  // namespace torstab
