#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torstab/numerical_k.hpp"

namespace torstab {

// Desk-scale model of Coh(X) on a generic torus X of dimension d >= 3.
//
// Axioms built into the types rather than derived:
//  * torsion sheaves have finite point support, class (0, length);
//  * reflexive == locally free, and locally free sheaves are iterated
//    extensions of Pic^0 line bundles, class (r, 0);
//  * a torsion-free sheaf E sits in 0 -> E -> E^vv -> Q -> 0 with Q of
//    finite length q (its "cosupport"), class (r, -q);
//  * Ext^i(T, F) = 0 for torsion T, locally free F and i < d.

/// Length of a torsion sheaf at one (opaque) point label.
struct PointLength {
  int point = 0;
  int length = 1;
  friend bool operator==(const PointLength&, const PointLength&) = default;
};

/// Declared sigma_(0) Harder-Narasimhan factor of a torsion-free sheaf.
struct HNAtom {
  KClass cls;
  bool stable = true;
  friend bool operator==(const HNAtom&, const HNAtom&) = default;
};

class FormalSheaf {
 public:
  enum class Kind { kTorsion, kLocallyFree, kTorsionFree, kMixed };

  static FormalSheaf torsion(std::vector<PointLength> points);
  static FormalSheaf skyscraper(int point) { return torsion({{point, 1}}); }
  static FormalSheaf locally_free(int rank);
  /// Torsion-free sheaf with the given colength data inside its reflexive
  /// hull. Empty cosupport yields the locally free sheaf of that rank.
  /// `hn` may be empty (no declared HN data) or must sum to (rank, -q) with
  /// Z_(0)-phases strictly decreasing inside (0, 1/2].
  static FormalSheaf torsion_free(int rank, std::vector<PointLength> cosupport,
                                  std::vector<HNAtom> hn = {});
  /// Torsion part plus torsion-free part (either may be absent, not both).
  static FormalSheaf mixed(std::optional<FormalSheaf> torsion_part,
                           std::optional<FormalSheaf> free_part);

  Kind kind() const { return kind_; }
  bool is_torsion() const { return kind_ == Kind::kTorsion; }
  bool is_locally_free() const { return kind_ == Kind::kLocallyFree; }
  bool is_torsion_free() const {
    return kind_ == Kind::kLocallyFree || kind_ == Kind::kTorsionFree;
  }

  KClass k_class() const;
  /// rank + colength + torsion length
  int mass() const;
  int rank() const { return rank_; }
  int colength() const;
  int torsion_length() const;

  const std::vector<PointLength>& torsion_points() const { return torsion_; }
  const std::vector<PointLength>& cosupport() const { return cosupport_; }
  const std::vector<HNAtom>& hn() const { return hn_; }

  std::optional<FormalSheaf> torsion_part() const;
  std::optional<FormalSheaf> free_part() const;
  /// E^vv of the free part (locally free of the same rank).
  std::optional<FormalSheaf> reflexive_hull() const;
  /// E^vv / E of the free part, as a torsion sheaf.
  std::optional<FormalSheaf> hull_quotient() const;

  std::string describe() const;

  friend bool operator==(const FormalSheaf&, const FormalSheaf&) = default;

 private:
  FormalSheaf() = default;
  void classify();

  Kind kind_ = Kind::kTorsion;
  std::vector<PointLength> torsion_;
  int rank_ = 0;
  std::vector<PointLength> cosupport_;
  std::vector<HNAtom> hn_;
};

/// Direct sum of sheaves (HN declarations merge when both sides have them).
FormalSheaf direct_sum(const FormalSheaf& x, const FormalSheaf& y);

/// Z_(0)-phase of a class with rank >= 1 and chd <= 0, or of a torsion class.
double standard_phase(KClass v);

/// Declared non-split extension between the cohomology sheaves in degrees
/// `lower` < `upper` (the only extension data the model records).
struct ExtensionFlag {
  int lower = 0;
  int upper = 0;
  friend bool operator==(const ExtensionFlag&, const ExtensionFlag&) = default;
};

/// Object of D^b(X) given by its cohomology sheaves H^i and non-split flags.
class FormalObject {
 public:
  FormalObject() = default;
  FormalObject(std::map<int, FormalSheaf> graded, std::vector<ExtensionFlag> flags = {});

  /// S[shift], i.e. S placed in degree -shift.
  static FormalObject of(const FormalSheaf& s, int shift = 0);

  const std::map<int, FormalSheaf>& graded() const { return graded_; }
  const std::vector<ExtensionFlag>& flags() const { return flags_; }
  std::optional<FormalSheaf> cohomology(int degree) const;
  bool is_zero() const { return graded_.empty(); }
  bool has_nonsplit(int lower, int upper) const;

  /// sum (-1)^i class(H^i)
  KClass k_class() const;
  int mass() const;
  /// E[n]: H^i(E[n]) = H^{i+n}(E).
  FormalObject shift(int n) const;

  std::string describe() const;

  friend bool operator==(const FormalObject&, const FormalObject&) = default;

 private:
  std::map<int, FormalSheaf> graded_;
  std::vector<ExtensionFlag> flags_;
};

/// Degree-wise direct sum; flags are kept.
FormalObject direct_sum(const FormalObject& x, const FormalObject& y);

/// Whether every non-split flag of E is permitted by the Ext-vanishing
/// axiom on a torus of dimension d.
bool extensions_allowed(const FormalObject& e, int d);

/// E in Coh_(p)? p = 0: concentrated in degree 0. p >= 1: H^0 torsion,
/// H^{-p} torsion-free (locally free for p >= 2), nothing else.
bool heart_membership(const FormalObject& e, int p, int d);

struct CanonicalParts {
  FormalObject free_part;     // H^{-p}(E)[p]
  FormalObject torsion_part;  // H^0(E)
};

/// F[p] -> E -> T for E in Coh_(p), p >= 1. Throws kNotInHeart.
CanonicalParts canonical_decomposition(const FormalObject& e, int p, int d);

/// Per-point data of a morphism between torsion sheaves.
struct PointMorphism {
  int point = 0;
  int kernel_length = 0;
  int cokernel_length = 0;
};

struct KernelCokernel {
  FormalObject kernel;
  FormalObject cokernel;
  friend bool operator==(const KernelCokernel&, const KernelCokernel&) = default;
};

/// Kernel and cokernel of f: source -> target (torsion sheaves), computed
/// in Coh_(p). Points absent from `local` map by zero. Throws
/// kInconsistentMorphism on impossible lengths.
KernelCokernel torsion_kernel_cokernel(const FormalSheaf& source, const FormalSheaf& target,
                                       const std::vector<PointMorphism>& local, int p, int d);

/// Is `quotient` a quotient of `e` in Coh_(p) within the model?
bool is_model_quotient(const FormalObject& e, const FormalObject& quotient, int p);

/// Walks a chain of quotients E_0 ->> E_1 ->> ... produced by `next` and
/// returns the first n with E_n = E_{n+1}. Gives up (kDomainError) after
/// `max_steps`; throws kDomainError if a step is not a model quotient.
int chain_stabilizes(const FormalObject& start,
                     const std::function<FormalObject(const FormalObject&)>& next, int p,
                     int max_steps = 1000);

/// All proper strict quotients of e in Coh_(p), one step down.
std::vector<FormalObject> model_quotients(const FormalObject& e, int p);

/// Enumeration of the finite model.
std::vector<FormalSheaf> enumerate_sheaves(int max_mass, int point_pool = 2);
/// Objects with one or two nonzero cohomology sheaves in degrees [-d, 1]
/// and total mass <= max_mass, including permitted non-split variants.
std::vector<FormalObject> enumerate_objects(int d, int max_mass, int point_pool = 2);
/// The subset of enumerate_objects lying in Coh_(p).
std::vector<FormalObject> enumerate_heart(int p, int d, int max_mass, int point_pool = 2);

}  // namespace torstab
