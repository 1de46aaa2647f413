#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "torstab/category_model.hpp"

namespace torstab {

/// A nonzero morphism A -> B[i] found by the model's Hom rules.
struct MorphismWitness {
  FormalObject source;
  FormalObject target;
  int degree = 0;  // Hom(source, target) = Ext^degree of the underlying sheaves
  std::string reason;
};

/// Conservative Hom-nonvanishing test between objects of the model:
/// returns a witness if some cohomology piece of `a` maps nontrivially to
/// some piece of `b`.
std::optional<MorphismWitness> hom_witness(const FormalObject& a, const FormalObject& b, int d);

/// Torsion pair (T, F) on a heart, with the decomposition 0 -> T -> E -> F -> 0.
struct TorsionPairSpec {
  std::string name;
  std::function<bool(const FormalObject&)> in_torsion;
  std::function<bool(const FormalObject&)> in_free;
  /// Returns (torsion part, free part). May throw for objects the model
  /// cannot decompose.
  std::function<std::pair<FormalObject, FormalObject>(const FormalObject&)> decompose;
};

/// (torsion sheaves, torsion-free sheaves) on Coh(X).
TorsionPairSpec torsion_torsionfree_pair();
/// (torsion sheaves, locally free sheaves [k]) on Coh_(k), k >= 1. For k = 1
/// the torsion part of F[1] is the quotient F^vv / F.
TorsionPairSpec torsion_shifted_locally_free_pair(int k);
/// (everything, 0).
TorsionPairSpec trivial_pair();

/// Heart of a bounded t-structure, known through its cohomology functor.
class HeartDescriptor {
 public:
  using Cohomology = std::function<std::map<int, FormalObject>(const FormalObject&)>;
  using Membership = std::function<bool(const FormalObject&)>;

  HeartDescriptor(std::string name, Membership contains, Cohomology cohomology)
      : name_(std::move(name)),
        contains_(std::move(contains)),
        cohomology_(std::move(cohomology)) {}

  const std::string& name() const { return name_; }
  bool contains(const FormalObject& e) const { return contains_(e); }
  /// H^j(E) relative to this heart, each as an object of the heart.
  std::map<int, FormalObject> cohomology(const FormalObject& e) const { return cohomology_(e); }

 private:
  std::string name_;
  Membership contains_;
  Cohomology cohomology_;
};

/// Coh(X) with ordinary sheaf cohomology.
HeartDescriptor standard_heart(int d);

/// Happel-Reiten-Smalo tilt: {E : H^0(E) in T, H^-1(E) in F, H^i(E) = 0
/// otherwise}. The pair is first validated on the mass <= 3 part of the
/// model; a violation throws kInvalidTorsionPair naming the morphism.
HeartDescriptor hrs_tilt(const HeartDescriptor& heart, const TorsionPairSpec& pair, int d);

/// Checks the pair on sample heart objects; returns a witness on failure.
std::optional<MorphismWitness> validate_torsion_pair(const HeartDescriptor& heart,
                                                     const TorsionPairSpec& pair, int d);

/// Coh_(p) as the p-fold tilt of Coh(X).
HeartDescriptor iterated_heart(int p, int d);

}  // namespace torstab
