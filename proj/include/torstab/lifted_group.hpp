#pragma once

#include "torstab/numerical_k.hpp"

namespace torstab {

/// Element of the universal cover of GL+(2,R).
///
/// Modelled as a pair (T, f): T is a 2x2 real matrix with det T > 0 and
/// f: R -> R is the increasing lift with f(phi + 1) = f(phi) + 1 and
/// exp(i pi f(phi)) parallel to T exp(i pi phi). The lifts of a fixed T form
/// a 2Z-torsor; the canonical one has f(0) in (-1, 1] and `winding` adds
/// 2 * winding to it.
///
/// Action conventions. act_on_charge is the right action sigma . g of
/// Bridgeland (charge T^{-1} o Z). The left action g . sigma := sigma . g^{-1}
/// has charge T o Z = act_on_charge(gl_inverse(g), Z) and moves phases by f.
class LiftedAuto {
 public:
  LiftedAuto() = default;
  LiftedAuto(Mat2 base, long long winding);

  static LiftedAuto identity() { return {}; }
  /// (-Id, 0): lift phi -> phi + 1, i.e. the shift functor [1].
  static LiftedAuto shift();
  /// (Id, n): lift phi -> phi + 2n.
  static LiftedAuto even_shift(long long n) { return {Mat2::identity(), n}; }
  /// Rotation by pi * t with lift phi -> phi + t. Exact when t is in (1/2)Z.
  static LiftedAuto rotation(const Real& t);

  const Mat2& base() const { return base_; }
  long long winding() const { return winding_; }

  friend bool operator==(const LiftedAuto& x, const LiftedAuto& y) {
    return x.winding_ == y.winding_ && x.base_ == y.base_;
  }

 private:
  Mat2 base_ = Mat2::identity();
  long long winding_ = 0;
};

/// Canonical lift value f(0) in (-1, 1] for the base matrix alone.
long double canonical_anchor(const Mat2& t);

Phase lift_eval(const LiftedAuto& g, const Phase& phi);
LiftedAuto gl_compose(const LiftedAuto& g1, const LiftedAuto& g2);
LiftedAuto gl_inverse(const LiftedAuto& g);
CentralCharge act_on_charge(const LiftedAuto& g, const CentralCharge& z);
/// Left-action charge T o Z.
CentralCharge act_on_charge_left(const LiftedAuto& g, const CentralCharge& z);

}  // namespace torstab
