#pragma once

#include <array>
#include <optional>
#include <string>

#include "torstab/real.hpp"

namespace torstab {

/// Numerical K-theory class on a generic torus: rank (ch_0) and the
/// integrated top Chern character ch_d. These are the only invariants a
/// numerical central charge can see, whatever the dimension d.
struct KClass {
  long long rk = 0;
  long long chd = 0;

  friend KClass operator+(KClass a, KClass b) { return {a.rk + b.rk, a.chd + b.chd}; }
  friend KClass operator-(KClass a, KClass b) { return {a.rk - b.rk, a.chd - b.chd}; }
  friend KClass operator-(KClass a) { return {-a.rk, -a.chd}; }
  friend KClass operator*(long long n, KClass a) { return {n * a.rk, n * a.chd}; }
  friend bool operator==(const KClass&, const KClass&) = default;
  bool is_zero() const { return rk == 0 && chd == 0; }
};

inline constexpr KClass kSkyscraperClass{0, 1};
inline constexpr KClass kLineBundleClass{1, 0};

/// A value in C with exact-or-approximate real and imaginary parts.
struct ComplexValue {
  Real re;
  Real im;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend bool operator==(const ComplexValue& a, const ComplexValue& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// 2x2 real matrix, row-major: m[row][col].
struct Mat2 {
  std::array<std::array<Real, 2>, 2> m{{{Real(1), Real(0)}, {Real(0), Real(1)}}};

  static Mat2 identity() { return Mat2{}; }
  static Mat2 of(Real a, Real b, Real c, Real d) {
    Mat2 r;
    r.m = {{{a, b}, {c, d}}};
    return r;
  }
  static Mat2 scalar(Real s) { return of(s, Real(0), Real(0), s); }

  Real det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  Mat2 inverse() const;
  bool is_exact() const;
  double max_abs_diff(const Mat2& o) const;
  std::array<Real, 2> apply(const std::array<Real, 2>& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y);
};

/// Central charge Z: KClass -> C,
///   Z(v) = (-a*chd + b*rk) + i*(-c*chd + e*rk).
/// Equivalently the matrix [[a, b], [c, e]] acting on the column (-chd, rk)
/// and landing in (Re, Im). Composition with a 2x2 matrix on the codomain is
/// left multiplication of that matrix.
///
/// Dictionary to the e,f,g,h letters of the classification argument
/// (Z' = -e chd - (-1)^p f rk + i(g chd + (-1)^p h rk)):
///   a = e,  b = -(-1)^p f,  c = -g,  e = (-1)^p h.
struct CentralCharge {
  Real a{1}, b{0}, c{0}, e{1};

  static CentralCharge from_matrix(const Mat2& m) {
    return {m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1]};
  }
  Mat2 matrix() const { return Mat2::of(a, b, c, e); }
  Real det() const { return a * e - b * c; }
  bool nondegenerate() const { return !det().is_zero(); }
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && e.is_zero(); }

  /// Z_(p) = -chd + (-1)^p rk * i.
  static CentralCharge standard(int p);

  friend bool operator==(const CentralCharge& x, const CentralCharge& y) {
    return x.matrix() == y.matrix();
  }
};

/// A Bridgeland phase phi, meaning Z = m * exp(i pi phi) with m > 0.
/// Phases in (1/2)Z are held exactly whenever the inputs were exact.
struct Phase {
  Real value;

  double to_double() const { return value.to_double(); }
  bool is_exact() const { return value.is_exact(); }
  friend bool operator==(const Phase& x, const Phase& y) { return x.value == y.value; }
  friend bool operator<(const Phase& x, const Phase& y) { return x.value < y.value; }
  friend bool operator>(const Phase& x, const Phase& y) { return y < x; }
};

ComplexValue charge_eval(const CentralCharge& z, KClass v);

/// The unique phi in (anchor, anchor + 1] with Z(v) on the ray exp(i pi phi).
/// Throws kZeroCharge if Z(v) = 0, kDomainError if Z(v) points into the
/// half-plane the strip cannot reach.
Phase phase_in_strip(const CentralCharge& z, KClass v, const Real& anchor);

/// Phase of a raw complex value, same strip convention.
Phase phase_of_value(const ComplexValue& w, const Real& anchor);

/// Phase in (-1, 1]. Throws kZeroCharge.
Phase principal_phase(const ComplexValue& w);

/// Verdict of is_stability_function; `violating` is set when not valid.
struct StabilityFunctionCheck {
  bool valid = false;
  std::optional<KClass> violating;
};

/// Does Z send every nonzero class of the effective cone of Coh_(p) into
/// {Im > 0} u {Im = 0, Re < 0}?
///
/// Effective cones: p = 0 is {(r, chd) : r >= 1} u {(0, t) : t >= 1};
/// p >= 1 is generated by (0, 1) and ((-1)^p, 0).
StabilityFunctionCheck is_stability_function(const CentralCharge& z, int p, int d);

/// Orbit labels of U(X) in one place so that numerical_k can refer to them.
struct OrbitLabel {
  enum class Kind { kStd, kDeg };
  Kind kind = Kind::kStd;
  int p = 0;
  Real gamma{0};  // only meaningful for kDeg

  static OrbitLabel std_label(int p) { return {Kind::kStd, p, Real(0)}; }
  static OrbitLabel deg_label(int p, Real gamma) { return {Kind::kDeg, p, gamma}; }
  bool is_std() const { return kind == Kind::kStd; }
  bool is_deg() const { return kind == Kind::kDeg; }
  std::string to_string() const;
  friend bool operator==(const OrbitLabel& x, const OrbitLabel& y) {
    if (x.kind != y.kind || x.p != y.p) return false;
    return x.kind == Kind::kStd || x.gamma == y.gamma;
  }
};

/// ||U||_sigma = sup |U(E)| / |Z(E)| over sigma-semistable E, for the base
/// points Std(p) with 0 < p < d - 1 (semistable classes are generated by the
/// skyscraper and L[p]). Other labels: kUnsupportedSpectrum.
Real charge_norm(const CentralCharge& u, const OrbitLabel& sigma, int d);

}  // namespace torstab
