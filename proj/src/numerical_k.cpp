#include "torstab/numerical_k.hpp"

#include <cmath>
#include <numbers>

#include "torstab/error.hpp"

namespace torstab {

Mat2 Mat2::inverse() const {
  Real dt = det();
  if (dt.is_zero()) fail(ErrorCode::kDomainError, "singular matrix");
  return of(m[1][1] / dt, -m[0][1] / dt, -m[1][0] / dt, m[0][0] / dt);
}

bool Mat2::is_exact() const {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_exact()) return false;
  return true;
}

double Mat2::max_abs_diff(const Mat2& o) const {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      worst = std::max(worst, std::abs(m[i][j].to_double() - o.m[i][j].to_double()));
  return worst;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
  return r;
}

bool operator==(const Mat2& x, const Mat2& y) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(x.m[i][j] == y.m[i][j])) return false;
  return true;
}

CentralCharge CentralCharge::standard(int p) {
  return {Real(1), Real(0), Real(0), Real(p % 2 == 0 ? 1 : -1)};
}

ComplexValue charge_eval(const CentralCharge& z, KClass v) {
  Real rk(v.rk), chd(v.chd);
  return {-z.a * chd + z.b * rk, -z.c * chd + z.e * rk};
}

namespace {

// Phase in (-1, 1] of an exact axis-aligned value, if it is one.
std::optional<Rational> exact_axis_phase(const ComplexValue& w) {
  if (!w.re.is_exact() || !w.im.is_exact()) return std::nullopt;
  int sr = w.re.sign(), si = w.im.sign();
  if (si == 0 && sr > 0) return Rational(0);
  if (si == 0 && sr < 0) return Rational(1);
  if (sr == 0 && si > 0) return Rational(1, 2);
  if (sr == 0 && si < 0) return Rational(-1, 2);
  return std::nullopt;
}

}  // namespace

Phase phase_of_value(const ComplexValue& w, const Real& anchor) {
  if (w.is_zero()) fail(ErrorCode::kZeroCharge, "phase of a zero charge");
  auto out_of_strip = [&]() -> Phase {
    fail(ErrorCode::kDomainError,
         "charge does not lie in the strip (" + anchor.to_string() + ", " +
             (anchor + Real(1)).to_string() + "]");
  };
  if (auto base = exact_axis_phase(w); base && anchor.is_exact()) {
    // smallest base + 2k strictly above the anchor
    Real shifted = (anchor - Real(*base)) / Real(2);
    long long k = shifted.floor() + 1;
    Real phi = Real(*base) + Real(2 * k);
    if (phi > anchor + Real(1)) return out_of_strip();
    return Phase{phi};
  }
  double theta = std::atan2(w.im.to_double(), w.re.to_double()) / std::numbers::pi;
  if (w.im.is_exact() && w.im.sign() == 0 && w.re.sign() < 0) theta = 1.0;
  double a = anchor.to_double();
  double k = std::floor((a - theta) / 2.0) + 1.0;
  double phi = theta + 2.0 * k;
  if (phi - (a + 1.0) > Real::kZeroTolerance) return out_of_strip();
  return Phase{Real::approx(phi)};
}

Phase principal_phase(const ComplexValue& w) {
  int si = w.im.sign();
  bool upper = si > 0 || (si == 0 && w.re.sign() < 0);
  return phase_of_value(w, Real(upper ? 0 : -1));
}

Phase phase_in_strip(const CentralCharge& z, KClass v, const Real& anchor) {
  return phase_of_value(charge_eval(z, v), anchor);
}

namespace {

bool in_semi_closed_upper_half_plane(const ComplexValue& w) {
  int si = w.im.sign();
  return si > 0 || (si == 0 && w.re.sign() < 0);
}

}  // namespace

StabilityFunctionCheck is_stability_function(const CentralCharge& z, int p, int d) {
  if (d < 3 || p < 0 || p >= d)
    fail(ErrorCode::kDomainError, "heart index must satisfy 0 <= p < d, d >= 3");
  auto reject = [](KClass v) { return StabilityFunctionCheck{false, v}; };
  if (p == 0) {
    if (z.c.sign() != 0) {
      // Im(1, x) = -c x + e goes negative for x of the sign of c.
      long long x = (abs(z.e) / abs(z.c)).floor() + 1;
      return reject({1, z.c.sign() > 0 ? x : -x});
    }
    if (!in_semi_closed_upper_half_plane(charge_eval(z, kSkyscraperClass)))
      return reject(kSkyscraperClass);
    if (z.e.sign() < 0) return reject(kLineBundleClass);
    if (z.e.sign() == 0) {
      // Re(1, x) = -a x + b with a > 0 is nonnegative at x = floor(b / a)
      return reject({1, (z.b / z.a).floor()});
    }
    return {true, std::nullopt};
  }
  const KClass generators[] = {kSkyscraperClass, {p % 2 == 0 ? 1 : -1, 0}};
  for (KClass g : generators)
    if (!in_semi_closed_upper_half_plane(charge_eval(z, g))) return reject(g);
  return {true, std::nullopt};
}

std::string OrbitLabel::to_string() const {
  if (is_std()) return "Std(" + std::to_string(p) + ")";
  return "Deg(" + std::to_string(p) + ", " + gamma.to_string() + ")";
}

namespace {

Real modulus(const ComplexValue& w) {
  if (w.re.is_zero()) return abs(w.im);
  if (w.im.is_zero()) return abs(w.re);
  return Real::approx(std::hypot(w.re.to_double(), w.im.to_double()));
}

Real max_real(const Real& x, const Real& y) { return x < y ? y : x; }

}  // namespace

Real charge_norm(const CentralCharge& u, const OrbitLabel& sigma, int d) {
  if (!sigma.is_std() || sigma.p <= 0 || sigma.p >= d - 1)
    fail(ErrorCode::kUnsupportedSpectrum,
         "norm needs a finitely generated semistable spectrum; got " + sigma.to_string());
  // Semistable classes: t * [k(y)] and r * [L[p]] (and their shifts, which
  // do not change the ratio). |Z_(p)| is t resp. r on them.
  KClass line_shifted{sigma.p % 2 == 0 ? 1 : -1, 0};
  return max_real(modulus(charge_eval(u, kSkyscraperClass)),
                  modulus(charge_eval(u, line_shifted)));
}

}  // namespace torstab
