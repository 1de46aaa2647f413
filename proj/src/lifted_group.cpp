#include "torstab/lifted_group.hpp"

#include <cmath>
#include <numbers>

#include "torstab/error.hpp"

namespace torstab {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// The winding residual must be an even integer; anything farther than this
// from one means the long double evaluation cannot be trusted.
constexpr long double kWindingSlack = 1e-6L;

std::array<Real, 2> unit_at(const Phase& phi, bool& exact_axis) {
  exact_axis = false;
  if (phi.value.is_exact()) {
    Rational twice = *phi.value.exact() * 2;
    if (boost::multiprecision::denominator(twice) == 1) {
      exact_axis = true;
      long long q = static_cast<long long>(boost::multiprecision::numerator(twice));
      switch (((q % 4) + 4) % 4) {
        case 0: return {Real(1), Real(0)};
        case 1: return {Real(0), Real(1)};
        case 2: return {Real(-1), Real(0)};
        default: return {Real(0), Real(-1)};
      }
    }
  }
  long double a = kPi * static_cast<long double>(phi.to_double());
  return {Real::approx(static_cast<double>(std::cos(a))),
          Real::approx(static_cast<double>(std::sin(a)))};
}

bool axis_aligned_exact(const std::array<Real, 2>& w) {
  return w[0].is_exact() && w[1].is_exact() && (w[0].is_zero() || w[1].is_zero());
}

// Lift value in long double, with no attempt at exactness.
long double lift_value(const Mat2& t, long long winding, long double phi) {
  long double n = std::floor(phi);
  long double frac = phi - n;
  long double t00 = t.m[0][0].to_double(), t01 = t.m[0][1].to_double();
  long double t10 = t.m[1][0].to_double(), t11 = t.m[1][1].to_double();
  long double c = std::cos(kPi * frac), s = std::sin(kPi * frac);
  long double w0x = t00, w0y = t10;
  long double wx = t00 * c + t01 * s, wy = t10 * c + t11 * s;
  long double cross = w0x * wy - w0y * wx;
  long double dot = w0x * wx + w0y * wy;
  long double sweep = std::atan2(cross, dot) / kPi;
  // true sweep lies in [0, 1); undo rounding across either end
  if (sweep < -0.5L) sweep += 2.0L;
  else if (sweep < 0) sweep = 0;
  return canonical_anchor(t) + sweep + n + 2.0L * static_cast<long double>(winding);
}

long long even_offset(long double target, long double canonical) {
  long double half = (target - canonical) / 2.0L;
  long double k = std::round(half);
  if (std::abs(half - k) * 2.0L > kWindingSlack)
    fail(ErrorCode::kInternal, "winding residual is not an even integer");
  return static_cast<long long>(k);
}

}  // namespace

LiftedAuto::LiftedAuto(Mat2 base, long long winding)
    : base_(std::move(base)), winding_(winding) {
  if (base_.det().sign() <= 0)
    fail(ErrorCode::kDomainError, "base matrix must have positive determinant");
}

LiftedAuto LiftedAuto::shift() { return {Mat2::scalar(Real(-1)), 0}; }

LiftedAuto LiftedAuto::rotation(const Real& t) {
  bool exact = false;
  auto u = unit_at(Phase{t}, exact);
  Mat2 r = Mat2::of(u[0], -u[1], u[1], u[0]);
  long double target = static_cast<long double>(t.to_double());
  return {r, even_offset(target, canonical_anchor(r))};
}

long double canonical_anchor(const Mat2& t) {
  const Real& x = t.m[0][0];
  const Real& y = t.m[1][0];
  if (y.is_exact() && y.is_zero()) return x.sign() > 0 ? 0.0L : 1.0L;
  long double v = std::atan2(static_cast<long double>(y.to_double()),
                             static_cast<long double>(x.to_double())) / kPi;
  if (v <= -1.0L) v = 1.0L;
  return v;
}

Phase lift_eval(const LiftedAuto& g, const Phase& phi) {
  long double value = lift_value(g.base(), g.winding(), static_cast<long double>(phi.to_double()));
  bool exact_input = false;
  auto u = unit_at(phi, exact_input);
  if (exact_input && g.base().is_exact()) {
    auto w = g.base().apply(u);
    if (axis_aligned_exact(w)) {
      // value is a multiple of 1/2; recover it exactly from the estimate
      long long halves = std::llround(value * 2.0L);
      return Phase{Real(Rational(halves, 2))};
    }
  }
  return Phase{Real::approx(static_cast<double>(value))};
}

LiftedAuto gl_compose(const LiftedAuto& g1, const LiftedAuto& g2) {
  Mat2 t = g1.base() * g2.base();
  long double inner = lift_value(g2.base(), g2.winding(), 0.0L);
  long double outer = lift_value(g1.base(), g1.winding(), inner);
  return {t, even_offset(outer, canonical_anchor(t))};
}

LiftedAuto gl_inverse(const LiftedAuto& g) {
  Mat2 t = g.base().inverse();
  // want h with h(f(0)) = 0
  long double image = lift_value(g.base(), g.winding(), 0.0L);
  long double h_canonical = lift_value(t, 0, image);
  return {t, even_offset(0.0L, h_canonical)};
}

CentralCharge act_on_charge(const LiftedAuto& g, const CentralCharge& z) {
  return CentralCharge::from_matrix(g.base().inverse() * z.matrix());
}

CentralCharge act_on_charge_left(const LiftedAuto& g, const CentralCharge& z) {
  return CentralCharge::from_matrix(g.base() * z.matrix());
}

}  // namespace torstab
