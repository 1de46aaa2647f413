#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "torstab/error.hpp"
#include "torstab/numerical_k.hpp"

using namespace torstab;

namespace {

// Oracle: the defining formula, evaluated in double.
std::complex<double> z_oracle(double a, double b, double c, double e, KClass v) {
  return {-a * v.chd + b * v.rk, -c * v.chd + e * v.rk};
}

// NaN when no lift of the direction lies in (anchor, anchor + 1]
double phase_oracle(std::complex<double> w, double anchor) {
  double t = std::arg(w) / std::numbers::pi;
  while (t <= anchor) t += 2;
  while (t > anchor + 2) t -= 2;
  return t > anchor + 1 ? std::nan("") : t;
}

CentralCharge z0() { return CentralCharge::standard(0); }

}  // namespace

TEST_CASE("charge_eval on the standard charge") {
  auto sky = charge_eval(z0(), kSkyscraperClass);
  CHECK(sky.re == Real(-1));
  CHECK(sky.im == Real(0));
  CHECK(sky.re.is_exact());
  auto line = charge_eval(z0(), kLineBundleClass);
  CHECK(line.re == Real(0));
  CHECK(line.im == Real(1));
  CHECK(charge_eval(CentralCharge{Real(3), Real::ratio(1, 7), Real(-2), Real(5)}, {0, 0}).is_zero());
}

TEST_CASE("charge_eval matches the formula on random rational charges") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> n(-9, 9), den(1, 6);
  for (int i = 0; i < 200; ++i) {
    long long an = n(rng), ad = den(rng), bn = n(rng), bd = den(rng);
    long long cn = n(rng), cd = den(rng), en = n(rng), ed = den(rng);
    CentralCharge z{Real::ratio(an, ad), Real::ratio(bn, bd), Real::ratio(cn, cd), Real::ratio(en, ed)};
    KClass v{n(rng), n(rng)}, u{n(rng), n(rng)};
    auto want = z_oracle(double(an) / ad, double(bn) / bd, double(cn) / cd, double(en) / ed, v);
    auto got = charge_eval(z, v);
    CHECK(got.re.is_exact());
    CHECK(got.re.to_double() == doctest::Approx(want.real()));
    CHECK(got.im.to_double() == doctest::Approx(want.imag()));
    // linearity
    auto sum = charge_eval(z, u + v);
    auto parts = charge_eval(z, u) + charge_eval(z, v);
    CHECK(sum == parts);
  }
}

TEST_CASE("phase_in_strip examples") {
  auto p = phase_in_strip(z0(), kSkyscraperClass, Real(0));
  CHECK(p.is_exact());
  CHECK(p.value == Real(1));
  auto q = phase_in_strip(z0(), {1, -1}, Real(0));
  CHECK(q.to_double() == doctest::Approx(std::atan(1.0) / std::numbers::pi));
  CHECK(q.to_double() == doctest::Approx(0.25));
  auto r = phase_in_strip(z0(), {-1, 0}, Real(1));
  CHECK(r.is_exact());
  CHECK(r.value == Real::ratio(3, 2));
  CHECK_THROWS_AS(phase_in_strip(z0(), {0, 0}, Real(0)), Error);
  try {
    phase_in_strip(z0(), {0, 0}, Real(0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroCharge);
  }
}

TEST_CASE("phase equivariance and agreement with atan2") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> n(-20, 20);
  std::uniform_real_distribution<double> anchor(-3, 3);
  for (int i = 0; i < 500; ++i) {
    CentralCharge z{Real(n(rng)), Real(n(rng)), Real(n(rng)), Real(n(rng))};
    KClass v{n(rng), n(rng)};
    if (charge_eval(z, v).is_zero()) continue;
    double a = std::round(anchor(rng) * 8) / 8;
    Real ra = Real::parse(std::to_string(static_cast<long long>(a * 8)) + "/8");
    auto want = phase_oracle(z_oracle(z.a.to_double(), z.b.to_double(), z.c.to_double(),
                                      z.e.to_double(), v), a);
    if (std::isnan(want)) {
      CHECK_THROWS_AS(phase_in_strip(z, v, ra), Error);
      continue;
    }
    auto phi = phase_in_strip(z, v, ra);
    CHECK(phi.to_double() == doctest::Approx(want).epsilon(1e-12));
    auto shifted = phase_in_strip(z, -v, ra + Real(1));
    CHECK(shifted.to_double() == doctest::Approx(phi.to_double() + 1).epsilon(1e-12));
  }
}

TEST_CASE("determinant sign is preserved by positive matrices") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> n(-9, 9);
  for (int i = 0; i < 200; ++i) {
    Mat2 m = Mat2::of(Real(n(rng)), Real(n(rng)), Real(n(rng)), Real(n(rng)));
    if (m.det().sign() <= 0) continue;
    CentralCharge z{Real(n(rng)), Real(n(rng)), Real(n(rng)), Real(n(rng))};
    auto mz = CentralCharge::from_matrix(m * z.matrix());
    CHECK(mz.det().sign() == z.det().sign());
  }
}

TEST_CASE("is_stability_function") {
  for (int d = 3; d <= 8; ++d)
    for (int p = 0; p < d; ++p) CHECK(is_stability_function(CentralCharge::standard(p), p, d).valid);

  CentralCharge bad{Real(1), Real(0), Real(1), Real(1)};
  auto r = is_stability_function(bad, 0, 4);
  CHECK_FALSE(r.valid);
  REQUIRE(r.violating);
  // certificate really leaves the allowed region
  auto w = charge_eval(bad, *r.violating);
  CHECK((w.im.sign() < 0 || (w.im.sign() == 0 && w.re.sign() >= 0)));

  CentralCharge deg{Real(1), Real(1), Real(0), Real(0)};
  CHECK(is_stability_function(deg, 1, 4).valid);
  CHECK(charge_eval(deg, {-1, 0}).re == Real(-1));
  CHECK(charge_eval(deg, kSkyscraperClass).re == Real(-1));
  CHECK_THROWS_AS(is_stability_function(z0(), 4, 4), Error);
}

TEST_CASE("charge_norm") {
  CentralCharge chd_only{Real(1), Real(0), Real(0), Real(0)};
  CentralCharge rk_only{Real(0), Real(0), Real(0), Real(1)};
  auto std1 = OrbitLabel::std_label(1);
  CHECK(charge_norm(chd_only, std1, 4) == Real(1));
  CHECK(charge_norm(CentralCharge::standard(1), std1, 4) == Real(1));
  CHECK(charge_norm(rk_only, std1, 4) == Real(1));
  CHECK(charge_norm(CentralCharge{Real(3), Real(0), Real(4), Real(0)}, std1, 4) == Real(5));
  CHECK_THROWS_AS(charge_norm(rk_only, OrbitLabel::std_label(0), 4), Error);
  CHECK_THROWS_AS(charge_norm(rk_only, OrbitLabel::std_label(3), 4), Error);
}

TEST_CASE("Real parsing and exactness") {
  CHECK(Real::parse("3/6") == Real::ratio(1, 2));
  CHECK(Real::parse("0.25").is_exact());
  CHECK(Real::parse("-7") == Real(-7));
  CHECK_THROWS_AS(Real::parse("abc"), Error);
  CHECK_THROWS_AS(Real::parse("1/0"), Error);
  CHECK((Real::approx(0.5) * Real(0)).is_exact());
  CHECK(Real::ratio(7, 3).floor() == 2);
  CHECK(Real::ratio(-7, 3).floor() == -3);
}
