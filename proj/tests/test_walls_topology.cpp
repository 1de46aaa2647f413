#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "torstab/error.hpp"
#include "torstab/walls_topology.hpp"

using namespace torstab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

SpectrumDescriptor spec(int p, int d) { return spectrum_descriptor(OrbitLabel::std_label(p), d); }

// Oracle for twist_escape: plain complex arithmetic.
long long escape_oracle(KClass i, KClass e, double gm) {
  for (long long n = 1;; ++n) {
    std::complex<double> w(-(i.chd + n * e.chd), double(i.rk + n * e.rk));
    if (std::abs(w) == 0) continue;
    double ph = std::arg(w) / std::numbers::pi;
    if (ph > gm + 1e-12) return n;
  }
}

}  // namespace

TEST_CASE("gamma_pm examples") {
  auto a = gamma_pm(spec(1, 4), Real::parse("0.3"));
  CHECK(a.minus == Real(0));
  CHECK(a.plus == Real::ratio(1, 2));
  CHECK(a.minus_exact);
  CHECK(a.plus_exact);
  auto b = gamma_pm(spec(1, 4), Real::parse("0.7"));
  CHECK(b.minus == Real::ratio(1, 2));
  CHECK(b.plus == Real(1));
  CHECK(b.minus_exact);
  CHECK(b.plus_exact);
  auto c = gamma_pm(spec(0, 4), Real::parse("0.1"));
  CHECK_FALSE(c.minus_exact);
  CHECK_FALSE(c.plus_exact);
  CHECK(c.minus < Real::parse("0.1"));
  CHECK(c.plus > Real::parse("0.1"));
  CHECK(code_of([] { gamma_pm(spec(1, 4), Real::ratio(1, 2)); }) == ErrorCode::kOnSpectrum);
}

TEST_CASE("gamma_pm sandwich and local constancy") {
  for (int d = 3; d <= 6; ++d)
    for (int p = 1; p < d - 1; ++p)
      for (int k = 1; k < 100; ++k) {
        if (k == 50) continue;
        Real g = Real::ratio(k, 100);
        auto b = gamma_pm(spec(p, d), g);
        CHECK(b.minus < g);
        CHECK(g < b.plus);
        CHECK(b.minus == (k < 50 ? Real(0) : Real::ratio(1, 2)));
        CHECK(b.plus == (k < 50 ? Real::ratio(1, 2) : Real(1)));
        // idempotent inside the gap
        auto mid = (b.minus + b.plus) / Real(2);
        if (!(mid == g) && !(mid == Real::ratio(1, 2))) {
          auto again = gamma_pm(spec(p, d), mid);
          CHECK(again.minus == b.minus);
          CHECK(again.plus == b.plus);
        }
      }
}

TEST_CASE("boundary_at table") {
  auto w = boundary_at(0, Real::parse("0.3"), 5);
  CHECK(w.kind == WallDecision::Kind::kNoBoundary);
  CHECK(w.reason == WallDecision::Reason::kTwistEscape);
  auto w2 = boundary_at(0, Real::parse("0.7"), 5);
  REQUIRE(w2.target);
  CHECK(*w2.target == OrbitLabel::deg_label(1, Real::parse("0.3")));
  CHECK(w2.target->gamma.is_exact());
  auto w3 = boundary_at(2, Real::parse("0.3"), 5);
  REQUIRE(w3.target);
  CHECK(*w3.target == OrbitLabel::deg_label(2, Real::parse("0.3")));
  auto w4 = boundary_at(2, Real::parse("0.7"), 5);
  CHECK(*w4.target == OrbitLabel::deg_label(3, Real::parse("0.3")));
  CHECK(*boundary_at(4, Real::parse("0.3"), 5).target == OrbitLabel::deg_label(4, Real::parse("0.3")));
  CHECK(boundary_at(4, Real::parse("0.7"), 5).kind == WallDecision::Kind::kNoBoundary);
  CHECK(code_of([] { boundary_at(1, Real::ratio(1, 2), 5); }) == ErrorCode::kDomainError);
  CHECK(code_of([] { boundary_at(5, Real::parse("0.3"), 5); }) == ErrorCode::kDomainError);
  CHECK(code_of([] { boundary_at(1, Real(1), 5); }) == ErrorCode::kDomainError);
}

TEST_CASE("boundary_heart examples") {
  int d = 4;
  auto corpus = enumerate_objects(d, 4, 2);
  auto h03 = boundary_heart(1, Real::parse("0.3"), d);
  auto h07 = boundary_heart(1, Real::parse("0.7"), d);
  auto h001 = boundary_heart(1, Real::parse("0.01"), d);
  auto h0 = boundary_heart(0, Real::parse("0.7"), d);
  auto h33 = boundary_heart(3, Real::parse("0.3"), d);  // non-split objects have no known HN
  for (const auto& e : corpus) {
    CHECK(h33.contains(e) == heart_membership(e, 3, d));
    CHECK(h03.contains(e) == heart_membership(e, 1, d));
    CHECK(h001.contains(e) == heart_membership(e, 1, d));
    CHECK(h07.contains(e) == heart_membership(e, 2, d));
    CHECK(h0.contains(e) == heart_membership(e, 1, d));
  }
  CHECK(code_of([&] { boundary_heart(3, Real::parse("0.7"), d); }) == ErrorCode::kUnsupportedSpectrum);
  CHECK(code_of([&] { boundary_heart(0, Real::parse("0.3"), d); }) == ErrorCode::kUnsupportedSpectrum);
}

TEST_CASE("twist_escape") {
  auto z0 = CentralCharge::standard(0);
  CHECK(twist_escape({1, -1}, {1, 0}, Real::parse("0.4"), z0) == 3);
  CHECK(twist_escape({1, -1}, {1, 0}, Real(0), z0) == 1);
  CHECK(twist_escape({1, -1}, {0, 1}, Real::parse("0.9"), z0) == 5);
  CHECK(code_of([&] { twist_escape({1, -1}, {1, -1}, Real::parse("0.3"), z0); }) ==
        ErrorCode::kNeverEscapes);
  CHECK(code_of([&] { twist_escape({0, 0}, {1, 0}, Real::parse("0.3"), z0); }) ==
        ErrorCode::kZeroCharge);

  std::mt19937 rng(29);
  std::uniform_int_distribution<int> n(-6, 6);
  int checked = 0;
  while (checked < 100) {
    KClass i{std::abs(n(rng)), n(rng)}, e{std::abs(n(rng)), n(rng)};
    // admissible: both charges in the closed upper half plane minus [0, inf)
    auto in_heart = [](KClass v) { return v.rk > 0 || (v.rk == 0 && v.chd > 0); };
    if (!in_heart(i) || !in_heart(e)) continue;
    std::complex<double> ze(-e.chd, double(e.rk));
    double pe = std::arg(ze) / std::numbers::pi;
    double gm = pe - 0.02 - 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
    Real g = Real::approx(gm);
    CHECK(twist_escape(i, e, g, z0) == escape_oracle(i, e, gm));
    ++checked;
  }
}

TEST_CASE("orbit_complex shape") {
  auto c = orbit_complex(3);
  REQUIRE(c.nodes.size() == 5);
  CHECK(c.nodes[0].name() == "Std(0)");
  CHECK(c.nodes[1].name() == "W_1");
  CHECK(c.nodes[4].name() == "Std(2)");
  CHECK(c.nodes[0].homotopy() == "contractible");
  CHECK(c.nodes[1].annotation() == "fundamental group Z");
  CHECK(c.edges.size() == 4);
  auto c5 = orbit_complex(5);
  int cells = 0, walls = 0;
  for (const auto& n : c5.nodes) (n.kind == OrbitNode::Kind::kCell ? cells : walls)++;
  CHECK(cells == 5);
  CHECK(walls == 4);
}

TEST_CASE("pi1") {
  for (int d = 3; d <= 7; ++d) {
    auto g = pi1(orbit_complex(d));
    CHECK(g.name == "trivial");
    CHECK(g.initial_generators == d - 1);
    CHECK(g.initial_relations == d - 1);
    CHECK(g.generators == 0);
  }
  auto c = orbit_complex(3);
  CHECK(pi1(subcomplex(c, {1})).name == "Z");
  CHECK(pi1(subcomplex(c, {0})).name == "trivial");
  CHECK(code_of([&] { pi1(subcomplex(c, {0, 4})); }) == ErrorCode::kDisconnected);
  CHECK(code_of([&] { pi1(OrbitComplex{}); }) == ErrorCode::kDisconnected);
  // remove cells: each wall left without a neighbouring cell contributes Z
  for (int cell : {0, 2, 4}) {
    std::vector<int> keep;
    for (int i = 0; i < 5; ++i)
      if (i != cell) keep.push_back(i);
    for (const auto& comp : components(subcomplex(c, keep))) CHECK(pi1(comp).name == "trivial");
  }
  auto walls_only = subcomplex(c, {1, 3});
  auto comps = components(walls_only);
  CHECK(comps.size() == 2);
  for (const auto& comp : comps) CHECK(pi1(comp).name == "Z");
}

TEST_CASE("fiber_types") {
  auto f0 = fiber_types(CentralCharge::standard(0), 5);
  REQUIRE(f0.size() == 3);
  for (const auto& f : f0) {
    CHECK(f.family.is_std());
    CHECK(f.family.p % 2 == 0);
    CHECK(f.descriptor == "countable");
  }
  auto fd = fiber_types(CentralCharge{Real(1), Real(1), Real(0), Real(0)}, 5);
  REQUIRE(fd.size() == 2);
  for (const auto& f : fd) {
    CHECK(f.family.is_deg());
    CHECK(f.family.p % 2 == 1);
    CHECK(f.family.gamma == Real::ratio(1, 4));
    CHECK(f.descriptor == "positive-dimensional");
  }
  CHECK(fiber_types(CentralCharge{Real(0), Real(0), Real(1), Real(0)}, 5).empty());
  CHECK(code_of([] { fiber_types(CentralCharge{Real(0), Real(0), Real(0), Real(0)}, 5); }) ==
        ErrorCode::kZeroCharge);
  // every listed family really has this charge
  for (const auto& f : fd) {
    auto pt = f.family.is_std() ? make_std(f.family.p, 5) : make_deg(f.family.p, f.family.gamma, 5);
    CHECK(charge(pt) == CentralCharge{Real(1), Real(1), Real(0), Real(0)});
  }
}
