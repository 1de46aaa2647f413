// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "torstab/error.hpp"
#include "torstab/json_io.hpp"
#include "torstab/walls_topology.hpp"

using namespace torstab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

LiftedAuto random_auto(std::mt19937& rng) {
  std::uniform_real_distribution<double> x(-3, 3);
  std::uniform_int_distribution<int> w(-3, 3);
  for (;;) {
    Mat2 m = Mat2::of(Real::approx(x(rng)), Real::approx(x(rng)), Real::approx(x(rng)),
                      Real::approx(x(rng)));
    if (m.det().to_double() > 0.05) return LiftedAuto(m, w(rng));
  }
}

std::string key(const FormalObject& e) { return to_json(e).dump(); }

// 1
Outcome classification_round_trip() {
  auto t0 = Clock::now();
  std::mt19937 rng(1001);
  int runs = 0, bad = 0;
  double worst = 0;
  for (int d = 3; d <= 6; ++d)
    for (int p = 0; p < d; ++p)
      for (int i = 0; i < 100; ++i) {
        ++runs;
        auto g = random_auto(rng);
        auto sigma = act(g, make_std(p, d));
        auto phi = lift_eval(sigma.g, Phase{Real(1)});
        auto psi = lift_eval(sigma.g, Phase{Real::ratio(1, 2) - Real(p)});
        try {
          auto c = classify(charge(sigma), phi, psi, d);
          double err = c.g.base().max_abs_diff(g.base());
          worst = std::max(worst, err);
          if (!(c.label == OrbitLabel::std_label(p)) || c.g.winding() != g.winding() || err > 1e-9)
            ++bad;
        } catch (const Error&) {
          ++bad;
        }
      }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d points, %d mismatches, max matrix error %.2e, %.2fs", runs, bad,
                worst, secs);
  return {bad == 0 && secs < 10.0, buf};
}

// 2
bool stable_by_search(const FormalObject& e, int p, const CentralCharge& z) {
  KClass v = e.k_class();
  Real phi = phase_in_strip(z, v, Real(0)).value;
  std::set<std::string> seen{key(e)};
  std::vector<FormalObject> frontier{e};
  while (!frontier.empty()) {
    FormalObject cur = frontier.back();
    frontier.pop_back();
    for (auto& q : model_quotients(cur, p)) {
      if (!seen.insert(key(q)).second) continue;
      KClass sub = v - q.k_class();
      if (!q.is_zero() && !sub.is_zero() && !(phase_in_strip(z, sub, Real(0)).value < phi))
        return false;
      frontier.push_back(std::move(q));
    }
  }
  return true;
}

bool expected_stable(const FormalObject& e, int p) {
  if (e.graded().size() != 1 || !e.flags().empty()) return false;
  const auto& [deg, s] = *e.graded().begin();
  if (deg == 0 && s.is_torsion()) return s.torsion_length() == 1;
  return deg == -p && s.is_locally_free() && s.rank() == 1;
}

Outcome stable_object_oracle() {
  long long objects = 0, counterexamples = 0;
  for (int d : {4, 5}) {
    for (int p = 1; p < d - 1; ++p) {
      CentralCharge z = CentralCharge::standard(p);
      for (const auto& e : enumerate_heart(p, d, 6, 2)) {
        if (e.is_zero()) continue;
        ++objects;
        if (stable_by_search(e, p, z) != expected_stable(e, p)) ++counterexamples;
      }
      auto fams = stable_objects(make_std(p, d), d);
      std::set<std::string> phases;
      for (const auto& f : fams.families) phases.insert(f.phase.value.to_string());
      if (fams.families.size() != 2 || phases != std::set<std::string>{"1", "1/2"} ||
          fams.incomplete)
        ++counterexamples;
    }
  }
  return {counterexamples == 0,
          std::to_string(objects) + " heart objects searched, " + std::to_string(counterexamples) +
              " counterexamples"};
}

// 3
Outcome tilt_chain_equality() {
  long long checks = 0, disagreements = 0;
  for (int d = 3; d <= 6; ++d) {
    auto corpus = enumerate_objects(d, 6, 2);
    for (int p = 0; p < d; ++p) {
      auto h = iterated_heart(p, d);
      for (const auto& e : corpus) {
        ++checks;
        if (h.contains(e) != heart_membership(e, p, d)) ++disagreements;
      }
    }
  }
  return {disagreements == 0, std::to_string(checks) + " membership checks, " +
                                  std::to_string(disagreements) + " disagreements"};
}

// 4
bool effective_p0(KClass v) { return v.rk >= 1 || (v.rk == 0 && v.chd >= 1); }

bool outside_region(const ComplexValue& w) {
  int si = w.im.sign();
  return si < 0 || (si == 0 && w.re.sign() >= 0);
}

Outcome stability_gate() {
  std::mt19937 rng(404);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
  int rejected = 0, samples = 0, accepted = 0, total_accept = 0;
  while (samples < 1000) {
    Real c = Real::ratio(num(rng), den(rng));
    if (c.is_zero()) continue;
    ++samples;
    CentralCharge z{Real::ratio(num(rng), den(rng)), Real::ratio(num(rng), den(rng)), c,
                    Real::ratio(num(rng), den(rng))};
    int d = 3 + samples % 5;
    auto r = is_stability_function(z, 0, d);
    if (!r.valid && r.violating && effective_p0(*r.violating) &&
        outside_region(charge_eval(z, *r.violating)))
      ++rejected;
  }
  for (int d = 3; d <= 8; ++d)
    for (int p = 0; p < d; ++p) {
      ++total_accept;
      if (is_stability_function(CentralCharge::standard(p), p, d).valid) ++accepted;
      if (p == 0) continue;
      for (Real g : {Real::ratio(1, 8), Real::ratio(1, 4), Real::ratio(3, 8)}) {
        ++total_accept;
        if (is_stability_function(charge(make_deg(p, g, d)), p, d).valid) ++accepted;
      }
    }
  return {rejected == samples && accepted == total_accept,
          std::to_string(rejected) + "/" + std::to_string(samples) + " c != 0 charges rejected, " +
              std::to_string(accepted) + "/" + std::to_string(total_accept) +
              " normal forms accepted"};
}

// 5
std::optional<OrbitLabel> expected_wall(int p, double g, int d) {
  Real gamma = Real::parse(std::to_string(static_cast<int>(std::lround(g * 100)))) / Real(100);
  Real rest = Real(1) - gamma;
  bool low = g < 0.5;
  if (p == 0) return low ? std::nullopt : std::optional(OrbitLabel::deg_label(1, rest));
  if (p == d - 1) return low ? std::optional(OrbitLabel::deg_label(d - 1, gamma)) : std::nullopt;
  return low ? OrbitLabel::deg_label(p, gamma) : OrbitLabel::deg_label(p + 1, rest);
}

Outcome wall_table() {
  const double gammas[] = {0.1, 0.3, 0.49, 0.51, 0.7, 0.9};
  int cases = 0, table_bad = 0, heart_cases = 0, heart_bad = 0;
  std::map<int, std::vector<FormalObject>> corpora;
  for (int d = 3; d <= 7; ++d) {
    for (int p = 0; p < d; ++p) {
      for (double g : gammas) {
        ++cases;
        Real gamma = Real::parse(std::to_string(static_cast<int>(std::lround(g * 100)))) / Real(100);
        auto want = expected_wall(p, g, d);
        auto got = boundary_at(p, gamma, d);
        bool ok = want ? (got.kind == WallDecision::Kind::kWall && got.target && *got.target == *want)
                       : (got.kind == WallDecision::Kind::kNoBoundary &&
                          got.reason == WallDecision::Reason::kTwistEscape);
        if (!ok) ++table_bad;
        if (!want) continue;
        ++heart_cases;
        if (!corpora.count(d)) corpora[d] = enumerate_objects(d, 6, 2);
        auto h = boundary_heart(p, gamma, d);
        for (const auto& e : corpora[d])
          if (h.contains(e) != heart_membership(e, want->p, d)) {
            ++heart_bad;
            break;
          }
      }
    }
  }
  return {table_bad == 0 && heart_bad == 0,
          std::to_string(cases) + " table entries (" + std::to_string(table_bad) + " wrong), " +
              std::to_string(heart_cases) + " wall hearts (" + std::to_string(heart_bad) +
              " disagree)"};
}

// 6
Outcome topology() {
  auto t0 = Clock::now();
  bool ok = true;
  for (int d = 3; d <= 7; ++d) ok = ok && pi1(orbit_complex(d)).name == "trivial";
  auto c = orbit_complex(3);
  ok = ok && pi1(subcomplex(c, {1})).name == "Z";
  for (const auto& comp : components(subcomplex(c, {1, 3}))) ok = ok && pi1(comp).name == "Z";
  double secs = seconds_since(t0);
  char buf[120];
  std::snprintf(buf, sizeof buf, "d = 3..7 trivial, wall-only complex Z, %.3fs", secs);
  return {ok && secs < 1.0, buf};
}

// 7
Outcome non_covering() {
  auto over_std = fiber_types(CentralCharge::standard(0), 5);
  auto over_deg = fiber_types(CentralCharge{Real(1), Real(1), Real(0), Real(0)}, 5);
  std::set<std::string> a, b;
  for (const auto& f : over_std) a.insert(f.descriptor);
  for (const auto& f : over_deg) b.insert(f.descriptor);
  bool ok = a == std::set<std::string>{"countable"} &&
            b == std::set<std::string>{"positive-dimensional"} && !over_std.empty() &&
            !over_deg.empty();
  return {ok, "Z_(0): " + std::to_string(over_std.size()) + " countable families; -chd+rk: " +
                  std::to_string(over_deg.size()) + " positive-dimensional families"};
}

// 8
Outcome group_law() {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> phi(-3, 3);
  int failures = 0;
  auto f = [](const LiftedAuto& g, double x) { return lift_eval(g, Phase{Real::approx(x)}).to_double(); };
  for (int i = 0; i < 1000; ++i) {
    auto g1 = random_auto(rng), g2 = random_auto(rng), g3 = random_auto(rng);
    auto l = gl_compose(gl_compose(g1, g2), g3);
    auto r = gl_compose(g1, gl_compose(g2, g3));
    bool ok = l.winding() == r.winding() && l.base().max_abs_diff(r.base()) < 1e-10;
    auto id = gl_compose(g1, gl_inverse(g1));
    ok = ok && id.winding() == 0 && id.base().max_abs_diff(Mat2::identity()) < 1e-10;
    double x = phi(rng), y = x + std::uniform_real_distribution<double>(1e-6, 1)(rng);
    ok = ok && f(g1, x) < f(g1, y);
    ok = ok && std::abs(f(l, x) - f(r, x)) < 1e-10;
    ok = ok && std::abs(f(g1, x + 1) - f(g1, x) - 1) < 1e-10;
    if (!ok) ++failures;
  }
  return {failures == 0, "1000 random triples, " + std::to_string(failures) + " failures"};
}

// 9
FormalObject random_heart_object(std::mt19937& rng, int p, int d, int max_mass) {
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    int budget = std::uniform_int_distribution<int>(1, max_mass)(rng);
    int tors_len = std::uniform_int_distribution<int>(0, budget)(rng);
    int rest = budget - tors_len;
    std::map<int, FormalSheaf> g;
    std::vector<PointLength> pts;
    for (int left = tors_len; left > 0;) {
      int len = std::uniform_int_distribution<int>(1, left)(rng);
      pts.push_back({std::uniform_int_distribution<int>(0, 2)(rng), len});
      left -= len;
    }
    if (!pts.empty()) g.emplace(0, FormalSheaf::torsion(pts));
    if (rest > 0) {
      int rank = std::uniform_int_distribution<int>(1, rest)(rng);
      int q = p == 1 ? rest - rank : 0;
      std::vector<PointLength> cos;
      for (int left = q; left > 0;) {
        int len = std::uniform_int_distribution<int>(1, left)(rng);
        cos.push_back({std::uniform_int_distribution<int>(0, 2)(rng), len});
        left -= len;
      }
      g.emplace(-p, FormalSheaf::torsion_free(rank, cos));
    }
    if (g.empty()) continue;
    std::vector<ExtensionFlag> flags;
    if (g.size() == 2 && coin(rng)) flags.push_back({-p, 0});
    FormalObject e(g, flags);
    if (heart_membership(e, p, d)) return e;
  }
}

Outcome finite_length() {
  std::mt19937 rng(909);
  int failures = 0, longest = 0;
  for (int i = 0; i < 500; ++i) {
    int d = 3 + i % 4;
    int p = 1 + static_cast<int>(rng() % static_cast<unsigned>(d - 1));
    FormalObject start = random_heart_object(rng, p, d, 12);
    int mass_bound = start.mass();
    int last_mass = mass_bound + 1;
    bool decreasing = true;
    auto step = [&](const FormalObject& x) {
      if (x.mass() >= last_mass) decreasing = false;
      last_mass = x.mass();
      auto qs = model_quotients(x, p);
      if (qs.empty() || rng() % 12 == 0) return x;
      return qs[rng() % qs.size()];
    };
    try {
      int n = chain_stabilizes(start, step, p);
      longest = std::max(longest, n);
      if (n > mass_bound || !decreasing) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0, "500 chains, longest " + std::to_string(longest) + " steps, " +
                             std::to_string(failures) + " failures"};
}

// 10
long long escape_oracle(KClass i, KClass e, double gm) {
  for (long long n = 1; n < 100000000; ++n) {
    std::complex<double> w(double(-(i.chd + n * e.chd)), double(i.rk + n * e.rk));
    if (std::abs(w) == 0) continue;
    if (std::arg(w) / std::numbers::pi > gm + 1e-12) return n;
  }
  return -1;
}

Outcome twist_escape_check() {
  auto z0 = CentralCharge::standard(0);
  long long worked = twist_escape({1, -1}, {1, 0}, Real::parse("0.4"), z0);
  std::mt19937 rng(1010);
  std::uniform_int_distribution<int> n(-8, 8);
  int done = 0, agree = 0;
  while (done < 200) {
    KClass i{std::abs(n(rng)), n(rng)}, e{std::abs(n(rng)), n(rng)};
    auto in_heart = [](KClass v) { return v.rk > 0 || (v.rk == 0 && v.chd > 0); };
    if (!in_heart(i) || !in_heart(e)) continue;
    double pe = std::arg(std::complex<double>(double(-e.chd), double(e.rk))) / std::numbers::pi;
    double gm = pe * std::uniform_real_distribution<double>(0, 0.98)(rng);
    ++done;
    try {
      if (twist_escape(i, e, Real::approx(gm), z0) == escape_oracle(i, e, gm)) ++agree;
    } catch (const Error&) {
    }
  }
  return {worked == 3 && agree == done, "worked example n = " + std::to_string(worked) + ", " +
                                            std::to_string(agree) + "/" + std::to_string(done) +
                                            " random inputs agree with the oracle"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"classification round-trip", classification_round_trip},
      {"stable-object oracle", stable_object_oracle},
      {"tilt-chain equality", tilt_chain_equality},
      {"stability-function gate", stability_gate},
      {"wall table", wall_table},
      {"topology", topology},
      {"non-covering", non_covering},
      {"group law", group_law},
      {"finite length", finite_length},
      {"twist escape", twist_escape_check},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
