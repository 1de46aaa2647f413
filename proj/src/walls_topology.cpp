#include "torstab/walls_topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "torstab/error.hpp"

namespace torstab {

namespace {

constexpr long long kEscapeLimit = 10'000'000;

void check_gamma(int p, const Real& gamma, int d) {
  if (d < 3 || p < 0 || p >= d)
    fail(ErrorCode::kDomainError, "heart index must satisfy 0 <= p < d, d >= 3");
  if (gamma.sign() <= 0 || gamma >= Real(1))
    fail(ErrorCode::kDomainError, "gamma must lie in (0, 1)");
  for (const auto& pt : spectrum_descriptor(OrbitLabel::std_label(p), d).points)
    if (pt.value == gamma)
      fail(ErrorCode::kDomainError, "gamma " + gamma.to_string() + " is a stable phase");
}

bool meets(double lo, double hi, const PhaseInterval& iv) {
  for (int n = -1; n <= 1; ++n) {
    double a = iv.lo + n, b = iv.hi + n;
    double l = std::max(lo, a), h = std::min(hi, b);
    if (l < h) return true;
    if (l == h && l > lo && l < hi && ((l == a && iv.lo_closed) || (l == b && iv.hi_closed)))
      return true;
  }
  return false;
}

bool accumulates(double lo, double hi, const Accumulation& acc) {
  for (int n = -1; n <= 1; ++n) {
    double x = acc.at + n;
    if (x > lo && x < hi) return true;
    if (x == lo && acc.side > 0) return true;
    if (x == hi && acc.side < 0) return true;
  }
  return false;
}

bool inexact_between(const SpectrumDescriptor& s, double lo, double hi) {
  for (const auto& iv : s.unknown)
    if (meets(lo, hi, iv)) return true;
  for (const auto& acc : s.accumulations)
    if (accumulates(lo, hi, acc)) return true;
  return false;
}

struct PhaseSpan {
  double lo = 0, hi = 0;
};

// Range of HN phases of a Coh_(p) object under sigma_(p).
PhaseSpan phase_span(const StabPoint& sigma, const FormalObject& e, int d) {
  PhaseSpan span{1e300, -1e300};
  auto widen = [&](double x) {
    span.lo = std::min(span.lo, x);
    span.hi = std::max(span.hi, x);
  };
  try {
    for (const auto& f : hn_filtration(sigma, e, d)) widen(f.phase.to_double());
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kUndeterminedHN) {
      // factors unknown; every phase still lies in the hull of the spectrum
      auto spec = spectrum_descriptor(sigma.label, d);
      for (const auto& ph : spec.points) widen(ph.to_double());
      for (const auto& iv : spec.unknown) {
        widen(iv.lo_closed ? iv.lo : std::nextafter(iv.lo, 1.0));
        widen(iv.hi_closed ? iv.hi : std::nextafter(iv.hi, 0.0));
      }
      return span;
    }
    if (err.code() != ErrorCode::kMissingHNData) throw;
    const FormalSheaf& s = *e.cohomology(0);
    if (s.torsion_part()) widen(1.0);
    widen(0.5);
    widen(std::nextafter(0.0, 1.0));
  }
  return span;
}

TorsionPairSpec phase_split_pair(int p, const Real& gamma, int d) {
  StabPoint sigma = make_std(p, d);
  double g = gamma.to_double();
  TorsionPairSpec pair;
  pair.name = "phase split at " + gamma.to_string();
  pair.in_torsion = [=](const FormalObject& e) {
    if (e.is_zero()) return true;
    if (!heart_membership(e, p, d)) return false;
    try {
      return phase_span(sigma, e, d).lo > g;
    } catch (const Error&) {
      return false;
    }
  };
  pair.in_free = [=](const FormalObject& e) {
    if (e.is_zero()) return true;
    if (!heart_membership(e, p, d)) return false;
    try {
      return phase_span(sigma, e, d).hi < g;
    } catch (const Error&) {
      return false;
    }
  };
  pair.decompose = [=](const FormalObject& e) -> std::pair<FormalObject, FormalObject> {
    if (e.is_zero()) return {e, e};
    PhaseSpan span = phase_span(sigma, e, d);
    if (span.lo > g) return {e, FormalObject()};
    if (span.hi < g) return {FormalObject(), e};
    FormalObject t, f;
    for (const auto& factor : hn_filtration(sigma, e, d)) {
      if (!factor.object)
        fail(ErrorCode::kUndeterminedHN, "HN factor of " + e.describe() + " has no model object");
      FormalObject& side = factor.phase.to_double() > g ? t : f;
      side = direct_sum(side, *factor.object);
    }
    return {t, f};
  };
  return pair;
}

}  // namespace

GammaBounds gamma_pm(const SpectrumDescriptor& spectrum, const Real& gamma) {
  if (gamma.sign() <= 0 || gamma >= Real(1))
    fail(ErrorCode::kDomainError, "gamma must lie in (0, 1)");
  std::optional<Real> below, above;
  for (const auto& pt : spectrum.points) {
    for (int n = -1; n <= 1; ++n) {
      Real x = pt.value + Real(n);
      if (x == gamma) fail(ErrorCode::kOnSpectrum, gamma.to_string() + " is a stable phase");
      if (x < gamma && (!below || x > *below)) below = x;
      if (x > gamma && (!above || x < *above)) above = x;
    }
  }
  if (!below || !above) fail(ErrorCode::kDomainError, "spectrum has no phases around gamma");
  GammaBounds out{*below, *above, true, true};
  double g = gamma.to_double();
  out.minus_exact = !inexact_between(spectrum, below->to_double(), g);
  out.plus_exact = !inexact_between(spectrum, g, above->to_double());
  return out;
}

std::string reason_name(WallDecision::Reason r) {
  switch (r) {
    case WallDecision::Reason::kGammaPlusVacuous: return "gamma-plus-vacuous";
    case WallDecision::Reason::kGammaMinusVacuous: return "gamma-minus-vacuous";
    case WallDecision::Reason::kTwistEscape: return "twist-escape";
    case WallDecision::Reason::kNone: break;
  }
  return "none";
}

WallDecision boundary_at(int p, const Real& gamma, int d) {
  check_gamma(p, gamma, d);
  bool low = gamma < Real::ratio(1, 2);
  auto wall = [](int q, const Real& g) {
    return WallDecision{WallDecision::Kind::kWall, WallDecision::Reason::kNone,
                        OrbitLabel::deg_label(q, g)};
  };
  WallDecision none{WallDecision::Kind::kNoBoundary, WallDecision::Reason::kTwistEscape,
                    std::nullopt};
  if (p == 0) return low ? none : wall(1, Real(1) - gamma);
  if (p == d - 1) return low ? wall(d - 1, gamma) : none;
  return low ? wall(p, gamma) : wall(p + 1, Real(1) - gamma);
}

HeartDescriptor boundary_heart(int p, const Real& gamma, int d) {
  check_gamma(p, gamma, d);
  bool low = gamma < Real::ratio(1, 2);
  if ((p == 0 && low) || (p == d - 1 && !low))
    fail(ErrorCode::kUnsupportedSpectrum,
         "stable phases of Std(" + std::to_string(p) + ") are not known near " +
             gamma.to_string());
  return hrs_tilt(iterated_heart(p, d), phase_split_pair(p, gamma, d), d);
}

long long twist_escape(KClass i_class, KClass e_class, const Real& gamma_minus,
                       const CentralCharge& z) {
  ComplexValue zi = charge_eval(z, i_class);
  ComplexValue ze = charge_eval(z, e_class);
  if (zi.is_zero()) fail(ErrorCode::kZeroCharge, "Z(I) is zero");
  if (ze.is_zero()) fail(ErrorCode::kZeroCharge, "Z(E) is zero");
  double g = gamma_minus.to_double();
  Phase pe = principal_phase(ze);
  if (pe.to_double() <= g + Real::kZeroTolerance)
    fail(ErrorCode::kNeverEscapes, "phase of E does not exceed gamma^-");
  ComplexValue w = zi;
  for (long long n = 1; n <= kEscapeLimit; ++n) {
    w = w + ze;
    if (w.is_zero()) continue;
    Phase ph = principal_phase(w);
    if (ph.to_double() > g + Real::kZeroTolerance) return n;
  }
  fail(ErrorCode::kNeverEscapes, "no escape within the iteration limit");
}

std::string OrbitNode::name() const {
  return (kind == Kind::kCell ? "Std(" : "W_") + std::to_string(p) +
         (kind == Kind::kCell ? ")" : "");
}

OrbitComplex orbit_complex(int d) {
  if (d < 3) fail(ErrorCode::kDomainError, "dimension must be at least 3");
  OrbitComplex c;
  c.nodes.push_back({OrbitNode::Kind::kCell, 0});
  for (int p = 1; p < d; ++p) {
    int w = static_cast<int>(c.nodes.size());
    c.nodes.push_back({OrbitNode::Kind::kWall, p});
    c.nodes.push_back({OrbitNode::Kind::kCell, p});
    c.edges.push_back({w, w - 1});
    c.edges.push_back({w, w + 1});
  }
  return c;
}

OrbitComplex subcomplex(const OrbitComplex& c, const std::vector<int>& keep) {
  std::vector<int> index(c.nodes.size(), -1);
  OrbitComplex out;
  for (int i : keep) {
    if (i < 0 || i >= static_cast<int>(c.nodes.size()))
      fail(ErrorCode::kDomainError, "node index out of range");
    if (index[i] >= 0) continue;
    index[i] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(c.nodes[i]);
  }
  for (const auto& e : c.edges)
    if (index[e.wall] >= 0 && index[e.cell] >= 0) out.edges.push_back({index[e.wall], index[e.cell]});
  return out;
}

namespace {

std::vector<int> component_ids(const OrbitComplex& c) {
  std::vector<int> parent(c.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : c.edges) parent[find(e.wall)] = find(e.cell);
  std::vector<int> out(c.nodes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = find(static_cast<int>(i));
  return out;
}

void free_reduce(std::vector<int>& w) {
  std::vector<int> out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  w = std::move(out);
}

}  // namespace

std::vector<OrbitComplex> components(const OrbitComplex& c) {
  auto ids = component_ids(c);
  std::vector<int> roots;
  for (int r : ids)
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  std::vector<OrbitComplex> out;
  for (int r : roots) {
    std::vector<int> keep;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == r) keep.push_back(static_cast<int>(i));
    out.push_back(subcomplex(c, keep));
  }
  return out;
}

GroupPresentation pi1(const OrbitComplex& c) {
  if (c.nodes.empty()) fail(ErrorCode::kDisconnected, "empty complex");
  auto ids = component_ids(c);
  if (std::any_of(ids.begin(), ids.end(), [&](int r) { return r != ids[0]; }))
    fail(ErrorCode::kDisconnected, "complex is not connected");

  std::vector<int> wall_gen(c.nodes.size(), -1);
  int gens = 0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i)
    if (c.nodes[i].kind == OrbitNode::Kind::kWall) wall_gen[i] = gens++;
  // loops of the underlying graph contribute free generators
  gens += static_cast<int>(c.edges.size()) - static_cast<int>(c.nodes.size()) + 1;

  std::set<std::vector<int>> rels;
  for (const auto& e : c.edges)
    if (c.nodes[e.cell].kind == OrbitNode::Kind::kCell && wall_gen[e.wall] >= 0)
      rels.insert({wall_gen[e.wall] + 1});

  GroupPresentation out;
  out.initial_generators = gens;
  out.initial_relations = static_cast<int>(rels.size());

  std::set<int> alive;
  for (int g = 1; g <= gens; ++g) alive.insert(g);
  std::vector<std::vector<int>> work(rels.begin(), rels.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::vector<int>> uniq;
    for (auto& w : work) {
      free_reduce(w);
      if (!w.empty()) uniq.insert(w);
    }
    work.assign(uniq.begin(), uniq.end());
    for (const auto& w : work) {
      if (w.size() != 1) continue;
      int g = std::abs(w[0]);
      alive.erase(g);
      for (auto& v : work)
        v.erase(std::remove_if(v.begin(), v.end(), [g](int x) { return std::abs(x) == g; }),
                v.end());
      changed = true;
      break;
    }
  }
  out.generators = static_cast<int>(alive.size());
  out.relations = work;
  if (out.generators == 0) out.name = "trivial";
  else if (work.empty() && out.generators == 1) out.name = "Z";
  else if (work.empty()) out.name = "free group of rank " + std::to_string(out.generators);
  else out.name = "presented";
  return out;
}

std::vector<FiberType> fiber_types(const CentralCharge& z, int d) {
  if (d < 3) fail(ErrorCode::kDomainError, "dimension must be at least 3");
  if (z.is_zero()) fail(ErrorCode::kZeroCharge, "zero central charge");
  std::vector<FiberType> out;
  if (z.nondegenerate()) {
    int s = z.det().sign();
    for (int p = 0; p < d; ++p)
      if ((p % 2 == 0 ? 1 : -1) == s) out.push_back({OrbitLabel::std_label(p), "countable"});
    return out;
  }
  // Z(-k(y)) = (a, c), Z(O) = (b, e) = beta (a, c)
  Real uu = z.a * z.a + z.c * z.c;
  if (uu.is_zero()) return out;
  Real beta = (z.a * z.b + z.c * z.e) / uu;
  if (beta.is_zero()) return out;
  Real cot = abs(beta);
  Real gamma = cot == Real(1) && cot.is_exact()
                   ? Real::ratio(1, 4)
                   : Real::approx(std::atan2(1.0, cot.to_double()) / std::numbers::pi);
  for (int p = 1; p < d; ++p) {
    int sgn = p % 2 == 0 ? 1 : -1;
    if ((Real(sgn) * beta).sign() < 0)
      out.push_back({OrbitLabel::deg_label(p, gamma), "positive-dimensional"});
  }
  return out;
}

}  // namespace torstab
