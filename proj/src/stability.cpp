#include "torstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "torstab/error.hpp"

namespace torstab {

namespace {

constexpr double kPhaseSlack = 1e-9;

int parity_sign(int p) { return p % 2 == 0 ? 1 : -1; }

void check_index(int p, int d) {
  if (d < 3 || p < 0 || p >= d)
    fail(ErrorCode::kDomainError, "heart index must satisfy 0 <= p < d, d >= 3");
}

Phase exact_phase(long long num, long long den) { return Phase{Real::ratio(num, den)}; }

// Winding that makes the lift of t send phase 1 to target.
long long winding_at_one(const Mat2& t, const Phase& target) {
  Phase canonical = lift_eval(LiftedAuto(t, 0), exact_phase(1, 1));
  double half = (target.to_double() - canonical.to_double()) / 2.0;
  return std::llround(half);
}

Mat2 similarity(const Real& u0, const Real& u1) { return Mat2::of(u0, -u1, u1, u0); }

Phase base_phase_of(KClass v) {
  if (v.rk == 0) return exact_phase(1, 1);
  if (v.chd == 0) return exact_phase(1, 2);
  if (v.rk == -v.chd) return exact_phase(1, 4);
  return Phase{Real::approx(standard_phase(v))};
}

}  // namespace

Real cot_pi(const Real& gamma) {
  if (gamma == Real::ratio(1, 4) && gamma.is_exact()) return Real(1);
  double x = std::numbers::pi * gamma.to_double();
  return Real::approx(std::cos(x) / std::sin(x));
}

StabPoint make_std(int p, int d) {
  check_index(p, d);
  return {OrbitLabel::std_label(p), LiftedAuto::identity()};
}

StabPoint make_deg(int p, const Real& gamma, int d) {
  check_index(p, d);
  if (p == 0) fail(ErrorCode::kDomainError, "Deg(p, gamma) needs p >= 1");
  if (gamma.sign() <= 0 || !(gamma < Real::ratio(1, 2)))
    fail(ErrorCode::kDomainError, "gamma must lie in (0, 1/2)");
  return {OrbitLabel::deg_label(p, gamma), LiftedAuto::identity()};
}

CentralCharge base_charge(const OrbitLabel& label) {
  if (label.is_std()) return CentralCharge::standard(label.p);
  Real b = -Real(parity_sign(label.p)) * cot_pi(label.gamma);
  return {Real(1), b, Real(0), Real(0)};
}

CentralCharge charge(const StabPoint& sigma) {
  return act_on_charge_left(sigma.g, base_charge(sigma.label));
}

StabPoint normalize(const StabPoint& sigma) {
  if (sigma.label.is_std()) return sigma;
  const Mat2& t = sigma.g.base();
  Mat2 s = similarity(t.m[0][0], t.m[1][0]);
  Phase target = lift_eval(sigma.g, exact_phase(1, 1));
  return {sigma.label, LiftedAuto(s, winding_at_one(s, target))};
}

StabPoint act(const LiftedAuto& g, const StabPoint& sigma) {
  return normalize({sigma.label, gl_compose(g, sigma.g)});
}

SpectrumDescriptor spectrum_descriptor(const OrbitLabel& label, int d) {
  check_index(label.p, d);
  SpectrumDescriptor out;
  if (label.is_deg()) {
    out.points = {exact_phase(1, 1)};
    return out;
  }
  out.points = {exact_phase(1, 2), exact_phase(1, 1)};
  if (label.p == 0) {
    for (int n = 1; n <= kDeclaredIdealSheaves; ++n)
      out.points.push_back(base_phase_of({1, -n}));
    out.unknown.push_back({0.0, 0.5, false, false});
    out.accumulations.push_back({0.0, +1});
    out.complete = false;
  } else if (label.p == d - 1) {
    out.unknown.push_back({0.5, 1.0, true, true});
    out.accumulations.push_back({1.0, -1});
    out.complete = false;
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

FormalSheaf ideal_sheaf(int n) {
  if (n < 1) fail(ErrorCode::kDomainError, "ideal sheaf needs n >= 1 points");
  return FormalSheaf::torsion_free(1, {{0, n}}, {HNAtom{{1, -n}, true}});
}

StableObjects stable_objects(const StabPoint& sigma, int d, int ideal_count) {
  StableObjects out;
  out.spectrum = spectrum_descriptor(sigma.label, d);
  out.incomplete = !out.spectrum.complete;
  int p = sigma.label.p;
  auto transport = [&](const Phase& phi) { return lift_eval(sigma.g, phi); };
  FormalObject sky = FormalObject::of(FormalSheaf::skyscraper(0));
  FormalObject line = FormalObject::of(FormalSheaf::locally_free(1), p);
  KClass line_class{parity_sign(p), 0};
  out.families.push_back({"k(y)", kSkyscraperClass, transport(exact_phase(1, 1)), sky, false});
  Phase line_phase = sigma.label.is_deg() ? exact_phase(1, 1) : exact_phase(1, 2);
  std::string line_name = p == 0 ? "L" : "L[" + std::to_string(p) + "]";
  out.families.push_back({line_name, line_class, transport(line_phase), line, false});
  if (sigma.label.is_std() && p == 0) {
    for (int n = 1; n <= ideal_count; ++n) {
      KClass v{1, -n};
      out.families.push_back({"I_" + std::to_string(n), v, transport(base_phase_of(v)),
                              FormalObject::of(ideal_sheaf(n)), true});
    }
  }
  return out;
}

std::vector<HNFactor> hn_filtration(const StabPoint& sigma, const FormalObject& e, int d) {
  int p = sigma.label.p;
  check_index(p, d);
  if (!heart_membership(e, p, d))
    fail(ErrorCode::kNotInHeart,
         e.describe() + " is not in Coh_(" + std::to_string(p) + ")");
  std::vector<HNFactor> out;
  if (e.is_zero()) return out;
  auto transport = [&](const Phase& phi) { return lift_eval(sigma.g, phi); };
  if (sigma.label.is_deg()) {
    out.push_back({e.k_class(), transport(exact_phase(1, 1)), e});
    return out;
  }
  if (p == 0) {
    FormalSheaf s = *e.cohomology(0);
    if (auto t = s.torsion_part())
      out.push_back({t->k_class(), transport(exact_phase(1, 1)), FormalObject::of(*t)});
    if (auto f = s.free_part()) {
      if (f->is_locally_free()) {
        out.push_back({f->k_class(), transport(exact_phase(1, 2)), FormalObject::of(*f)});
      } else if (f->hn().empty()) {
        fail(ErrorCode::kMissingHNData, "no HN data declared for " + f->describe());
      } else {
        bool single = f->hn().size() == 1;
        for (const auto& atom : f->hn()) {
          std::optional<FormalObject> obj;
          if (single) obj = FormalObject::of(*f);
          out.push_back({atom.cls, transport(base_phase_of(atom.cls)), obj});
        }
      }
    }
    return out;
  }
  if (p == d - 1 && !e.flags().empty())
    fail(ErrorCode::kUndeterminedHN,
         "HN filtration of a non-split object of Coh_(d-1) is not determined by the model");
  std::optional<FormalSheaf> torsion = e.cohomology(0);
  std::optional<FormalSheaf> hull;
  if (auto f = e.cohomology(-p)) {
    hull = f->reflexive_hull();
    if (auto q = f->hull_quotient())
      torsion = torsion ? direct_sum(*torsion, *q) : *q;
  }
  if (torsion)
    out.push_back({torsion->k_class(), transport(exact_phase(1, 1)), FormalObject::of(*torsion)});
  if (hull) {
    FormalObject shifted = FormalObject::of(*hull, p);
    out.push_back({shifted.k_class(), transport(exact_phase(1, 2)), shifted});
  }
  return out;
}

Classification classify(const CentralCharge& z, const Phase& phi_sky, const Phase& psi_line,
                        int d) {
  if (d < 3) fail(ErrorCode::kDomainError, "dimension must be at least 3");
  Mat2 m = z.matrix();
  ComplexValue sky = charge_eval(z, kSkyscraperClass);
  if (sky.is_zero())
    fail(ErrorCode::kNotNumericallyConsistent, "skyscraper sheaves have zero charge");
  const Real& phi = phi_sky.value;
  const Real& psi = psi_line.value;
  try {
    Phase got = phase_of_value(sky, phi - Real(1));
    if (std::abs(got.to_double() - phi.to_double()) > kPhaseSlack) throw Error(ErrorCode::kDomainError, "");
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kZeroCharge) throw;
    fail(ErrorCode::kNotInU, "charge of k(y) does not point along phase " + phi.to_string());
  }
  // psi + p in (phi - 1, phi]
  long long p = (phi - Real(1) - psi).floor() + 1;
  if (p < 0 || p >= d)
    fail(ErrorCode::kNotInU, "line bundle phase puts the heart outside Coh_(0..d-1)");
  int ip = static_cast<int>(p);
  int sgn = parity_sign(ip);

  LiftedAuto rot = LiftedAuto::rotation(phi - Real(1));
  Mat2 mn = rot.base().inverse() * m;
  const Real& a = mn.m[0][0];
  const Real& b = mn.m[0][1];
  const Real& e = mn.m[1][1];
  if (a.sign() <= 0 || !mn.m[1][0].is_zero())
    fail(ErrorCode::kNotInU, "charge of k(y) does not point along phase " + phi.to_string());
  Real psi_n = psi - phi + Real(1);

  if (e.is_zero()) {
    if (ip == 0) fail(ErrorCode::kNotInU, "degenerate charge with line bundles in the heart");
    if (std::abs((psi_n + Real(ip)).to_double() - 1.0) > kPhaseSlack || (Real(sgn) * b).sign() >= 0)
      fail(ErrorCode::kNotNumericallyConsistent,
           "line bundle phase disagrees with its charge");
    Real cot = -Real(sgn) * b / a;
    Real gamma = cot == Real(1) && cot.is_exact()
                     ? Real::ratio(1, 4)
                     : Real::approx(std::atan2(1.0, cot.to_double()) / std::numbers::pi);
    Mat2 s = similarity(m.m[0][0], m.m[1][0]);
    return {OrbitLabel::deg_label(ip, gamma), LiftedAuto(s, winding_at_one(s, phi_sky))};
  }
  if ((Real(sgn) * e).sign() <= 0)
    fail(ErrorCode::kNotNumericallyConsistent, "line bundle phase disagrees with its charge");
  Phase line_phase = phase_of_value({b, e}, Real(-ip));
  if (std::abs(line_phase.to_double() - psi_n.to_double()) > kPhaseSlack)
    fail(ErrorCode::kNotNumericallyConsistent, "line bundle phase disagrees with its charge");
  Mat2 t = m * CentralCharge::standard(ip).matrix().inverse();
  return {OrbitLabel::std_label(ip), LiftedAuto(t, winding_at_one(t, phi_sky))};
}

}  // namespace torstab
