#include "torstab/heart.hpp"

#include <algorithm>
#include <limits>

#include "torstab/error.hpp"

namespace torstab {

namespace {

bool share_point(const std::vector<PointLength>& x, const std::vector<PointLength>& y) {
  for (const auto& a : x)
    for (const auto& b : y)
      if (a.point == b.point) return true;
  return false;
}

// Z_(0)-phase range of a torsion-free sheaf's declared HN factors.
std::optional<std::pair<double, double>> hn_phase_range(const FormalSheaf& s) {
  if (s.is_locally_free()) return std::pair(0.5, 0.5);
  if (s.hn().empty()) return std::nullopt;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& a : s.hn()) {
    double ph = standard_phase(a.cls);
    lo = std::min(lo, ph);
    hi = std::max(hi, ph);
  }
  return std::pair(lo, hi);
}

// Ext^i(s, t) != 0 for pure sheaves s, t (torsion or torsion-free).
std::optional<std::string> pure_ext(const FormalSheaf& s, const FormalSheaf& t, int i, int d) {
  if (i < 0 || i > d) return std::nullopt;
  if (s.is_torsion()) {
    if (t.is_torsion()) {
      if (share_point(s.torsion_points(), t.torsion_points())) return "common support point";
      return std::nullopt;
    }
    if (t.is_locally_free()) {
      if (i == d) return "Serre duality Ext^d(T, F)";
      return std::nullopt;
    }
    if (i == d) return "Serre duality Ext^d(T, F)";
    if (i >= 1 && share_point(s.torsion_points(), t.cosupport())) return "torsion meets cosupport";
    return std::nullopt;
  }
  // s torsion-free
  if (t.is_torsion()) {
    if (i == 0) return "surjection onto a point";
    if (!s.is_locally_free() && share_point(s.cosupport(), t.torsion_points()))
      return "cosupport meets torsion";
    return std::nullopt;
  }
  if (i == 0) {
    auto rs = hn_phase_range(s), rt = hn_phase_range(t);
    if (rs && rt && rs->first > rt->second + 1e-12) return std::nullopt;
    return "map between torsion-free sheaves";
  }
  return "higher Ext between torsion-free sheaves";
}

std::vector<FormalSheaf> pure_parts(const FormalSheaf& s) {
  std::vector<FormalSheaf> out;
  if (auto t = s.torsion_part()) out.push_back(*t);
  if (auto f = s.free_part()) out.push_back(*f);
  return out;
}

std::map<int, FormalObject> sum_into(std::map<int, FormalObject> acc, int j, const FormalObject& x) {
  if (x.is_zero()) return acc;
  auto it = acc.find(j);
  if (it == acc.end())
    acc.emplace(j, x);
  else
    it->second = direct_sum(it->second, x);
  return acc;
}

bool single_degree_sheaf(const FormalObject& e, int degree, bool (FormalSheaf::*pred)() const) {
  if (e.graded().size() != 1) return false;
  const auto& [deg, s] = *e.graded().begin();
  return deg == degree && (s.*pred)();
}

}  // namespace

std::optional<MorphismWitness> hom_witness(const FormalObject& a, const FormalObject& b, int d) {
  for (const auto& [da, sa] : a.graded()) {
    for (const auto& [db, sb] : b.graded()) {
      int i = da - db;  // Hom(sa[-da], sb[-db]) = Ext^{da - db}(sa, sb)
      for (const auto& pa : pure_parts(sa)) {
        for (const auto& pb : pure_parts(sb)) {
          if (auto why = pure_ext(pa, pb, i, d))
            return MorphismWitness{FormalObject::of(pa, -da), FormalObject::of(pb, -db), i, *why};
        }
      }
    }
  }
  return std::nullopt;
}

TorsionPairSpec torsion_torsionfree_pair() {
  TorsionPairSpec pair;
  pair.name = "(torsion, torsion-free)";
  pair.in_torsion = [](const FormalObject& e) {
    return single_degree_sheaf(e, 0, &FormalSheaf::is_torsion);
  };
  pair.in_free = [](const FormalObject& e) {
    return single_degree_sheaf(e, 0, &FormalSheaf::is_torsion_free);
  };
  pair.decompose = [](const FormalObject& e) {
    if (e.is_zero()) return std::pair(FormalObject{}, FormalObject{});
    auto s = e.cohomology(0);
    if (!s || e.graded().size() != 1)
      fail(ErrorCode::kNotInHeart, e.describe() + " is not a sheaf");
    FormalObject t, f;
    if (auto tp = s->torsion_part()) t = FormalObject::of(*tp);
    if (auto fp = s->free_part()) f = FormalObject::of(*fp);
    return std::pair(t, f);
  };
  return pair;
}

TorsionPairSpec torsion_shifted_locally_free_pair(int k) {
  if (k < 1) fail(ErrorCode::kDomainError, "shift must be >= 1");
  TorsionPairSpec pair;
  pair.name = "(torsion, locally-free[" + std::to_string(k) + "])";
  pair.in_torsion = [](const FormalObject& e) {
    return single_degree_sheaf(e, 0, &FormalSheaf::is_torsion);
  };
  pair.in_free = [k](const FormalObject& e) {
    return single_degree_sheaf(e, -k, &FormalSheaf::is_locally_free);
  };
  pair.decompose = [k](const FormalObject& e) {
    FormalObject t, f;
    for (const auto& [deg, s] : e.graded()) {
      if (deg == 0 && s.is_torsion()) {
        t = direct_sum(t, FormalObject::of(s));
      } else if (deg == -k && s.is_torsion_free()) {
        if (auto q = s.hull_quotient()) t = direct_sum(t, FormalObject::of(*q));
        f = FormalObject::of(*s.reflexive_hull(), k);
      } else {
        fail(ErrorCode::kNotInHeart, e.describe() + " has no (torsion, locally-free[" +
                                         std::to_string(k) + "]) decomposition");
      }
    }
    return std::pair(t, f);
  };
  return pair;
}

TorsionPairSpec trivial_pair() {
  TorsionPairSpec pair;
  pair.name = "(all, 0)";
  pair.in_torsion = [](const FormalObject&) { return true; };
  pair.in_free = [](const FormalObject& e) { return e.is_zero(); };
  pair.decompose = [](const FormalObject& e) { return std::pair(e, FormalObject{}); };
  return pair;
}

HeartDescriptor standard_heart(int d) {
  if (d < 3) fail(ErrorCode::kDomainError, "dimension must be >= 3");
  return HeartDescriptor(
      "Coh(X)",
      [](const FormalObject& e) {
        return std::all_of(e.graded().begin(), e.graded().end(),
                           [](const auto& kv) { return kv.first == 0; });
      },
      [](const FormalObject& e) {
        std::map<int, FormalObject> h;
        for (const auto& [deg, s] : e.graded()) h.emplace(deg, FormalObject::of(s));
        return h;
      });
}

std::optional<MorphismWitness> validate_torsion_pair(const HeartDescriptor& heart,
                                                     const TorsionPairSpec& pair, int d) {
  std::vector<FormalObject> torsion, free;
  for (const auto& e : enumerate_objects(d, 3, 2)) {
    if (!heart.contains(e)) continue;
    if (pair.in_torsion(e)) torsion.push_back(e);
    if (pair.in_free(e)) free.push_back(e);
    auto [t, f] = pair.decompose(e);
    bool ok = (t.is_zero() || pair.in_torsion(t)) && (f.is_zero() || pair.in_free(f)) &&
              t.k_class() + f.k_class() == e.k_class();
    if (!ok) return MorphismWitness{e, e, 0, "no torsion/free decomposition"};
  }
  for (const auto& t : torsion)
    for (const auto& f : free)
      if (auto w = hom_witness(t, f, d)) return w;
  return std::nullopt;
}

HeartDescriptor hrs_tilt(const HeartDescriptor& heart, const TorsionPairSpec& pair, int d) {
  if (auto w = validate_torsion_pair(heart, pair, d)) {
    fail(ErrorCode::kInvalidTorsionPair,
         pair.name + " is not a torsion pair on " + heart.name() + ": " + w->reason + " " +
             w->source.describe() + " -> " + w->target.describe() + " in degree " +
             std::to_string(w->degree));
  }
  auto contains = [heart, pair](const FormalObject& e) {
    for (const auto& [j, x] : heart.cohomology(e)) {
      if (j == 0 && pair.in_torsion(x)) continue;
      if (j == -1 && pair.in_free(x)) continue;
      return false;
    }
    return true;
  };
  auto cohomology = [heart, pair](const FormalObject& e) {
    std::map<int, FormalObject> out;
    for (const auto& [j, x] : heart.cohomology(e)) {
      auto [t, f] = pair.decompose(x);
      out = sum_into(std::move(out), j, t);
      out = sum_into(std::move(out), j + 1, f.shift(1));
    }
    return out;
  };
  return HeartDescriptor(heart.name() + " tilted at " + pair.name, contains, cohomology);
}

HeartDescriptor iterated_heart(int p, int d) {
  if (d < 3 || p < 0 || p >= d)
    fail(ErrorCode::kDomainError, "heart index must satisfy 0 <= p < d, d >= 3");
  HeartDescriptor h = standard_heart(d);
  for (int k = 1; k <= p; ++k)
    h = hrs_tilt(h, k == 1 ? torsion_torsionfree_pair() : torsion_shifted_locally_free_pair(k - 1), d);
  return h;
}

}  // namespace torstab
