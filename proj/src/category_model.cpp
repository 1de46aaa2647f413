#include "torstab/category_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "torstab/error.hpp"

namespace torstab {

namespace {

std::vector<PointLength> normalize_points(std::vector<PointLength> pts) {
  for (const auto& pl : pts)
    if (pl.length < 1) fail(ErrorCode::kDomainError, "point length must be >= 1");
  std::sort(pts.begin(), pts.end(),
            [](const PointLength& x, const PointLength& y) { return x.point < y.point; });
  std::vector<PointLength> out;
  for (const auto& pl : pts) {
    if (!out.empty() && out.back().point == pl.point)
      out.back().length += pl.length;
    else
      out.push_back(pl);
  }
  return out;
}

int total_length(const std::vector<PointLength>& pts) {
  int n = 0;
  for (const auto& pl : pts) n += pl.length;
  return n;
}

bool share_point(const std::vector<PointLength>& x, const std::vector<PointLength>& y) {
  for (const auto& a : x)
    for (const auto& b : y)
      if (a.point == b.point) return true;
  return false;
}

// Slope -chd / rk ordering: phase(x) > phase(y) iff -chd_x/rk_x < -chd_y/rk_y.
bool phase_greater(KClass x, KClass y) { return -x.chd * y.rk < -y.chd * x.rk; }

void validate_hn(int rank, int colength, const std::vector<HNAtom>& hn) {
  if (hn.empty()) return;
  KClass sum{};
  for (std::size_t i = 0; i < hn.size(); ++i) {
    const KClass& c = hn[i].cls;
    if (c.rk < 1) fail(ErrorCode::kDomainError, "HN factor of a torsion-free sheaf needs rank >= 1");
    if (c.chd > 0) fail(ErrorCode::kDomainError, "HN factor phase must lie in (0, 1/2]");
    if (i > 0 && !phase_greater(hn[i - 1].cls, c))
      fail(ErrorCode::kDomainError, "HN factor phases must strictly decrease");
    sum = sum + c;
  }
  if (!(sum == KClass{rank, -colength}))
    fail(ErrorCode::kDomainError, "HN factors do not sum to the sheaf class");
}

// Effective HN factors of the free part, if known.
std::optional<std::vector<HNAtom>> free_hn(const FormalSheaf& s) {
  if (s.rank() == 0) return std::vector<HNAtom>{};
  if (s.colength() == 0) return std::vector<HNAtom>{{KClass{s.rank(), 0}, s.rank() == 1}};
  if (s.hn().empty()) return std::nullopt;
  return s.hn();
}

std::vector<HNAtom> merge_hn(std::vector<HNAtom> x, const std::vector<HNAtom>& y) {
  x.insert(x.end(), y.begin(), y.end());
  std::sort(x.begin(), x.end(),
            [](const HNAtom& a, const HNAtom& b) { return phase_greater(a.cls, b.cls); });
  std::vector<HNAtom> out;
  for (const auto& a : x) {
    if (!out.empty() && !phase_greater(out.back().cls, a.cls)) {
      out.back().cls = out.back().cls + a.cls;
      out.back().stable = false;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

std::string points_string(const std::vector<PointLength>& pts) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? "," : "") << pts[i].point << ":" << pts[i].length;
  os << "}";
  return os.str();
}

}  // namespace

void FormalSheaf::classify() {
  if (rank_ == 0) {
    if (torsion_.empty()) fail(ErrorCode::kDomainError, "zero sheaf is not a formal sheaf");
    if (!cosupport_.empty()) fail(ErrorCode::kDomainError, "cosupport without rank");
    kind_ = Kind::kTorsion;
    hn_.clear();
    return;
  }
  if (cosupport_.empty()) hn_.clear();
  if (!torsion_.empty())
    kind_ = Kind::kMixed;
  else
    kind_ = cosupport_.empty() ? Kind::kLocallyFree : Kind::kTorsionFree;
}

FormalSheaf FormalSheaf::torsion(std::vector<PointLength> points) {
  FormalSheaf s;
  s.torsion_ = normalize_points(std::move(points));
  s.classify();
  return s;
}

FormalSheaf FormalSheaf::locally_free(int rank) {
  if (rank < 1) fail(ErrorCode::kDomainError, "locally free sheaf needs rank >= 1");
  FormalSheaf s;
  s.rank_ = rank;
  s.classify();
  return s;
}

FormalSheaf FormalSheaf::torsion_free(int rank, std::vector<PointLength> cosupport,
                                      std::vector<HNAtom> hn) {
  if (rank < 1) fail(ErrorCode::kDomainError, "torsion-free sheaf needs rank >= 1");
  FormalSheaf s;
  s.rank_ = rank;
  s.cosupport_ = normalize_points(std::move(cosupport));
  if (!s.cosupport_.empty()) {
    validate_hn(rank, total_length(s.cosupport_), hn);
    s.hn_ = std::move(hn);
  }
  s.classify();
  return s;
}

FormalSheaf FormalSheaf::mixed(std::optional<FormalSheaf> torsion_part,
                               std::optional<FormalSheaf> free_part) {
  if (!torsion_part && !free_part) fail(ErrorCode::kDomainError, "mixed sheaf needs a part");
  if (torsion_part && !torsion_part->is_torsion())
    fail(ErrorCode::kDomainError, "torsion part must be a torsion sheaf");
  if (free_part && !free_part->is_torsion_free())
    fail(ErrorCode::kDomainError, "free part must be torsion-free");
  FormalSheaf s;
  if (torsion_part) s.torsion_ = torsion_part->torsion_;
  if (free_part) {
    s.rank_ = free_part->rank_;
    s.cosupport_ = free_part->cosupport_;
    s.hn_ = free_part->hn_;
  }
  s.classify();
  return s;
}

KClass FormalSheaf::k_class() const {
  return {rank_, static_cast<long long>(total_length(torsion_) - total_length(cosupport_))};
}

int FormalSheaf::colength() const { return total_length(cosupport_); }
int FormalSheaf::torsion_length() const { return total_length(torsion_); }
int FormalSheaf::mass() const { return rank_ + colength() + torsion_length(); }

std::optional<FormalSheaf> FormalSheaf::torsion_part() const {
  if (torsion_.empty()) return std::nullopt;
  return torsion(torsion_);
}

std::optional<FormalSheaf> FormalSheaf::free_part() const {
  if (rank_ == 0) return std::nullopt;
  return torsion_free(rank_, cosupport_, hn_);
}

std::optional<FormalSheaf> FormalSheaf::reflexive_hull() const {
  if (rank_ == 0) return std::nullopt;
  return locally_free(rank_);
}

std::optional<FormalSheaf> FormalSheaf::hull_quotient() const {
  if (cosupport_.empty()) return std::nullopt;
  return torsion(cosupport_);
}

std::string FormalSheaf::describe() const {
  std::string t = torsion_.empty() ? "" : "T" + points_string(torsion_);
  std::string f;
  if (rank_ > 0) {
    f = cosupport_.empty() ? "LF(" + std::to_string(rank_) + ")"
                           : "TF(" + std::to_string(rank_) + ";" + points_string(cosupport_) + ")";
  }
  if (!t.empty() && !f.empty()) return t + "+" + f;
  return t.empty() ? f : t;
}

FormalSheaf direct_sum(const FormalSheaf& x, const FormalSheaf& y) {
  std::optional<FormalSheaf> tors;
  std::vector<PointLength> pts = x.torsion_points();
  pts.insert(pts.end(), y.torsion_points().begin(), y.torsion_points().end());
  if (!pts.empty()) tors = FormalSheaf::torsion(pts);
  std::optional<FormalSheaf> free;
  int rank = x.rank() + y.rank();
  if (rank > 0) {
    std::vector<PointLength> cos = x.cosupport();
    cos.insert(cos.end(), y.cosupport().begin(), y.cosupport().end());
    std::vector<HNAtom> hn;
    auto hx = free_hn(x), hy = free_hn(y);
    if (hx && hy && !cos.empty()) hn = merge_hn(*hx, *hy);
    free = FormalSheaf::torsion_free(rank, cos, hn);
  }
  return FormalSheaf::mixed(tors, free);
}

double standard_phase(KClass v) {
  return std::atan2(static_cast<double>(v.rk), static_cast<double>(-v.chd)) / std::numbers::pi;
}

FormalObject::FormalObject(std::map<int, FormalSheaf> graded, std::vector<ExtensionFlag> flags)
    : graded_(std::move(graded)) {
  std::set<std::pair<int, int>> seen;
  for (const auto& f : flags) {
    if (f.lower >= f.upper) fail(ErrorCode::kDomainError, "extension flag needs lower < upper");
    if (!graded_.count(f.lower) || !graded_.count(f.upper))
      fail(ErrorCode::kDomainError, "extension flag refers to a zero cohomology sheaf");
    if (seen.insert({f.lower, f.upper}).second) flags_.push_back(f);
  }
  std::sort(flags_.begin(), flags_.end(), [](const ExtensionFlag& a, const ExtensionFlag& b) {
    return std::pair(a.lower, a.upper) < std::pair(b.lower, b.upper);
  });
}

FormalObject FormalObject::of(const FormalSheaf& s, int shift) {
  return FormalObject({{-shift, s}});
}

std::optional<FormalSheaf> FormalObject::cohomology(int degree) const {
  auto it = graded_.find(degree);
  if (it == graded_.end()) return std::nullopt;
  return it->second;
}

bool FormalObject::has_nonsplit(int lower, int upper) const {
  return std::any_of(flags_.begin(), flags_.end(), [&](const ExtensionFlag& f) {
    return f.lower == lower && f.upper == upper;
  });
}

KClass FormalObject::k_class() const {
  KClass sum{};
  for (const auto& [deg, s] : graded_) sum = sum + ((deg % 2 == 0) ? s.k_class() : -s.k_class());
  return sum;
}

int FormalObject::mass() const {
  int m = 0;
  for (const auto& [deg, s] : graded_) m += s.mass();
  return m;
}

FormalObject FormalObject::shift(int n) const {
  std::map<int, FormalSheaf> g;
  for (const auto& [deg, s] : graded_) g.emplace(deg - n, s);
  std::vector<ExtensionFlag> f;
  for (const auto& fl : flags_) f.push_back({fl.lower - n, fl.upper - n});
  return FormalObject(std::move(g), std::move(f));
}

std::string FormalObject::describe() const {
  if (graded_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [deg, s] : graded_) {
    os << (first ? "" : " (+) ") << s.describe();
    if (deg != 0) os << "[" << -deg << "]";
    first = false;
  }
  for (const auto& f : flags_) os << " nonsplit(" << f.lower << "," << f.upper << ")";
  return os.str();
}

FormalObject direct_sum(const FormalObject& x, const FormalObject& y) {
  std::map<int, FormalSheaf> g = x.graded();
  for (const auto& [deg, s] : y.graded()) {
    auto it = g.find(deg);
    if (it == g.end())
      g.emplace(deg, s);
    else
      it->second = direct_sum(it->second, s);
  }
  std::vector<ExtensionFlag> flags = x.flags();
  flags.insert(flags.end(), y.flags().begin(), y.flags().end());
  return FormalObject(std::move(g), std::move(flags));
}

bool extensions_allowed(const FormalObject& e, int d) {
  for (const auto& f : e.flags()) {
    const FormalSheaf& quotient = e.graded().at(f.upper);
    const FormalSheaf& sub = e.graded().at(f.lower);
    int k = 1 + f.upper - f.lower;  // Ext^k(H^upper, H^lower)
    if (k > d) return false;
    if (!quotient.is_torsion()) continue;
    if (sub.is_locally_free()) {
      if (k != d) return false;
    } else if (sub.is_torsion()) {
      if (!share_point(quotient.torsion_points(), sub.torsion_points())) return false;
    } else if (sub.kind() == FormalSheaf::Kind::kTorsionFree) {
      if (k != d && !share_point(quotient.torsion_points(), sub.cosupport())) return false;
    }
  }
  return true;
}

namespace {

void check_heart_index(int p, int d) {
  if (d < 3) fail(ErrorCode::kDomainError, "dimension must be >= 3");
  if (p < 0 || p >= d) fail(ErrorCode::kDomainError, "heart index must satisfy 0 <= p < d");
}

}  // namespace

bool heart_membership(const FormalObject& e, int p, int d) {
  check_heart_index(p, d);
  if (e.is_zero()) return true;
  if (!extensions_allowed(e, d)) return false;
  for (const auto& [deg, s] : e.graded()) {
    if (p == 0) {
      if (deg != 0) return false;
    } else if (deg == 0) {
      if (!s.is_torsion()) return false;
    } else if (deg == -p) {
      if (!s.is_torsion_free()) return false;
      if (p >= 2 && !s.is_locally_free()) return false;
    } else {
      return false;
    }
  }
  return true;
}

CanonicalParts canonical_decomposition(const FormalObject& e, int p, int d) {
  check_heart_index(p, d);
  if (p == 0) fail(ErrorCode::kDomainError, "canonical decomposition needs p >= 1");
  if (!heart_membership(e, p, d))
    fail(ErrorCode::kNotInHeart, e.describe() + " is not in Coh_(" + std::to_string(p) + ")");
  CanonicalParts parts;
  if (auto f = e.cohomology(-p)) parts.free_part = FormalObject::of(*f, p);
  if (auto t = e.cohomology(0)) parts.torsion_part = FormalObject::of(*t);
  return parts;
}

KernelCokernel torsion_kernel_cokernel(const FormalSheaf& source, const FormalSheaf& target,
                                       const std::vector<PointMorphism>& local, int p, int d) {
  check_heart_index(p, d);
  if (!source.is_torsion() || !target.is_torsion())
    fail(ErrorCode::kInconsistentMorphism, "source and target must be torsion sheaves");
  std::map<int, int> src, tgt;
  for (const auto& pl : source.torsion_points()) src[pl.point] = pl.length;
  for (const auto& pl : target.torsion_points()) tgt[pl.point] = pl.length;
  std::map<int, std::pair<int, int>> ker_coker;
  for (const auto& [pt, len] : src) ker_coker[pt] = {len, 0};
  for (const auto& [pt, len] : tgt) ker_coker[pt].second = len;
  std::set<int> given;
  for (const auto& m : local) {
    if (!given.insert(m.point).second)
      fail(ErrorCode::kInconsistentMorphism, "point listed twice");
    int s = src.count(m.point) ? src[m.point] : 0;
    int t = tgt.count(m.point) ? tgt[m.point] : 0;
    if (s == 0 && t == 0)
      fail(ErrorCode::kInconsistentMorphism, "point outside both supports");
    if (m.kernel_length < 0 || m.cokernel_length < 0 || m.kernel_length > s ||
        m.cokernel_length > t || s - m.kernel_length != t - m.cokernel_length)
      fail(ErrorCode::kInconsistentMorphism,
           "lengths at point " + std::to_string(m.point) + " do not fit source/target");
    ker_coker[m.point] = {m.kernel_length, m.cokernel_length};
  }
  std::vector<PointLength> ker, coker;
  for (const auto& [pt, kc] : ker_coker) {
    if (kc.first > 0) ker.push_back({pt, kc.first});
    if (kc.second > 0) coker.push_back({pt, kc.second});
  }
  // Torsion sheaves form an abelian subcategory of every Coh_(p), so the
  // result is the same for all p.
  KernelCokernel out;
  if (!ker.empty()) out.kernel = FormalObject::of(FormalSheaf::torsion(ker));
  if (!coker.empty()) out.cokernel = FormalObject::of(FormalSheaf::torsion(coker));
  return out;
}

namespace {

bool points_le(const std::vector<PointLength>& small, const std::vector<PointLength>& big) {
  for (const auto& s : small) {
    auto it = std::find_if(big.begin(), big.end(), [&](const PointLength& b) { return b.point == s.point; });
    if (it == big.end() || it->length < s.length) return false;
  }
  return true;
}

std::vector<PointLength> reduce_at(const std::vector<PointLength>& pts, std::size_t i) {
  std::vector<PointLength> out = pts;
  if (--out[i].length == 0) out.erase(out.begin() + static_cast<long>(i));
  return out;
}

bool in_heart_shape(const FormalObject& e, int p) {
  for (const auto& [deg, s] : e.graded()) {
    if (deg == 0 && s.is_torsion()) continue;
    if (deg == -p && s.is_torsion_free() && (p == 1 || s.is_locally_free())) continue;
    return false;
  }
  return true;
}

}  // namespace

std::vector<FormalObject> model_quotients(const FormalObject& e, int p) {
  if (p < 1) fail(ErrorCode::kDomainError, "quotient moves are modelled for p >= 1");
  if (!in_heart_shape(e, p)) fail(ErrorCode::kNotInHeart, e.describe() + " is not a heart object");
  std::vector<FormalObject> out;
  auto rebuild = [&](std::optional<FormalSheaf> tors, std::optional<FormalSheaf> free) {
    std::map<int, FormalSheaf> g;
    std::vector<ExtensionFlag> flags;
    if (tors) g.emplace(0, *tors);
    if (free) g.emplace(-p, *free);
    if (tors && free && e.has_nonsplit(-p, 0)) flags.push_back({-p, 0});
    out.emplace_back(std::move(g), std::move(flags));
  };
  auto tors = e.cohomology(0);
  auto free = e.cohomology(-p);
  if (tors) {
    const auto& pts = tors->torsion_points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto reduced = reduce_at(pts, i);
      rebuild(reduced.empty() ? std::nullopt : std::optional(FormalSheaf::torsion(reduced)), free);
    }
  }
  if (free) {
    const auto& cos = free->cosupport();
    for (std::size_t i = 0; i < cos.size(); ++i)
      rebuild(tors, FormalSheaf::torsion_free(free->rank(), reduce_at(cos, i)));
    if (free->is_locally_free())
      rebuild(tors, free->rank() > 1 ? std::optional(FormalSheaf::locally_free(free->rank() - 1))
                                     : std::nullopt);
  }
  return out;
}

bool is_model_quotient(const FormalObject& e, const FormalObject& quotient, int p) {
  if (p < 1 || !in_heart_shape(e, p) || !in_heart_shape(quotient, p)) return false;
  if (quotient == e) return true;
  auto et = e.cohomology(0), qt = quotient.cohomology(0);
  if (qt && (!et || !points_le(qt->torsion_points(), et->torsion_points()))) return false;
  auto ef = e.cohomology(-p), qf = quotient.cohomology(-p);
  if (qf) {
    if (!ef || qf->rank() > ef->rank()) return false;
    if (qf->rank() == ef->rank()) {
      if (!points_le(qf->cosupport(), ef->cosupport())) return false;
    } else if (!qf->is_locally_free()) {
      return false;
    }
  }
  return true;
}

int chain_stabilizes(const FormalObject& start,
                     const std::function<FormalObject(const FormalObject&)>& next, int p,
                     int max_steps) {
  FormalObject current = start;
  for (int n = 0; n < max_steps; ++n) {
    FormalObject following = next(current);
    if (!is_model_quotient(current, following, p))
      fail(ErrorCode::kDomainError, "chain step " + std::to_string(n) + " is not a quotient");
    if (following == current) return n;
    current = std::move(following);
  }
  fail(ErrorCode::kDomainError, "chain did not stabilize within the step budget");
}

namespace {

// All ways to place total length `n` on points [0, pool).
void distributions(int n, int pool, std::vector<std::vector<PointLength>>& out) {
  std::vector<int> lens(static_cast<std::size_t>(pool), 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == pool - 1) {
      lens[static_cast<std::size_t>(idx)] = left;
      std::vector<PointLength> pts;
      for (int i = 0; i < pool; ++i)
        if (lens[static_cast<std::size_t>(i)] > 0) pts.push_back({i, lens[static_cast<std::size_t>(i)]});
      out.push_back(pts);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      lens[static_cast<std::size_t>(idx)] = k;
      rec(idx + 1, left - k);
    }
  };
  rec(0, n);
}

// Sequences of (r_i, -s_i) with strictly decreasing phase summing to (r, -q).
void hn_declarations(int r, int q, KClass last, bool has_last, std::vector<HNAtom>& acc,
                     std::vector<std::vector<HNAtom>>& out) {
  if (r == 0 && q == 0) {
    out.push_back(acc);
    return;
  }
  if (r == 0) return;
  for (int ri = 1; ri <= r; ++ri) {
    for (int si = 0; si <= q; ++si) {
      KClass c{ri, -si};
      if (has_last && !phase_greater(last, c)) continue;
      acc.push_back({c, true});
      hn_declarations(r - ri, q - si, c, true, acc, out);
      acc.pop_back();
    }
  }
}

}  // namespace

std::vector<FormalSheaf> enumerate_sheaves(int max_mass, int point_pool) {
  std::vector<FormalSheaf> torsion, free, out;
  for (int t = 1; t <= max_mass; ++t) {
    std::vector<std::vector<PointLength>> ds;
    distributions(t, point_pool, ds);
    for (auto& pts : ds) torsion.push_back(FormalSheaf::torsion(pts));
  }
  for (int r = 1; r <= max_mass; ++r) {
    free.push_back(FormalSheaf::locally_free(r));
    for (int q = 1; r + q <= max_mass; ++q) {
      std::vector<std::vector<PointLength>> ds;
      distributions(q, point_pool, ds);
      std::vector<std::vector<HNAtom>> decls;
      std::vector<HNAtom> acc;
      hn_declarations(r, q, {}, false, acc, decls);
      for (auto& pts : ds)
        for (auto& hn : decls) free.push_back(FormalSheaf::torsion_free(r, pts, hn));
    }
  }
  out = torsion;
  out.insert(out.end(), free.begin(), free.end());
  for (const auto& t : torsion)
    for (const auto& f : free)
      if (t.mass() + f.mass() <= max_mass) out.push_back(FormalSheaf::mixed(t, f));
  return out;
}

std::vector<FormalObject> enumerate_objects(int d, int max_mass, int point_pool) {
  auto sheaves = enumerate_sheaves(max_mass, point_pool);
  std::vector<FormalObject> out;
  for (int deg = -d; deg <= 1; ++deg)
    for (const auto& s : sheaves) out.push_back(FormalObject({{deg, s}}));
  for (int lo = -d; lo <= 1; ++lo) {
    for (int hi = lo + 1; hi <= 1; ++hi) {
      for (const auto& a : sheaves) {
        for (const auto& b : sheaves) {
          if (a.mass() + b.mass() > max_mass) continue;
          out.push_back(FormalObject({{lo, a}, {hi, b}}));
          FormalObject nonsplit({{lo, a}, {hi, b}}, {{lo, hi}});
          if (extensions_allowed(nonsplit, d)) out.push_back(std::move(nonsplit));
        }
      }
    }
  }
  return out;
}

std::vector<FormalObject> enumerate_heart(int p, int d, int max_mass, int point_pool) {
  std::vector<FormalObject> out;
  for (auto& e : enumerate_objects(d, max_mass, point_pool))
    if (heart_membership(e, p, d)) out.push_back(std::move(e));
  return out;
}

}  // namespace torstab
