#include "torstab/json_io.hpp"

#include <sstream>

#include "torstab/error.hpp"

namespace torstab {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::kParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.push_back("");
  return out;
}

Json points_json(const std::vector<PointLength>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back({{"point", p.point}, {"length", p.length}});
  return out;
}

std::vector<PointLength> points_from(const Json& j) {
  if (!j.is_array()) bad("point list must be an array");
  std::vector<PointLength> out;
  for (const auto& x : j)
    out.push_back({static_cast<int>(integer(field(x, "point"), "point")),
                   static_cast<int>(integer(field(x, "length"), "length"))});
  return out;
}

}  // namespace

Json to_json(const Real& x) {
  if (x.is_exact()) return x.to_string();
  return Json{{"approx", x.to_double()}};
}

Real real_from_json(const Json& j) {
  if (j.is_string()) return Real::parse(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long long>());
  if (j.is_number_float()) return Real::parse(j.dump());
  if (j.is_object() && j.contains("approx") && j.at("approx").is_number())
    return Real::approx(j.at("approx").get<double>());
  bad("expected a number, \"n/d\" string or {\"approx\": x}");
}

Json to_json(KClass v) { return {{"rk", v.rk}, {"chd", v.chd}}; }

KClass kclass_from_json(const Json& j) {
  if (j.is_string()) return parse_kclass(j.get<std::string>());
  return {integer(field(j, "rk"), "rk"), integer(field(j, "chd"), "chd")};
}

KClass parse_kclass(const std::string& text) {
  auto parts = split_commas(text);
  if (parts.size() != 2) bad("class must be \"rk,chd\"");
  try {
    std::size_t used0 = 0, used1 = 0;
    long long rk = std::stoll(parts[0], &used0);
    long long chd = std::stoll(parts[1], &used1);
    if (used0 != parts[0].size() || used1 != parts[1].size()) bad("class must be \"rk,chd\"");
    return {rk, chd};
  } catch (const std::logic_error&) {
    bad("class must be \"rk,chd\"");
  }
}

Json to_json(const Mat2& m) {
  return Json::array({Json::array({to_json(m.m[0][0]), to_json(m.m[0][1])}),
                      Json::array({to_json(m.m[1][0]), to_json(m.m[1][1])})});
}

Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
      j[0].size() != 2 || j[1].size() != 2)
    bad("matrix must be [[a, b], [c, e]]");
  return Mat2::of(real_from_json(j[0][0]), real_from_json(j[0][1]), real_from_json(j[1][0]),
                  real_from_json(j[1][1]));
}

Json to_json(const CentralCharge& z) {
  return {{"a", to_json(z.a)}, {"b", to_json(z.b)}, {"c", to_json(z.c)}, {"e", to_json(z.e)}};
}

CentralCharge charge_from_json(const Json& j) {
  if (j.is_string()) return parse_charge(j.get<std::string>());
  return {real_from_json(field(j, "a")), real_from_json(field(j, "b")),
          real_from_json(field(j, "c")), real_from_json(field(j, "e"))};
}

CentralCharge parse_charge(const std::string& text) {
  auto parts = split_commas(text);
  if (parts.size() != 4) bad("charge must be \"a,b,c,e\"");
  return {Real::parse(parts[0]), Real::parse(parts[1]), Real::parse(parts[2]),
          Real::parse(parts[3])};
}

Json to_json(const LiftedAuto& g) {
  return {{"T", to_json(g.base())}, {"winding", g.winding()}};
}

LiftedAuto lifted_from_json(const Json& j) {
  Mat2 t = mat2_from_json(field(j, "T"));
  long long w = j.contains("winding") ? integer(j.at("winding"), "winding") : 0;
  try {
    return LiftedAuto(t, w);
  } catch (const Error& err) {
    bad(err.what());
  }
}

Json to_json(const OrbitLabel& label) {
  Json out{{"kind", label.is_std() ? "std" : "deg"}, {"p", label.p}};
  if (label.is_deg()) out["gamma"] = to_json(label.gamma);
  return out;
}

OrbitLabel label_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  int p = static_cast<int>(integer(field(j, "p"), "p"));
  if (kind == "std") return OrbitLabel::std_label(p);
  if (kind == "deg") return OrbitLabel::deg_label(p, real_from_json(field(j, "gamma")));
  bad("label kind must be \"std\" or \"deg\"");
}

Json to_json(const StabPoint& sigma) {
  return {{"label", to_json(sigma.label)}, {"g", to_json(sigma.g)}};
}

StabPoint stab_point_from_json(const Json& j) {
  return {label_from_json(field(j, "label")), lifted_from_json(field(j, "g"))};
}

Json to_json(const FormalSheaf& s) {
  switch (s.kind()) {
    case FormalSheaf::Kind::kTorsion:
      return {{"kind", "torsion"}, {"points", points_json(s.torsion_points())}};
    case FormalSheaf::Kind::kLocallyFree:
      return {{"kind", "locally_free"}, {"rank", s.rank()}};
    case FormalSheaf::Kind::kTorsionFree: {
      Json hn = Json::array();
      for (const auto& a : s.hn()) hn.push_back(to_json(a.cls));
      return {{"kind", "torsion_free"},
              {"rank", s.rank()},
              {"cosupport", points_json(s.cosupport())},
              {"hn", hn}};
    }
    case FormalSheaf::Kind::kMixed: {
      Json out{{"kind", "mixed"}};
      if (auto t = s.torsion_part()) out["torsion"] = to_json(*t);
      if (auto f = s.free_part()) out["free"] = to_json(*f);
      return out;
    }
  }
  return {};
}

FormalSheaf sheaf_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  try {
    if (kind == "torsion") return FormalSheaf::torsion(points_from(field(j, "points")));
    if (kind == "skyscraper")
      return FormalSheaf::skyscraper(
          j.contains("point") ? static_cast<int>(integer(j.at("point"), "point")) : 0);
    if (kind == "locally_free")
      return FormalSheaf::locally_free(static_cast<int>(integer(field(j, "rank"), "rank")));
    if (kind == "torsion_free") {
      std::vector<HNAtom> hn;
      if (j.contains("hn"))
        for (const auto& a : j.at("hn")) hn.push_back({kclass_from_json(a), true});
      std::vector<PointLength> cos;
      if (j.contains("cosupport")) cos = points_from(j.at("cosupport"));
      return FormalSheaf::torsion_free(static_cast<int>(integer(field(j, "rank"), "rank")), cos,
                                       hn);
    }
    if (kind == "mixed") {
      std::optional<FormalSheaf> t, f;
      if (j.contains("torsion")) t = sheaf_from_json(j.at("torsion"));
      if (j.contains("free")) f = sheaf_from_json(j.at("free"));
      return FormalSheaf::mixed(t, f);
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kParseError) throw;
    bad(std::string("invalid sheaf: ") + err.what());
  }
  bad("unknown sheaf kind " + kind.dump());
}

Json to_json(const FormalObject& e) {
  Json graded = Json::object();
  for (const auto& [deg, s] : e.graded()) graded[std::to_string(deg)] = to_json(s);
  Json flags = Json::array();
  for (const auto& f : e.flags()) flags.push_back(Json::array({f.lower, f.upper}));
  return {{"graded", graded}, {"flags", flags}};
}

FormalObject object_from_json(const Json& j) {
  if (j.is_object() && j.contains("sheaf")) {
    int shift = j.contains("shift") ? static_cast<int>(integer(j.at("shift"), "shift")) : 0;
    return FormalObject::of(sheaf_from_json(j.at("sheaf")), shift);
  }
  const Json& graded = field(j, "graded");
  if (!graded.is_object()) bad("\"graded\" must map degrees to sheaves");
  std::map<int, FormalSheaf> pieces;
  for (const auto& [key, value] : graded.items()) {
    int deg = 0;
    try {
      std::size_t used = 0;
      deg = std::stoi(key, &used);
      if (used != key.size()) bad("degree keys must be integers");
    } catch (const std::logic_error&) {
      bad("degree keys must be integers");
    }
    pieces.emplace(deg, sheaf_from_json(value));
  }
  std::vector<ExtensionFlag> flags;
  if (j.contains("flags")) {
    for (const auto& f : j.at("flags")) {
      if (!f.is_array() || f.size() != 2) bad("flags are [lower, upper] pairs");
      flags.push_back({static_cast<int>(integer(f[0], "flag")),
                       static_cast<int>(integer(f[1], "flag"))});
    }
  }
  try {
    return FormalObject(std::move(pieces), std::move(flags));
  } catch (const Error& err) {
    bad(std::string("invalid object: ") + err.what());
  }
}

Json to_json(const SpectrumDescriptor& s) {
  Json points = Json::array();
  for (const auto& p : s.points) points.push_back(to_json(p.value));
  Json unknown = Json::array();
  for (const auto& iv : s.unknown)
    unknown.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"lo_closed", iv.lo_closed},
                       {"hi_closed", iv.hi_closed}});
  Json acc = Json::array();
  for (const auto& a : s.accumulations)
    acc.push_back({{"at", a.at}, {"side", a.side > 0 ? "above" : "below"}});
  return {{"points", points}, {"unknown", unknown}, {"accumulations", acc},
          {"complete", s.complete}};
}

Json to_json(const StableObjects& s) {
  Json fams = Json::array();
  for (const auto& f : s.families) {
    Json x{{"name", f.name}, {"class", to_json(f.cls)}, {"phase", to_json(f.phase.value)},
           {"declared", f.declared}};
    if (f.representative) x["object"] = to_json(*f.representative);
    fams.push_back(x);
  }
  return {{"spectrum", to_json(s.spectrum)}, {"families", fams}, {"incomplete", s.incomplete}};
}

Json to_json(const HNFactor& f) {
  Json out{{"class", to_json(f.cls)}, {"phase", to_json(f.phase.value)}};
  if (f.object) out["object"] = to_json(*f.object);
  return out;
}

Json to_json(const GammaBounds& b) {
  return {{"gamma_minus", to_json(b.minus)}, {"gamma_plus", to_json(b.plus)},
          {"minus_exact", b.minus_exact}, {"plus_exact", b.plus_exact}};
}

Json to_json(const WallDecision& w) {
  if (w.kind == WallDecision::Kind::kWall) return {{"wall", to_json(*w.target)}};
  return {{"no_boundary", reason_name(w.reason)}};
}

Json to_json(const OrbitComplex& c) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    nodes.push_back({{"id", i},
                     {"kind", n.kind == OrbitNode::Kind::kCell ? "cell" : "wall"},
                     {"p", n.p},
                     {"name", n.name()},
                     {"homotopy", n.homotopy()},
                     {"annotation", n.annotation()}});
  }
  Json edges = Json::array();
  for (const auto& e : c.edges)
    edges.push_back({{"wall", e.wall}, {"cell", e.cell}, {"induced", "generator -> trivial"}});
  return {{"nodes", nodes}, {"edges", edges}};
}

Json to_json(const GroupPresentation& g) {
  return {{"group", g.name}, {"generators", g.initial_generators},
          {"relations", g.initial_relations}};
}

Json to_json(const FiberType& f) {
  return {{"family", to_json(f.family)}, {"descriptor", f.descriptor}};
}

}  // namespace torstab
