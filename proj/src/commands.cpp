#include "torstab/commands.hpp"

#include <functional>
#include <map>

#include "torstab/error.hpp"
#include "torstab/helix_svg.hpp"

namespace torstab {

namespace {

using Handler = std::function<Json(const Json&, int)>;

const Json& need(const Json& req, const char* key) {
  if (!req.contains(key)) fail(ErrorCode::kParseError, std::string("missing --") + key);
  return req.at(key);
}

int int_field(const Json& req, const char* key) {
  const Json& v = need(req, key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      int x = std::stoi(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    } catch (const std::logic_error&) {
    }
  }
  fail(ErrorCode::kParseError, std::string("--") + key + " must be an integer");
}

Json parse_embedded(const Json& v) {
  if (!v.is_string()) return v;
  const std::string& text = v.get_ref<const std::string&>();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) return v;
  try {
    return Json::parse(v.get<std::string>());
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParseError, std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto with_flag(const char* key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseError) throw;
    std::string msg = e.what();
    std::string flag = std::string("--") + key;
    if (msg.rfind(flag, 0) == 0 || msg.rfind("missing --", 0) == 0) throw;
    fail(ErrorCode::kParseError, flag + ": " + msg);
  }
}

Real real_field(const Json& req, const char* key) {
  return with_flag(key, [&] { return real_from_json(need(req, key)); });
}

CentralCharge charge_field(const Json& req, const char* key) {
  return with_flag(key, [&] { return charge_from_json(parse_embedded(need(req, key))); });
}

FormalObject object_field(const Json& req, const char* key) {
  return with_flag(key, [&] { return object_from_json(parse_embedded(need(req, key))); });
}

LiftedAuto lifted_field(const Json& req, const char* key) {
  return with_flag(key, [&] { return lifted_from_json(parse_embedded(need(req, key))); });
}

// --point, or --p with optional --gamma
StabPoint point_from(const Json& req, int d) {
  if (req.contains("point"))
    return with_flag("point", [&] { return stab_point_from_json(parse_embedded(req.at("point"))); });
  int p = int_field(req, "p");
  if (req.contains("gamma")) return make_deg(p, real_field(req, "gamma"), d);
  return make_std(p, d);
}

Json with_schema(const std::string& name, Json body) {
  body["schema"] = "torstab." + name + "/1";
  return body;
}

OrbitComplex complex_from(const Json& req, int d) {
  OrbitComplex c = orbit_complex(d);
  if (!req.contains("keep")) return c;
  const Json& keep = req.at("keep");
  if (!keep.is_array()) fail(ErrorCode::kParseError, "--keep must list node indices");
  std::vector<int> idx;
  for (const auto& k : keep) {
    if (!k.is_number_integer()) fail(ErrorCode::kParseError, "--keep must list node indices");
    idx.push_back(k.get<int>());
  }
  return subcomplex(c, idx);
}

Json cmd_classify(const Json& req, int d) {
  CentralCharge z = charge_field(req, "charge");
  Phase phi{real_field(req, "phi")};
  Phase psi{real_field(req, "psi")};
  Classification c = classify(z, phi, psi, d);
  return with_schema("classify", {{"label", to_json(c.label)}, {"g", to_json(c.g)}});
}

Json cmd_act(const Json& req, int d) {
  StabPoint sigma = point_from(req, d);
  if (sigma.label.p >= d) fail(ErrorCode::kDomainError, "label index exceeds d - 1");
  StabPoint out = req.contains("by") ? act(lifted_field(req, "by"), sigma) : normalize(sigma);
  Json body = to_json(out);
  body["charge"] = to_json(charge(out));
  return with_schema("point", body);
}

Json cmd_hn(const Json& req, int d) {
  StabPoint sigma = point_from(req, d);
  FormalObject e = object_field(req, "object");
  Json factors = Json::array();
  for (const auto& f : hn_filtration(sigma, e, d)) factors.push_back(to_json(f));
  return with_schema("hn", {{"point", to_json(sigma)}, {"factors", factors}});
}

Json cmd_tilt_chain(const Json& req, int d) {
  int p = int_field(req, "p");
  if (p < 0 || p >= d) fail(ErrorCode::kDomainError, "heart index must satisfy 0 <= p < d");
  if (req.contains("object")) {
    FormalObject e = object_field(req, "object");
    Json chain = Json::array();
    for (int k = 0; k <= p; ++k) {
      HeartDescriptor h = iterated_heart(k, d);
      chain.push_back({{"heart", k},
                       {"name", h.name()},
                       {"tilt", h.contains(e)},
                       {"direct", heart_membership(e, k, d)}});
    }
    Json coh = Json::object();
    for (const auto& [j, x] : iterated_heart(p, d).cohomology(e)) coh[std::to_string(j)] = to_json(x);
    return with_schema("tilt-chain", {{"chain", chain}, {"cohomology", coh}});
  }
  int mass = req.contains("mass") ? int_field(req, "mass") : 2;
  if (mass < 1 || mass > 6) fail(ErrorCode::kDomainError, "--mass must lie in 1..6");
  HeartDescriptor h = iterated_heart(p, d);
  long long checked = 0, agree = 0;
  for (const auto& e : enumerate_objects(d, mass, 2)) {
    ++checked;
    if (h.contains(e) == heart_membership(e, p, d)) ++agree;
  }
  return with_schema("tilt-chain", {{"heart", p}, {"name", h.name()}, {"mass", mass},
                                    {"checked", checked}, {"agree", agree}});
}

Json cmd_spectrum(const Json& req, int d) {
  StabPoint sigma = point_from(req, d);
  int ideals = req.contains("ideals") ? int_field(req, "ideals") : 8;
  if (ideals < 0 || ideals > kDeclaredIdealSheaves)
    fail(ErrorCode::kDomainError, "--ideals must lie in 0..64");
  Json body = to_json(stable_objects(sigma, d, ideals));
  body["point"] = to_json(sigma);
  return with_schema("spectrum", body);
}

Json cmd_gamma_bounds(const Json& req, int d) {
  int p = int_field(req, "p");
  if (p < 0 || p >= d) fail(ErrorCode::kDomainError, "heart index must satisfy 0 <= p < d");
  Real gamma = real_field(req, "gamma");
  auto spec = spectrum_descriptor(OrbitLabel::std_label(p), d);
  return with_schema("gamma-bounds", to_json(gamma_pm(spec, gamma)));
}

Json cmd_boundary(const Json& req, int d) {
  int p = int_field(req, "p");
  Real gamma = real_field(req, "gamma");
  WallDecision w = boundary_at(p, gamma, d);
  Json body = to_json(w);
  if (req.value("heart", false) && w.kind == WallDecision::Kind::kWall)
    body["heart"] = boundary_heart(p, gamma, d).name();
  return with_schema("boundary", body);
}

Json cmd_orbit_graph(const Json& req, int d) {
  return with_schema("orbit-graph", to_json(complex_from(req, d)));
}

Json cmd_pi1(const Json& req, int d) {
  return with_schema("pi1", to_json(pi1(complex_from(req, d))));
}

Json cmd_fiber(const Json& req, int d) {
  CentralCharge z = req.contains("charge") ? charge_field(req, "charge") : charge(point_from(req, d));
  Json fibers = Json::array();
  for (const auto& f : fiber_types(z, d)) fibers.push_back(to_json(f));
  return with_schema("fiber", {{"charge", to_json(z)}, {"fibers", fibers}});
}

Json cmd_twist_escape(const Json& req, int) {
  KClass i = with_flag("i", [&] { return kclass_from_json(need(req, "i")); });
  KClass e = with_flag("e", [&] { return kclass_from_json(need(req, "e")); });
  Real gm = real_field(req, "gamma_minus");
  CentralCharge z = req.contains("charge") ? charge_field(req, "charge") : CentralCharge::standard(0);
  long long n = twist_escape(i, e, gm, z);
  KClass v = i + n * e;
  Phase ph = principal_phase(charge_eval(z, v));
  return with_schema("twist-escape", {{"n", n}, {"class", to_json(v)}, {"phase", to_json(ph.value)}});
}

Json cmd_helix_svg(const Json& req, int d) {
  HelixStyle style;
  style.labels = !req.value("no_labels", false);
  return with_schema("helix-svg", {{"svg", helix_svg(d, style)}});
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"classify", cmd_classify},       {"act", cmd_act},
      {"hn", cmd_hn},                   {"tilt-chain", cmd_tilt_chain},
      {"spectrum", cmd_spectrum},       {"gamma-bounds", cmd_gamma_bounds},
      {"boundary", cmd_boundary},       {"orbit-graph", cmd_orbit_graph},
      {"pi1", cmd_pi1},                 {"fiber", cmd_fiber},
      {"twist-escape", cmd_twist_escape}, {"helix-svg", cmd_helix_svg},
  };
  return table;
}

}  // namespace

Json run_request(const Json& request) {
  if (!request.is_object()) fail(ErrorCode::kParseError, "request must be a JSON object");
  const Json& name = need(request, "command");
  if (!name.is_string()) fail(ErrorCode::kParseError, "command must be a string");
  auto it = handlers().find(name.get<std::string>());
  if (it == handlers().end())
    fail(ErrorCode::kParseError, "unknown command " + name.get<std::string>());
  int d = int_field(request, "d");
  if (d < 3) fail(ErrorCode::kParseError, "--d must be at least 3");
  return it->second(request, d);
}

Json run_request_safe(const Json& request) {
  try {
    return {{"ok", true}, {"result", run_request(request)}};
  } catch (const Error& e) {
    return {{"ok", false},
            {"error", {{"name", error_name(e.code())}, {"code", static_cast<int>(e.code())},
                       {"message", e.what()}}}};
  } catch (const std::exception& e) {
    return {{"ok", false},
            {"error", {{"name", error_name(ErrorCode::kInternal)},
                       {"code", static_cast<int>(ErrorCode::kInternal)},
                       {"message", e.what()}}}};
  }
}

}  // namespace torstab
