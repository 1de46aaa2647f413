#include "torstab/torstab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "torstab/commands.hpp"
#include "torstab/error.hpp"

struct tst_lifted {
  torstab::LiftedAuto value;
};

struct tst_point {
  torstab::StabPoint value;
};

namespace {

thread_local std::string last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
tst_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return TST_OK;
  } catch (const torstab::Error& e) {
    last_error = e.what();
    return static_cast<tst_status>(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return TST_INTERNAL;
  }
}

tst_status invalid(const char* what) {
  last_error = what;
  return TST_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* tst_version(void) { return "0.1.0"; }

const char* tst_status_name(tst_status status) {
  if (status == TST_INVALID_ARGUMENT) return "InvalidArgument";
  static thread_local std::string name;
  name = std::string(torstab::error_name(static_cast<torstab::ErrorCode>(status)));
  return name.c_str();
}

const char* tst_last_error(void) { return last_error.c_str(); }

tst_status tst_run_json(const char* request, char** response) {
  if (!request || !response) return invalid("null argument");
  *response = nullptr;
  torstab::Json reply;
  tst_status st = TST_OK;
  try {
    reply = torstab::run_request_safe(torstab::Json::parse(request));
  } catch (const torstab::Json::parse_error& e) {
    reply = {{"ok", false},
             {"error", {{"name", "ParseError"}, {"code", 14}, {"message", e.what()}}}};
  }
  if (reply.at("ok").get<bool>()) {
    *response = dup_string(reply.at("result").dump());
    last_error.clear();
  } else {
    st = static_cast<tst_status>(reply.at("error").at("code").get<int>());
    last_error = reply.at("error").at("message").get<std::string>();
    *response = dup_string(torstab::Json{{"error", reply.at("error")}}.dump());
  }
  return st;
}

void tst_string_free(char* s) { std::free(s); }

tst_status tst_lifted_create(const char* const entries[4], long long winding, tst_lifted** out) {
  if (!entries || !out) return invalid("null argument");
  for (int i = 0; i < 4; ++i)
    if (!entries[i]) return invalid("null matrix entry");
  return guarded([&] {
    using torstab::Real;
    auto m = torstab::Mat2::of(Real::parse(entries[0]), Real::parse(entries[1]),
                               Real::parse(entries[2]), Real::parse(entries[3]));
    *out = new tst_lifted{torstab::LiftedAuto(m, winding)};
  });
}

tst_status tst_lifted_compose(const tst_lifted* a, const tst_lifted* b, tst_lifted** out) {
  if (!a || !b || !out) return invalid("null argument");
  return guarded([&] { *out = new tst_lifted{torstab::gl_compose(a->value, b->value)}; });
}

tst_status tst_lifted_inverse(const tst_lifted* a, tst_lifted** out) {
  if (!a || !out) return invalid("null argument");
  return guarded([&] { *out = new tst_lifted{torstab::gl_inverse(a->value)}; });
}

tst_status tst_lifted_eval(const tst_lifted* a, double phi, double* out) {
  if (!a || !out) return invalid("null argument");
  return guarded([&] {
    *out = torstab::lift_eval(a->value, torstab::Phase{torstab::Real::approx(phi)}).to_double();
  });
}

tst_status tst_lifted_matrix(const tst_lifted* a, double out[4]) {
  if (!a || !out) return invalid("null argument");
  const auto& m = a->value.base().m;
  out[0] = m[0][0].to_double();
  out[1] = m[0][1].to_double();
  out[2] = m[1][0].to_double();
  out[3] = m[1][1].to_double();
  return TST_OK;
}

long long tst_lifted_winding(const tst_lifted* a) { return a ? a->value.winding() : 0; }

void tst_lifted_free(tst_lifted* a) { delete a; }

tst_status tst_point_std(int p, int d, tst_point** out) {
  if (!out) return invalid("null argument");
  return guarded([&] { *out = new tst_point{torstab::make_std(p, d)}; });
}

tst_status tst_point_deg(int p, const char* gamma, int d, tst_point** out) {
  if (!gamma || !out) return invalid("null argument");
  return guarded(
      [&] { *out = new tst_point{torstab::make_deg(p, torstab::Real::parse(gamma), d)}; });
}

tst_status tst_point_act(const tst_lifted* g, const tst_point* sigma, tst_point** out) {
  if (!g || !sigma || !out) return invalid("null argument");
  return guarded([&] { *out = new tst_point{torstab::act(g->value, sigma->value)}; });
}

tst_status tst_classify(const char* charge, const char* phi, const char* psi, int d,
                        tst_point** out) {
  if (!charge || !phi || !psi || !out) return invalid("null argument");
  return guarded([&] {
    using torstab::Real;
    auto c = torstab::classify(torstab::parse_charge(charge), torstab::Phase{Real::parse(phi)},
                               torstab::Phase{Real::parse(psi)}, d);
    *out = new tst_point{torstab::StabPoint{c.label, c.g}};
  });
}

int tst_point_kind(const tst_point* sigma) { return sigma && sigma->value.label.is_deg() ? 1 : 0; }

int tst_point_index(const tst_point* sigma) { return sigma ? sigma->value.label.p : -1; }

tst_status tst_point_lifted(const tst_point* sigma, tst_lifted** out) {
  if (!sigma || !out) return invalid("null argument");
  return guarded([&] { *out = new tst_lifted{sigma->value.g}; });
}

tst_status tst_point_json(const tst_point* sigma, char** out) {
  if (!sigma || !out) return invalid("null argument");
  return guarded([&] { *out = dup_string(torstab::to_json(sigma->value).dump()); });
}

void tst_point_free(tst_point* sigma) { delete sigma; }

}  // extern "C"
