#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "torstab/torstab.h"

using Json = nlohmann::json;

namespace {

Json run(const std::string& request, tst_status* status = nullptr) {
  char* out = nullptr;
  tst_status st = tst_run_json(request.c_str(), &out);
  if (status) *status = st;
  REQUIRE(out != nullptr);
  Json j = Json::parse(out);
  tst_string_free(out);
  return j;
}

}  // namespace

TEST_CASE("json entry point") {
  tst_status st;
  auto r = run(R"({"command":"pi1","d":5})", &st);
  CHECK(st == TST_OK);
  CHECK(r.at("group") == "trivial");
  auto e = run(R"({"command":"boundary","d":5,"p":1,"gamma":"1/2"})", &st);
  CHECK(st == TST_DOMAIN_ERROR);
  CHECK(e.at("error").at("name") == "DomainError");
  CHECK(std::string(tst_last_error()).size() > 0);
  run("{not json", &st);
  CHECK(st == TST_PARSE_ERROR);
  CHECK(std::string(tst_status_name(TST_NOT_IN_U)) == "NotInU");
  char* out = nullptr;
  CHECK(tst_run_json(nullptr, &out) == TST_INVALID_ARGUMENT);
}

TEST_CASE("lifted handles") {
  const char* rot[4] = {"0", "1", "-1", "0"};
  tst_lifted* g = nullptr;
  REQUIRE(tst_lifted_create(rot, 0, &g) == TST_OK);
  double v = 0;
  REQUIRE(tst_lifted_eval(g, 1.0, &v) == TST_OK);
  CHECK(v == doctest::Approx(0.5));
  tst_lifted* inv = nullptr;
  REQUIRE(tst_lifted_inverse(g, &inv) == TST_OK);
  tst_lifted* id = nullptr;
  REQUIRE(tst_lifted_compose(g, inv, &id) == TST_OK);
  double m[4];
  tst_lifted_matrix(id, m);
  CHECK(m[0] == doctest::Approx(1));
  CHECK(m[1] == doctest::Approx(0));
  CHECK(m[3] == doctest::Approx(1));
  CHECK(tst_lifted_winding(id) == 0);
  tst_lifted_free(id);
  tst_lifted_free(inv);

  const char* bad[4] = {"1", "0", "0", "-1"};
  tst_lifted* b = nullptr;
  CHECK(tst_lifted_create(bad, 0, &b) == TST_DOMAIN_ERROR);
  CHECK(b == nullptr);
  const char* junk[4] = {"x", "0", "0", "1"};
  CHECK(tst_lifted_create(junk, 0, &b) == TST_PARSE_ERROR);

  tst_point* s = nullptr;
  REQUIRE(tst_point_std(1, 4, &s) == TST_OK);
  tst_point* moved = nullptr;
  REQUIRE(tst_point_act(g, s, &moved) == TST_OK);
  CHECK(tst_point_kind(moved) == 0);
  CHECK(tst_point_index(moved) == 1);
  char* js = nullptr;
  REQUIRE(tst_point_json(moved, &js) == TST_OK);
  CHECK(Json::parse(js).at("label").at("p") == 1);
  tst_string_free(js);
  tst_point_free(moved);
  tst_point_free(s);
  tst_lifted_free(g);
}

TEST_CASE("classify through handles") {
  tst_point* p = nullptr;
  REQUIRE(tst_classify("1,1,0,0", "1", "0", 5, &p) == TST_OK);
  CHECK(tst_point_kind(p) == 1);
  CHECK(tst_point_index(p) == 1);
  tst_point_free(p);
  CHECK(tst_classify("1,0,1,1", "1", "1/2", 5, &p) == TST_NOT_IN_U);
  CHECK(tst_point_deg(1, "1/2", 5, &p) == TST_DOMAIN_ERROR);
}
