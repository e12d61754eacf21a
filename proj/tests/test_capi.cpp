#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "kmlat/kmlat.h"

using nlohmann::json;

namespace {

struct Ctx {
  kmlat_context* ctx = kmlat_context_new(7);
  ~Ctx() { kmlat_context_free(ctx); }
};

struct Field {
  kmlat_field* f = nullptr;
  Field(kmlat_context* ctx, int q) { REQUIRE(kmlat_field_new(ctx, q, &f) == KMLAT_OK); }
  ~Field() { kmlat_field_free(f); }
};

// takes ownership of s
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  kmlat_string_free(s);
  return out;
}

json parse(char* s) { return json::parse(take(s)); }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(kmlat_version()).size() > 0);
  CHECK(std::string(kmlat_status_name(KMLAT_OK)) == "Ok");
  CHECK(std::string(kmlat_status_name(KMLAT_NON_PRIME)) == "NonPrime");
  CHECK(std::string(kmlat_status_name(KMLAT_PARSE_ERROR)) == "ParseError");
}

TEST_CASE("fields") {
  Ctx c;
  Field f(c.ctx, 9);
  CHECK(kmlat_field_order(f.f) == 9);
  char* spec = nullptr;
  REQUIRE(kmlat_field_spec(c.ctx, f.f, &spec) == KMLAT_OK);
  CHECK(take(spec).rfind("3^2", 0) == 0);

  kmlat_field* bad = nullptr;
  CHECK(kmlat_field_new(c.ctx, 6, &bad) == KMLAT_NON_PRIME);
  CHECK(bad == nullptr);
  CHECK(kmlat_last_status(c.ctx) == KMLAT_NON_PRIME);
  CHECK(std::string(kmlat_last_error(c.ctx)).size() > 0);
  CHECK(kmlat_field_new(c.ctx, 512, &bad) == KMLAT_DEGREE_TOO_LARGE);
  CHECK(kmlat_field_order(nullptr) == 0);
}

TEST_CASE("classify and min covolume") {
  Ctx c;
  kmlat_classification_input in;
  kmlat_classification_input_init(&in);
  in.q = 4;
  char* out = nullptr;
  REQUIRE(kmlat_classify(c.ctx, &in, &out) == KMLAT_OK);
  const json j = parse(out);
  CHECK(j["schema"] == "kmlat-report-v1");
  CHECK(j["command"] == "classify");
  REQUIRE(j["rows"].size() >= 1);
  CHECK(j["rows"][0]["covolume"] == "2/5");
  CHECK(std::string(kmlat_last_error(c.ctx)).empty());

  REQUIRE(kmlat_min_covolume(c.ctx, &in, &out) == KMLAT_OK);
  const json m = parse(out);
  CHECK(m["covolume"] == "2/5");
  CHECK(m["agree"] == true);

  in.zmi_in_zg = 1;  // flags must be unset in characteristic 2
  CHECK(kmlat_classify(c.ctx, &in, &out) == KMLAT_INVALID_INPUT);
  CHECK(out == nullptr);
  in.zmi_in_zg = 5;
  CHECK(kmlat_classify(c.ctx, &in, &out) == KMLAT_INVALID_INPUT);
  CHECK(kmlat_classify(c.ctx, nullptr, &out) == KMLAT_INVALID_INPUT);
}

TEST_CASE("dickson") {
  Ctx c;
  Field f(c.ctx, 8);
  char* out = nullptr;
  REQUIRE(kmlat_dickson(c.ctx, f.f, "sl2", &out) == KMLAT_OK);
  const json j = parse(out);
  int divisible = 0;
  for (const auto& r : j["rows"]) {
    if (r["div_q_plus_1"] == true) ++divisible;
  }
  CHECK(divisible == 2);
  CHECK(kmlat_dickson(c.ctx, f.f, "gl3", &out) == KMLAT_PARSE_ERROR);
  CHECK(kmlat_dickson(c.ctx, nullptr, "sl2", &out) == KMLAT_INVALID_INPUT);
}

TEST_CASE("verify cyclic lattice in characteristic 2") {
  Ctx c;
  Field f(c.ctx, 2);
  char* out = nullptr;
  REQUIRE(kmlat_verify(c.ctx, f.f, "cyclic_p2", nullptr, 3, &out) == KMLAT_OK);
  const json j = parse(out);
  CHECK(j["lubotzky"]["pass"] == true);
  CHECK(j["normal_form"]["consistent"] == true);
  CHECK(j["covolume_matches_classify"] == true);
  CHECK(kmlat_verify(c.ctx, f.f, "banana", nullptr, 3, &out) == KMLAT_PARSE_ERROR);
}

TEST_CASE("km action") {
  Ctx c;
  Field f(c.ctx, 5);
  char* out = nullptr;
  REQUIRE(kmlat_km_act(c.ctx, f.f, 2, "x2:3", "L:2,2", "twisted", 0, &out) == KMLAT_OK);
  CHECK(parse(out)["image"] == "L:2,4");
  REQUIRE(kmlat_km_act(c.ctx, f.f, 2, "x2:3", "L:2,2", "identity", 0, &out) == KMLAT_OK);
  CHECK(parse(out)["image"] == "L:2,0");
  Field f3(c.ctx, 3);
  REQUIRE(kmlat_km_act(c.ctx, f3.f, 2, "x2:1", "L:1,2", "twisted", 1, &out) == KMLAT_OK);
  CHECK(parse(out)["crosscheck"] == true);
  CHECK(kmlat_km_act(c.ctx, f.f, 2, "x3:1", "base", "twisted", 0, &out) == KMLAT_PARSE_ERROR);
  CHECK(kmlat_km_act(c.ctx, f.f, 2, "x1:1", "base", "sideways", 0, &out) == KMLAT_PARSE_ERROR);
}

TEST_CASE("zp test and dihedral search") {
  Ctx c;
  Field f3(c.ctx, 3);
  char* out = nullptr;
  REQUIRE(kmlat_zp_test(c.ctx, f3.f, 2, &out) == KMLAT_OK);
  const json z = parse(out);
  CHECK(z["checked"] == 90);
  CHECK(z["agreements"] == 70);
  CHECK(z["corrected_agreements"] == 90);

  Field f2(c.ctx, 2);
  REQUIRE(kmlat_dihedral_search(c.ctx, f2.f, 2, 20, &out) == KMLAT_OK);
  const json d = parse(out);
  CHECK(d["violations"].empty());
  CHECK(d["identity_failures"] == 0);
  Field f9(c.ctx, 9);
  CHECK(kmlat_dihedral_search(c.ctx, f9.f, 1, 1, &out) == KMLAT_ODD_CHARACTERISTIC);
}

TEST_CASE("tree queries") {
  Ctx c;
  Field f(c.ctx, 3);
  char* out = nullptr;
  REQUIRE(kmlat_tree_distance(c.ctx, f.f, "1,0;0,1", "1,0;0,t^-1", &out) == KMLAT_OK);
  CHECK(parse(out)["distance"] == 1);
  REQUIRE(kmlat_tree_neighbors(c.ctx, f.f, "1,0;0,1", &out) == KMLAT_OK);
  CHECK(parse(out)["neighbors"].size() == 4);
  REQUIRE(kmlat_tree_permutation(c.ctx, f.f, "1,1;0,1", "1,0;0,1", &out) == KMLAT_OK);
  CHECK(parse(out)["permutation"].size() == 4);
  CHECK(kmlat_tree_permutation(c.ctx, f.f, "1,t;0,1", "1,0;0,1", &out) == KMLAT_WRONG_FIXED_VERTEX);
  CHECK(kmlat_tree_distance(c.ctx, f.f, "1,0;0,0", "1,0;0,1", &out) == KMLAT_ZERO_DETERMINANT);
  CHECK(kmlat_tree_distance(c.ctx, f.f, "1,0", "1,0;0,1", &out) == KMLAT_PARSE_ERROR);
}

TEST_CASE("output is deterministic and indent is configurable") {
  Ctx a, b;
  Field fa(a.ctx, 2), fb(b.ctx, 2);
  char *x = nullptr, *y = nullptr;
  REQUIRE(kmlat_dihedral_search(a.ctx, fa.f, 2, 10, &x) == KMLAT_OK);
  REQUIRE(kmlat_dihedral_search(b.ctx, fb.f, 2, 10, &y) == KMLAT_OK);
  CHECK(take(x) == take(y));

  REQUIRE(kmlat_context_set_json_indent(a.ctx, -1) == KMLAT_OK);
  REQUIRE(kmlat_dickson(a.ctx, fa.f, "sl2", &x) == KMLAT_OK);
  CHECK(take(x).find('\n') == std::string::npos);
  CHECK(kmlat_context_set_json_indent(a.ctx, 40) == KMLAT_INVALID_INPUT);
  CHECK(kmlat_context_set_max_elements(a.ctx, 0) == KMLAT_INVALID_INPUT);
  CHECK(kmlat_context_set_max_elements(a.ctx, 100) == KMLAT_OK);
  CHECK(kmlat_classify(nullptr, nullptr, &x) == KMLAT_INVALID_INPUT);
}
