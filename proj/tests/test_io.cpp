#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "relaus/io.hpp"

using namespace relaus;
using fixtures::a2;
using fixtures::a2_pres;
using fixtures::truncated_poly;
using fixtures::truncated_poly_pres;
using fixtures::two_points_pres;

namespace {

bool throws_mentioning(const std::function<void()>& f, const std::string& bit) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(e.what()).find(bit) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("algebra specs survive a serialization round trip") {
  for (const AlgebraPresentation& p :
       {truncated_poly_pres(3), a2_pres(), two_points_pres(),
        truncated_poly_pres(2, prime_field(5))}) {
    Json j = algebra_to_json(p);
    AlgPtr direct = build_algebra(p);
    AlgPtr reparsed = load_algebra_text(j.dump());
    CHECK(direct->digest == reparsed->digest);
    CHECK(algebra_to_json(algebra_from_json(j)) == j);
  }
}

TEST_CASE("algebra parse errors point at the offending field") {
  Json good = algebra_to_json(a2_pres());

  Json j = good;
  j["quiver"].erase("vertices");
  CHECK(throws_mentioning([&] { algebra_from_json(j); }, "quiver"));

  j = good;
  j["quiver"]["arrows"][0]["to"] = "nowhere";
  CHECK(throws_mentioning([&] { algebra_from_json(j); }, "arrows[0].to"));

  j = good;
  j["relations"] = Json::array({Json::array(
      {Json{{"coeff", "1"}, {"path", Json::array({"missing"})}}})});
  CHECK(throws_mentioning([&] { algebra_from_json(j); }, "path[0]"));

  j = good;
  j["quiver"]["vertices"] = Json::array({"1", "1"});
  CHECK(throws_mentioning([&] { algebra_from_json(j); }, "duplicate"));

  j = good;
  j["field"] = Json{{"kind", "prime"}, {"p", 6}};
  CHECK_THROWS_AS(build_algebra(algebra_from_json(j)), Error);

  CHECK(throws_mentioning([&] { parse_json_text("{oops", "algebra spec"); },
                          "algebra spec"));
}

TEST_CASE("rational parsing is strict, base ten, and field-reduced") {
  FieldSpec q = rational_field();
  CHECK(parse_rational("-3/6", q, "t") == Scalar(-1, 2));
  CHECK(parse_rational("010", q, "t") == Scalar(10));
  CHECK(parse_rational("1/2", prime_field(3), "t") == Scalar(2));
  CHECK(throws_mentioning([&] { parse_rational("", q, "t"); }, "t"));
  CHECK_THROWS_AS(parse_rational("1/2/3", q, "t"), Error);
  CHECK_THROWS_AS(parse_rational("2.5", q, "t"), Error);
  CHECK_THROWS_AS(parse_rational(" 1", q, "t"), Error);
  CHECK_THROWS_AS(parse_rational("1/0", q, "t"), Error);
  CHECK_THROWS_AS(parse_rational("1/2", prime_field(2), "t"), Error);
}

TEST_CASE("module import reads quiver coordinates and validates") {
  AlgPtr lam = truncated_poly(2);
  Json s;
  s["algebra_digest"] = lam->digest;
  s["spaces"] = Json{{"v", 1}};
  s["arrows"] = Json{{"x", Json::array({Json::array({"0"})})}};
  ModPtr m = module_from_json(s, lam);
  CHECK(m->dim == 1);
  CHECK(module_to_json(m) == s);

  // omitted arrow means the zero matrix
  Json szero = s;
  szero.erase("arrows");
  szero["arrows"] = Json::object();
  CHECK(module_from_json(szero, lam)->dim == 1);

  Json bad = s;
  bad["arrows"]["x"][0][0] = "1";  // x acts invertibly, but x^2 = 0
  CHECK_THROWS_AS(module_from_json(bad, lam), Error);

  bad = s;
  bad["algebra_digest"] = "ffff";
  CHECK(throws_mentioning([&] { module_from_json(bad, lam); },
                          "different algebra"));

  bad = s;
  bad["arrows"]["y"] = Json::array();
  CHECK(throws_mentioning([&] { module_from_json(bad, lam); },
                          "unknown arrow"));

  bad = s;
  bad["spaces"]["w"] = 1;
  CHECK(throws_mentioning([&] { module_from_json(bad, lam); },
                          "unknown vertex"));

  bad = s;
  bad["arrows"]["x"] = Json::array();  // wrong row count
  CHECK(throws_mentioning([&] { module_from_json(bad, lam); }, "rows"));
}

TEST_CASE("module export then import is the identity on the json form") {
  AlgPtr lam = a2();
  Catalog cat = knit_indecomposables(lam, {});
  REQUIRE(cat.members.size() == 3);
  for (const ModPtr& m : cat.members) {
    Json j = module_to_json(m);
    ModPtr back = module_from_json(j, lam);
    CHECK(back->dim == m->dim);
    CHECK(module_to_json(back) == j);
  }
}

TEST_CASE("catalog round trip preserves the setup digest") {
  AlgPtr lam = truncated_poly(2);
  Catalog cat = knit_indecomposables(lam, {});
  Json j1 = catalog_to_json(lam, cat);
  Catalog back = catalog_from_json(j1, lam);
  REQUIRE(back.members.size() == cat.members.size());
  CHECK(back.method == cat.method);
  Json j2 = catalog_to_json(lam, back);
  CHECK(j1 == j2);
  SetupPtr s1 = build_setup(lam, back.members);
  SetupPtr s2 = build_setup(lam, catalog_from_json(j2, lam).members);
  CHECK(s1->end.gamma->digest == s2->end.gamma->digest);
}

TEST_CASE("report serializers expose the verdict fields") {
  AlgPtr lam = truncated_poly(2);
  Catalog cat = knit_indecomposables(lam, {});
  SetupPtr s = build_setup(lam, cat.members);
  ZetaPackage z = zeta(s, s->end.x);
  Json zj = zeta_to_json(z);
  CHECK(zj["dims"] == Json::array({1, 5, 4, 5, 1}));
  CHECK(zj["exact"] == true);

  TiltingReport tr = check_tilting(s, z.zeta_m);
  Json tj = tilting_to_json(tr);
  CHECK(tj["verdict"] == "both");
  CHECK(tj["hypotheses"]["submodule_closed"]["status"] == "verified");

  Json cert;
  cert["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  cert["command"] = "check-tilting";
  cert["field"] = Json{{"kind", "rational"}};
  cert["input_digest"] = "abc";
  cert["algebra_digest"] = lam->digest;
  cert["reports"] = Json{{"tilting", tj}};
  std::string md = certificate_markdown(cert);
  CHECK(md.find("verdict: both") != std::string::npos);
  CHECK(md.find("check-tilting") != std::string::npos);
}
