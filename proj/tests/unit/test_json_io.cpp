#include <doctest.h>

#include "support/generators.hpp"
#include "zsup/error.hpp"
#include "zsup/expression.hpp"
#include "zsup/json_io.hpp"

using namespace zsup;
using namespace zsup::testing;
using zsup::json::Json;

TEST_CASE("sign tables and assignments") {
  const auto t = json::sign_table_from_json(Json::parse(R"({"m": 3, "phi": [[1,-1,1],[-1,-1,1],[1,1,1]]})"));
  CHECK(t.size() == 3);
  CHECK(t(0, 1) == -1);
  CHECK(json::to_json(t) == Json::parse(R"({"m": 3, "phi": [[1,-1,1],[-1,-1,1],[1,1,1]]})"));
  CHECK_THROWS_AS(json::sign_table_from_json(Json::parse(R"({"m": 2, "phi": [[1]]})")), ValidationError);
  CHECK_THROWS_AS(json::sign_table_from_json(Json::parse(R"({"m": 1})")), ValidationError);

  const DegreeAssignment a = realize_sign_table(t);
  const auto back = json::assignment_from_json(json::to_json(a));
  CHECK(back.rank == a.rank);
  CHECK(back.sigmas == a.sigmas);
  CHECK(json::to_json(DegreeAssignment{2, {Degree{1, 0}}}) == Json::parse(R"({"n": 2, "sigmas": [[1, 0]]})"));
}

TEST_CASE("domains and series") {
  const Json doc = Json::parse(
      R"({"n":2,"base_vars":["x"],"formal_vars":[{"name":"xi","degree":[0,1]},{"name":"eta","degree":[1,0]},{"name":"theta","degree":[1,1]}],"truncation_order":6})");
  const Domain d = json::domain_from_json(doc);
  CHECK(json::to_json(*d) == doc);

  const Series f = parse_series("3/2*x^2*xi*eta*theta^2 - xi*eta*theta^2 + x", d);
  const Json terms = json::series_to_json(f);
  CHECK(terms == Json::parse(R"([{"mu":[0,0,0],"coeff":"x"},{"mu":[1,1,2],"coeff":"3/2*x^2 - 1"}])"));
  CHECK(json::series_from_json(terms, d) == f);
  CHECK(json::series_from_json(Json("x + xi*eta"), d) == parse_series("x + xi*eta", d));
  CHECK_THROWS_AS(json::series_from_json(Json::parse(R"([{"mu":[2,0,0],"coeff":"1"}])"), d), ValidationError);

  Rng rng(71);
  for (int t = 0; t < 50; ++t) {
    const Series g = random_series(rng, d, {6, 6, 3, 3});
    CHECK(json::series_from_json(json::series_to_json(g), d) == g);
    CHECK(json::series_from_json(Json::parse(json::series_to_json(g).dump()), d) == g);
  }
}

TEST_CASE("morphisms and atlases round trip") {
  const Domain d = make_domain(1, {"x"}, {{"xi", Degree{1}}}, 2);
  const Morphism m(d, d, {parse_series("2*x+1", d), parse_series("(1+x)*xi", d)});
  CHECK(json::morphism_from_json(json::to_json(m)) == m);

  const Box box = Box::symmetric(1, 1);
  const Atlas atlas({{"A", d, box}, {"B", d, box}}, {{"A", "B", box, m}, {"B", "A", box, m}});
  const Atlas back = json::atlas_from_json(json::to_json(atlas));
  CHECK(back.charts().size() == 2);
  CHECK(back.transition("A", "B").map == m);
  CHECK(back.transition("A", "B").overlap == box);
  CHECK_THROWS_AS(json::atlas_from_json(Json::parse(R"({"charts": [], "transitions": [{"from": "A", "to": "B"}]})")),
                  ValidationError);

  CHECK(json::box_from_json(Json::parse(R"([["-1/2", 3]])")) == Box({{Rational(-1, 2), Rational(3)}}));
  CHECK_THROWS_AS(json::box_from_json(Json::parse(R"([["1", "0"]])")), ValidationError);
}

TEST_CASE("presentations, algebras and bundle specs") {
  const auto p = json::presentation_from_json(
      Json::parse(R"({"n":1,"generators":[{"name":"e1","degree":[1]},{"name":"e2","degree":[1]}],"h":[["-2","0"],["0","-2"]]})"));
  CHECK(p.generators().size() == 2);
  CHECK(json::presentation_from_json(json::to_json(p)).h() == p.h());

  const auto q = quaternion_presentation();
  const auto q2 = json::structure_algebra_from_json(json::to_json(q));
  CHECK(q2.table == q.table);
  CHECK(q2.degrees == q.degrees);

  Rng rng(72);
  const DvbSpec spec = random_dvb_spec(rng, 2, 1, 2);
  CHECK(superize_dvb(json::dvb_from_json(json::to_json(spec))) == superize_dvb(spec));

  const NvbSpec nvb = dvb_as_nvb(spec);
  CHECK(superize_nvb(json::nvb_from_json(json::to_json(nvb))) == superize_nvb(nvb));
}
