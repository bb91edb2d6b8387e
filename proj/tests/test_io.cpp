#include "doctest.h"
#include "glrep/error.hpp"
#include "glrep/io.hpp"
#include "glrep/random.hpp"
#include "glrep/verify.hpp"

using namespace glrep;
using io::Json;

TEST_CASE("scalars and matrices") {
  CHECK(io::to_json(Scalar::parse("-3/6")) == "-1/2");
  CHECK(io::to_json(Scalar(4)) == "4");
  CHECK(io::scalar_from_json(Json("5/10"), "$") == Scalar::parse("1/2"));
  CHECK(io::scalar_from_json(Json(7), "$") == Scalar(7));
  CHECK_THROWS_AS(io::scalar_from_json(Json("x/2"), "$"), SchemaError);
  Matrix m = Matrix::from_rows({{1, 0}, {Scalar::parse("2/3"), -1}});
  CHECK(io::matrix_from_json(io::to_json(m), "$", 2, 2) == m);
  CHECK_THROWS_AS(io::matrix_from_json(io::to_json(m), "$", 3, 2), SchemaError);
}

TEST_CASE("group specs") {
  Json c4 = {{"label", "C4"}, {"spec", {{"kind", "cyclic"}, {"n", 4}}}};
  CHECK(io::group_from_json(c4, "$").order() == 4);
  Json v = {{"spec", {{"kind", "elem_abelian"}, {"p", 2}, {"r", 2}}}};
  CHECK(io::group_from_json(v, "$").order() == 4);
  Json p = {{"spec", {{"kind", "product"}, {"left", {{"kind", "cyclic"}, {"n", 2}}}, {"right", {{"kind", "cyclic"}, {"n", 3}}}}}};
  CHECK(io::group_from_json(p, "$").order() == 6);
  Json bad = {{"spec", {{"kind", "table"}, {"table", {{0, 1}, {0, 1}}}}}};
  CHECK_THROWS_AS(io::group_from_json(bad, "$"), SchemaError);
  Json unknown = {{"spec", {{"kind", "free"}}}};
  CHECK_THROWS_AS(io::group_from_json(unknown, "$"), SchemaError);
}

TEST_CASE("site round trip and stale hash") {
  for (const char* name : {"cyclic2", "elemab2", "gpd-c2"}) {
    Site s = Site::preset(name);
    Json j = io::site_to_json(s);
    CHECK(j["widely_closed"]["verdict"] == "PASS");
    Site back = io::site_from_json(j);
    CHECK(back.hash() == s.hash());
    CHECK(back.class_count() == s.class_count());
    j["hash"] = "0000";
    CHECK_THROWS_AS(io::site_from_json(j), SchemaError);
  }
  CHECK(io::site_to_json(Site::preset("not-wide"), true)["widely_closed"]["verdict"] == "FAIL");
}

TEST_CASE("objects and complexes round trip") {
  Site s = Site::preset("cyclic2");
  Rng rng(3);
  for (int k = 0; k < 3; ++k) {
    RepObject x = random_object(s, rng);
    CHECK(io::rep_from_json(io::rep_to_json(x)) == x);
    CHECK(io::rep_from_json(io::rep_to_json(x), s) == x);
    Complex c = random_complex(s, rng, {-1, 1, 1, 2});
    Complex back = io::complex_from_json(io::complex_to_json(c));
    CHECK(back.lo() == c.lo());
    CHECK(back.hi() == c.hi());
    for (int n = c.lo(); n <= c.hi(); ++n) {
      CHECK(back.term(n) == c.term(n));
      CHECK(back.d(n) == c.d(n));
    }
  }
}

TEST_CASE("schema errors name the offending path") {
  Site s = Site::preset("1C2");
  Json j = io::rep_to_json(make_eG(s, 1));
  Json missing = j;
  missing["act"].erase("0");
  CHECK_THROWS_WITH_AS(io::rep_from_json(missing), "$.act.0: missing", SchemaError);
  Json shape = j;
  shape["dims"][1] = 5;
  CHECK_THROWS_AS(io::rep_from_json(shape), SchemaError);
  Json other = j;
  CHECK_THROWS_AS(io::rep_from_json(other, Site::preset("cyclic2")), SchemaError);
  Json c = io::complex_to_json(Complex::single(make_eG(s, 1)));
  c["hi"] = 3;
  CHECK_THROWS_WITH_AS(io::complex_from_json(c), "$.terms: expected 4 terms", SchemaError);
}

TEST_CASE("non-functorial objects are precondition failures") {
  Site s = Site::preset("cyclic2");
  Json j = io::rep_to_json(unit_object(s));
  // Scaling C4 -> 1 alone breaks its factorization through C2.
  const std::size_t cls = s.hom(s.resolve("C4"), s.resolve("1"))[0];
  j["act"][std::to_string(cls)] = {{"2"}};
  CHECK_THROWS_AS(io::rep_from_json(j), PreconditionError);
}

TEST_CASE("suite reports are reproducible and sorted") {
  SuiteOptions o;
  o.seed = 5;
  o.count = 2;
  SuiteReport a = run_suite("resolutions", o), b = run_suite("resolutions", o);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  CHECK(report_to_text(a) == report_to_text(b));
  CHECK(a.passed());
  for (std::size_t k = 1; k < a.rows.size(); ++k) CHECK(a.rows[k - 1].claim <= a.rows[k].claim);
  for (const auto& c : claims()) CHECK_FALSE(c.anchor.empty());
  CHECK_THROWS_AS(run_suite("nope", o), SchemaError);
  o.site = "1,C2,C2xC4";
  CHECK_THROWS_AS(run_suite("resolutions", o), PreconditionError);
  o.force = true;
  o.count = 1;
  CHECK(run_suite("resolutions", o).forced);
}
