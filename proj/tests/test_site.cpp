#include <algorithm>

#include "doctest.h"
#include "glrep/site.hpp"

using namespace glrep;

TEST_CASE("preset sites and object order") {
  Site s = Site::preset("elemab2");
  REQUIRE(s.size() == 3);
  CHECK(s.object(0).order() == 1);
  CHECK(s.object(2).label() == "C2^2");
  CHECK(s.hom(2, 1).size() == 3);
  CHECK(s.hom(2, 2).size() == 6);
  CHECK(s.hom(1, 2).empty());
  CHECK(s.unit_object().has_value());
  CHECK_FALSE(Site::preset("gpd-c2").unit_object().has_value());
  CHECK(s.orders() == std::vector<std::size_t>{1, 2, 4});
  CHECK_THROWS(Site::from_spec("C4,C2xC2,C2^2"));
}

TEST_CASE("composition table matches composing representatives") {
  for (const auto& name : Site::preset_names()) {
    Site s = Site::preset(name);
    for (std::size_t a = 0; a < s.class_count(); ++a) {
      for (std::size_t b = 0; b < s.class_count(); ++b) {
        auto c = s.try_compose(b, a);
        CHECK(c.has_value() == (s.morphism(a).target == s.morphism(b).source));
        if (!c) continue;
        Hom h = compose(s.morphism(b).representative, s.morphism(a).representative);
        const auto& mc = s.morphism(*c);
        CHECK(mc.source == s.morphism(a).source);
        CHECK(mc.target == s.morphism(b).target);
        CHECK(class_representative(s.object(mc.target), h) == mc.representative);
      }
    }
  }
}

TEST_CASE("Out(G) acts freely and orbit data is consistent") {
  Site s = Site::preset("cyclic2x3");
  for (std::size_t t = 0; t < s.size(); ++t) {
    for (std::size_t g = 0; g < s.size(); ++g) {
      const auto& hs = s.hom(t, g);
      const auto& od = s.orbits(t, g);
      CHECK(od.reps.size() * s.automorphisms(g).size() == hs.size());
      for (std::size_t i = 0; i < hs.size(); ++i) {
        const auto& p = od.positions[i];
        CHECK(s.compose(p.gamma, od.reps[p.orbit]) == hs[i]);
      }
    }
  }
}

TEST_CASE("automorphism generators generate") {
  Site s = Site::preset("elemab2");
  const auto& gens = s.automorphism_generators(2);
  CHECK(gens.size() == 2);  // GL2(F2) needs two generators
  std::vector<std::size_t> closure{s.identity(2)};
  for (std::size_t i = 0; i < closure.size(); ++i) {
    for (auto g : gens) {
      auto y = s.compose(g, closure[i]);
      if (std::find(closure.begin(), closure.end(), y) == closure.end()) closure.push_back(y);
    }
  }
  CHECK(closure.size() == 6);
}

TEST_CASE("wide closure") {
  CHECK_FALSE(check_widely_closed(Site::preset("elemab2")).has_value());
  CHECK_FALSE(check_widely_closed(Site::preset("cyclic2x3")).has_value());
  CHECK_FALSE(check_widely_closed(Site::preset("c2c3c6")).has_value());
  // Only kernels of surjections inside the site count, so {1, C2^2} is closed.
  CHECK_FALSE(check_widely_closed(Site::from_spec("1,C2^2")).has_value());
  auto w = check_widely_closed(Site::preset("not-wide"));
  REQUIRE(w.has_value());
  CHECK(w->quotient_order == 4);
  CHECK(w->intersection.size() == 2);
}

TEST_CASE("site classification and unit projectivity prediction") {
  auto c = classify_site(Site::preset("c2c3c6"));
  CHECK_FALSE(c.groupoid);
  CHECK(c.minimal.size() == 2);
  CHECK(c.minimal_quotient_counts.back() == 2);
  CHECK_FALSE(c.unit_projective_predicted);
  CHECK(classify_site(Site::preset("cyclic2-nounit")).unit_projective_predicted);
  CHECK(classify_site(Site::preset("elemab2")).unit_projective_predicted);
  CHECK(classify_site(Site::preset("gpd-c2")).groupoid);
}

TEST_CASE("generating classes cover every irreducible hom set") {
  Site s = Site::preset("cyclic2x3");
  // C8 -> C4 -> C2 -> 1: only the three adjacent steps are irreducible.
  std::size_t non_iso = 0;
  for (auto c : s.generating_classes()) non_iso += !s.is_iso(c);
  CHECK(non_iso == 3);
  CHECK(Site::preset("cyclic2").hash() != Site::preset("cyclic2x3").hash());
  CHECK(Site::preset("cyclic2").hash() == Site::from_spec("C4,1,C2").hash());
}
