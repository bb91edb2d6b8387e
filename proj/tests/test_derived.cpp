#include <set>

#include "doctest.h"
#include "glrep/derived.hpp"
#include "glrep/error.hpp"
#include "glrep/random.hpp"

using namespace glrep;

namespace {

struct ValidationOn {
  ValidationOn() { set_validation(true); }
  ~ValidationOn() { set_validation(false); }
};

Complex cofiber(const Site& s) {
  std::size_t c2 = s.resolve("C2");
  RepObject e = make_eG(s, c2);
  return Complex::create(s, 0, {unit_object(s), e}, {map_from_eG(e, c2, unit_object(s), {Scalar(1)})});
}

// A complex all of whose terms are sums of the unit.
Complex constant_complex(const Site& s, Rng& rng) {
  std::vector<RepObject> terms;
  for (int n = 0; n < 3; ++n) terms.push_back(make_sum(s, std::vector<RepObject>(1 + rng.below(2), unit_object(s))).object);
  RepMap d1 = random_map(terms[1], terms[0], rng);
  Subobject z = kernel(d1);
  RepMap d2 = compose(z.inclusion, random_map(terms[2], z.object, rng));
  return Complex::create(s, 0, terms, {d1, d2});
}

}  // namespace

TEST_CASE("compactness tables") {
  Site s = Site::preset("cyclic2");
  CHECK(compactness_table(cofiber(s)) == std::vector<std::size_t>{1, 0, 0});
  CHECK(compactness_table(Complex::single(unit_object(s))) == std::vector<std::size_t>{1, 1, 1});
  CHECK(compactness_table(delta(s, Graded{0, {make_eG(s, 1), unit_object(s)}}).complex) ==
        std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("perfect certificates") {
  Site s = Site::preset("elemab2");
  for (std::size_t g = 0; g < s.size(); ++g) {
    PerfectCertificate p = perfect_certificate(Complex::single(make_eG(s, g)));
    REQUIRE(p.generators.size() == 1);
    CHECK(p.generators[0].object == g);
    CHECK(p.generators[0].dim == s.automorphisms(g).size());
    CHECK(p.generators[0].degree == 0);
    CHECK(is_thin(p.model));
    CHECK(is_quasi_iso(p.quasi_iso));
  }
  Site c = Site::preset("cyclic2");
  PerfectCertificate p = perfect_certificate(cofiber(c));
  std::set<std::size_t> orders;
  for (const auto& piece : p.generators) orders.insert(piece.order);
  CHECK(orders == std::set<std::size_t>{1, 2});
  CHECK(perfect_certificate(delta(c, Graded{0, {make_eG(c, 2)}}).complex).model.is_zero());
}

TEST_CASE("torsion-free homology") {
  Site e = Site::preset("elemab2");
  auto hit = torsion_free_homology(cofiber(e));
  REQUIRE(hit.has_value());
  CHECK(hit->degree == 1);
  CHECK(hit->object == e.resolve("C2^2"));
  CHECK_FALSE(torsion_free_homology(cofiber(Site::preset("cyclic2"))).has_value());
  for (std::size_t g = 0; g < e.size(); ++g) {
    auto h = torsion_free_homology(Complex::single(make_eG(e, g)));
    REQUIRE(h.has_value());
    CHECK(h->degree == 0);
    CHECK(h->object == g);
  }

  SplitMono sm = eG_split_mono(hit->homology, hit->object, hit->vector);
  CHECK(compose(sm.retraction, sm.inclusion).is_identity());
  CHECK_FALSE(sm.inclusion.naturality_failure());
  CHECK_FALSE(sm.retraction.naturality_failure());
}

TEST_CASE("split monos out of generators") {
  Site s = Site::preset("1C2");
  SplitMono u = eG_split_mono(unit_object(s), 1, {Scalar(1)});
  CHECK(u.inclusion.is_iso());
  RepObject e = make_eG(s, 1);
  SplitMono m = eG_split_mono(e, 1, {Scalar(1)});
  CHECK(compose(m.retraction, m.inclusion).is_identity());
  RepObject top = cokernel(map_from_eG(e, 1, unit_object(s), {Scalar(1)})).object;
  CHECK_THROWS_AS(eG_split_mono(top, 0, {Scalar(1)}), PreconditionError);
}

TEST_CASE("internal hom complexes") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  Rng rng(4);
  Complex x = random_projective_complex(s, rng, {0, 1, 1, 1});
  Complex y = random_complex(s, rng, {0, 1, 1, 1});
  InternalHomComplex h = internal_hom_complex(x, y);
  CHECK_FALSE(h.complex.failure());
  // Evaluating at a point with e_G gives the ordinary Hom complex of e_G (x) X into Y.
  Complex unit = Complex::single(unit_object(s));
  InternalHomComplex hu = internal_hom_complex(unit, y);
  for (int n = y.lo(); n <= y.hi(); ++n) CHECK(hu.complex.term(n).dims() == y.term(n).dims());
}

TEST_CASE("dualizability") {
  Site g = Site::preset("gpd-c2");
  DualizabilityVerdict a = dualizable_test(Complex::single(make_eG(g, 0)));
  CHECK(a.dualizable);
  CHECK_FALSE(a.constant_comparison.has_value());

  Site s = Site::preset("1C2");
  CHECK(dualizable_test(Complex::single(unit_object(s))).dualizable);
  DualizabilityVerdict b = dualizable_test(Complex::single(make_eG(s, 1)));
  CHECK_FALSE(b.dualizable);
  REQUIRE(b.constant_comparison.has_value());
  CHECK_FALSE(*b.constant_comparison);
  std::size_t src_total = 0;
  for (const auto& row : b.source_homology.dims) src_total += row[0];
  CHECK(src_total == 0);
  CHECK(b.target_homology.at(0, 0) >= 1);
  CHECK(b.object == 0);

  Rng rng(10);
  for (int k = 0; k < 3; ++k) {
    Complex c = constant_complex(s, rng);
    DualizabilityVerdict v = dualizable_test(c);
    CHECK(v.dualizable);
    CHECK(*v.constant_comparison);
  }
  for (int k = 0; k < 4; ++k) {
    Complex c = random_complex(s, rng, {0, 1, 1, 1});
    DualizabilityVerdict v = dualizable_test(c);
    REQUIRE(v.constant_comparison.has_value());
    CHECK(v.dualizable == *v.constant_comparison);
  }
}
