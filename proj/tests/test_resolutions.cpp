#include "doctest.h"
#include "glrep/random.hpp"
#include "glrep/resolutions.hpp"

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

// Rank-based check that 0 <- X <- P_0 <- P_1 <- ... is exact.
void check_exact(const Resolution& r) {
  const Site& s = r.input.site();
  for (std::size_t g = 0; g < s.size(); ++g) {
    CHECK(rank(r.augmentation.at(g)) == r.input.dim(g));
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
      std::size_t out_rank = i == 0 ? rank(r.augmentation.at(g)) : rank(r.deltas[i - 1].at(g));
      std::size_t in_rank = i + 1 < r.stages.size() ? rank(r.deltas[i].at(g)) : 0;
      CHECK(r.term(i).dim(g) - out_rank == in_rank);
    }
  }
}

}  // namespace

TEST_CASE("generators: split augmentation with projective kernels") {
  Site s = Site::preset("elemab2");
  for (std::size_t g = 0; g < s.size(); ++g) {
    RepObject e = make_eG(s, g);
    Resolution r = resolve_object(e);
    check_exact(r);
    CHECK(r.length() <= resolution_bound(e));
    auto section = projectivity_section(e);
    REQUIRE(section.has_value());
    CHECK(compose(r.augmentation, *section).is_identity());
    for (const auto& k : r.kernels) CHECK(projectivity_section(k.object).has_value());
  }
  Site top = Site::preset("1C2");
  CHECK(resolve_object(make_eG(top, 0)).length() == 1);
  CHECK(resolve_object(RepObject::zero(s)).stages.empty());
}

TEST_CASE("the unit over 1 < C2") {
  Site s = Site::preset("1C2");
  Resolution r = resolve_object(unit_object(s));
  REQUIRE(r.length() == 1);
  CHECK(r.term(0).dims() == std::vector<std::size_t>{1, 2});
  CHECK(r.term(1).dims() == std::vector<std::size_t>{0, 1});
  check_exact(r);
  CHECK(resolution_bound(unit_object(s)) == 1);
}

TEST_CASE("an object supported at the top order is already projective") {
  Site s = Site::preset("cyclic2");
  std::size_t top = s.size() - 1;
  RepObject e = make_eG(s, top);
  Resolution r = resolve_object(e);
  CHECK(r.length() == 0);
  CHECK(resolution_bound(e) == 0);
}

TEST_CASE("random objects: exactness, projective stages and the length bound") {
  ValidationOn v;
  Rng rng(31);
  for (const char* name : {"cyclic2", "elemab2", "cyclic2x3"}) {
    Site s = Site::preset(name);
    for (int k = 0; k < 4; ++k) {
      RepObject x = random_object(s, rng, {0, 0, 2, 2});
      Resolution r = resolve_object(x);
      CHECK(r.length() <= resolution_bound(x));
      check_exact(r);
      for (std::size_t i = 0; i < r.stages.size(); ++i) CHECK(projectivity_section(r.term(i)).has_value());
      CHECK_FALSE(r.complex().failure());
    }
  }
}

TEST_CASE("P_0 is exact and the resolution maps are functorial") {
  Site s = Site::preset("elemab2");
  Rng rng(2);
  for (int k = 0; k < 3; ++k) {
    RepObject x = random_object(s, rng);
    RepObject y = random_object(s, rng);
    RepMap f = random_map(x, y, rng);
    Subobject ker = kernel(f);
    QuotientObject im = cokernel(ker.inclusion);
    Counit ck = counit_P0(ker.object), cx = counit_P0(x), cq = counit_P0(im.object);
    RepMap a = P0_map(ker.inclusion, ck, cx), b = P0_map(im.projection, cx, cq);
    CHECK(a.is_injective());
    CHECK(b.is_surjective());
    CHECK(compose(b, a).is_zero());
    for (std::size_t g = 0; g < s.size(); ++g) CHECK(rank(a.at(g)) + rank(b.at(g)) == cx.p0.object.dim(g));

    RepObject z = random_object(s, rng);
    RepMap h = random_map(y, z, rng);
    Resolution rx = resolve_object(x), ry = resolve_object(y), rz = resolve_object(z);
    auto pf = resolution_map(f, rx, ry), ph = resolution_map(h, ry, rz), phf = resolution_map(compose(h, f), rx, rz);
    for (std::size_t i = 0; i < phf.size(); ++i) {
      if (i < pf.size() && i < ph.size()) CHECK(compose(ph[i], pf[i]).comps() == phf[i].comps());
      if (i >= 1 && i < ry.stages.size()) CHECK(compose(ry.deltas[i - 1], pf[i]) == compose(pf[i - 1], rx.deltas[i - 1]));
    }
  }
}

TEST_CASE("totalization is a projective quasi-isomorphic replacement") {
  ValidationOn v;
  Rng rng(9);
  for (const char* name : {"cyclic2", "elemab2"}) {
    Site s = Site::preset(name);
    for (int k = 0; k < 3; ++k) {
      Complex c = random_complex(s, rng, {0, 2, 1, 2});
      TotalResolution t = p_total(c);
      CHECK_FALSE(t.complex.failure());
      CHECK_FALSE(t.epsilon.failure());
      CHECK(is_degreewise_projective(t.complex));
      CHECK(t.epsilon.is_surjective());
      CHECK(homology_dims(t.complex) == homology_dims(c));
      CHECK(is_quasi_iso(t.epsilon));
    }
  }
  Site s = Site::preset("cyclic2");
  Complex c = cofiber(s);
  TotalResolution t = p_total(c);
  CHECK(homology_dims(t.complex) == homology_dims(c));
}

TEST_CASE("totalization of acyclic complexes is contractible") {
  Site s = Site::preset("1C2");
  Rng rng(12);
  for (int k = 0; k < 3; ++k) {
    Complex c = random_acyclic(s, rng, {0, 2, 1, 1});
    TotalResolution t = p_total(c);
    CHECK(is_acyclic(t.complex));
    auto contraction = find_contraction(t.complex);
    REQUIRE(contraction.has_value());
    CHECK(is_contraction(*contraction));
  }
}

TEST_CASE("totalized maps commute with the augmentation") {
  ValidationOn v;
  Site s = Site::preset("cyclic2");
  Rng rng(14);
  for (int k = 0; k < 3; ++k) {
    Complex x = random_complex(s, rng, {0, 1, 1, 1});
    Complex y = random_complex(s, rng, {0, 2, 1, 1});
    ChainMap f = random_chain_map(x, y, rng);
    TotalResolution px = p_total(x), py = p_total(y);
    ChainMap pf = p_total_map(f, px, py);
    CHECK_FALSE(pf.failure());
    CHECK(compose(py.epsilon, pf) == compose(f, px.epsilon));
  }
}

TEST_CASE("derived maps out of generators are homology at a point") {
  Rng rng(6);
  for (const char* name : {"1C2", "cyclic2", "elemab2", "gpd-c2"}) {
    Site s = Site::preset(name);
    Complex y = random_complex(s, rng, {-1, 1, 1, 1});
    HomologyTable hy = homology_dims(y);
    for (std::size_t g = 0; g < s.size(); ++g) {
      DerivedHom d = derived_hom(Complex::single(make_eG(s, g)), y);
      for (int t = -3; t <= 3; ++t) CHECK(d.at(t) == hy.at(t, g));
    }
  }
  Site s = Site::preset("cyclic2");
  Complex x = random_complex(s, rng, {0, 1, 1, 1});
  Complex z = random_acyclic(s, rng, {0, 2, 1, 1});
  DerivedHom d = derived_hom(x, z);
  for (auto v : d.dims) CHECK(v == 0);

  Site g = Site::preset("gpd-c2");
  DerivedHom u = derived_hom(Complex::single(unit_object(g)), Complex::single(unit_object(g)));
  for (int t = -2; t <= 2; ++t) CHECK(u.at(t) == (t == 0 ? 1u : 0u));
}
