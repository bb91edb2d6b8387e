#include "doctest.h"
#include "glrep/error.hpp"
#include "glrep/random.hpp"
#include "glrep/thin.hpp"

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

Complex zero_differential(const Site& s, const std::vector<RepObject>& terms) {
  std::vector<RepMap> diffs;
  for (std::size_t k = 1; k < terms.size(); ++k) diffs.push_back(RepMap::zero(terms[k], terms[k - 1]));
  return Complex::create(s, 0, terms, diffs);
}

void check_decomposition(const ThinDecomposition& d) {
  const Complex& x = d.input;
  CHECK(is_thin(d.thin));
  CHECK(is_contraction(d.contraction));
  CHECK_FALSE(d.thin_inclusion.failure());
  CHECK_FALSE(d.thin_projection.failure());
  CHECK_FALSE(d.contractible_inclusion.failure());
  CHECK_FALSE(d.contractible_projection.failure());
  CHECK(compose(d.to_input, d.from_input).is_identity());
  CHECK(compose(d.from_input, d.to_input).is_identity());
  CHECK(compose(d.thin_projection, d.thin_inclusion).is_identity());
  CHECK(homology_dims(d.thin) == homology_dims(x));
  std::size_t piece_dims = 0;
  for (const auto& p : d.pieces) piece_dims += p.dim;
  std::size_t gens = 0;  // total multiplicity of generators in the thin part, read off the layers
  for (int n = d.thin.lo(); n <= d.thin.hi(); ++n) {
    for (std::size_t g = 0; g < x.site().size(); ++g) {
      gens += filtration_layer(d.thin.term(n), x.site().orders()[g]).layer.object.dim(g);
    }
  }
  CHECK(piece_dims == gens);
}

}  // namespace

TEST_CASE("thin complexes split with zero contractible part") {
  Site s = Site::preset("elemab2");
  Complex x = zero_differential(s, {make_eG(s, 1), make_eG(s, 2), make_cG(s, 2)});
  ThinDecomposition d = thin_split(x);
  check_decomposition(d);
  CHECK(d.contractible.is_zero());

  Site t = Site::preset("1C2");
  RepObject e = make_eG(t, 1);
  Complex c = Complex::create(t, 0, {make_eG(t, 0), e}, {map_from_eG(e, 1, make_eG(t, 0), {Scalar(1)})});
  REQUIRE(is_thin(c));
  ThinDecomposition dc = thin_split(c);
  check_decomposition(dc);
  CHECK(dc.contractible.is_zero());
}

TEST_CASE("Delta of a graded projective has zero thin part") {
  Site s = Site::preset("cyclic2");
  DeltaComplex d = delta(s, Graded{0, {make_eG(s, 0), make_eG(s, 2)}});
  ThinDecomposition t = thin_split(d.complex);
  check_decomposition(t);
  CHECK(t.thin.is_zero());
}

TEST_CASE("random complexes of projectives") {
  ValidationOn v;
  Rng rng(41);
  for (const char* name : {"1C2", "cyclic2", "elemab2"}) {
    Site s = Site::preset(name);
    for (int k = 0; k < 3; ++k) {
      Complex x = random_projective_complex(s, rng, {0, 3, 2, 2});
      check_decomposition(thin_split(x));
    }
  }
}

TEST_CASE("thin replacements") {
  Site s = Site::preset("cyclic2");
  Complex c = cofiber(s);
  ThinReplacement r = thin_replacement(c);
  CHECK(is_thin(r.thin));
  CHECK(is_quasi_iso(r.quasi_iso));
  HomologyTable h = homology_dims(r.thin);
  CHECK(h.at(0, 0) == 1);
  for (std::size_t g = 1; g < s.size(); ++g) CHECK(h.at(0, g) == 0);
  for (std::size_t g = 0; g < s.size(); ++g) CHECK(h.at(1, g) == 0);
  check_decomposition(r.split);

  for (std::size_t g = 0; g < s.size(); ++g) {
    Complex e = Complex::single(make_eG(s, g));
    ThinReplacement re = thin_replacement(e);
    auto f = compare_replacements(re.quasi_iso, ChainMap::identity(e));
    REQUIRE(f.has_value());
    ChainMap inv = thin_iso(*f);
    CHECK(compose(inv, *f).is_identity());
    CHECK(compose(*f, inv).is_identity());
  }

  Rng rng(5);
  Complex a = random_acyclic(s, rng, {0, 2, 1, 1});
  CHECK(thin_replacement(a).thin.is_zero());
}

TEST_CASE("thin replacements are unique up to explicit isomorphism") {
  Rng rng(77);
  for (const char* name : {"1C2", "cyclic2", "elemab2"}) {
    Site s = Site::preset(name);
    for (int k = 0; k < 2; ++k) {
      Complex c = random_complex(s, rng, {0, 2, 1, 1});
      ThinReplacement r1 = thin_replacement(c);
      ComplexBasisChange shuffled = change_basis(c, random_basis_change(c, rng));
      ThinReplacement r2 = thin_replacement(shuffled.complex);
      ChainMap u2 = compose(shuffled.to_original, r2.quasi_iso);
      auto f = compare_replacements(r1.quasi_iso, u2);
      REQUIRE(f.has_value());
      ChainMap inv = thin_iso(*f);
      CHECK(compose(inv, *f).is_identity());
      CHECK(compose(*f, inv).is_identity());
    }
  }
}

TEST_CASE("thin_iso on scalar multiples and bad inputs") {
  Site s = Site::preset("elemab2");
  Complex x = zero_differential(s, {make_eG(s, 1), make_eG(s, 2)});
  ChainMap id = ChainMap::identity(x);
  CHECK(thin_iso(id).is_identity());
  ChainMap two = Scalar(2) * id;
  CHECK(thin_iso(two) == Scalar(1, 2) * id);
  CHECK_THROWS_AS(thin_iso(ChainMap::zero(x, x)), PreconditionError);
  RepObject e = make_eG(s, 1);
  Complex nonproj = Complex::single(cokernel(map_from_eG(e, 1, unit_object(s), {Scalar(1)})).object);
  CHECK_THROWS_AS(thin_split(nonproj), PreconditionError);
}

TEST_CASE("semisimple splitting of pure complexes") {
  Site s = Site::preset("elemab2");
  Complex zd = zero_differential(s, {make_eG(s, 2), make_cG(s, 2)});
  ThinDecomposition a = semisimple_split(zd);
  CHECK(a.contractible.is_zero());
  CHECK(a.thin.term(0).dims() == zd.term(0).dims());

  ThinDecomposition b = semisimple_split(delta(s, Graded{0, {make_eG(s, 2)}}).complex);
  CHECK(b.thin.is_zero());

  Rng rng(3);
  for (int k = 0; k < 3; ++k) {
    std::vector<RepObject> terms;
    for (int n = 0; n < 3; ++n) {
      std::vector<RepObject> parts(1 + rng.below(2), make_eG(s, 2));
      terms.push_back(make_sum(s, parts).object);
    }
    RepMap d1 = random_map(terms[1], terms[0], rng);
    Subobject z = kernel(d1);
    RepMap d2 = compose(z.inclusion, random_map(terms[2], z.object, rng));
    Complex x = Complex::create(s, 0, terms, {d1, d2});
    ThinDecomposition t = semisimple_split(x);
    check_decomposition(t);
    HomologyTable h = homology_dims(x);
    for (int n = 0; n <= 2; ++n) CHECK(t.thin.term(n).dims() == h.dims[static_cast<std::size_t>(n)]);
  }
  Complex mixed = zero_differential(s, {make_eG(s, 1), make_eG(s, 2)});
  CHECK_THROWS_AS(semisimple_split(mixed), PreconditionError);
}
