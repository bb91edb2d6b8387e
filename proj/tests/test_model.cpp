#include "doctest.h"
#include "glrep/model.hpp"
#include "glrep/random.hpp"

using namespace glrep;

namespace {

struct ValidationOn {
  ValidationOn() { set_validation(true); }
  ~ValidationOn() { set_validation(false); }
};

const RandomOptions kSmall{0, 1, 1, 2};

// Cokernel of e_C2 -> 1 on {1, C2}: concentrated at the trivial group, not projective.
RepObject nonprojective(const Site& s) {
  const std::size_t c2 = s.resolve("C2");
  return cokernel(map_from_eG(make_eG(s, c2), c2, unit_object(s), {Scalar(1)})).object;
}

ChainMap random_map_between_random(const Site& s, Rng& rng) {
  Complex x = rng.coin() ? random_complex(s, rng, kSmall) : random_projective_complex(s, rng, kSmall);
  Complex y = random_complex(s, rng, kSmall);
  return random_chain_map(x, y, rng);
}

std::vector<Scalar> random_coeffs(Rng& rng, std::size_t n) {
  std::vector<Scalar> c;
  for (std::size_t k = 0; k < n; ++k) c.push_back(rng.small_scalar());
  return c;
}

std::size_t total_dim(const Complex& c, int n) { return c.term(n).total_dim(); }

}  // namespace

TEST_CASE("classification of basic maps") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  Complex e = Complex::single(make_eG(s, 1));
  MapClass id = classify_map(ChainMap::identity(e));
  CHECK(id.we);
  CHECK(id.cof);
  CHECK(id.fib);
  CHECK(id.acf);
  CHECK(id.afb);

  MapClass incl = classify_map(ChainMap::zero(Complex::zero(s), e));
  CHECK(incl.cof);
  CHECK_FALSE(incl.we);
  CHECK_FALSE(incl.fib);

  Complex n = Complex::single(nonprojective(s));
  MapClass bad = classify_map(ChainMap::zero(Complex::zero(s), n));
  CHECK_FALSE(bad.cof);
  CHECK_FALSE(bad.we);

  TotalResolution pn = p_total(n);
  MapClass eps = classify_map(pn.epsilon);
  CHECK(eps.we);
  CHECK(eps.fib);
  CHECK(eps.afb);
}

TEST_CASE("M and N factorizations of random maps") {
  ValidationOn v;
  for (const char* name : {"1C2", "cyclic2"}) {
    Site s = Site::preset(name);
    Rng rng(11);
    for (int trial = 0; trial < 4; ++trial) {
      ChainMap f = random_map_between_random(s, rng);
      Factorization m = factor_M(f);
      CHECK_FALSE(m.middle.failure().has_value());
      CHECK(compose(m.second, m.first) == f);
      MapClass ci = classify_map(m.first), cp = classify_map(m.second);
      CHECK(ci.cof);
      CHECK(cp.afb);
      CHECK(homology_dims(m.middle) == homology_dims(f.target()));

      Factorization nf = factor_N(f);
      CHECK_FALSE(nf.middle.failure().has_value());
      CHECK(compose(nf.second, nf.first) == f);
      MapClass cj = classify_map(nf.first), cq = classify_map(nf.second);
      CHECK(cj.acf);
      CHECK(cq.fib);

      NCokernel w = factor_N_cokernel(nf);
      CHECK_FALSE(w.complex.failure().has_value());
      CHECK_FALSE(w.projection.failure().has_value());
      CHECK(compose(w.projection, nf.first).is_zero());
      CHECK(w.projection.is_surjective());
      for (int k = nf.middle.lo(); k <= nf.middle.hi(); ++k) {
        CHECK(total_dim(nf.middle, k) == total_dim(f.source(), k) + total_dim(w.complex, k));
      }
      CHECK(is_contraction(w.contraction));
    }
  }
}

TEST_CASE("M factorization of an identity is a homotopy equivalence") {
  ValidationOn v;
  Site s = Site::preset("cyclic2");
  Rng rng(5);
  Complex x = random_projective_complex(s, rng, kSmall);
  Factorization m = factor_M(ChainMap::identity(x));
  // A section of p from the lifting property of 0 -> X against p.
  LiftingProblem sq{ChainMap::zero(Complex::zero(s), x), m.second, ChainMap::zero(Complex::zero(s), m.middle),
                    ChainMap::identity(x)};
  auto section = solve_lift(sq);
  REQUIRE(section.has_value());
  CHECK(compose(m.second, *section).is_identity());
  CHECK(find_homotopy(compose(*section, m.second), ChainMap::identity(m.middle)).has_value());
}

TEST_CASE("lifting squares") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  Rng rng(23);
  int lifted = 0;
  for (int trial = 0; trial < 6; ++trial) {
    ChainMap f1 = random_map_between_random(s, rng);
    ChainMap f2 = random_map_between_random(s, rng);
    const bool cof_afb = trial % 2 == 0;
    ChainMap i = cof_afb ? factor_M(f1).first : factor_N(f1).first;
    ChainMap q = cof_afb ? factor_M(f2).second : factor_N(f2).second;
    LiftingProblem p = sample_square(i, q, random_coeffs(rng, square_space_dim(i, q)));
    CHECK(compose(q, p.f) == compose(p.g, i));
    auto h = solve_lift(p);
    REQUIRE(h.has_value());
    CHECK(compose(*h, i) == p.f);
    CHECK(compose(q, *h) == p.g);
    CHECK(build_lifting_extension(p).splits);
    if (!p.f.is_zero() || !p.g.is_zero()) ++lifted;
  }
  CHECK(lifted >= 3);
}

TEST_CASE("an obstructed square and its extension") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  Complex n = Complex::single(nonprojective(s));
  TotalResolution pn = p_total(n);
  LiftingProblem p{ChainMap::zero(Complex::zero(s), n), pn.epsilon, ChainMap::zero(Complex::zero(s), pn.complex),
                   ChainMap::identity(n)};
  CHECK_FALSE(solve_lift(p).has_value());
  LiftingExtension ext = build_lifting_extension(p);
  CHECK_FALSE(ext.splits);
  CHECK(compose(ext.to_cokernel, ext.from_kernel).is_zero());
  CHECK(ext.from_kernel.is_injective());
  CHECK(ext.to_cokernel.is_surjective());
}

TEST_CASE("generating sets") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  GeneratingSets gs = generating_sets(s, 0, 1);
  CHECK(gs.cofibrations.size() == 4);
  CHECK(gs.acyclic_cofibrations.size() == 4);
  for (const ChainMap& i : gs.cofibrations) CHECK(classify_map(i).cof);
  for (const ChainMap& j : gs.acyclic_cofibrations) CHECK(classify_map(j).acf);
}

TEST_CASE("right lifting against generators detects the classes") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  Rng rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    ChainMap f = random_map_between_random(s, rng);
    if (trial % 3 == 1) f = factor_M(f).second;
    if (trial % 3 == 2) f = factor_N(f).second;
    MapClass c = classify_map(f);
    GeneratingSets gs = generating_sets_for(f);
    CHECK(rlp_check(f, gs.cofibrations) == c.afb);
    CHECK(rlp_check(f, gs.acyclic_cofibrations) == c.fib);
  }
  // A non-surjection fails against J.
  Complex e = Complex::single(make_eG(s, 0));
  ChainMap z = ChainMap::zero(Complex::zero(s), e);
  CHECK_FALSE(rlp_check(z, generating_sets_for(z).acyclic_cofibrations));
}

TEST_CASE("pushout product of cofibrations") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  Rng rng(41);
  GeneratingSets gs = generating_sets(s, 1, 1);
  for (int trial = 0; trial < 3; ++trial) {
    ChainMap f = factor_M(random_map_between_random(s, rng)).first;
    ChainMap g = trial == 2 ? gs.acyclic_cofibrations[1] : gs.cofibrations[rng.below(gs.cofibrations.size())];
    PushoutProduct pp = pushout_product(f, g);
    CHECK_FALSE(pp.h.failure().has_value());
    MapClass c = classify_map(pp.h);
    CHECK(c.cof);
    CHECK(pp.comparison_iso);
    if (classify_map(f).acf || classify_map(g).acf) CHECK(c.acf);
  }
}

TEST_CASE("properness") {
  ValidationOn v;
  Site s = Site::preset("1C2");
  Rng rng(53);
  for (int trial = 0; trial < 3; ++trial) {
    Complex z = random_complex(s, rng, kSmall);
    ChainMap w = p_total(z).epsilon;
    ChainMap p = factor_N(random_chain_map(random_complex(s, rng, kSmall), z, rng)).second;
    CHECK(is_quasi_iso(pullback_along(w, p)));

    Complex a = random_complex(s, rng, kSmall);
    ChainMap we = factor_N(random_chain_map(a, random_complex(s, rng, kSmall), rng)).first;
    ChainMap mono = factor_M(random_chain_map(a, random_complex(s, rng, kSmall), rng)).first;
    CHECK(is_quasi_iso(pushout_along(we, mono)));
  }
}
