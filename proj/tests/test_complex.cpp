#include "doctest.h"
#include "glrep/error.hpp"
#include "glrep/complex.hpp"
#include "glrep/random.hpp"

using namespace glrep;

namespace {

struct ValidationOn {
  ValidationOn() { set_validation(true); }
  ~ValidationOn() { set_validation(false); }
};

// Homology dimensions computed from scratch: Z_n by kernel_basis, B_n by rank.
std::size_t oracle_homology(const Complex& c, int n, std::size_t g) {
  Matrix out = c.d(n).at(g);
  Matrix in = c.d(n + 1).at(g);
  std::size_t z = kernel_basis(out).cols();
  return z - rank(in);
}

// e_C2 -> unit, the counit at the identity element.
Complex cofiber(const Site& s) {
  std::size_t c2 = s.resolve("C2");
  RepObject e = make_eG(s, c2);
  RepMap f = map_from_eG(e, c2, unit_object(s), {Scalar(1)});
  return Complex::create(s, 0, {unit_object(s), e}, {f});
}

std::size_t chain_maps_dim(const Complex& x, const Complex& y) {
  HomDegree h0 = hom_degree(x, y, 0), hm = hom_degree(x, y, -1);
  return kernel_basis(hom_differential(x, y, h0, hm)).cols();
}

}  // namespace

TEST_CASE("homology matches the rank oracle on random complexes") {
  ValidationOn v;
  Rng rng(11);
  for (const char* name : {"cyclic2", "elemab2", "c2c3c6"}) {
    Site s = Site::preset(name);
    for (int k = 0; k < 4; ++k) {
      Complex c = random_complex(s, rng, {0, 2, 1, 2});
      CHECK_FALSE(c.failure());
      HomologyTable t = homology_dims(c);
      for (int n = c.lo(); n <= c.hi(); ++n) {
        for (std::size_t g = 0; g < s.size(); ++g) {
          CHECK(t.at(n, g) == oracle_homology(c, n, g));
          CHECK(homology(c, n).homology.object.dim(g) == t.at(n, g));
        }
      }
    }
  }
}

TEST_CASE("cofiber of e_C2 -> 1 over the cyclic 2-groups") {
  Site s = Site::preset("cyclic2");
  Complex c = cofiber(s);
  HomologyTable t = homology_dims(c);
  CHECK(t.dims[0] == std::vector<std::size_t>{1, 0, 0});
  CHECK(t.dims[1] == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("shift and delta") {
  ValidationOn v;
  Site s = Site::preset("elemab2");
  Rng rng(3);
  Complex c = random_projective_complex(s, rng, {0, 2, 1, 2});
  Complex back = shift(shift(c, 1), -1);
  CHECK(back.lo() == c.lo());
  for (int n = c.lo(); n <= c.hi(); ++n) CHECK(back.d(n) == c.d(n));

  Graded u{0, {make_eG(s, 1)}};
  DeltaComplex d = delta(s, u);
  CHECK(d.complex.lo() == -1);
  CHECK(d.complex.d(0).is_iso());
  CHECK(is_contraction(d.contraction));
  CHECK(is_acyclic(d.complex));

  // Hom_Ch(Delta(X), Y) = Hom_Gr(X, Y).
  Graded x = graded_of(random_projective_complex(s, rng, {0, 1, 1, 1}));
  Complex y = random_complex(s, rng, {-1, 1, 1, 1});
  std::size_t graded_dim = 0;
  for (std::size_t k = 0; k < x.terms.size(); ++k) {
    graded_dim += hom_space(x.terms[k], y.term(x.lo + static_cast<int>(k))).dim();
  }
  CHECK(chain_maps_dim(delta(s, x).complex, y) == graded_dim);
}

TEST_CASE("mapping cones") {
  ValidationOn v;
  Site s = Site::preset("cyclic2");
  Rng rng(5);
  Complex x = random_complex(s, rng, {0, 2, 1, 2});
  Cone c = mapping_cone(ChainMap::identity(x));
  auto contraction = find_contraction(c.complex);
  REQUIRE(contraction.has_value());
  CHECK(is_contraction(*contraction));

  Cone z = mapping_cone(ChainMap::zero(x, Complex::zero(s)));
  Complex sx = shift(x, 1);
  for (int n = sx.lo(); n <= sx.hi(); ++n) {
    CHECK(z.complex.term(n).dims() == sx.term(n).dims());
    CHECK(z.complex.d(n).comps() == sx.d(n).comps());
  }
  CHECK_FALSE(c.inclusion.failure());
  CHECK_FALSE(c.projection.failure());
}

TEST_CASE("hom complex differential squares to zero and H_0 counts homotopy classes") {
  Site s = Site::preset("1C2");
  Rng rng(8);
  Complex x = random_projective_complex(s, rng, {0, 2, 1, 2});
  Complex y = random_complex(s, rng, {0, 2, 1, 1});
  HomComplex h = hom_complex(x, y);
  for (std::size_t k = 1; k < h.vec.diffs.size(); ++k) CHECK((h.vec.diffs[k - 1] * h.vec.diffs[k]).is_zero());
  // Homotopic chain maps have equal classes: f and f + ds + sd.
  ChainMap f = random_chain_map(x, y, rng);
  GradedMap s1 = element(x, y, h.degrees[static_cast<std::size_t>(1 - h.vec.lo)],
                         std::vector<Scalar>(h.degrees[static_cast<std::size_t>(1 - h.vec.lo)].dim, Scalar(1)));
  ChainMap g = ChainMap::create(f.graded() + boundary(s1));
  auto htpy = find_homotopy(g, f);
  REQUIRE(htpy.has_value());
  CHECK(boundary(*htpy) == g.graded() - f.graded());
}

TEST_CASE("Ext formula for zero-differential projective sources") {
  Site s = Site::preset("elemab2");
  Rng rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    Complex x0 = random_projective_complex(s, rng, {0, 2, 1, 1});
    std::vector<RepObject> terms;
    std::vector<RepMap> diffs;
    for (int n = x0.lo(); n <= x0.hi(); ++n) {
      terms.push_back(x0.term(n));
      if (n > x0.lo()) diffs.push_back(RepMap::zero(x0.term(n), x0.term(n - 1)));
    }
    Complex x = Complex::create(s, x0.lo(), terms, diffs);
    Complex y = random_complex(s, rng, {0, 2, 1, 1});
    HomComplex h = hom_complex(x, y);
    for (int t = 1; t <= 2; ++t) {
      std::size_t expected = 0;
      for (int i = y.lo(); i <= y.hi(); ++i) {
        expected += hom_space(x.term(i + t), homology(y, i).homology.object).dim();
      }
      CHECK(h.vec.homology_dim(-t) == expected);
    }
  }
}

TEST_CASE("Kunneth dimensions") {
  Site s = Site::preset("cyclic2");
  Rng rng(4);
  for (int k = 0; k < 3; ++k) {
    Complex x = random_complex(s, rng, {0, 1, 1, 1});
    Complex y = random_complex(s, rng, {0, 1, 1, 1});
    TensorComplex t = tensor(x, y);
    CHECK_FALSE(t.complex.failure());
    HomologyTable hx = homology_dims(x), hy = homology_dims(y), ht = homology_dims(t.complex);
    for (int n = t.complex.lo(); n <= t.complex.hi(); ++n) {
      for (std::size_t g = 0; g < s.size(); ++g) {
        std::size_t expected = 0;
        for (int i = x.lo(); i <= x.hi(); ++i) expected += hx.at(i, g) * hy.at(n - i, g);
        CHECK(ht.at(n, g) == expected);
      }
    }
  }
  Complex unit = Complex::single(unit_object(s));
  Complex y = random_complex(s, rng, {0, 1, 1, 1});
  TensorComplex t = tensor(unit, y);
  for (int n = y.lo(); n <= y.hi(); ++n) CHECK(t.complex.d(n).comps() == y.d(n).comps());
}

TEST_CASE("homotopies, contractions and the Delta splitting") {
  ValidationOn v;
  Site s = Site::preset("elemab2");
  Graded u{0, {make_eG(s, 1), make_cG(s, 2)}};
  DeltaComplex d = delta(s, u);
  auto c = find_contraction(d.complex);
  REQUIRE(c.has_value());
  ContractibleSplit split = split_contractible(d.complex, *c);
  CHECK(compose(split.p, split.i).is_identity());
  ContractibleSplit standard = split_contractible(d.complex, d.contraction);
  for (std::size_t k = 0; k < u.terms.size(); ++k) {
    CHECK(standard.cycles[k].object.dims() == u.terms[k].dims());
  }
  ChainMap id = ChainMap::identity(d.complex);
  auto zero = find_homotopy(id, id);
  REQUIRE(zero.has_value());
  CHECK(zero->is_zero());

  Cone cone = mapping_cone(ChainMap::identity(Complex::single(make_eG(s, 2))));
  auto cc = find_contraction(cone.complex);
  REQUIRE(cc.has_value());
  ContractibleSplit cs = split_contractible(cone.complex, *cc);
  std::size_t u_nonzero = 0;
  for (const auto& z : cs.cycles) u_nonzero += z.object.is_zero() ? 0 : 1;
  CHECK(u_nonzero == 1);
  CHECK_THROWS_AS(split_contractible(cone.complex, GradedMap::zero(cone.complex, cone.complex, 1)), PreconditionError);
}

TEST_CASE("acyclic complexes of projectives are contractible") {
  Site s = Site::preset("cyclic2");
  Rng rng(17);
  for (int k = 0; k < 3; ++k) {
    Complex p = random_projective_complex(s, rng, {0, 1, 1, 1});
    Complex a = mapping_cone(ChainMap::identity(p)).complex;
    Complex shuffled = change_basis(a, random_basis_change(a, rng)).complex;
    auto c = find_contraction(shuffled);
    REQUIRE(c.has_value());
    ContractibleSplit split = split_contractible(shuffled, *c);
    CHECK(compose(split.i, split.p) == ChainMap::identity(split.delta.complex));
  }
}

TEST_CASE("thinness") {
  Site s = Site::preset("1C2");
  RepObject e2 = make_eG(s, 1), e1 = make_eG(s, 0);
  RepMap f = map_from_eG(e2, 1, e1, {Scalar(1)});
  Complex c = Complex::create(s, 0, {e1, e2}, {f});
  CHECK(is_thin(c));
  Complex zero_d = Complex::create(s, 0, {e1, e2}, {RepMap::zero(e2, e1)});
  CHECK(is_thin(zero_d));

  Site ab = Site::preset("elemab2");
  RepObject a2 = make_eG(ab, 1), a1 = make_eG(ab, 0);
  Complex ca = Complex::create(ab, 0, {a1, a2}, {map_from_eG(a2, 1, a1, {Scalar(1)})});
  Complex sq = tensor(ca, ca).complex;
  auto w = thin_violation(sq);
  REQUIRE(w.has_value());
  CHECK(w->order == 2);
  CHECK(sq.term(2).dim(2) == 9);

  Complex nonproj = Complex::single(cokernel(f).object);
  CHECK_THROWS_AS(thin_violation(nonproj), PreconditionError);
}

TEST_CASE("dg-projective complexes are nullhomotopic into acyclics") {
  Site s = Site::preset("cyclic2");
  Rng rng(2);
  Complex x = random_projective_complex(s, rng, {0, 2, 1, 2});
  Complex y = random_acyclic(s, rng, {0, 2, 1, 1});
  CHECK(is_acyclic(y));
  HomComplex h = hom_complex(x, y);
  CHECK(h.vec.homology_dim(0) == 0);
  ChainMap f = random_chain_map(x, y, rng);
  auto htpy = find_homotopy(f, ChainMap::zero(x, y));
  CHECK(htpy.has_value());
}

TEST_CASE("pushouts and pullbacks") {
  ValidationOn v;
  Site s = Site::preset("cyclic2");
  Rng rng(9);
  Complex a = random_complex(s, rng, {0, 1, 1, 1});
  Complex b = random_complex(s, rng, {0, 1, 1, 1});
  ChainMap f = random_chain_map(a, b, rng);
  Pushout p = pushout(f, ChainMap::identity(a));
  for (int n = b.lo(); n <= b.hi(); ++n) CHECK(p.complex.term(n).dims() == b.term(n).dims());
  CHECK(p.to_first.is_iso());
  CHECK(compose(p.to_first, f) == compose(p.to_second, ChainMap::identity(a)));

  Pushout q = pushout(ChainMap::zero(a, Complex::zero(s)), f);
  for (int n = b.lo(); n <= b.hi(); ++n) CHECK(q.complex.term(n).dims() == cokernel(f).complex.term(n).dims());

  Pullback pb = pullback(f, ChainMap::identity(b));
  CHECK(pb.from_first.is_iso());
  CHECK(compose(f, pb.from_first) == pb.from_second);

  ChainMap out = pushout_map(p, ChainMap::identity(b), f);
  CHECK(compose(out, p.to_first).is_identity());
  CHECK(compose(out, p.to_second) == f);
  ChainMap in = pullback_map(pb, ChainMap::identity(a), f);
  CHECK(compose(pb.from_first, in).is_identity());
  CHECK(compose(pb.from_second, in) == f);
}
