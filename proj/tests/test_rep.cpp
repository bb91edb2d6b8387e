#include <algorithm>

#include "doctest.h"
#include "glrep/error.hpp"
#include "glrep/rep.hpp"

using namespace glrep;

namespace {

struct ValidationOn {
  ValidationOn() { set_validation(true); }
  ~ValidationOn() { set_validation(false); }
};

// Naturality over every class (not just generators), solved densely.
std::size_t dense_hom_dim(const RepObject& x, const RepObject& y) {
  const Site& s = x.site();
  std::vector<std::size_t> off(s.size() + 1, 0);
  for (std::size_t o = 0; o < s.size(); ++o) off[o + 1] = off[o] + x.dim(o) * y.dim(o);
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t a = 0; a < s.class_count(); ++a) {
    const std::size_t h = s.morphism(a).source, g = s.morphism(a).target;
    for (std::size_t i = 0; i < y.dim(h); ++i) {
      for (std::size_t j = 0; j < x.dim(g); ++j) {
        std::vector<Scalar> row(off.back());
        for (std::size_t k = 0; k < x.dim(h); ++k) row[off[h] + i * x.dim(h) + k] += x.action(a)(k, j);
        for (std::size_t l = 0; l < y.dim(g); ++l) row[off[g] + l * x.dim(g) + j] -= y.action(a)(i, l);
        rows.push_back(row);
      }
    }
  }
  if (rows.empty()) return off.back();
  return off.back() - rank(Matrix::from_rows(rows, off.back()));
}

std::vector<RepObject> sample_objects(const Site& s) {
  std::vector<RepObject> out{unit_object(s)};
  for (std::size_t g = 0; g < s.size(); ++g) {
    out.push_back(make_eG(s, g));
    out.push_back(make_cG(s, g));
  }
  return out;
}

}  // namespace

TEST_CASE("generators are functors") {
  ValidationOn v;
  for (const auto& name : Site::preset_names()) {
    Site s = Site::preset(name);
    for (const auto& x : sample_objects(s)) CHECK_FALSE(x.functoriality_failure().has_value());
    for (std::size_t a = 0; a < s.class_count(); ++a) CHECK_FALSE(e_morphism(s, a).naturality_failure());
  }
}

TEST_CASE("representable and orbit object dimensions") {
  Site s = Site::preset("elemab2");
  RepObject e = make_eG(s, 1);
  CHECK(e.dims() == std::vector<std::size_t>{0, 1, 3});
  CHECK(tensor(e, e).dims() == std::vector<std::size_t>{0, 1, 9});
  CHECK(make_cG(s, 2).dims() == std::vector<std::size_t>{0, 0, 1});
  RepMap counit = map_from_eG(e, 1, unit_object(s), {Scalar(1)});
  CHECK(cokernel(counit).object.dims() == std::vector<std::size_t>{1, 0, 0});
  CHECK(kernel(counit).object.dims() == std::vector<std::size_t>{0, 0, 2});
  CHECK_THROWS_AS(RepObject::create(s, {1, 1, 1}, std::vector<Matrix>(s.class_count(), Matrix::identity(2))),
                  PreconditionError);
}

TEST_CASE("hom spaces agree with the dense all-classes oracle") {
  ValidationOn v;
  for (const char* name : {"elemab2", "cyclic2x3", "c2c3c6", "gpd-c2"}) {
    Site s = Site::preset(name);
    auto objs = sample_objects(s);
    objs.push_back(tensor(make_eG(s, s.size() - 1), make_cG(s, s.size() - 1)));
    for (const auto& x : objs) {
      for (const auto& y : objs) {
        HomSpace h = hom_space(x, y);
        CHECK(h.dim() == dense_hom_dim(x, y));
        for (std::size_t k = 0; k < h.dim(); ++k) {
          std::vector<Scalar> e(h.dim());
          e[k] = 1;
          CHECK(h.coordinates(h.basis()[k]) == e);
        }
      }
    }
  }
}

TEST_CASE("Yoneda: Hom(e_G, Y) has dimension dim Y(G)") {
  Site s = Site::preset("cyclic2x3");
  auto objs = sample_objects(s);
  for (std::size_t g = 0; g < s.size(); ++g) {
    RepObject eg = make_eG(s, g);
    for (const auto& y : objs) {
      CHECK(hom_space(eg, y).dim() == y.dim(g));
      if (y.dim(g) == 0) continue;
      std::vector<Scalar> x(y.dim(g));
      x.back() = 3;
      RepMap f = map_from_eG(eg, g, y, x);
      CHECK_FALSE(f.naturality_failure());
      // The element is recovered by evaluating at the identity class.
      CHECK(f.at(g).col(s.position(s.identity(g))) == x);
    }
  }
}

TEST_CASE("kernels, images, cokernels") {
  ValidationOn v;
  Site s = Site::preset("c2c3c6");
  RepObject x = make_eG(s, s.resolve("C6"));
  RepObject y = unit_object(s);
  RepMap f = map_from_eG(x, s.resolve("C6"), y, {Scalar(2)});
  Subobject k = kernel(f);
  QuotientObject c = cokernel(f);
  Subobject im = image(f);
  CHECK(compose(f, k.inclusion).is_zero());
  CHECK(compose(c.projection, f).is_zero());
  for (std::size_t o = 0; o < s.size(); ++o) {
    CHECK(k.object.dim(o) + im.object.dim(o) == x.dim(o));
    CHECK(im.object.dim(o) + c.object.dim(o) == y.dim(o));
  }
  RepMap g = factor_through(im, f);
  CHECK(compose(im.inclusion, g) == f);
  CHECK(g.is_surjective());
}

TEST_CASE("sums and blocks") {
  Site s = Site::preset("cyclic2");
  SumObject sum = make_sum(s, {make_eG(s, 1), unit_object(s), make_cG(s, 2)});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(compose(project(sum, i), inject(sum, i)).is_identity());
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(compose(project(sum, j), inject(sum, i)).is_zero());
    }
  }
  RepMap f = map_from_eG(sum.parts[0], 1, sum.parts[1], {Scalar(5)});
  RepMap b = block_map(sum, sum, {{1, 0, f}});
  CHECK(block_of(b, sum, 1, sum, 0) == f);
  CHECK(block_of(b, sum, 0, sum, 1).is_zero());
}

TEST_CASE("projectivity by layers agrees with the existence of a section") {
  for (const char* name : {"elemab2", "c2c3c6", "cyclic2-nounit", "cyclic2x3"}) {
    Site s = Site::preset(name);
    auto objs = sample_objects(s);
    objs.push_back(cokernel(map_from_eG(make_eG(s, 1), 1, unit_object(s), {Scalar(1)})).object);
    for (const auto& x : objs) {
      auto section = projectivity_section(x);
      CHECK(section.has_value() == is_projective_by_layers(x));
      if (section) {
        CHECK_FALSE(section->naturality_failure());
        CHECK(compose(counit_P0(x).epsilon, *section).is_identity());
      }
    }
    for (std::size_t g = 0; g < s.size(); ++g) CHECK(is_projective_by_layers(make_eG(s, g)));
    CHECK(is_projective_by_layers(unit_object(s)) == classify_site(s).unit_projective_predicted);
  }
}

TEST_CASE("counit is surjective and P0 is functorial") {
  ValidationOn v;
  Site s = Site::preset("elemab2");
  RepObject x = tensor(make_eG(s, 1), make_cG(s, 2));
  RepObject y = unit_object(s);
  Counit cx = counit_P0(x), cy = counit_P0(y);
  CHECK(cx.epsilon.is_surjective());
  HomSpace h = hom_space(x, y);
  REQUIRE(h.dim() > 0);
  RepMap f = h.basis()[0];
  RepMap pf = P0_map(f, cx, cy);
  CHECK(compose(cy.epsilon, pf) == compose(f, cx.epsilon));
}

TEST_CASE("filtration layers") {
  Site s = Site::preset("cyclic2x3");
  RepObject u = unit_object(s);
  std::size_t total = 0;
  for (auto ord : s.orders()) {
    Layer l = filtration_layer(u, ord);
    total += l.layer.object.total_dim();
    CHECK(is_s_pure(l.layer.object, ord));
  }
  CHECK(total == u.total_dim());
}

TEST_CASE("equivariant averaging") {
  Site s = Site::preset("elemab2");
  OutRep v = restrict_to(make_eG(s, 1), 2);
  OutRep w = restrict_to(tensor(make_cG(s, 2), make_eG(s, 1)), 2);
  Matrix phi(w.dim, v.dim);
  phi(0, 0) = 1;
  phi(1, 2) = -4;
  Matrix avg = average_equivariant(s, v, w, phi);
  CHECK(is_equivariant(s, v, w, avg));
  CHECK(average_equivariant(s, v, w, avg) == avg);
}

TEST_CASE("internal hom out of the unit recovers the target") {
  ValidationOn v;
  Site s = Site::preset("elemab2");
  RepObject y = tensor(make_eG(s, 1), make_eG(s, 2));
  InternalHom ih = internal_hom(unit_object(s), y);
  CHECK(ih.object.dims() == y.dims());
  CHECK_FALSE(ih.object.functoriality_failure());
  auto iso = find_isomorphism(ih.object, y);
  REQUIRE(iso.has_value());
  CHECK(iso->is_iso());
  // Same dimensions, different Out(C2^2)-actions.
  CHECK_FALSE(find_isomorphism(make_eG(s, 2), make_eGV(s, trivial_out_rep(s, 2, 6))).has_value());
  CHECK(find_isomorphism(make_eG(s, 1), make_cG(s, 1)).has_value());
}

TEST_CASE("torsion-free search") {
  Site s = Site::preset("elemab2");
  RepObject e = make_eG(s, 2);
  auto x = torsion_free_search(e, 2);
  REQUIRE(x.has_value());
  for (std::size_t t = 0; t < s.size(); ++t) {
    for (std::size_t a : s.hom(t, 2)) {
      auto img = e.action(a).apply(*x);
      CHECK(std::any_of(img.begin(), img.end(), [](const Scalar& c) { return !c.is_zero(); }));
    }
  }
  CHECK(torsion_free_search(unit_object(s), 0).has_value());
  RepObject k = kernel(map_from_eG(make_eG(s, 1), 1, unit_object(s), {Scalar(1)})).object;
  CHECK_FALSE(torsion_free_search(k, 1).has_value());  // k vanishes at C2
  // The cokernel of e_C2 -> 1 at the trivial group restricts to zero at C2.
  RepObject c = cokernel(map_from_eG(make_eG(s, 1), 1, unit_object(s), {Scalar(1)})).object;
  CHECK_FALSE(torsion_free_search(c, 0).has_value());
}

TEST_CASE("change of basis") {
  ValidationOn v;
  Site s = Site::preset("cyclic2");
  RepObject x = make_eG(s, 2);
  std::vector<Matrix> p;
  for (std::size_t o = 0; o < s.size(); ++o) {
    Matrix m = Matrix::identity(x.dim(o));
    for (std::size_t i = 0; i + 1 < x.dim(o); ++i) m(i, i + 1) = 2;
    p.push_back(m);
  }
  BasisChange bc = change_basis(x, p);
  CHECK_FALSE(bc.object.functoriality_failure());
  CHECK(bc.to_original.is_iso());
}
