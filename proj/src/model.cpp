#include "glrep/model.hpp"

#include <algorithm>

#include "glrep/error.hpp"

namespace glrep {

namespace {

struct Range {
  int lo = 0;
  int hi = -1;
  bool empty = true;
  void add(int a, int b) {
    if (a > b) return;
    if (empty) {
      lo = a;
      hi = b;
      empty = false;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  }
};

void add_complex(Range& r, const Complex& c, int offset) {
  if (c.length() > 0) r.add(c.lo() + offset, c.hi() + offset);
}

std::vector<Scalar> unit_vector(std::size_t n, std::size_t k) {
  std::vector<Scalar> e(n);
  e[k] = 1;
  return e;
}

void set_column(Matrix& m, std::size_t row0, std::size_t col, const std::vector<Scalar>& v) {
  for (std::size_t r = 0; r < v.size(); ++r) m(row0 + r, col) = v[r];
}

// Builds a complex of three-part sums and its differentials from block entries.
struct ThreePartBuilder {
  const Site& site;
  Range range;
  std::vector<SumObject> sums;

  const SumObject& at(int n) const { return sums[static_cast<std::size_t>(n - range.lo)]; }
};

// A map out of a quotient complex induced by w: ambient -> E that kills the subcomplex.
ChainMap descend(const QuotientComplex& q, const Complex& ambient, const ChainMap& w) {
  const Complex& e = w.target();
  std::vector<RepMap> comps;
  for (int n = ambient.lo(); n <= ambient.hi(); ++n) {
    const QuotientObject& t = q.terms[static_cast<std::size_t>(n - ambient.lo())];
    const RepMap wn = w.at(n);
    std::vector<Matrix> m;
    for (std::size_t g = 0; g < e.site().size(); ++g) m.push_back(wn.at(g) * t.sections[g]);
    comps.push_back(RepMap::assemble(q.complex.term(n), e.term(n), std::move(m)));
  }
  return ChainMap::create(q.complex, e, ambient.lo(), std::move(comps));
}

// Chain maps X -> Y solving linear conditions on their coordinates.
struct ChainMapSpace {
  HomDegree h0, hm;
  Matrix cycle_rows;  // D h = 0
};

ChainMapSpace chain_map_space(const Complex& x, const Complex& y) {
  ChainMapSpace s;
  s.h0 = hom_degree(x, y, 0);
  s.hm = hom_degree(x, y, -1);
  s.cycle_rows = hom_differential(x, y, s.h0, s.hm);
  return s;
}

// Coordinates in `into` of op(e_k) for each basis element e_k of `from`.
template <typename Op>
Matrix image_matrix(const Complex& x, const Complex& y, const HomDegree& from, const HomDegree& into, Op op) {
  Matrix m(into.dim, from.dim);
  for (std::size_t k = 0; k < from.dim; ++k) {
    set_column(m, 0, k, coordinates(into, op(element(x, y, from, unit_vector(from.dim, k)))));
  }
  return m;
}

// Commuting squares (a: A -> L, b: B -> M) with q a = b i, as the kernel of
// a linear system in the coordinates of (a, b).
struct SquareSystem {
  ChainMapSpace al, bm;
  HomDegree am;
  Matrix constraints;
};

SquareSystem square_system(const ChainMap& i, const ChainMap& q) {
  const Complex& a = i.source();
  const Complex& b = i.target();
  const Complex& l = q.source();
  const Complex& m = q.target();
  SquareSystem s;
  s.al = chain_map_space(a, l);
  s.bm = chain_map_space(b, m);
  s.am = hom_degree(a, m, 0);
  const Matrix post = image_matrix(a, l, s.al.h0, s.am, [&](const GradedMap& e) { return compose(q.graded(), e); });
  const Matrix pre = image_matrix(b, m, s.bm.h0, s.am, [&](const GradedMap& e) { return compose(e, i.graded()); });
  const std::size_t rows = s.al.hm.dim + s.bm.hm.dim + s.am.dim;
  Matrix c(rows, s.al.h0.dim + s.bm.h0.dim);
  c.set_block(0, 0, s.al.cycle_rows);
  c.set_block(s.al.hm.dim, s.al.h0.dim, s.bm.cycle_rows);
  c.set_block(s.al.hm.dim + s.bm.hm.dim, 0, post);
  c.set_block(s.al.hm.dim + s.bm.hm.dim, s.al.h0.dim, -pre);
  s.constraints = std::move(c);
  return s;
}

}  // namespace

MapClass classify_map(const ChainMap& f) {
  MapClass c;
  c.we = is_quasi_iso(f);
  c.fib = f.is_surjective();
  if (f.is_injective()) {
    const QuotientComplex q = cokernel(f);
    c.cof = true;
    for (int n = q.complex.lo(); n <= q.complex.hi(); ++n) {
      if (!is_projective_by_layers(q.complex.term(n))) {
        c.cof = false;
        break;
      }
    }
  }
  c.acf = c.we && c.cof;
  c.afb = c.we && c.fib;
  return c;
}

Factorization factor_M(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const Site& site = x.site();
  Factorization out;
  out.source_resolution = p_total(x);
  out.target_resolution = p_total(y);
  const Complex& px = out.source_resolution.complex;
  const Complex& py = out.target_resolution.complex;
  const ChainMap& ex = out.source_resolution.epsilon;
  const ChainMap& ey = out.target_resolution.epsilon;
  const ChainMap pf = p_total_map(f, out.source_resolution, out.target_resolution);

  ThreePartBuilder b{site, {}, {}};
  add_complex(b.range, x, 0);
  add_complex(b.range, px, 1);
  add_complex(b.range, py, 0);
  std::vector<RepObject> terms;
  for (int n = b.range.lo; n <= b.range.hi; ++n) {
    b.sums.push_back(make_sum(site, {x.term(n), px.term(n - 1), py.term(n)}));
    terms.push_back(b.sums.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = b.range.lo + 1; n <= b.range.hi; ++n) {
    diffs.push_back(block_map(b.at(n - 1), b.at(n),
                              {{0, 0, x.d(n)},
                               {0, 1, ex.at(n - 1)},
                               {1, 1, -px.d(n - 1)},
                               {2, 1, -pf.at(n - 1)},
                               {2, 2, py.d(n)}}));
  }
  out.middle = Complex::assemble(site, b.range.lo, std::move(terms), std::move(diffs));
  std::vector<RepMap> first, second;
  for (int n = b.range.lo; n <= b.range.hi; ++n) {
    first.push_back(RepMap::assemble(x.term(n), out.middle.term(n), inject(b.at(n), 0).comps()));
    second.push_back(RepMap::assemble(out.middle.term(n), y.term(n),
                                      block_map(make_sum(site, {y.term(n)}), b.at(n),
                                                {{0, 0, f.at(n)}, {0, 2, ey.at(n)}})
                                          .comps()));
  }
  out.first = ChainMap::assemble(x, out.middle, b.range.lo, std::move(first));
  out.second = ChainMap::assemble(out.middle, y, b.range.lo, std::move(second));
  out.sums = std::move(b.sums);
  return out;
}

Factorization factor_N(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const Site& site = x.site();
  Factorization out;
  out.target_resolution = p_total(y);
  const Complex& py = out.target_resolution.complex;
  const ChainMap& ey = out.target_resolution.epsilon;

  ThreePartBuilder b{site, {}, {}};
  add_complex(b.range, x, 0);
  add_complex(b.range, py, -1);
  add_complex(b.range, py, 0);
  std::vector<RepObject> terms;
  for (int n = b.range.lo; n <= b.range.hi; ++n) {
    b.sums.push_back(make_sum(site, {x.term(n), py.term(n + 1), py.term(n)}));
    terms.push_back(b.sums.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = b.range.lo + 1; n <= b.range.hi; ++n) {
    diffs.push_back(block_map(b.at(n - 1), b.at(n),
                              {{0, 0, x.d(n)},
                               {1, 1, -py.d(n + 1)},
                               {1, 2, RepMap::identity(py.term(n))},
                               {2, 2, py.d(n)}}));
  }
  out.middle = Complex::assemble(site, b.range.lo, std::move(terms), std::move(diffs));
  std::vector<RepMap> first, second;
  for (int n = b.range.lo; n <= b.range.hi; ++n) {
    first.push_back(RepMap::assemble(x.term(n), out.middle.term(n), inject(b.at(n), 0).comps()));
    second.push_back(RepMap::assemble(out.middle.term(n), y.term(n),
                                      block_map(make_sum(site, {y.term(n)}), b.at(n),
                                                {{0, 0, f.at(n)}, {0, 2, ey.at(n)}})
                                          .comps()));
  }
  out.first = ChainMap::assemble(x, out.middle, b.range.lo, std::move(first));
  out.second = ChainMap::assemble(out.middle, y, b.range.lo, std::move(second));
  out.sums = std::move(b.sums);
  return out;
}

NCokernel factor_N_cokernel(const Factorization& n) {
  const Complex& py = n.target_resolution.complex;
  const Site& site = py.site();
  const Complex& mid = n.middle;
  std::vector<SumObject> sums;
  std::vector<RepObject> terms;
  for (int k = mid.lo(); k <= mid.hi(); ++k) {
    sums.push_back(make_sum(site, {py.term(k + 1), py.term(k)}));
    terms.push_back(sums.back().object);
  }
  auto at = [&](int k) -> const SumObject& { return sums[static_cast<std::size_t>(k - mid.lo())]; };
  std::vector<RepMap> diffs;
  for (int k = mid.lo() + 1; k <= mid.hi(); ++k) {
    diffs.push_back(block_map(at(k - 1), at(k),
                              {{0, 0, -py.d(k + 1)}, {0, 1, RepMap::identity(py.term(k))}, {1, 1, py.d(k)}}));
  }
  NCokernel out;
  out.complex = Complex::assemble(site, mid.lo(), std::move(terms), std::move(diffs));
  std::vector<RepMap> proj, s;
  for (int k = mid.lo(); k <= mid.hi(); ++k) {
    const SumObject& src = n.sums[static_cast<std::size_t>(k - mid.lo())];
    proj.push_back(block_map(at(k), src,
                             {{0, 1, RepMap::identity(py.term(k + 1))}, {1, 2, RepMap::identity(py.term(k))}}));
    if (k < mid.hi()) {
      s.push_back(block_map(at(k + 1), at(k), {{1, 0, RepMap::identity(py.term(k + 1))}}));
    } else {
      s.push_back(RepMap::zero(at(k).object, out.complex.term(k + 1)));
    }
  }
  out.projection = ChainMap::assemble(mid, out.complex, mid.lo(), std::move(proj));
  out.contraction = GradedMap::assemble(out.complex, out.complex, 1, mid.lo(), std::move(s));
  return out;
}

std::optional<ChainMap> solve_lift(const LiftingProblem& p) {
  const Complex& a = p.i.source();
  const Complex& b = p.i.target();
  const Complex& l = p.q.source();
  const Complex& m = p.q.target();
  ChainMapSpace bl = chain_map_space(b, l);
  HomDegree al = hom_degree(a, l, 0), bm = hom_degree(b, m, 0);
  const Matrix pre = image_matrix(b, l, bl.h0, al, [&](const GradedMap& e) { return compose(e, p.i.graded()); });
  const Matrix post = image_matrix(b, l, bl.h0, bm, [&](const GradedMap& e) { return compose(p.q.graded(), e); });
  Matrix sys = vstack({bl.cycle_rows, pre, post}, bl.h0.dim);
  Matrix rhs(sys.rows(), 1);
  set_column(rhs, bl.hm.dim, 0, coordinates(al, p.f.graded()));
  set_column(rhs, bl.hm.dim + al.dim, 0, coordinates(bm, p.g.graded()));
  auto sol = solve_right(sys, rhs);
  if (!sol) {
    const MapClass ci = classify_map(p.i), cq = classify_map(p.q);
    if ((ci.cof && cq.afb) || (ci.acf && cq.fib)) internal_failure("no lift for a square the model structure guarantees");
    return std::nullopt;
  }
  return ChainMap::create(element(b, l, bl.h0, sol->col(0)));
}

LiftingExtension build_lifting_extension(const LiftingProblem& p) {
  require(p.i.is_injective(), "the left map of a lifting problem must be injective");
  require(p.q.is_surjective(), "the right map of a lifting problem must be surjective");
  const Complex& b = p.i.target();
  Pullback pb = pullback(p.g, p.q);
  ChainMap from_a = pullback_map(pb, p.i, p.f);
  QuotientComplex t = cokernel(from_a);
  SubComplex k = kernel(p.q);
  ChainMap k_to_p = pullback_map(pb, ChainMap::zero(k.complex, b), k.inclusion);
  QuotientComplex c = cokernel(p.i);
  LiftingExtension out;
  out.t = t.complex;
  out.from_kernel = compose(t.projection, k_to_p);
  out.to_cokernel = descend(t, pb.complex, compose(c.projection, pb.from_first));

  // A chain-map section of T -> C.
  ChainMapSpace ct = chain_map_space(c.complex, t.complex);
  HomDegree cc = hom_degree(c.complex, c.complex, 0);
  const Matrix post = image_matrix(c.complex, t.complex, ct.h0, cc,
                                   [&](const GradedMap& e) { return compose(out.to_cokernel.graded(), e); });
  Matrix sys = vstack({ct.cycle_rows, post}, ct.h0.dim);
  Matrix rhs(sys.rows(), 1);
  set_column(rhs, ct.hm.dim, 0, coordinates(cc, ChainMap::identity(c.complex).graded()));
  out.splits = solve_right(sys, rhs).has_value();
  return out;
}

std::size_t square_space_dim(const ChainMap& i, const ChainMap& q) {
  return kernel_basis(square_system(i, q).constraints).cols();
}

LiftingProblem sample_square(const ChainMap& i, const ChainMap& q, const std::vector<Scalar>& coeffs) {
  SquareSystem s = square_system(i, q);
  const Matrix basis = kernel_basis(s.constraints);
  std::vector<Scalar> v(basis.rows());
  for (std::size_t k = 0; k < basis.cols() && k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    for (std::size_t r = 0; r < basis.rows(); ++r) v[r] += coeffs[k] * basis(r, k);
  }
  std::vector<Scalar> av(v.begin(), v.begin() + static_cast<long>(s.al.h0.dim));
  std::vector<Scalar> bv(v.begin() + static_cast<long>(s.al.h0.dim), v.end());
  LiftingProblem p;
  p.i = i;
  p.q = q;
  p.f = ChainMap::create(element(i.source(), q.source(), s.al.h0, av));
  p.g = ChainMap::create(element(i.target(), q.target(), s.bm.h0, bv));
  return p;
}

GeneratingSets generating_sets(const Site& site, int lo, int hi) {
  GeneratingSets out;
  const Complex zero = Complex::zero(site);
  for (int n = lo; n <= hi; ++n) {
    for (std::size_t g = 0; g < site.size(); ++g) {
      const RepObject eg = make_eG(site, g);
      const DeltaComplex disk = delta(site, Graded{0, {eg}});
      const Complex target = shift(disk.complex, n);
      const Complex source = Complex::single(eg, n - 1);
      const RepMap bottom = RepMap::assemble(eg, target.term(n - 1), inject(disk.sums[0], 1).comps());
      out.cofibrations.push_back(ChainMap::create(source, target, n - 1, {bottom}));
      out.acyclic_cofibrations.push_back(ChainMap::zero(zero, target));
    }
  }
  return out;
}

GeneratingSets generating_sets_for(const ChainMap& f) {
  Range r;
  add_complex(r, f.source(), 0);
  add_complex(r, f.target(), 0);
  if (r.empty) return {};
  return generating_sets(f.source().site(), r.lo, r.hi + 1);
}

bool has_rlp(const ChainMap& i, const ChainMap& f) {
  const Complex& b = i.target();
  const Complex& l = f.source();
  SquareSystem s = square_system(i, f);
  const std::size_t squares = kernel_basis(s.constraints).cols();
  ChainMapSpace bl = chain_map_space(b, l);
  const Matrix cycles = kernel_basis(bl.cycle_rows);
  Matrix image(s.al.h0.dim + s.bm.h0.dim, cycles.cols());
  for (std::size_t k = 0; k < cycles.cols(); ++k) {
    const GradedMap h = element(b, l, bl.h0, cycles.col(k));
    set_column(image, 0, k, coordinates(s.al.h0, compose(h, i.graded())));
    set_column(image, s.al.h0.dim, k, coordinates(s.bm.h0, compose(f.graded(), h)));
  }
  return rank(image) == squares;
}

bool rlp_check(const ChainMap& f, const std::vector<ChainMap>& generators) {
  return std::all_of(generators.begin(), generators.end(), [&](const ChainMap& i) { return has_rlp(i, f); });
}

PushoutProduct pushout_product(const ChainMap& f, const ChainMap& g) {
  const Complex& a = f.source();
  const Complex& b = f.target();
  const Complex& c = g.source();
  const Complex& d = g.target();
  const TensorComplex ac = tensor(a, c), ad = tensor(a, d), bc = tensor(b, c), bd = tensor(b, d);
  const ChainMap ia = ChainMap::identity(a), ib = ChainMap::identity(b);
  const ChainMap ic = ChainMap::identity(c), id = ChainMap::identity(d);
  PushoutProduct out;
  out.pushout = pushout(tensor(ia, g, ac, ad), tensor(f, ic, ac, bc));
  out.h = pushout_map(out.pushout, tensor(f, id, ad, bd), tensor(ib, g, bc, bd));
  const QuotientComplex qf = cokernel(f), qg = cokernel(g), qh = cokernel(out.h);
  const TensorComplex qt = tensor(qf.complex, qg.complex);
  out.comparison = descend(qh, bd.complex, tensor(qf.projection, qg.projection, bd, qt));
  out.comparison_iso = out.comparison.is_iso();
  return out;
}

ChainMap pullback_along(const ChainMap& w, const ChainMap& p) { return pullback(w, p).from_second; }

ChainMap pushout_along(const ChainMap& w, const ChainMap& i) { return pushout(w, i).to_second; }

}  // namespace glrep
