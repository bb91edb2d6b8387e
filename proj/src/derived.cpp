#include "glrep/derived.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "glrep/error.hpp"

namespace glrep {

namespace {

int sign(long k) { return k % 2 == 0 ? 1 : -1; }

// Matrix of a linear map between Hom spaces given on the basis of the source.
template <typename F>
Matrix induced_matrix(const HomSpace& from, const HomSpace& to, F&& op) {
  Matrix m(to.dim(), from.dim());
  for (std::size_t b = 0; b < from.dim(); ++b) {
    const auto c = to.coordinates(op(from.basis()[b]));
    for (std::size_t r = 0; r < c.size(); ++r) m(r, b) = c[r];
  }
  return m;
}

Complex projective_model(const Complex& c) {
  return is_degreewise_projective(c) ? c : thin_replacement(c).thin;
}

std::size_t total(const HomologyTable& t, std::size_t g) {
  std::size_t s = 0;
  for (const auto& row : t.dims) s += row[g];
  return s;
}

}  // namespace

std::vector<std::size_t> compactness_table(const Complex& c) {
  HomologyTable t = homology_dims(c);
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < c.site().size(); ++g) out.push_back(total(t, g));
  return out;
}

PerfectCertificate perfect_certificate(const Complex& c) {
  ThinReplacement r = thin_replacement(c);
  if (!is_degreewise_projective(r.thin)) internal_failure("perfect_certificate: thin model is not projective");
  return {r.thin, r.quasi_iso, r.split.pieces};
}

std::optional<TorsionFreeHit> torsion_free_homology(const Complex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n) {
    RepObject h = homology(c, n).homology.object;
    if (h.is_zero()) continue;
    for (std::size_t g = 0; g < c.site().size(); ++g) {
      if (auto v = torsion_free_search(h, g)) return TorsionFreeHit{n, g, *v, h};
    }
  }
  return std::nullopt;
}

std::optional<SplitMono> try_eG_split_mono(const RepObject& x, std::size_t g, const std::vector<Scalar>& element) {
  const Site& site = x.site();
  require(element.size() == x.dim(g), "eG_split_mono: element has the wrong length");
  const Matrix v = Matrix::column(element);
  for (std::size_t t = 0; t < site.size(); ++t) {
    for (std::size_t a : site.hom(t, g)) {
      if ((x.action(a) * v).is_zero()) precondition_failed("eG_split_mono: element is torsion");
    }
  }
  SplitMono out;
  out.eg = make_eG(site, g);
  out.target = tensor(out.eg, x);
  Matrix id_class(site.hom(g, g).size(), 1);
  id_class(site.position(site.identity(g)), 0) = 1;
  out.inclusion = map_from_eG(out.eg, g, out.target, kron(id_class, v).col(0));
  HomSpace h = hom_space(out.target, out.eg);
  const std::vector<Scalar> rhs = flatten(RepMap::identity(out.eg));
  Matrix a(rhs.size(), h.dim());
  for (std::size_t k = 0; k < h.dim(); ++k) {
    const auto col = flatten(compose(h.basis()[k], out.inclusion));
    for (std::size_t i = 0; i < col.size(); ++i) a(i, k) = col[i];
  }
  auto sol = solve_right(a, Matrix::column(rhs));
  if (!sol) return std::nullopt;
  out.retraction = h.combination(sol->col(0));
  if (!compose(out.retraction, out.inclusion).is_identity()) internal_failure("eG_split_mono: retraction check failed");
  return out;
}

SplitMono eG_split_mono(const RepObject& x, std::size_t g, const std::vector<Scalar>& element) {
  auto s = try_eG_split_mono(x, g, element);
  if (!s) internal_failure("eG_split_mono: no natural retraction of e_G -> e_G (x) X");
  return *s;
}

RepMap internal_hom_pre(const RepMap& f, const InternalHom& from, const InternalHom& to) {
  const Site& site = f.source().site();
  std::vector<Matrix> comps;
  for (std::size_t g = 0; g < site.size(); ++g) {
    const RepMap pre = tensor(RepMap::identity(to.eg[g]), f);
    comps.push_back(induced_matrix(from.spaces[g], to.spaces[g], [&](const RepMap& b) { return compose(b, pre); }));
  }
  return RepMap::assemble(from.object, to.object, std::move(comps));
}

RepMap internal_hom_post(const RepMap& g, const InternalHom& from, const InternalHom& to) {
  const Site& site = g.source().site();
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < site.size(); ++o) {
    comps.push_back(induced_matrix(from.spaces[o], to.spaces[o], [&](const RepMap& b) { return compose(g, b); }));
  }
  return RepMap::assemble(from.object, to.object, std::move(comps));
}

InternalHomComplex internal_hom_complex(const Complex& x, const Complex& y) {
  const Site& site = x.site();
  InternalHomComplex out;
  if (x.length() == 0 || y.length() == 0) {
    out.complex = Complex::zero(site);
    return out;
  }
  const int lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  std::vector<RepObject> terms;
  for (int m = lo; m <= hi; ++m) {
    std::vector<RepObject> parts;
    std::vector<int> idx;
    std::vector<InternalHom> homs;
    for (int i = x.lo(); i <= x.hi(); ++i) {
      if (i + m < y.lo() || i + m > y.hi()) continue;
      homs.push_back(internal_hom(x.term(i), y.term(i + m)));
      parts.push_back(homs.back().object);
      idx.push_back(i);
    }
    out.sums.push_back(make_sum(site, std::move(parts)));
    out.source_degree.push_back(std::move(idx));
    out.homs.push_back(std::move(homs));
    terms.push_back(out.sums.back().object);
  }
  auto index_of = [&](int m, int i) -> std::optional<std::size_t> {
    const auto& f = out.source_degree[static_cast<std::size_t>(m - lo)];
    auto it = std::find(f.begin(), f.end(), i);
    if (it == f.end()) return std::nullopt;
    return static_cast<std::size_t>(it - f.begin());
  };
  std::vector<RepMap> diffs;
  for (int m = lo + 1; m <= hi; ++m) {
    const auto k = static_cast<std::size_t>(m - lo);
    std::vector<BlockEntry> blocks;
    for (std::size_t p = 0; p < out.source_degree[k].size(); ++p) {
      const int i = out.source_degree[k][p];
      const InternalHom& from = out.homs[k][p];
      if (auto q = index_of(m - 1, i)) {
        blocks.push_back({*q, p, internal_hom_post(y.d(i + m), from, out.homs[k - 1][*q])});
      }
      if (auto q = index_of(m - 1, i + 1)) {
        RepMap pre = internal_hom_pre(x.d(i + 1), from, out.homs[k - 1][*q]);
        blocks.push_back({*q, p, Scalar(-sign(m)) * pre});
      }
    }
    diffs.push_back(block_map(out.sums[k - 1], out.sums[k], blocks));
  }
  out.complex = Complex::assemble(site, lo, std::move(terms), std::move(diffs));
  return out;
}

RepMap evaluation_map(const InternalHom& dual, const InternalHom& hom, const RepObject& b) {
  const Site& site = b.site();
  RepObject source = tensor(dual.object, b);
  std::vector<Matrix> comps;
  for (std::size_t g = 0; g < site.size(); ++g) {
    const HomSpace& ds = dual.spaces[g];
    const HomSpace& hs = hom.spaces[g];
    Matrix m(hs.dim(), ds.dim() * b.dim(g));
    for (std::size_t k = 0; k < ds.dim(); ++k) {
      const RepMap& phi = ds.basis()[k];
      for (std::size_t j = 0; j < b.dim(g); ++j) {
        std::vector<Matrix> parts;
        for (std::size_t t = 0; t < site.size(); ++t) {
          const auto& classes = site.hom(t, g);
          const std::size_t cols = phi.source().dim(t);
          const std::size_t da = classes.empty() ? 0 : cols / classes.size();
          Matrix c(b.dim(t), cols);
          for (std::size_t ap = 0; ap < classes.size(); ++ap) {
            const Matrix& act = b.action(classes[ap]);
            for (std::size_t xi = 0; xi < da; ++xi) {
              const Scalar& coef = phi.at(t)(0, ap * da + xi);
              if (coef.is_zero()) continue;
              for (std::size_t r = 0; r < b.dim(t); ++r) c(r, ap * da + xi) = coef * act(r, j);
            }
          }
          parts.push_back(std::move(c));
        }
        const auto coords = hs.coordinates(RepMap::assemble(hs.source(), b, std::move(parts)));
        for (std::size_t r = 0; r < coords.size(); ++r) m(r, k * b.dim(g) + j) = coords[r];
      }
    }
    comps.push_back(std::move(m));
  }
  return RepMap::assemble(source, hom.object, std::move(comps));
}

ConstantComparison constant_comparison(const Complex& x) {
  const Site& site = x.site();
  auto one = site.unit_object();
  require(one.has_value(), "constant_comparison: the site has no trivial group");
  const RepObject unit = unit_object(site);
  std::vector<RepObject> terms;
  std::vector<std::vector<std::vector<Scalar>>> reps;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    SpanBasis acc = span_basis(x.d(n + 1).at(*one));
    const Matrix cycles = kernel_basis(x.d(n).at(*one));
    std::vector<std::vector<Scalar>> chosen;
    Matrix current = acc.basis;
    for (std::size_t k = 0; k < cycles.cols(); ++k) {
      Matrix trial = hstack(current, cycles.select_cols({k}));
      if (rank(trial) > current.cols()) {
        current = trial;
        chosen.push_back(cycles.col(k));
      }
    }
    terms.push_back(make_sum(site, std::vector<RepObject>(chosen.size(), unit)).object);
    reps.push_back(std::move(chosen));
  }
  std::vector<RepMap> diffs;
  for (std::size_t k = 1; k < terms.size(); ++k) diffs.push_back(RepMap::zero(terms[k], terms[k - 1]));
  ConstantComparison out;
  out.constant = x.length() == 0 ? Complex::zero(site) : Complex::assemble(site, x.lo(), terms, diffs);
  std::vector<RepMap> comps;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const auto k = static_cast<std::size_t>(n - x.lo());
    std::vector<Matrix> cols(site.size());
    SumObject s = make_sum(site, std::vector<RepObject>(reps[k].size(), unit));
    RepMap f = RepMap::zero(s.object, x.term(n));
    for (std::size_t p = 0; p < reps[k].size(); ++p) {
      f += compose(map_from_eG(unit, *one, x.term(n), reps[k][p]), project(s, p));
    }
    comps.push_back(RepMap::assemble(out.constant.term(n), x.term(n), f.comps()));
  }
  out.comparison = ChainMap::create(out.constant, x, x.lo(), std::move(comps));
  return out;
}

DualizabilityVerdict dualizable_test(const Complex& c) {
  const Site& site = c.site();
  const Complex t = projective_model(c);
  DualizabilityVerdict v;
  InternalHomComplex dual = internal_hom_complex(t, Complex::single(unit_object(site)));
  InternalHomComplex ends = internal_hom_complex(t, t);
  TensorComplex source = tensor(dual.complex, t);
  std::vector<RepMap> comps;
  for (int m = source.complex.lo(); m <= source.complex.hi(); ++m) {
    const auto k = static_cast<std::size_t>(m - source.complex.lo());
    const RepObject& target_term = ends.complex.term(m);
    std::vector<BlockEntry> blocks;
    const bool target_present = m >= ends.complex.lo() && m <= ends.complex.hi();
    for (std::size_t p = 0; p < source.first_degree[k].size() && target_present; ++p) {
      const int a = source.first_degree[k][p], b = m - a;
      const auto ka = static_cast<std::size_t>(a - dual.complex.lo());
      const auto& dual_idx = dual.source_degree[ka];
      auto it = std::find(dual_idx.begin(), dual_idx.end(), -a);
      if (it == dual_idx.end()) continue;
      const auto dp = static_cast<std::size_t>(it - dual_idx.begin());
      const auto km = static_cast<std::size_t>(m - ends.complex.lo());
      const auto& end_idx = ends.source_degree[km];
      auto jt = std::find(end_idx.begin(), end_idx.end(), -a);
      if (jt == end_idx.end()) continue;
      const auto ep = static_cast<std::size_t>(jt - end_idx.begin());
      RepMap nu = evaluation_map(dual.homs[ka][dp], ends.homs[km][ep], t.term(b));
      RepMap restrict = tensor(project(dual.sums[ka], dp), RepMap::identity(t.term(b)));
      blocks.push_back({ep, p, Scalar(sign(static_cast<long>(a) * b)) * compose(nu, restrict)});
    }
    if (target_present) {
      comps.push_back(block_map(ends.sums[static_cast<std::size_t>(m - ends.complex.lo())], source.sums[k], blocks));
    } else {
      comps.push_back(RepMap::zero(source.complex.term(m), target_term));
    }
  }
  ChainMap nu = ChainMap::create(source.complex, ends.complex, source.complex.lo(), std::move(comps));
  v.nu_quasi_iso = is_quasi_iso(nu);
  v.source_homology = homology_dims(source.complex);
  v.target_homology = homology_dims(ends.complex);
  v.dualizable = v.nu_quasi_iso;

  std::ostringstream w;
  if (!v.nu_quasi_iso) {
    for (std::size_t g = 0; g < site.size(); ++g) {
      if (total(v.source_homology, g) != total(v.target_homology, g) || !(v.source_homology == v.target_homology)) {
        v.object = g;
        if (total(v.source_homology, g) != total(v.target_homology, g)) break;
      }
    }
    w << "at " << site.object(v.object).label() << ": total homology of D(X)(x)X is " << total(v.source_homology, v.object)
      << ", of iHom(X,X) is " << total(v.target_homology, v.object) << " (H_0 = " << v.target_homology.at(0, v.object)
      << ")";
  } else {
    w << "D(X)(x)X -> iHom(X,X) is a quasi-isomorphism";
  }
  if (site.unit_object()) {
    const bool comparison = is_quasi_iso(constant_comparison(t).comparison);
    v.constant_comparison = comparison;
    if (comparison != v.nu_quasi_iso) {
      internal_failure("dualizable_test: evaluation criterion and constant comparison disagree");
    }
    w << "; constant comparison " << (comparison ? "is" : "is not") << " a quasi-isomorphism";
  }
  v.witness = w.str();
  return v;
}

}  // namespace glrep
