#include "glrep/random.hpp"

#include <algorithm>
#include <numeric>

namespace glrep {

SumObject random_projective(const Site& site, Rng& rng, const RandomOptions& opt) {
  std::vector<std::size_t> objects(site.size());
  std::iota(objects.begin(), objects.end(), 0);
  for (std::size_t i = objects.size(); i > 1; --i) std::swap(objects[i - 1], objects[rng.below(i)]);
  const std::size_t count = 1 + rng.below(std::min(opt.max_generators, site.size()));
  std::vector<std::size_t> chosen(objects.begin(), objects.begin() + static_cast<long>(count));
  std::sort(chosen.begin(), chosen.end());
  std::vector<RepObject> parts;
  for (std::size_t g : chosen) {
    const std::size_t mult = 1 + rng.below(opt.max_multiplicity);
    RepObject e = make_eG(site, g);
    for (std::size_t m = 0; m < mult; ++m) parts.push_back(e);
  }
  return make_sum(site, std::move(parts));
}

RepMap random_map(const RepObject& x, const RepObject& y, Rng& rng) {
  HomSpace h = hom_space(x, y);
  std::vector<Scalar> coeffs;
  for (std::size_t k = 0; k < h.dim(); ++k) coeffs.push_back(rng.small_scalar());
  return h.combination(coeffs);
}

RepObject random_object(const Site& site, Rng& rng, const RandomOptions& opt) {
  RandomOptions small = opt;
  small.max_generators = 1;
  SumObject p0 = random_projective(site, rng, opt);
  SumObject p1 = random_projective(site, rng, small);
  return cokernel(random_map(p1.object, p0.object, rng)).object;
}

namespace {

template <typename MakeTerm>
Complex random_with_terms(const Site& site, Rng& rng, const RandomOptions& opt, MakeTerm make_term) {
  std::vector<RepObject> terms;
  std::vector<RepMap> diffs;
  for (int n = opt.lo; n <= opt.hi; ++n) {
    terms.push_back(make_term());
    if (n == opt.lo) continue;
    const RepObject& src = terms.back();
    const RepObject& tgt = terms[terms.size() - 2];
    if (diffs.empty()) {
      diffs.push_back(random_map(src, tgt, rng));
    } else {
      Subobject k = kernel(diffs.back());
      diffs.push_back(compose(k.inclusion, random_map(src, k.object, rng)));
    }
  }
  return Complex::assemble(site, opt.lo, std::move(terms), std::move(diffs));
}

}  // namespace

Complex random_projective_complex(const Site& site, Rng& rng, const RandomOptions& opt) {
  return random_with_terms(site, rng, opt, [&] { return random_projective(site, rng, opt).object; });
}

Complex random_complex(const Site& site, Rng& rng, const RandomOptions& opt) {
  return random_with_terms(site, rng, opt, [&] { return random_object(site, rng, opt); });
}

Complex random_acyclic(const Site& site, Rng& rng, const RandomOptions& opt) {
  RandomOptions inner = opt;
  inner.hi = std::max(opt.lo, opt.hi - 1);
  Complex z = random_complex(site, rng, inner);
  Complex c = mapping_cone(ChainMap::identity(z)).complex;
  return change_basis(c, random_basis_change(c, rng)).complex;
}

ChainMap random_chain_map(const Complex& x, const Complex& y, Rng& rng) {
  HomDegree h0 = hom_degree(x, y, 0), hm = hom_degree(x, y, -1);
  Matrix cycles = kernel_basis(hom_differential(x, y, h0, hm));
  std::vector<Scalar> coeffs(h0.dim);
  for (std::size_t k = 0; k < cycles.cols(); ++k) {
    Scalar c = rng.small_scalar();
    if (c.is_zero()) continue;
    for (std::size_t r = 0; r < h0.dim; ++r) coeffs[r] += c * cycles(r, k);
  }
  return ChainMap::assemble(element(x, y, h0, coeffs));
}

std::vector<std::vector<Matrix>> random_basis_change(const Complex& c, Rng& rng) {
  std::vector<std::vector<Matrix>> out;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    std::vector<Matrix> per;
    for (std::size_t g = 0; g < c.site().size(); ++g) {
      const std::size_t d = c.term(n).dim(g);
      std::vector<std::size_t> perm(d);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = d; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      Matrix m(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        m(perm[i], i) = 1;
        for (std::size_t j = i + 1; j < d; ++j) m(perm[i], j) = rng.small_scalar();
      }
      per.push_back(std::move(m));
    }
    out.push_back(std::move(per));
  }
  return out;
}

}  // namespace glrep
