#include "glrep/resolutions.hpp"

#include <algorithm>
#include <string>

#include "glrep/error.hpp"

namespace glrep {

namespace {

int sign(long k) { return k % 2 == 0 ? 1 : -1; }

std::size_t max_order(const Site& site) { return site.orders().back(); }

std::size_t min_support_order(const RepObject& x) {
  std::size_t out = max_order(x.site());
  for (std::size_t g = 0; g < x.site().size(); ++g) {
    if (x.dim(g) != 0) out = std::min(out, x.site().order(g));
  }
  return out;
}

}  // namespace

Complex Resolution::complex() const {
  const Site& site = input.site();
  if (stages.empty()) return Complex::zero(site);
  std::vector<RepObject> terms;
  for (const auto& st : stages) terms.push_back(st.p0.object);
  return Complex::assemble(site, 0, std::move(terms), deltas);
}

std::size_t resolution_bound(const RepObject& x) { return max_order(x.site()) - min_support_order(x); }

Resolution resolve_object(const RepObject& x) {
  const Site& site = x.site();
  Resolution r;
  r.input = x;
  const std::size_t bound = resolution_bound(x);
  const std::size_t min_support = min_support_order(x);
  RepObject current = x;
  RepMap into_previous;  // K_{i-1} -> P_{i-1}
  while (!current.is_zero()) {
    const std::size_t i = r.stages.size();
    if (i > bound) internal_failure("resolve_object: resolution exceeds the support bound " + std::to_string(bound));
    Counit c = counit_P0(current);
    for (std::size_t g = 0; g < site.size(); ++g) {
      if (site.order(g) < min_support + i && c.p0.object.dim(g) != 0) {
        internal_failure("resolve_object: stage " + std::to_string(i) + " is nonzero below the shifted support");
      }
    }
    Subobject k = kernel(c.epsilon);
    if (i == 0) {
      r.augmentation = c.epsilon;
    } else {
      r.deltas.push_back(compose(into_previous, c.epsilon));
    }
    into_previous = k.inclusion;
    current = k.object;
    r.stages.push_back(std::move(c));
    r.kernels.push_back(std::move(k));
  }
  if (r.stages.empty()) r.augmentation = RepMap::zero(RepObject::zero(site), x);
  return r;
}

std::vector<RepMap> resolution_map(const RepMap& f, const Resolution& source, const Resolution& target) {
  std::vector<RepMap> out;
  RepMap on_kernel = f;  // K_{i-1}(X) -> K_{i-1}(Y)
  for (std::size_t i = 0; i < source.stages.size(); ++i) {
    if (i >= target.stages.size()) {
      out.push_back(RepMap::zero(source.term(i), RepObject::zero(f.source().site())));
      continue;
    }
    RepMap pi = P0_map(on_kernel, source.stages[i], target.stages[i]);
    out.push_back(pi);
    on_kernel = factor_through(target.kernels[i], compose(pi, source.kernels[i].inclusion));
  }
  return out;
}

TotalResolution p_total(const Complex& c) {
  const Site& site = c.site();
  TotalResolution t;
  t.input = c;
  for (int j = c.lo(); j <= c.hi(); ++j) t.columns.push_back(resolve_object(c.term(j)));
  if (c.length() == 0) {
    t.complex = Complex::zero(site);
    t.epsilon = ChainMap::zero(t.complex, c);
    return t;
  }
  // Horizontal maps P_i(d_j): P_i(C_j) -> P_i(C_{j-1}).
  std::vector<std::vector<RepMap>> horizontal(t.columns.size());
  for (int j = c.lo() + 1; j <= c.hi(); ++j) {
    const auto k = static_cast<std::size_t>(j - c.lo());
    horizontal[k] = resolution_map(c.d(j), t.columns[k], t.columns[k - 1]);
  }
  std::size_t max_len = 0;
  for (const auto& col : t.columns) max_len = std::max(max_len, col.stages.size());
  const int lo = c.lo();
  const int hi = c.hi() + static_cast<int>(max_len == 0 ? 0 : max_len - 1);
  for (int m = lo; m <= hi; ++m) {
    std::vector<RepObject> parts;
    std::vector<std::pair<std::size_t, int>> idx;
    for (int j = c.lo(); j <= std::min(m, c.hi()); ++j) {
      const auto i = static_cast<std::size_t>(m - j);
      const Resolution& col = t.columns[static_cast<std::size_t>(j - c.lo())];
      if (i >= col.stages.size()) continue;
      parts.push_back(col.term(i));
      idx.emplace_back(i, j);
    }
    t.sums.push_back(make_sum(site, std::move(parts)));
    t.index.push_back(std::move(idx));
  }
  std::vector<RepObject> terms;
  for (const auto& s : t.sums) terms.push_back(s.object);
  std::vector<RepMap> diffs;
  for (int m = lo + 1; m <= hi; ++m) {
    const auto src = static_cast<std::size_t>(m - lo), tgt = src - 1;
    std::vector<BlockEntry> entries;
    for (std::size_t a = 0; a < t.index[src].size(); ++a) {
      const auto [i, j] = t.index[src][a];
      const auto col = static_cast<std::size_t>(j - c.lo());
      for (std::size_t b = 0; b < t.index[tgt].size(); ++b) {
        const auto [i2, j2] = t.index[tgt][b];
        if (j2 == j && i2 + 1 == i) {
          entries.push_back({b, a, t.columns[col].deltas[i - 1]});
        } else if (i2 == i && j2 + 1 == j) {
          RepMap h = horizontal[col][i];
          if (sign(static_cast<long>(i)) < 0) h = -h;
          entries.push_back({b, a, h});
        }
      }
    }
    diffs.push_back(block_map(t.sums[tgt], t.sums[src], entries));
  }
  t.complex = Complex::assemble(site, lo, std::move(terms), std::move(diffs));
  std::vector<RepMap> eps;
  for (int m = lo; m <= hi; ++m) {
    const auto k = static_cast<std::size_t>(m - lo);
    const RepObject& target = c.term(m);
    RepMap e = RepMap::zero(t.sums[k].object, target);
    for (std::size_t a = 0; a < t.index[k].size(); ++a) {
      const auto [i, j] = t.index[k][a];
      if (i != 0) continue;
      e += compose(t.columns[static_cast<std::size_t>(j - c.lo())].augmentation, project(t.sums[k], a));
    }
    eps.push_back(e);
  }
  t.epsilon = ChainMap::assemble(t.complex, c, lo, std::move(eps));
  return t;
}

ChainMap p_total_map(const ChainMap& f, const TotalResolution& source, const TotalResolution& target) {
  const Complex& x = source.input;
  const Complex& y = target.input;
  std::vector<std::vector<RepMap>> per_column;
  for (int j = x.lo(); j <= x.hi(); ++j) {
    const auto k = static_cast<std::size_t>(j - x.lo());
    if (j < y.lo() || j > y.hi()) {
      per_column.emplace_back();
      continue;
    }
    per_column.push_back(resolution_map(f.at(j), source.columns[k], target.columns[static_cast<std::size_t>(j - y.lo())]));
  }
  const Complex& px = source.complex;
  const Complex& py = target.complex;
  std::vector<RepMap> comps;
  for (int m = px.lo(); m <= px.hi(); ++m) {
    const auto ks = static_cast<std::size_t>(m - px.lo());
    if (m < py.lo() || m > py.hi()) {
      comps.push_back(RepMap::zero(px.term(m), py.term(m)));
      continue;
    }
    const auto kt = static_cast<std::size_t>(m - py.lo());
    std::vector<BlockEntry> entries;
    for (std::size_t a = 0; a < source.index[ks].size(); ++a) {
      const auto [i, j] = source.index[ks][a];
      const auto& maps = per_column[static_cast<std::size_t>(j - x.lo())];
      if (i >= maps.size()) continue;
      for (std::size_t b = 0; b < target.index[kt].size(); ++b) {
        if (target.index[kt][b] == source.index[ks][a]) entries.push_back({b, a, maps[i]});
      }
    }
    comps.push_back(block_map(target.sums[kt], source.sums[ks], entries));
  }
  return ChainMap::assemble(px, py, px.lo(), std::move(comps));
}

std::size_t DerivedHom::at(int t) const {
  if (t < lo || t >= lo + static_cast<int>(dims.size())) return 0;
  return dims[static_cast<std::size_t>(t - lo)];
}

DerivedHom derived_hom_projective(const Complex& px, const Complex& y) {
  HomComplex h = hom_complex(px, y);
  DerivedHom out;
  out.lo = h.vec.lo;
  for (std::size_t k = 0; k < h.vec.dims.size(); ++k) {
    out.dims.push_back(h.vec.homology_dim(h.vec.lo + static_cast<int>(k)));
  }
  return out;
}

DerivedHom derived_hom(const Complex& x, const Complex& y) {
  return derived_hom_projective(p_total(x).complex, y);
}

}  // namespace glrep
