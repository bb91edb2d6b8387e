#include "glrep/thin.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "glrep/error.hpp"

namespace glrep {

namespace {

// A summand of the split complex together with its map into X.
struct Part {
  RepObject object;
  RepMap lift;
};

// One contractible block e_{G,T} -> e_{G,B}, with T in degree `degree`.
struct VBlock {
  int degree = 0;
  std::size_t t_index = 0;  // among the V parts of `degree`
  std::size_t b_index = 0;  // among the V parts of `degree - 1`
  RepMap d;                 // e_{G,T} -> e_{G,B}
  RepMap c;                 // e_{G,B} -> e_{G,T}
};

// An idempotent with the given column span as image.
Matrix projector(const SpanBasis& b, std::size_t n) {
  return b.basis * span_coordinates(b, Matrix::identity(n));
}

RepMap from_parts(const SumObject& s, const std::vector<Part>& parts, const RepObject& target) {
  RepMap out = RepMap::zero(s.object, target);
  for (std::size_t k = 0; k < parts.size(); ++k) out += compose(parts[k].lift, project(s, k));
  return out;
}

SumObject sum_of(const Site& site, const std::vector<Part>& parts) {
  std::vector<RepObject> objs;
  for (const auto& p : parts) objs.push_back(p.object);
  return make_sum(site, std::move(objs));
}

// Equivariant generator map e_{G,V} -> X_n lifting a subspace of the layer.
struct Lift {
  OutRep rep;
  RepObject egv;
  RepMap map;
};
Lift lift_subspace(const Site& site, const OutRep& layer_rep, const SpanBasis& sub, const Matrix& to_x,
                   const RepObject& x) {
  Lift l;
  l.rep = sub_out_rep(site, layer_rep, sub);
  l.egv = make_eGV(site, l.rep);
  const Matrix phi = average_equivariant(site, l.rep, restrict_to(x, layer_rep.object), to_x * sub.basis);
  l.map = map_from_eGV(l.egv, l.rep, x, phi);
  return l;
}

}  // namespace

ThinDecomposition thin_split(const Complex& x) {
  const Site& site = x.site();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (!is_projective_by_layers(x.term(n))) {
      precondition_failed("thin_split: term in degree " + std::to_string(n) +
                          " is not projective; replace the complex with p_total first");
    }
  }
  ThinDecomposition out;
  out.input = x;
  const int lo = x.lo(), hi = x.hi();
  const std::size_t len = x.length();
  std::vector<std::vector<Part>> uparts(len), vparts(len);
  std::vector<VBlock> blocks;
  auto at = [&](int n) { return static_cast<std::size_t>(n - lo); };

  std::set<std::size_t> orders(site.orders().begin(), site.orders().end());
  for (std::size_t s : orders) {
    std::vector<Layer> layers;
    for (int n = lo; n <= hi; ++n) layers.push_back(filtration_layer(x.term(n), s));
    // Induced differential L_{<=s} X_n -> L_{<=s} X_{n-1} for n in (lo, hi].
    std::vector<RepMap> restricted(len);
    for (int n = lo + 1; n <= hi; ++n) {
      restricted[at(n)] = factor_through(layers[at(n) - 1].leq, compose(x.d(n), layers[at(n)].leq.inclusion));
    }
    for (std::size_t g = 0; g < site.size(); ++g) {
      if (site.order(g) != s) continue;
      std::vector<OutRep> reps;
      std::vector<Matrix> to_x, dw(len);  // dw[k]: W_{lo+k} -> W_{lo+k-1}
      for (std::size_t k = 0; k < len; ++k) {
        reps.push_back(restrict_to(layers[k].layer.object, g));
        to_x.push_back(layers[k].leq.inclusion.at(g) * layers[k].layer.sections[g]);
      }
      for (std::size_t k = 1; k < len; ++k) {
        dw[k] = layers[k - 1].layer.projection.at(g) * restricted[k].at(g) * layers[k].layer.sections[g];
      }
      std::vector<SpanBasis> boundaries(len), complements(len);
      for (std::size_t k = 0; k < len; ++k) {
        const std::size_t w = reps[k].dim;
        boundaries[k] = span_basis(k + 1 < len ? dw[k + 1] : Matrix(w, 0));
        const Matrix cycles = k > 0 ? kernel_basis(dw[k]) : Matrix::identity(w);
        const SpanBasis zspan = span_basis(cycles);
        const Matrix p = average_equivariant(site, reps[k], reps[k], projector(zspan, w));
        complements[k] = span_basis(kernel_basis(p));
        const Matrix q = average_equivariant(site, reps[k], reps[k], projector(boundaries[k], w));
        const SpanBasis harmonic = span_basis(zspan.basis * kernel_basis(q * zspan.basis));
        if (harmonic.basis.cols() > 0) {
          Lift l = lift_subspace(site, reps[k], harmonic, to_x[k], x.term(lo + static_cast<int>(k)));
          uparts[k].push_back({l.egv, l.map});
          out.pieces.push_back({s, g, lo + static_cast<int>(k), l.rep.dim});
        }
      }
      for (std::size_t k = 1; k < len; ++k) {
        if (complements[k].basis.cols() == 0) continue;
        const int n = lo + static_cast<int>(k);
        Lift t = lift_subspace(site, reps[k], complements[k], to_x[k], x.term(n));
        OutRep b_rep = sub_out_rep(site, reps[k - 1], boundaries[k - 1]);
        RepObject eb = make_eGV(site, b_rep);
        const Matrix psi = span_coordinates(boundaries[k - 1], dw[k] * complements[k].basis);
        auto psi_inv = inverse(psi);
        if (!psi_inv) internal_failure("thin_split: layer differential is not an isomorphism onto the boundaries");
        VBlock blk;
        blk.degree = n;
        blk.d = eGV_map(t.egv, eb, t.rep, b_rep, psi);
        blk.c = eGV_map(eb, t.egv, b_rep, t.rep, *psi_inv);
        blk.t_index = vparts[k].size();
        vparts[k].push_back({t.egv, t.map});
        blk.b_index = vparts[k - 1].size();
        vparts[k - 1].push_back({eb, compose(x.d(n), compose(t.map, blk.c))});
        blocks.push_back(std::move(blk));
      }
    }
  }

  std::vector<SumObject> us, vs, ys;
  std::vector<RepMap> phi, phi_inv;
  for (std::size_t k = 0; k < len; ++k) {
    us.push_back(sum_of(site, uparts[k]));
    vs.push_back(sum_of(site, vparts[k]));
    ys.push_back(make_sum(site, {us[k].object, vs[k].object}));
    const RepObject& xn = x.term(lo + static_cast<int>(k));
    RepMap p = compose(from_parts(us[k], uparts[k], xn), project(ys[k], 0)) +
               compose(from_parts(vs[k], vparts[k], xn), project(ys[k], 1));
    if (!p.is_iso()) internal_failure("thin_split: assembled generator map is not an isomorphism");
    phi_inv.push_back(p.inverse());
    phi.push_back(std::move(p));
  }

  // Differential and contraction of the contractible part.
  std::vector<std::vector<BlockEntry>> dv_entries(len), c_entries(len);
  for (const auto& b : blocks) {
    dv_entries[at(b.degree)].push_back({b.b_index, b.t_index, b.d});
    c_entries[at(b.degree) - 1].push_back({b.t_index, b.b_index, b.c});
  }
  std::vector<RepMap> dv(len), cv(len);  // dv[k]: V_k -> V_{k-1}, cv[k]: V_k -> V_{k+1}
  for (std::size_t k = 1; k < len; ++k) dv[k] = block_map(vs[k - 1], vs[k], dv_entries[k]);
  for (std::size_t k = 0; k + 1 < len; ++k) cv[k] = block_map(vs[k + 1], vs[k], c_entries[k]);

  // D = phi^-1 d phi is lower block triangular; h = -c D_VU makes it diagonal.
  std::vector<RepMap> duu(len), h(len);
  for (std::size_t k = 0; k < len; ++k) h[k] = RepMap::zero(us[k].object, vs[k].object);
  for (std::size_t k = 1; k < len; ++k) {
    const RepMap d = compose(phi_inv[k - 1], compose(x.d(lo + static_cast<int>(k)), phi[k]));
    duu[k] = block_of(d, ys[k - 1], 0, ys[k], 0);
    const RepMap dvu = block_of(d, ys[k - 1], 1, ys[k], 0);
    if (!block_of(d, ys[k - 1], 0, ys[k], 1).is_zero() || !(block_of(d, ys[k - 1], 1, ys[k], 1) == dv[k])) {
      internal_failure("thin_split: lifted contractible part is not a subcomplex");
    }
    h[k] = -compose(cv[k - 1], dvu);
  }

  std::vector<RepObject> uterms, vterms;
  for (std::size_t k = 0; k < len; ++k) {
    uterms.push_back(us[k].object);
    vterms.push_back(vs[k].object);
  }
  std::vector<RepMap> udiffs(duu.begin() + (len > 0 ? 1 : 0), duu.end());
  std::vector<RepMap> vdiffs(dv.begin() + (len > 0 ? 1 : 0), dv.end());
  if (len == 0) {
    out.thin = Complex::zero(site);
    out.contractible = Complex::zero(site);
  } else {
    out.thin = Complex::assemble(site, lo, std::move(uterms), std::move(udiffs));
    out.contractible = Complex::assemble(site, lo, std::move(vterms), std::move(vdiffs));
  }
  std::vector<RepMap> cvc(cv.begin(), cv.end());
  if (len > 0) cvc.back() = RepMap::zero(vs[len - 1].object, out.contractible.term(hi + 1));
  out.contraction = GradedMap::assemble(out.contractible, out.contractible, 1, lo, std::move(cvc));

  std::vector<RepMap> ti, tp, ci, cp;
  for (std::size_t k = 0; k < len; ++k) {
    ti.push_back(compose(phi[k], inject(ys[k], 0) + compose(inject(ys[k], 1), h[k])));
    tp.push_back(compose(project(ys[k], 0), phi_inv[k]));
    ci.push_back(compose(phi[k], inject(ys[k], 1)));
    cp.push_back(compose(project(ys[k], 1) - compose(h[k], project(ys[k], 0)), phi_inv[k]));
  }
  out.thin_inclusion = ChainMap::assemble(out.thin, x, lo, std::move(ti));
  out.thin_projection = ChainMap::assemble(x, out.thin, lo, std::move(tp));
  out.contractible_inclusion = ChainMap::assemble(out.contractible, x, lo, std::move(ci));
  out.contractible_projection = ChainMap::assemble(x, out.contractible, lo, std::move(cp));

  out.sum = direct_sum(site, {out.thin, out.contractible});
  std::vector<RepMap> to, from;
  for (int n = out.sum.complex.lo(); n <= out.sum.complex.hi(); ++n) {
    const SumObject& sn = out.sum.sums[static_cast<std::size_t>(n - out.sum.complex.lo())];
    to.push_back(compose(out.thin_inclusion.at(n), project(sn, 0)) +
                 compose(out.contractible_inclusion.at(n), project(sn, 1)));
    from.push_back(compose(inject(sn, 0), out.thin_projection.at(n)) +
                   compose(inject(sn, 1), out.contractible_projection.at(n)));
  }
  out.to_input = ChainMap::assemble(out.sum.complex, x, out.sum.complex.lo(), std::move(to));
  out.from_input = ChainMap::assemble(x, out.sum.complex, out.sum.complex.lo(), std::move(from));
  return out;
}

ThinDecomposition semisimple_split(const Complex& x) {
  std::optional<std::size_t> order;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const RepObject& t = x.term(n);
    if (t.is_zero()) continue;
    if (!order) {
      for (std::size_t s : x.site().orders()) {
        if (is_s_pure(t, s)) {
          order = s;
          break;
        }
      }
      if (!order) precondition_failed("semisimple_split: term in degree " + std::to_string(n) + " is not pure");
    }
    if (!is_s_pure(t, *order)) {
      precondition_failed("semisimple_split: term in degree " + std::to_string(n) + " is not " +
                          std::to_string(*order) + "-pure");
    }
  }
  ThinDecomposition d = thin_split(x);
  for (int n = d.thin.lo(); n <= d.thin.hi(); ++n) {
    if (!d.thin.d(n).is_zero()) internal_failure("semisimple_split: pure thin part has a nonzero differential");
  }
  return d;
}

ThinReplacement thin_replacement(const Complex& c) {
  ThinReplacement r;
  r.total = p_total(c);
  r.split = thin_split(r.total.complex);
  r.thin = r.split.thin;
  r.quasi_iso = compose(r.total.epsilon, r.split.thin_inclusion);
  return r;
}

ChainMap thin_iso(const ChainMap& f) {
  require(is_thin(f.source()), "thin_iso: source is not thin");
  require(is_thin(f.target()), "thin_iso: target is not thin");
  require(is_quasi_iso(f), "thin_iso: map is not a quasi-isomorphism");
  if (!f.is_iso()) internal_failure("thin_iso: quasi-isomorphism of thin complexes is not invertible");
  return f.inverse();
}

std::optional<ChainMap> compare_replacements(const ChainMap& u1, const ChainMap& u2) {
  const Complex& t1 = u1.source();
  const Complex& t2 = u2.source();
  const Complex& c = u1.target();
  HomDegree f0 = hom_degree(t1, t2, 0), fm = hom_degree(t1, t2, -1);
  HomDegree h1 = hom_degree(t1, c, 1), h0 = hom_degree(t1, c, 0);
  const Matrix df = hom_differential(t1, t2, f0, fm);
  const Matrix dh = hom_differential(t1, c, h1, h0);
  Matrix post(h0.dim, f0.dim);
  for (std::size_t k = 0; k < f0.dim; ++k) {
    std::vector<Scalar> e(f0.dim);
    e[k] = 1;
    const auto col = coordinates(h0, compose(u2.graded(), element(t1, t2, f0, e)));
    for (std::size_t r = 0; r < col.size(); ++r) post(r, k) = col[r];
  }
  // Unknowns (f, h): d(f) = 0 and u2 f - (dh + hd) = u1.
  Matrix a(fm.dim + h0.dim, f0.dim + h1.dim);
  a.set_block(0, 0, df);
  a.set_block(fm.dim, 0, post);
  a.set_block(fm.dim, f0.dim, -dh);
  Matrix b(fm.dim + h0.dim, 1);
  const auto target = coordinates(h0, u1.graded());
  for (std::size_t r = 0; r < target.size(); ++r) b(fm.dim + r, 0) = target[r];
  auto sol = solve_right(a, b);
  if (!sol) return std::nullopt;
  std::vector<Scalar> fc(f0.dim);
  for (std::size_t k = 0; k < f0.dim; ++k) fc[k] = (*sol)(k, 0);
  return ChainMap::create(element(t1, t2, f0, fc));
}

}  // namespace glrep
