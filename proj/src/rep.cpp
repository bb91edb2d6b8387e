#include "glrep/rep.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>

#include "glrep/error.hpp"
#include "glrep/sparse_nullspace.hpp"

namespace glrep {

namespace {
std::atomic<bool> g_validation{false};
}

bool validation_enabled() { return g_validation.load(std::memory_order_relaxed); }
void set_validation(bool on) { g_validation.store(on, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// RepObject

RepObject RepObject::assemble(const Site& site, std::vector<std::size_t> dims, std::vector<Matrix> actions) {
  if (dims.size() != site.size()) precondition_failed("RepObject: one dimension per object required");
  if (actions.size() != site.class_count()) precondition_failed("RepObject: one matrix per morphism class required");
  for (std::size_t a = 0; a < actions.size(); ++a) {
    const auto& m = site.morphism(a);
    if (actions[a].rows() != dims[m.source] || actions[a].cols() != dims[m.target]) {
      precondition_failed("RepObject: action matrix of class " + std::to_string(a) + " has the wrong shape");
    }
  }
  RepObject x;
  x.d_ = std::make_shared<Data>(Data{site, std::move(dims), std::move(actions)});
  if (validation_enabled()) {
    if (auto why = x.functoriality_failure()) internal_failure("constructed object is not a functor: " + *why);
  }
  return x;
}

RepObject RepObject::create(const Site& site, std::vector<std::size_t> dims, std::vector<Matrix> actions) {
  bool was = validation_enabled();
  set_validation(false);
  RepObject x;
  try {
    x = assemble(site, std::move(dims), std::move(actions));
  } catch (...) {
    set_validation(was);
    throw;
  }
  set_validation(was);
  if (auto why = x.functoriality_failure()) precondition_failed("not a functor: " + *why);
  return x;
}

RepObject RepObject::zero(const Site& site) {
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) acts.emplace_back(0, 0);
  return assemble(site, std::vector<std::size_t>(site.size(), 0), std::move(acts));
}

std::size_t RepObject::total_dim() const {
  std::size_t t = 0;
  for (auto d : d_->dims) t += d;
  return t;
}

bool RepObject::is_zero() const { return total_dim() == 0; }

std::optional<std::string> RepObject::functoriality_failure() const {
  const Site& s = site();
  for (std::size_t o = 0; o < s.size(); ++o) {
    if (!action(s.identity(o)).is_identity()) return "identity of object " + std::to_string(o) + " acts nontrivially";
  }
  for (std::size_t a = 0; a < s.class_count(); ++a) {
    const auto& ma = s.morphism(a);
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (std::size_t b : s.hom(ma.target, k)) {
        if (action(s.compose(b, a)) != action(a) * action(b)) {
          return "classes " + std::to_string(b) + " after " + std::to_string(a) + " violate functoriality";
        }
      }
    }
  }
  return std::nullopt;
}

bool operator==(const RepObject& a, const RepObject& b) {
  if (a.d_ == b.d_) return true;
  return a.site().same_as(b.site()) && a.dims() == b.dims() && a.d_->actions == b.d_->actions;
}

// ---------------------------------------------------------------------------
// RepMap

RepMap RepMap::assemble(const RepObject& source, const RepObject& target, std::vector<Matrix> comps) {
  if (!source.site().same_as(target.site())) precondition_failed("RepMap: source and target live on different sites");
  const Site& s = source.site();
  if (comps.size() != s.size()) precondition_failed("RepMap: one component per object required");
  for (std::size_t o = 0; o < s.size(); ++o) {
    if (comps[o].rows() != target.dim(o) || comps[o].cols() != source.dim(o)) {
      precondition_failed("RepMap: component at object " + std::to_string(o) + " has the wrong shape");
    }
  }
  RepMap f;
  f.source_ = source;
  f.target_ = target;
  f.comps_ = std::move(comps);
  if (validation_enabled()) {
    if (auto why = f.naturality_failure()) internal_failure("constructed map is not natural: " + *why);
  }
  return f;
}

RepMap RepMap::create(const RepObject& source, const RepObject& target, std::vector<Matrix> comps) {
  bool was = validation_enabled();
  set_validation(false);
  RepMap f;
  try {
    f = assemble(source, target, std::move(comps));
  } catch (...) {
    set_validation(was);
    throw;
  }
  set_validation(was);
  if (auto why = f.naturality_failure()) precondition_failed("not natural: " + *why);
  return f;
}

RepMap RepMap::zero(const RepObject& source, const RepObject& target) {
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < source.site().size(); ++o) comps.emplace_back(target.dim(o), source.dim(o));
  return assemble(source, target, std::move(comps));
}

RepMap RepMap::identity(const RepObject& x) {
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < x.site().size(); ++o) comps.push_back(Matrix::identity(x.dim(o)));
  return assemble(x, x, std::move(comps));
}

bool RepMap::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool RepMap::is_identity() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Matrix& m) { return m.is_identity(); });
}

std::optional<std::string> RepMap::naturality_failure() const {
  const Site& s = source_.site();
  for (std::size_t a : s.generating_classes()) {
    const auto& m = s.morphism(a);
    if (comps_[m.source] * source_.action(a) != target_.action(a) * comps_[m.target]) {
      return "naturality square of class " + std::to_string(a) + " does not commute";
    }
  }
  return std::nullopt;
}

bool RepMap::is_injective() const {
  for (const auto& m : comps_) {
    if (rank(m) != m.cols()) return false;
  }
  return true;
}

bool RepMap::is_surjective() const {
  for (const auto& m : comps_) {
    if (rank(m) != m.rows()) return false;
  }
  return true;
}

bool RepMap::is_iso() const {
  for (const auto& m : comps_) {
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  }
  return true;
}

RepMap RepMap::inverse() const {
  std::vector<Matrix> inv;
  for (const auto& m : comps_) {
    auto i = glrep::inverse(m);
    if (!i) precondition_failed("RepMap::inverse: map is not an isomorphism");
    inv.push_back(std::move(*i));
  }
  return assemble(target_, source_, std::move(inv));
}

RepMap RepMap::operator-() const {
  RepMap r(*this);
  for (auto& m : r.comps_) m = -m;
  return r;
}

RepMap& RepMap::operator+=(const RepMap& o) {
  if (comps_.size() != o.comps_.size()) precondition_failed("RepMap +: site mismatch");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

RepMap& RepMap::operator-=(const RepMap& o) {
  if (comps_.size() != o.comps_.size()) precondition_failed("RepMap -: site mismatch");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

RepMap& RepMap::operator*=(const Scalar& s) {
  for (auto& m : comps_) m *= s;
  return *this;
}

bool operator==(const RepMap& a, const RepMap& b) { return a.comps_ == b.comps_; }

RepMap compose(const RepMap& g, const RepMap& f) {
  const Site& s = f.source().site();
  if (g.source().dims() != f.target().dims()) precondition_failed("compose: maps are not composable");
  std::vector<Matrix> comps;
  comps.reserve(s.size());
  for (std::size_t o = 0; o < s.size(); ++o) comps.push_back(g.at(o) * f.at(o));
  return RepMap::assemble(f.source(), g.target(), std::move(comps));
}

// ---------------------------------------------------------------------------
// Out(G)-representations

OutRep restrict_to(const RepObject& x, std::size_t object) {
  OutRep v{object, x.dim(object), {}};
  for (std::size_t a : x.site().automorphisms(object)) v.mats.push_back(x.action(a));
  return v;
}

OutRep trivial_out_rep(const Site& site, std::size_t object, std::size_t dim) {
  OutRep v{object, dim, {}};
  for (std::size_t i = 0; i < site.automorphisms(object).size(); ++i) v.mats.push_back(Matrix::identity(dim));
  return v;
}

OutRep sub_out_rep(const Site& site, const OutRep& v, const SpanBasis& sub) {
  OutRep w{v.object, sub.basis.cols(), {}};
  for (std::size_t i = 0; i < site.automorphisms(v.object).size(); ++i) {
    Matrix image = v.mats[i] * sub.basis;
    Matrix coords = span_coordinates(sub, image);
    if (sub.basis * coords != image) precondition_failed("sub_out_rep: subspace is not invariant");
    w.mats.push_back(std::move(coords));
  }
  return w;
}

Matrix average_equivariant(const Site& site, const OutRep& v, const OutRep& w, const Matrix& phi) {
  const auto& auts = site.automorphisms(v.object);
  Matrix sum(w.dim, v.dim);
  for (std::size_t i = 0; i < auts.size(); ++i) {
    std::size_t inv_pos = site.position(site.inverse(auts[i]));
    sum += w.mats[inv_pos] * phi * v.mats[i];
  }
  sum *= Scalar(1, static_cast<long long>(auts.size()));
  return sum;
}

bool is_equivariant(const Site& site, const OutRep& v, const OutRep& w, const Matrix& phi) {
  for (std::size_t i = 0; i < site.automorphisms(v.object).size(); ++i) {
    if (phi * v.mats[i] != w.mats[i] * phi) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generators

RepObject unit_object(const Site& site) {
  std::vector<Matrix> acts(site.class_count(), Matrix::identity(1));
  return RepObject::assemble(site, std::vector<std::size_t>(site.size(), 1), std::move(acts));
}

RepObject make_eG(const Site& site, std::size_t g) {
  std::vector<std::size_t> dims;
  for (std::size_t t = 0; t < site.size(); ++t) dims.push_back(site.hom(t, g).size());
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) {
    const auto& m = site.morphism(a);
    Matrix act(dims[m.source], dims[m.target]);
    const auto& hs = site.hom(m.target, g);
    for (std::size_t j = 0; j < hs.size(); ++j) act(site.position(site.compose(hs[j], a)), j) = 1;
    acts.push_back(std::move(act));
  }
  return RepObject::assemble(site, std::move(dims), std::move(acts));
}

RepObject make_eGV(const Site& site, const OutRep& v) {
  const std::size_t g = v.object, k = v.dim;
  if (v.mats.size() != site.automorphisms(g).size()) precondition_failed("make_eGV: wrong number of matrices");
  std::vector<std::size_t> dims;
  for (std::size_t t = 0; t < site.size(); ++t) dims.push_back(site.orbits(t, g).reps.size() * k);
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) {
    const auto& m = site.morphism(a);
    Matrix act(dims[m.source], dims[m.target]);
    const auto& reps = site.orbits(m.target, g).reps;
    const auto& positions = site.orbits(m.source, g).positions;
    for (std::size_t o = 0; o < reps.size(); ++o) {
      const OrbitPosition& p = positions[site.position(site.compose(reps[o], a))];
      act.set_block(p.orbit * k, o * k, v.mats[site.position(p.gamma)]);
    }
    acts.push_back(std::move(act));
  }
  return RepObject::assemble(site, std::move(dims), std::move(acts));
}

RepObject make_cG(const Site& site, std::size_t g) { return make_eGV(site, trivial_out_rep(site, g)); }

RepMap e_morphism(const Site& site, std::size_t a) {
  const auto& m = site.morphism(a);
  RepObject eh = make_eG(site, m.source), eg = make_eG(site, m.target);
  std::vector<Matrix> comps;
  for (std::size_t t = 0; t < site.size(); ++t) {
    Matrix c(eg.dim(t), eh.dim(t));
    const auto& hs = site.hom(t, m.source);
    for (std::size_t j = 0; j < hs.size(); ++j) c(site.position(site.compose(a, hs[j])), j) = 1;
    comps.push_back(std::move(c));
  }
  return RepMap::assemble(eh, eg, std::move(comps));
}

RepMap map_from_eG(const RepObject& eg, std::size_t g, const RepObject& x, const std::vector<Scalar>& element) {
  const Site& site = x.site();
  if (element.size() != x.dim(g)) precondition_failed("map_from_eG: element has the wrong length");
  Matrix col = Matrix::column(element);
  std::vector<Matrix> comps;
  for (std::size_t t = 0; t < site.size(); ++t) {
    const auto& hs = site.hom(t, g);
    Matrix c(x.dim(t), hs.size());
    for (std::size_t j = 0; j < hs.size(); ++j) c.set_block(0, j, x.action(hs[j]) * col);
    comps.push_back(std::move(c));
  }
  return RepMap::assemble(eg, x, std::move(comps));
}

RepMap map_from_eGV(const RepObject& egv, const OutRep& v, const RepObject& y, const Matrix& phi) {
  const Site& site = y.site();
  const std::size_t g = v.object, k = v.dim;
  if (phi.rows() != y.dim(g) || phi.cols() != k) precondition_failed("map_from_eGV: phi has the wrong shape");
  std::vector<Matrix> comps;
  for (std::size_t t = 0; t < site.size(); ++t) {
    const auto& reps = site.orbits(t, g).reps;
    Matrix c(y.dim(t), reps.size() * k);
    for (std::size_t o = 0; o < reps.size(); ++o) c.set_block(0, o * k, y.action(reps[o]) * phi);
    comps.push_back(std::move(c));
  }
  return RepMap::assemble(egv, y, std::move(comps));
}

RepMap eGV_map(const RepObject& egv, const RepObject& egw, const OutRep& v, const OutRep& w, const Matrix& psi) {
  const Site& site = egv.site();
  if (v.object != w.object) precondition_failed("eGV_map: representations of different groups");
  if (psi.rows() != w.dim || psi.cols() != v.dim) precondition_failed("eGV_map: psi has the wrong shape");
  std::vector<Matrix> comps;
  for (std::size_t t = 0; t < site.size(); ++t) {
    std::size_t orbits = site.orbits(t, v.object).reps.size();
    Matrix c(orbits * w.dim, orbits * v.dim);
    for (std::size_t o = 0; o < orbits; ++o) c.set_block(o * w.dim, o * v.dim, psi);
    comps.push_back(std::move(c));
  }
  return RepMap::assemble(egv, egw, std::move(comps));
}

// ---------------------------------------------------------------------------
// Direct sums

SumObject make_sum(const Site& site, std::vector<RepObject> parts) {
  SumObject s;
  std::vector<std::size_t> dims(site.size(), 0);
  for (const auto& p : parts) {
    s.offsets.push_back(dims);
    for (std::size_t o = 0; o < site.size(); ++o) dims[o] += p.dim(o);
  }
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) {
    const auto& m = site.morphism(a);
    Matrix act(dims[m.source], dims[m.target]);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      act.set_block(s.offsets[i][m.source], s.offsets[i][m.target], parts[i].action(a));
    }
    acts.push_back(std::move(act));
  }
  s.object = RepObject::assemble(site, std::move(dims), std::move(acts));
  s.parts = std::move(parts);
  return s;
}

RepMap inject(const SumObject& s, std::size_t part) {
  const Site& site = s.object.site();
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < site.size(); ++o) {
    Matrix c(s.object.dim(o), s.parts[part].dim(o));
    c.set_block(s.offsets[part][o], 0, Matrix::identity(s.parts[part].dim(o)));
    comps.push_back(std::move(c));
  }
  return RepMap::assemble(s.parts[part], s.object, std::move(comps));
}

RepMap project(const SumObject& s, std::size_t part) {
  const Site& site = s.object.site();
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < site.size(); ++o) {
    Matrix c(s.parts[part].dim(o), s.object.dim(o));
    c.set_block(0, s.offsets[part][o], Matrix::identity(s.parts[part].dim(o)));
    comps.push_back(std::move(c));
  }
  return RepMap::assemble(s.object, s.parts[part], std::move(comps));
}

RepMap block_map(const SumObject& target, const SumObject& source, const std::vector<BlockEntry>& entries) {
  const Site& site = source.object.site();
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < site.size(); ++o) comps.emplace_back(target.object.dim(o), source.object.dim(o));
  for (const auto& e : entries) {
    if (e.row >= target.parts.size() || e.col >= source.parts.size()) precondition_failed("block_map: bad block index");
    for (std::size_t o = 0; o < site.size(); ++o) {
      const Matrix& m = e.map.at(o);
      if (m.rows() != target.parts[e.row].dim(o) || m.cols() != source.parts[e.col].dim(o)) {
        precondition_failed("block_map: block has the wrong shape");
      }
      comps[o].add_block(target.offsets[e.row][o], source.offsets[e.col][o], m);
    }
  }
  return RepMap::assemble(source.object, target.object, std::move(comps));
}

RepMap block_of(const RepMap& f, const SumObject& target, std::size_t row, const SumObject& source, std::size_t col) {
  const Site& site = source.object.site();
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < site.size(); ++o) {
    comps.push_back(f.at(o).block(target.offsets[row][o], source.offsets[col][o], target.parts[row].dim(o),
                                  source.parts[col].dim(o)));
  }
  return RepMap::assemble(source.parts[col], target.parts[row], std::move(comps));
}

// ---------------------------------------------------------------------------
// Subobjects and quotients

Subobject make_subobject(const RepObject& x, const std::vector<Matrix>& generators) {
  const Site& site = x.site();
  if (generators.size() != site.size()) precondition_failed("make_subobject: one generator matrix per object");
  Subobject sub;
  std::vector<std::size_t> dims;
  for (std::size_t o = 0; o < site.size(); ++o) {
    if (generators[o].rows() != x.dim(o)) precondition_failed("make_subobject: generators have the wrong length");
    sub.bases.push_back(span_basis(generators[o]));
    dims.push_back(sub.bases.back().basis.cols());
  }
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) {
    const auto& m = site.morphism(a);
    Matrix image = x.action(a) * sub.bases[m.target].basis;
    Matrix coords = span_coordinates(sub.bases[m.source], image);
    if (sub.bases[m.source].basis * coords != image) precondition_failed("make_subobject: span is not stable");
    acts.push_back(std::move(coords));
  }
  sub.object = RepObject::assemble(site, std::move(dims), std::move(acts));
  std::vector<Matrix> incl;
  for (const auto& b : sub.bases) incl.push_back(b.basis);
  sub.inclusion = RepMap::assemble(sub.object, x, std::move(incl));
  return sub;
}

QuotientObject make_quotient(const Subobject& sub) {
  const RepObject& x = sub.inclusion.target();
  const Site& site = x.site();
  QuotientObject q;
  std::vector<Matrix> proj;
  std::vector<std::size_t> dims;
  for (std::size_t o = 0; o < site.size(); ++o) {
    const SpanBasis& b = sub.bases[o];
    const std::size_t n = x.dim(o);
    std::vector<char> is_pivot(n, 0);
    for (auto p : b.pivot_rows) is_pivot[p] = 1;
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < n; ++r) {
      if (!is_pivot[r]) rest.push_back(r);
    }
    Matrix p(rest.size(), n), s(n, rest.size());
    for (std::size_t t = 0; t < rest.size(); ++t) {
      p(t, rest[t]) = 1;
      s(rest[t], t) = 1;
      for (std::size_t i = 0; i < b.pivot_rows.size(); ++i) {
        const Scalar& v = b.basis(rest[t], i);
        if (!v.is_zero()) p(t, b.pivot_rows[i]) = -v;
      }
    }
    dims.push_back(rest.size());
    proj.push_back(std::move(p));
    q.sections.push_back(std::move(s));
  }
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) {
    const auto& m = site.morphism(a);
    acts.push_back(proj[m.source] * x.action(a) * q.sections[m.target]);
  }
  q.object = RepObject::assemble(site, std::move(dims), std::move(acts));
  q.projection = RepMap::assemble(x, q.object, std::move(proj));
  return q;
}

RepMap factor_through(const Subobject& sub, const RepMap& f) {
  const Site& site = f.source().site();
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < site.size(); ++o) {
    Matrix coords = span_coordinates(sub.bases[o], f.at(o));
    if (sub.bases[o].basis * coords != f.at(o)) precondition_failed("factor_through: map leaves the subobject");
    comps.push_back(std::move(coords));
  }
  return RepMap::assemble(f.source(), sub.object, std::move(comps));
}

Subobject kernel(const RepMap& f) {
  std::vector<Matrix> gens;
  for (const auto& m : f.comps()) gens.push_back(kernel_basis(m));
  return make_subobject(f.source(), gens);
}

Subobject image(const RepMap& f) { return make_subobject(f.target(), f.comps()); }

QuotientObject cokernel(const RepMap& f) { return make_quotient(image(f)); }

Subobject generated_subobject(const RepObject& x, const std::vector<Matrix>& seeds) {
  const Site& site = x.site();
  std::vector<Matrix> gens;
  for (std::size_t t = 0; t < site.size(); ++t) {
    std::vector<Matrix> parts;
    for (std::size_t g = 0; g < site.size(); ++g) {
      if (seeds[g].cols() == 0) continue;
      for (std::size_t a : site.hom(t, g)) parts.push_back(x.action(a) * seeds[g]);
    }
    gens.push_back(hstack(parts, x.dim(t)));
  }
  return make_subobject(x, gens);
}

Subobject filtration_leq(const RepObject& x, std::size_t s) {
  const Site& site = x.site();
  std::vector<Matrix> gens;
  for (std::size_t t = 0; t < site.size(); ++t) {
    std::vector<Matrix> parts;
    for (std::size_t g = 0; g < site.size(); ++g) {
      if (site.order(g) > s) continue;
      for (std::size_t a : site.hom(t, g)) parts.push_back(x.action(a));
    }
    gens.push_back(hstack(parts, x.dim(t)));
  }
  return make_subobject(x, gens);
}

Layer filtration_layer(const RepObject& x, std::size_t s) {
  const Site& site = x.site();
  Layer l;
  l.leq = filtration_leq(x, s);
  std::size_t prev = 0;
  for (auto o : site.orders()) {
    if (o < s) prev = o;
  }
  Subobject lt = filtration_leq(x, prev);
  std::vector<Matrix> gens;
  for (std::size_t o = 0; o < site.size(); ++o) gens.push_back(span_coordinates(l.leq.bases[o], lt.bases[o].basis));
  l.lt_in_leq = make_subobject(l.leq.object, gens);
  l.layer = make_quotient(l.lt_in_leq);
  return l;
}

bool is_s_pure(const RepObject& x, std::size_t s) {
  const Site& site = x.site();
  for (std::size_t t = 0; t < site.size(); ++t) {
    std::vector<Matrix> parts;
    for (std::size_t g = 0; g < site.size(); ++g) {
      if (site.order(g) != s) continue;
      for (std::size_t rep : site.orbits(t, g).reps) parts.push_back(x.action(rep));
    }
    Matrix counit = hstack(parts, x.dim(t));
    if (counit.cols() != x.dim(t) || rank(counit) != x.dim(t)) return false;
  }
  return true;
}

bool is_projective_by_layers(const RepObject& x) {
  for (auto s : x.site().orders()) {
    if (!is_s_pure(filtration_layer(x, s).layer.object, s)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Counit

Counit counit_P0(const RepObject& x) {
  const Site& site = x.site();
  Counit c;
  std::vector<RepObject> parts;
  for (std::size_t g = 0; g < site.size(); ++g) {
    if (x.dim(g) == 0) continue;
    c.groups.push_back(g);
    c.reps.push_back(restrict_to(x, g));
    parts.push_back(make_eGV(site, c.reps.back()));
  }
  c.p0 = make_sum(site, std::move(parts));
  std::vector<Matrix> comps;
  for (std::size_t t = 0; t < site.size(); ++t) {
    std::vector<Matrix> cols;
    for (std::size_t i = 0; i < c.groups.size(); ++i) {
      const std::size_t g = c.groups[i];
      for (std::size_t rep : site.orbits(t, g).reps) cols.push_back(x.action(rep));
    }
    comps.push_back(hstack(cols, x.dim(t)));
  }
  c.epsilon = RepMap::assemble(c.p0.object, x, std::move(comps));
  return c;
}

RepMap P0_map(const RepMap& f, const Counit& source, const Counit& target) {
  std::vector<BlockEntry> entries;
  for (std::size_t i = 0; i < source.groups.size(); ++i) {
    for (std::size_t j = 0; j < target.groups.size(); ++j) {
      if (target.groups[j] != source.groups[i]) continue;
      const std::size_t g = source.groups[i];
      entries.push_back({j, i,
                         eGV_map(source.p0.parts[i], target.p0.parts[j], source.reps[i], target.reps[j], f.at(g))});
    }
  }
  return block_map(target.p0, source.p0, entries);
}

std::optional<RepMap> projectivity_section(const RepObject& x) {
  Counit c = counit_P0(x);
  HomSpace h = hom_space(x, c.p0.object);
  std::vector<Scalar> rhs = flatten(RepMap::identity(x));
  Matrix a(rhs.size(), h.dim());
  for (std::size_t k = 0; k < h.dim(); ++k) {
    std::vector<Scalar> col = flatten(compose(c.epsilon, h.basis()[k]));
    for (std::size_t i = 0; i < col.size(); ++i) a(i, k) = col[i];
  }
  auto sol = solve_right(a, Matrix::column(rhs));
  if (!sol) return std::nullopt;
  return h.combination(sol->col(0));
}

// ---------------------------------------------------------------------------
// Tensor products and Hom spaces

RepObject tensor(const RepObject& x, const RepObject& y) {
  const Site& site = x.site();
  std::vector<std::size_t> dims;
  for (std::size_t o = 0; o < site.size(); ++o) dims.push_back(x.dim(o) * y.dim(o));
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) acts.push_back(kron(x.action(a), y.action(a)));
  return RepObject::assemble(site, std::move(dims), std::move(acts));
}

RepMap tensor(const RepMap& f, const RepMap& g) {
  RepObject src = tensor(f.source(), g.source()), tgt = tensor(f.target(), g.target());
  std::vector<Matrix> comps;
  for (std::size_t o = 0; o < src.site().size(); ++o) comps.push_back(kron(f.at(o), g.at(o)));
  return RepMap::assemble(src, tgt, std::move(comps));
}

HomSpace::HomSpace(RepObject source, RepObject target, std::vector<RepMap> basis,
                   std::vector<std::size_t> free_positions, std::vector<std::size_t> offsets)
    : source_(std::move(source)),
      target_(std::move(target)),
      basis_(std::move(basis)),
      free_positions_(std::move(free_positions)),
      offsets_(std::move(offsets)) {}

std::vector<Scalar> HomSpace::coordinates(const RepMap& f) const {
  std::vector<Scalar> c;
  c.reserve(free_positions_.size());
  std::size_t o = 0;
  for (std::size_t pos : free_positions_) {
    while (o + 1 < offsets_.size() && offsets_[o + 1] <= pos) ++o;
    std::size_t local = pos - offsets_[o];
    const Matrix& m = f.at(o);
    c.push_back(m(local / m.cols(), local % m.cols()));
  }
  return c;
}

RepMap HomSpace::combination(const std::vector<Scalar>& coeffs) const {
  if (coeffs.size() != basis_.size()) precondition_failed("HomSpace::combination: wrong number of coefficients");
  RepMap f = RepMap::zero(source_, target_);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    RepMap term = basis_[k];
    term *= coeffs[k];
    f += term;
  }
  return f;
}

std::vector<Scalar> flatten(const RepMap& f) {
  std::vector<Scalar> out;
  for (const auto& m : f.comps()) out.insert(out.end(), m.data().begin(), m.data().end());
  return out;
}

HomSpace hom_space(const RepObject& x, const RepObject& y) {
  const Site& site = x.site();
  const std::size_t n = site.size();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t o = 0; o < n; ++o) offsets[o + 1] = offsets[o] + x.dim(o) * y.dim(o);
  const std::size_t unknowns = offsets[n];
  auto var = [&](std::size_t o, std::size_t r, std::size_t c) { return offsets[o] + r * x.dim(o) + c; };

  SparseNullspace ns(unknowns);
  std::vector<SparseNullspace::Term> terms;
  for (std::size_t a : site.generating_classes()) {
    const auto& m = site.morphism(a);
    const std::size_t h = m.source, g = m.target;
    const Matrix& ax = x.action(a);  // dim X(h) x dim X(g)
    const Matrix& ay = y.action(a);  // dim Y(h) x dim Y(g)
    // f_h ax - ay f_g = 0, entry (i, j) with i < dim Y(h), j < dim X(g).
    std::vector<std::vector<std::size_t>> col_nz(x.dim(g));
    for (std::size_t k = 0; k < x.dim(h); ++k) {
      for (std::size_t j = 0; j < x.dim(g); ++j) {
        if (!ax(k, j).is_zero()) col_nz[j].push_back(k);
      }
    }
    std::vector<std::vector<std::size_t>> row_nz(y.dim(h));
    for (std::size_t i = 0; i < y.dim(h); ++i) {
      for (std::size_t l = 0; l < y.dim(g); ++l) {
        if (!ay(i, l).is_zero()) row_nz[i].push_back(l);
      }
    }
    for (std::size_t i = 0; i < y.dim(h); ++i) {
      for (std::size_t j = 0; j < x.dim(g); ++j) {
        terms.clear();
        for (std::size_t k : col_nz[j]) terms.emplace_back(var(h, i, k), ax(k, j));
        for (std::size_t l : row_nz[i]) terms.emplace_back(var(g, l, j), -ay(i, l));
        if (!terms.empty()) ns.add_equation(terms);
      }
    }
  }
  Matrix k = ns.kernel();
  std::vector<RepMap> basis;
  basis.reserve(k.cols());
  for (std::size_t b = 0; b < k.cols(); ++b) {
    std::vector<Matrix> comps;
    for (std::size_t o = 0; o < n; ++o) {
      Matrix c(y.dim(o), x.dim(o));
      for (std::size_t r = 0; r < y.dim(o); ++r) {
        for (std::size_t cc = 0; cc < x.dim(o); ++cc) c(r, cc) = k(var(o, r, cc), b);
      }
      comps.push_back(std::move(c));
    }
    basis.push_back(RepMap::assemble(x, y, std::move(comps)));
  }
  offsets.pop_back();
  return HomSpace(x, y, std::move(basis), ns.free_columns(), std::move(offsets));
}

InternalHom internal_hom(const RepObject& x, const RepObject& y) {
  const Site& site = x.site();
  InternalHom ih;
  std::vector<std::size_t> dims;
  for (std::size_t g = 0; g < site.size(); ++g) {
    ih.eg.push_back(make_eG(site, g));
    ih.spaces.push_back(hom_space(tensor(ih.eg.back(), x), y));
    dims.push_back(ih.spaces.back().dim());
  }
  RepMap idx = RepMap::identity(x);
  std::vector<Matrix> acts;
  acts.reserve(site.class_count());
  for (std::size_t a = 0; a < site.class_count(); ++a) {
    const auto& m = site.morphism(a);
    RepMap pre = tensor(e_morphism(site, a), idx);
    Matrix act(dims[m.source], dims[m.target]);
    const auto& basis = ih.spaces[m.target].basis();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::vector<Scalar> c = ih.spaces[m.source].coordinates(compose(basis[b], pre));
      for (std::size_t i = 0; i < c.size(); ++i) act(i, b) = c[i];
    }
    acts.push_back(std::move(act));
  }
  ih.object = RepObject::assemble(site, std::move(dims), std::move(acts));
  return ih;
}

std::optional<RepMap> find_isomorphism(const RepObject& x, const RepObject& y) {
  if (x.dims() != y.dims()) return std::nullopt;
  HomSpace h = hom_space(x, y);
  if (x.is_zero()) return RepMap::zero(x, y);
  for (const auto& b : h.basis()) {
    if (b.is_iso()) return b;
  }
  // Deterministic pseudo-random combinations; a generic one is invertible
  // whenever some combination is.
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<Scalar> coeffs;
    for (std::size_t k = 0; k < h.dim(); ++k) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      coeffs.emplace_back(static_cast<long long>((state >> 33) % 19) - 9);
    }
    RepMap f = h.combination(coeffs);
    if (f.is_iso()) return f;
  }
  return std::nullopt;
}

std::optional<std::vector<Scalar>> torsion_free_search(const RepObject& x, std::size_t g) {
  const Site& site = x.site();
  const std::size_t d = x.dim(g);
  if (d == 0) return std::nullopt;
  std::vector<const Matrix*> tests;
  for (std::size_t t = 0; t < site.size(); ++t) {
    for (std::size_t a : site.hom(t, g)) {
      if (site.is_iso(a)) continue;  // automorphisms are injective
      const Matrix& m = x.action(a);
      if (m.is_zero()) return std::nullopt;
      tests.push_back(&m);
    }
  }
  auto good = [&](const std::vector<Scalar>& v) {
    for (const Matrix* m : tests) {
      auto img = m->apply(v);
      if (std::all_of(img.begin(), img.end(), [](const Scalar& s) { return s.is_zero(); })) return false;
    }
    return true;
  };
  // Each test excludes a proper subspace, so a solution exists; candidates are
  // ordered by max-norm, then support size, then lexicographically.
  for (long long norm = 1;; ++norm) {
    for (std::size_t support = 1; support <= d; ++support) {
      std::vector<std::size_t> idx(support);
      for (std::size_t i = 0; i < support; ++i) idx[i] = i;
      while (true) {
        std::vector<long long> vals(support, -norm);
        while (true) {
          bool has_norm = false, nonzero = true;
          for (auto v : vals) {
            has_norm = has_norm || v == norm || v == -norm;
            nonzero = nonzero && v != 0;
          }
          if (has_norm && nonzero) {
            std::vector<Scalar> cand(d);
            for (std::size_t i = 0; i < support; ++i) cand[idx[i]] = Scalar(vals[i]);
            if (good(cand)) return cand;
          }
          std::size_t p = support;
          while (p > 0 && vals[p - 1] == norm) vals[--p] = -norm;
          if (p == 0) break;
          ++vals[p - 1];
        }
        // Next support set in lexicographic order.
        std::size_t p = support;
        while (p > 0 && idx[p - 1] == d - support + p - 1) --p;
        if (p == 0) break;
        ++idx[p - 1];
        for (std::size_t i = p; i < support; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
}

BasisChange change_basis(const RepObject& x, const std::vector<Matrix>& basis_change) {
  const Site& site = x.site();
  std::vector<Matrix> inv;
  for (std::size_t o = 0; o < site.size(); ++o) {
    auto i = glrep::inverse(basis_change.at(o));
    if (!i || basis_change[o].rows() != x.dim(o)) precondition_failed("change_basis: matrix is not invertible");
    inv.push_back(std::move(*i));
  }
  std::vector<Matrix> acts;
  for (std::size_t a = 0; a < site.class_count(); ++a) {
    const auto& m = site.morphism(a);
    acts.push_back(inv[m.source] * x.action(a) * basis_change[m.target]);
  }
  BasisChange bc;
  bc.object = RepObject::assemble(site, x.dims(), std::move(acts));
  bc.to_original = RepMap::assemble(bc.object, x, basis_change);
  return bc;
}

}  // namespace glrep
