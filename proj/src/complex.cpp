#include "glrep/complex.hpp"

#include <algorithm>

#include "glrep/error.hpp"

namespace glrep {

namespace {

Scalar sign(int k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

bool same_dims(const RepObject& a, const RepObject& b) { return a.dims() == b.dims(); }

}  // namespace

// ---------------------------------------------------------------------------
// Complex

Complex Complex::assemble(const Site& site, int lo, std::vector<RepObject> terms, std::vector<RepMap> diffs) {
  const std::size_t len = terms.size();
  if (len > 0 && diffs.size() + 1 != len) precondition_failed("Complex: need one differential fewer than terms");
  if (len == 0 && !diffs.empty()) precondition_failed("Complex: differentials without terms");
  Complex c;
  c.lo_ = lo;
  c.zero_ = RepObject::zero(site);
  c.zero_map_ = RepMap::zero(c.zero_, c.zero_);
  for (const auto& t : terms) {
    if (!t.site().same_as(site)) precondition_failed("Complex: term on a different site");
  }
  c.terms_ = std::move(terms);
  c.diffs_.reserve(len + 1);
  if (len == 0) {
    c.diffs_.push_back(c.zero_map_);
  } else {
    c.diffs_.push_back(RepMap::zero(c.terms_[0], c.zero_));
    for (std::size_t k = 0; k + 1 < len; ++k) {
      const RepMap& d = diffs[k];
      if (!same_dims(d.source(), c.terms_[k + 1]) || !same_dims(d.target(), c.terms_[k])) {
        precondition_failed("Complex: differential " + std::to_string(lo + static_cast<int>(k) + 1) +
                            " has the wrong source or target");
      }
      c.diffs_.push_back(d);
    }
    c.diffs_.push_back(RepMap::zero(c.zero_, c.terms_[len - 1]));
  }
  if (validation_enabled()) {
    if (auto why = c.failure()) internal_failure("constructed complex is invalid: " + *why);
  }
  return c;
}

Complex Complex::create(const Site& site, int lo, std::vector<RepObject> terms, std::vector<RepMap> diffs) {
  bool was = validation_enabled();
  set_validation(false);
  Complex c;
  try {
    c = assemble(site, lo, std::move(terms), std::move(diffs));
  } catch (...) {
    set_validation(was);
    throw;
  }
  set_validation(was);
  if (auto why = c.failure()) precondition_failed(*why);
  return c;
}

Complex Complex::zero(const Site& site) { return assemble(site, 0, {}, {}); }

Complex Complex::single(const RepObject& x, int degree) { return assemble(x.site(), degree, {x}, {}); }

const RepObject& Complex::term(int n) const {
  if (n < lo_ || n > hi()) return zero_;
  return terms_[static_cast<std::size_t>(n - lo_)];
}

const RepMap& Complex::d(int n) const {
  if (n < lo_ || n > hi() + 1) return zero_map_;
  return diffs_[static_cast<std::size_t>(n - lo_)];
}

bool Complex::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const RepObject& t) { return t.is_zero(); });
}

std::optional<std::string> Complex::failure() const {
  for (int n = lo_ + 1; n <= hi(); ++n) {
    if (auto why = d(n).naturality_failure()) return "d_" + std::to_string(n) + ": " + *why;
  }
  for (int n = lo_ + 1; n < hi(); ++n) {
    if (!compose(d(n), d(n + 1)).is_zero()) return "d_" + std::to_string(n) + " d_" + std::to_string(n + 1) + " != 0";
  }
  return std::nullopt;
}

Complex Complex::trimmed() const {
  int a = lo_, b = hi();
  while (a <= b && term(a).is_zero()) ++a;
  while (b >= a && term(b).is_zero()) --b;
  if (a > b) return zero(site());
  std::vector<RepObject> terms;
  std::vector<RepMap> diffs;
  for (int n = a; n <= b; ++n) {
    terms.push_back(term(n));
    if (n > a) diffs.push_back(d(n));
  }
  return assemble(site(), a, std::move(terms), std::move(diffs));
}

// ---------------------------------------------------------------------------
// GradedMap

GradedMap GradedMap::assemble(const Complex& source, const Complex& target, int degree, int lo,
                              std::vector<RepMap> comps) {
  GradedMap g;
  g.source_ = source;
  g.target_ = target;
  g.degree_ = degree;
  g.lo_ = source.lo();
  for (int n = source.lo(); n <= source.hi(); ++n) {
    const int k = n - lo;
    if (k >= 0 && k < static_cast<int>(comps.size())) {
      const RepMap& m = comps[static_cast<std::size_t>(k)];
      if (!same_dims(m.source(), source.term(n)) || !same_dims(m.target(), target.term(n + degree))) {
        precondition_failed("GradedMap: component at degree " + std::to_string(n) + " has the wrong shape");
      }
      g.comps_.push_back(m);
    } else {
      g.comps_.push_back(RepMap::zero(source.term(n), target.term(n + degree)));
    }
  }
  for (int k = 0; k < static_cast<int>(comps.size()); ++k) {
    const int n = lo + k;
    if ((n < source.lo() || n > source.hi()) && !comps[static_cast<std::size_t>(k)].is_zero()) {
      precondition_failed("GradedMap: nonzero component outside the source range");
    }
  }
  return g;
}

GradedMap GradedMap::zero(const Complex& source, const Complex& target, int degree) {
  return assemble(source, target, degree, source.lo(), {});
}

RepMap GradedMap::at(int n) const {
  if (n < lo_ || n >= lo_ + static_cast<int>(comps_.size())) {
    return RepMap::zero(source_.term(n), target_.term(n + degree_));
  }
  return comps_[static_cast<std::size_t>(n - lo_)];
}

bool GradedMap::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const RepMap& m) { return m.is_zero(); });
}

GradedMap GradedMap::operator-() const {
  GradedMap r(*this);
  for (auto& m : r.comps_) m = -m;
  return r;
}

GradedMap& GradedMap::operator+=(const GradedMap& o) {
  if (degree_ != o.degree_ || comps_.size() != o.comps_.size() || lo_ != o.lo_) {
    precondition_failed("GradedMap +: maps are not parallel");
  }
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& o) { return *this += -o; }

GradedMap& GradedMap::operator*=(const Scalar& s) {
  for (auto& m : comps_) m *= s;
  return *this;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
  if (a.degree_ != b.degree_) return false;
  const int lo = std::min(a.lo_, b.lo_);
  const int hi = std::max(a.lo_ + static_cast<int>(a.comps_.size()), b.lo_ + static_cast<int>(b.comps_.size()));
  for (int n = lo; n < hi; ++n) {
    if (a.at(n).comps() != b.at(n).comps()) return false;
  }
  return true;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  std::vector<RepMap> comps;
  for (int n = f.source().lo(); n <= f.source().hi(); ++n) comps.push_back(compose(g.at(n + f.degree()), f.at(n)));
  return GradedMap::assemble(f.source(), g.target(), f.degree() + g.degree(), f.source().lo(), std::move(comps));
}

GradedMap boundary(const GradedMap& g) {
  const int k = g.degree();
  const Complex& x = g.source();
  const Complex& y = g.target();
  std::vector<RepMap> comps;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    RepMap a = compose(y.d(n + k), g.at(n));
    RepMap b = compose(g.at(n - 1), x.d(n));
    b *= sign(k);
    comps.push_back(a - b);
  }
  return GradedMap::assemble(x, y, k - 1, x.lo(), std::move(comps));
}

std::vector<Scalar> flatten(const GradedMap& g) {
  std::vector<Scalar> out;
  for (int n = g.source().lo(); n <= g.source().hi(); ++n) {
    auto part = flatten(g.at(n));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// ChainMap

ChainMap ChainMap::assemble(const GradedMap& g) {
  if (g.degree() != 0) precondition_failed("ChainMap: graded map of nonzero degree");
  ChainMap f;
  f.g_ = g;
  if (validation_enabled()) {
    if (auto why = f.failure()) internal_failure("constructed chain map is invalid: " + *why);
  }
  return f;
}

ChainMap ChainMap::create(const GradedMap& g) {
  if (g.degree() != 0) precondition_failed("ChainMap: graded map of nonzero degree");
  ChainMap f;
  f.g_ = g;
  if (auto why = f.failure()) precondition_failed(*why);
  return f;
}

ChainMap ChainMap::create(const Complex& source, const Complex& target, int lo, std::vector<RepMap> comps) {
  return create(GradedMap::assemble(source, target, 0, lo, std::move(comps)));
}

ChainMap ChainMap::assemble(const Complex& source, const Complex& target, int lo, std::vector<RepMap> comps) {
  return assemble(GradedMap::assemble(source, target, 0, lo, std::move(comps)));
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target) {
  return assemble(GradedMap::zero(source, target, 0));
}

ChainMap ChainMap::identity(const Complex& x) {
  std::vector<RepMap> comps;
  for (int n = x.lo(); n <= x.hi(); ++n) comps.push_back(RepMap::identity(x.term(n)));
  return assemble(x, x, x.lo(), std::move(comps));
}

std::optional<std::string> ChainMap::failure() const {
  const Complex& x = source();
  const Complex& y = target();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (auto why = at(n).naturality_failure()) return "component " + std::to_string(n) + ": " + *why;
  }
  const int lo = std::min(x.lo(), y.lo());
  const int hi = std::max(x.hi(), y.hi()) + 1;
  for (int n = lo; n <= hi; ++n) {
    if (compose(y.d(n), at(n)) != compose(at(n - 1), x.d(n))) {
      return "does not commute with the differential in degree " + std::to_string(n);
    }
  }
  return std::nullopt;
}

bool ChainMap::is_identity() const {
  if (source().lo() != target().lo() || source().hi() != target().hi()) return false;
  for (int n = source().lo(); n <= source().hi(); ++n) {
    if (!at(n).is_identity()) return false;
  }
  return true;
}

bool ChainMap::is_injective() const {
  for (int n = source().lo(); n <= source().hi(); ++n) {
    if (!at(n).is_injective()) return false;
  }
  return true;
}

bool ChainMap::is_surjective() const {
  for (int n = target().lo(); n <= target().hi(); ++n) {
    if (!at(n).is_surjective()) return false;
  }
  return true;
}

bool ChainMap::is_iso() const { return is_injective() && is_surjective(); }

ChainMap ChainMap::inverse() const {
  std::vector<RepMap> comps;
  const Complex& y = target();
  for (int n = y.lo(); n <= y.hi(); ++n) {
    RepMap m = at(n);
    if (m.source().total_dim() == 0 && m.target().total_dim() == 0) {
      comps.push_back(RepMap::zero(y.term(n), source().term(n)));
    } else {
      comps.push_back(m.inverse());
    }
  }
  return assemble(y, source(), y.lo(), std::move(comps));
}

ChainMap ChainMap::operator-() const { return assemble(-g_); }
ChainMap operator+(const ChainMap& a, const ChainMap& b) { return ChainMap::assemble(a.g_ + b.g_); }
ChainMap operator-(const ChainMap& a, const ChainMap& b) { return ChainMap::assemble(a.g_ - b.g_); }
ChainMap operator*(const Scalar& s, const ChainMap& a) { return ChainMap::assemble(s * a.g_); }

ChainMap compose(const ChainMap& g, const ChainMap& f) { return ChainMap::assemble(compose(g.graded(), f.graded())); }

// ---------------------------------------------------------------------------
// Homology

std::size_t HomologyTable::at(int n, std::size_t object) const {
  if (n < lo || n >= lo + static_cast<int>(dims.size())) return 0;
  return dims[static_cast<std::size_t>(n - lo)][object];
}

bool operator==(const HomologyTable& a, const HomologyTable& b) {
  const int lo = std::min(a.lo, b.lo);
  const int hi = std::max(a.lo + static_cast<int>(a.dims.size()), b.lo + static_cast<int>(b.dims.size()));
  std::size_t objects = 0;
  if (!a.dims.empty()) objects = a.dims[0].size();
  if (!b.dims.empty()) objects = b.dims[0].size();
  for (int n = lo; n < hi; ++n) {
    for (std::size_t g = 0; g < objects; ++g) {
      if (a.at(n, g) != b.at(n, g)) return false;
    }
  }
  return true;
}

HomologyTable homology_dims(const Complex& c) {
  HomologyTable t;
  t.lo = c.lo();
  const Site& s = c.site();
  std::vector<std::vector<std::size_t>> ranks;  // rank of d_n at each object, n in [lo, hi + 1]
  for (int n = c.lo(); n <= c.hi() + 1; ++n) {
    std::vector<std::size_t> r;
    for (std::size_t g = 0; g < s.size(); ++g) r.push_back(rank(c.d(n).at(g)));
    ranks.push_back(std::move(r));
  }
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const auto k = static_cast<std::size_t>(n - c.lo());
    std::vector<std::size_t> row;
    for (std::size_t g = 0; g < s.size(); ++g) row.push_back(c.term(n).dim(g) - ranks[k][g] - ranks[k + 1][g]);
    t.dims.push_back(std::move(row));
  }
  return t;
}

bool is_acyclic(const Complex& c) {
  for (const auto& row : homology_dims(c).dims) {
    for (auto v : row) {
      if (v != 0) return false;
    }
  }
  return true;
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(mapping_cone(f).complex); }

HomologyObject homology(const Complex& c, int n) {
  HomologyObject h;
  h.cycles = kernel(c.d(n));
  std::vector<Matrix> gens;
  const RepMap& in = c.d(n + 1);
  for (std::size_t g = 0; g < c.site().size(); ++g) gens.push_back(span_coordinates(h.cycles.bases[g], in.at(g)));
  h.boundaries = make_subobject(h.cycles.object, gens);
  h.homology = make_quotient(h.boundaries);
  return h;
}

// ---------------------------------------------------------------------------
// Constructions

Graded graded_of(const Complex& c) {
  Graded g{c.lo(), {}};
  for (int n = c.lo(); n <= c.hi(); ++n) g.terms.push_back(c.term(n));
  return g;
}

Complex shift(const Complex& c, int k) {
  std::vector<RepObject> terms;
  std::vector<RepMap> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    terms.push_back(c.term(n));
    if (n > c.lo()) diffs.push_back(sign(k) * c.d(n));
  }
  return Complex::assemble(c.site(), c.lo() + k, std::move(terms), std::move(diffs));
}

ChainMap shift(const ChainMap& f, int k) {
  Complex x = shift(f.source(), k), y = shift(f.target(), k);
  std::vector<RepMap> comps;
  for (int n = f.source().lo(); n <= f.source().hi(); ++n) comps.push_back(f.at(n));
  return ChainMap::assemble(x, y, f.source().lo() + k, std::move(comps));
}

DeltaComplex delta(const Site& site, const Graded& u) {
  DeltaComplex out;
  if (u.terms.empty()) {
    out.complex = Complex::zero(site);
    out.contraction = GradedMap::zero(out.complex, out.complex, 1);
    return out;
  }
  RepObject zero = RepObject::zero(site);
  const int ulo = u.lo, uhi = u.lo + static_cast<int>(u.terms.size()) - 1;
  auto U = [&](int n) -> const RepObject& {
    if (n < ulo || n > uhi) return zero;
    return u.terms[static_cast<std::size_t>(n - ulo)];
  };
  const int lo = ulo - 1;
  std::vector<RepObject> terms;
  for (int n = lo; n <= uhi; ++n) {
    out.sums.push_back(make_sum(site, {U(n), U(n + 1)}));
    terms.push_back(out.sums.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = lo + 1; n <= uhi; ++n) {
    const SumObject& src = out.sums[static_cast<std::size_t>(n - lo)];
    const SumObject& tgt = out.sums[static_cast<std::size_t>(n - 1 - lo)];
    diffs.push_back(block_map(tgt, src, {{1, 0, RepMap::identity(U(n))}}));
  }
  out.complex = Complex::assemble(site, lo, std::move(terms), std::move(diffs));
  std::vector<RepMap> s;
  for (int n = lo; n <= uhi; ++n) {
    const SumObject& src = out.sums[static_cast<std::size_t>(n - lo)];
    if (n + 1 <= uhi) {
      const SumObject& tgt = out.sums[static_cast<std::size_t>(n + 1 - lo)];
      s.push_back(block_map(tgt, src, {{0, 1, RepMap::identity(U(n + 1))}}));
    } else {
      s.push_back(RepMap::zero(src.object, zero));
    }
  }
  out.contraction = GradedMap::assemble(out.complex, out.complex, 1, lo, std::move(s));
  return out;
}

SumComplex direct_sum(const Site& site, std::vector<Complex> parts) {
  SumComplex out;
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& p : parts) {
    if (p.length() == 0) continue;
    lo = any ? std::min(lo, p.lo()) : p.lo();
    hi = any ? std::max(hi, p.hi()) : p.hi();
    any = true;
  }
  std::vector<RepObject> terms;
  for (int n = lo; n <= hi; ++n) {
    std::vector<RepObject> ts;
    for (const auto& p : parts) ts.push_back(p.term(n));
    out.sums.push_back(make_sum(site, std::move(ts)));
    terms.push_back(out.sums.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    std::vector<BlockEntry> blocks;
    for (std::size_t i = 0; i < parts.size(); ++i) blocks.push_back({i, i, parts[i].d(n)});
    diffs.push_back(block_map(out.sums[static_cast<std::size_t>(n - 1 - lo)],
                              out.sums[static_cast<std::size_t>(n - lo)], blocks));
  }
  out.complex = Complex::assemble(site, lo, std::move(terms), std::move(diffs));
  out.parts = std::move(parts);
  return out;
}

ChainMap inject(const SumComplex& s, std::size_t part) {
  const Complex& p = s.parts[part];
  std::vector<RepMap> comps;
  for (int n = p.lo(); n <= p.hi(); ++n) {
    comps.push_back(inject(s.sums[static_cast<std::size_t>(n - s.complex.lo())], part));
  }
  return ChainMap::assemble(p, s.complex, p.lo(), std::move(comps));
}

ChainMap project(const SumComplex& s, std::size_t part) {
  std::vector<RepMap> comps;
  for (int n = s.complex.lo(); n <= s.complex.hi(); ++n) {
    comps.push_back(project(s.sums[static_cast<std::size_t>(n - s.complex.lo())], part));
  }
  return ChainMap::assemble(s.complex, s.parts[part], s.complex.lo(), std::move(comps));
}

Cone mapping_cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const Site& site = x.site();
  Cone out;
  int lo = y.lo(), hi = y.hi();
  if (x.length() > 0) {
    lo = y.length() > 0 ? std::min(lo, x.lo() + 1) : x.lo() + 1;
    hi = y.length() > 0 ? std::max(hi, x.hi() + 1) : x.hi() + 1;
  }
  std::vector<RepObject> terms;
  for (int n = lo; n <= hi; ++n) {
    out.sums.push_back(make_sum(site, {y.term(n), x.term(n - 1)}));
    terms.push_back(out.sums.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    diffs.push_back(block_map(out.sums[static_cast<std::size_t>(n - 1 - lo)], out.sums[static_cast<std::size_t>(n - lo)],
                              {{0, 0, y.d(n)}, {0, 1, f.at(n - 1)}, {1, 1, -x.d(n - 1)}}));
  }
  out.complex = Complex::assemble(site, lo, std::move(terms), std::move(diffs));
  std::vector<RepMap> inc, proj;
  for (int n = y.lo(); n <= y.hi(); ++n) inc.push_back(inject(out.sums[static_cast<std::size_t>(n - lo)], 0));
  out.inclusion = ChainMap::assemble(y, out.complex, y.lo(), std::move(inc));
  Complex sx = shift(x, 1);
  for (int n = lo; n <= hi; ++n) proj.push_back(project(out.sums[static_cast<std::size_t>(n - lo)], 1));
  out.projection = ChainMap::assemble(out.complex, sx, lo, std::move(proj));
  return out;
}

SubComplex kernel(const ChainMap& f) {
  const Complex& x = f.source();
  SubComplex out;
  std::vector<RepObject> terms;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    out.terms.push_back(kernel(f.at(n)));
    terms.push_back(out.terms.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = x.lo() + 1; n <= x.hi(); ++n) {
    const auto k = static_cast<std::size_t>(n - x.lo());
    diffs.push_back(factor_through(out.terms[k - 1], compose(x.d(n), out.terms[k].inclusion)));
  }
  out.complex = Complex::assemble(x.site(), x.lo(), std::move(terms), std::move(diffs));
  std::vector<RepMap> inc;
  for (const auto& t : out.terms) inc.push_back(t.inclusion);
  out.inclusion = ChainMap::assemble(out.complex, x, x.lo(), std::move(inc));
  return out;
}

namespace {

RepMap induced_on_quotients(const QuotientObject& src, const QuotientObject& tgt, const RepMap& h) {
  std::vector<Matrix> comps;
  for (std::size_t g = 0; g < h.comps().size(); ++g) {
    comps.push_back(tgt.projection.at(g) * h.at(g) * src.sections[g]);
  }
  return RepMap::assemble(src.object, tgt.object, std::move(comps));
}

}  // namespace

QuotientComplex cokernel(const ChainMap& f) {
  const Complex& y = f.target();
  QuotientComplex out;
  std::vector<RepObject> terms;
  for (int n = y.lo(); n <= y.hi(); ++n) {
    out.terms.push_back(cokernel(f.at(n)));
    terms.push_back(out.terms.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = y.lo() + 1; n <= y.hi(); ++n) {
    const auto k = static_cast<std::size_t>(n - y.lo());
    diffs.push_back(induced_on_quotients(out.terms[k], out.terms[k - 1], y.d(n)));
  }
  out.complex = Complex::assemble(y.site(), y.lo(), std::move(terms), std::move(diffs));
  std::vector<RepMap> proj;
  for (const auto& t : out.terms) proj.push_back(t.projection);
  out.projection = ChainMap::assemble(y, out.complex, y.lo(), std::move(proj));
  return out;
}

Pushout pushout(const ChainMap& f, const ChainMap& g) {
  const Complex& a = f.source();
  SumComplex bc = direct_sum(a.site(), {f.target(), g.target()});
  std::vector<RepMap> comps;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    std::vector<Matrix> m;
    for (std::size_t o = 0; o < a.site().size(); ++o) m.push_back(vstack(f.at(n).at(o), -g.at(n).at(o)));
    comps.push_back(RepMap::assemble(a.term(n), bc.complex.term(n), std::move(m)));
  }
  ChainMap m = ChainMap::assemble(a, bc.complex, a.lo(), std::move(comps));
  QuotientComplex q = cokernel(m);
  Pushout out;
  out.complex = q.complex;
  out.to_first = compose(q.projection, inject(bc, 0));
  out.to_second = compose(q.projection, inject(bc, 1));
  out.sum = std::move(bc);
  out.quotient = std::move(q);
  return out;
}

ChainMap pushout_map(const Pushout& p, const ChainMap& u, const ChainMap& v) {
  const Complex& e = u.target();
  ChainMap w = compose(u, project(p.sum, 0)) + compose(v, project(p.sum, 1));
  std::vector<RepMap> comps;
  for (int n = p.complex.lo(); n <= p.complex.hi(); ++n) {
    const QuotientObject& q = p.quotient.terms[static_cast<std::size_t>(n - p.sum.complex.lo())];
    const RepMap wn = w.at(n);
    std::vector<Matrix> m;
    for (std::size_t g = 0; g < e.site().size(); ++g) m.push_back(wn.at(g) * q.sections[g]);
    comps.push_back(RepMap::assemble(p.complex.term(n), e.term(n), std::move(m)));
  }
  return ChainMap::create(p.complex, e, p.complex.lo(), std::move(comps));
}

Pullback pullback(const ChainMap& f, const ChainMap& g) {
  const Complex& d = f.target();
  SumComplex bc = direct_sum(d.site(), {f.source(), g.source()});
  ChainMap m = compose(f, project(bc, 0)) - compose(g, project(bc, 1));
  SubComplex k = kernel(m);
  Pullback out;
  out.complex = k.complex;
  out.from_first = compose(project(bc, 0), k.inclusion);
  out.from_second = compose(project(bc, 1), k.inclusion);
  out.sum = std::move(bc);
  out.sub = std::move(k);
  return out;
}

ChainMap pullback_map(const Pullback& p, const ChainMap& u, const ChainMap& v) {
  const Complex& e = u.source();
  ChainMap w = compose(inject(p.sum, 0), u) + compose(inject(p.sum, 1), v);
  std::vector<RepMap> comps;
  for (int n = e.lo(); n <= e.hi(); ++n) {
    if (n < p.complex.lo() || n > p.complex.hi()) {
      comps.push_back(RepMap::zero(e.term(n), p.complex.term(n)));
      continue;
    }
    comps.push_back(factor_through(p.sub.terms[static_cast<std::size_t>(n - p.complex.lo())], w.at(n)));
  }
  return ChainMap::create(e, p.complex, e.lo(), std::move(comps));
}

TensorComplex tensor(const Complex& x, const Complex& y) {
  const Site& site = x.site();
  TensorComplex out;
  if (x.length() == 0 || y.length() == 0) {
    out.complex = Complex::zero(site);
    return out;
  }
  const int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  std::vector<RepObject> terms;
  for (int n = lo; n <= hi; ++n) {
    std::vector<RepObject> parts;
    std::vector<int> firsts;
    for (int i = x.lo(); i <= x.hi(); ++i) {
      const int j = n - i;
      if (j < y.lo() || j > y.hi()) continue;
      parts.push_back(tensor(x.term(i), y.term(j)));
      firsts.push_back(i);
    }
    out.sums.push_back(make_sum(site, std::move(parts)));
    out.first_degree.push_back(std::move(firsts));
    terms.push_back(out.sums.back().object);
  }
  auto index_of = [&](int n, int i) -> std::optional<std::size_t> {
    const auto& f = out.first_degree[static_cast<std::size_t>(n - lo)];
    auto it = std::find(f.begin(), f.end(), i);
    if (it == f.end()) return std::nullopt;
    return static_cast<std::size_t>(it - f.begin());
  };
  std::vector<RepMap> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    std::vector<BlockEntry> blocks;
    const auto& firsts = out.first_degree[static_cast<std::size_t>(n - lo)];
    for (std::size_t p = 0; p < firsts.size(); ++p) {
      const int i = firsts[p], j = n - i;
      if (auto q = index_of(n - 1, i - 1)) {
        blocks.push_back({*q, p, tensor(x.d(i), RepMap::identity(y.term(j)))});
      }
      if (auto q = index_of(n - 1, i)) {
        blocks.push_back({*q, p, sign(i) * tensor(RepMap::identity(x.term(i)), y.d(j))});
      }
    }
    diffs.push_back(block_map(out.sums[static_cast<std::size_t>(n - 1 - lo)], out.sums[static_cast<std::size_t>(n - lo)],
                              blocks));
  }
  out.complex = Complex::assemble(site, lo, std::move(terms), std::move(diffs));
  return out;
}

ChainMap tensor(const ChainMap& f, const ChainMap& g, const TensorComplex& source, const TensorComplex& target) {
  const Complex& s = source.complex;
  std::vector<RepMap> comps;
  for (int n = s.lo(); n <= s.hi(); ++n) {
    const auto& sf = source.first_degree[static_cast<std::size_t>(n - s.lo())];
    std::vector<BlockEntry> blocks;
    const Complex& t = target.complex;
    if (n < t.lo() || n > t.hi()) {
      comps.push_back(RepMap::zero(s.term(n), t.term(n)));
      continue;
    }
    const auto& tf = target.first_degree[static_cast<std::size_t>(n - t.lo())];
    for (std::size_t p = 0; p < sf.size(); ++p) {
      auto it = std::find(tf.begin(), tf.end(), sf[p]);
      if (it == tf.end()) continue;
      blocks.push_back({static_cast<std::size_t>(it - tf.begin()), p, tensor(f.at(sf[p]), g.at(n - sf[p]))});
    }
    comps.push_back(block_map(target.sums[static_cast<std::size_t>(n - t.lo())],
                              source.sums[static_cast<std::size_t>(n - s.lo())], blocks));
  }
  return ChainMap::assemble(s, target.complex, s.lo(), std::move(comps));
}

ComplexBasisChange change_basis(const Complex& c, const std::vector<std::vector<Matrix>>& per_degree) {
  if (per_degree.size() != c.length()) precondition_failed("change_basis: one matrix list per degree");
  std::vector<BasisChange> bcs;
  std::vector<RepObject> terms;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    bcs.push_back(change_basis(c.term(n), per_degree[static_cast<std::size_t>(n - c.lo())]));
    terms.push_back(bcs.back().object);
  }
  std::vector<RepMap> diffs;
  for (int n = c.lo() + 1; n <= c.hi(); ++n) {
    const auto k = static_cast<std::size_t>(n - c.lo());
    RepMap to_prev_inv = bcs[k - 1].to_original.inverse();
    diffs.push_back(compose(to_prev_inv, compose(c.d(n), bcs[k].to_original)));
  }
  ComplexBasisChange out;
  out.complex = Complex::assemble(c.site(), c.lo(), std::move(terms), std::move(diffs));
  std::vector<RepMap> to;
  for (const auto& b : bcs) to.push_back(b.to_original);
  out.to_original = ChainMap::assemble(out.complex, c, c.lo(), std::move(to));
  return out;
}

// ---------------------------------------------------------------------------
// Hom complexes

std::size_t VecComplex::homology_dim(int n) const {
  const int k = n - lo;
  if (k < 0 || k >= static_cast<int>(dims.size())) return 0;
  std::size_t out = dims[static_cast<std::size_t>(k)] - rank(diffs[static_cast<std::size_t>(k)]);
  if (k + 1 < static_cast<int>(dims.size())) out -= rank(diffs[static_cast<std::size_t>(k + 1)]);
  return out;
}

HomDegree hom_degree(const Complex& x, const Complex& y, int n) {
  HomDegree h;
  h.n = n;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    if (i + n < y.lo() || i + n > y.hi()) continue;
    h.source_degrees.push_back(i);
    h.offsets.push_back(h.dim);
    h.spaces.push_back(hom_space(x.term(i), y.term(i + n)));
    h.dim += h.spaces.back().dim();
  }
  return h;
}

GradedMap element(const Complex& x, const Complex& y, const HomDegree& h, const std::vector<Scalar>& coeffs) {
  if (coeffs.size() != h.dim) precondition_failed("element: wrong number of coefficients");
  std::vector<RepMap> comps;
  for (int i = x.lo(); i <= x.hi(); ++i) comps.push_back(RepMap::zero(x.term(i), y.term(i + h.n)));
  for (std::size_t b = 0; b < h.spaces.size(); ++b) {
    std::vector<Scalar> part(coeffs.begin() + static_cast<long>(h.offsets[b]),
                             coeffs.begin() + static_cast<long>(h.offsets[b] + h.spaces[b].dim()));
    comps[static_cast<std::size_t>(h.source_degrees[b] - x.lo())] = h.spaces[b].combination(part);
  }
  return GradedMap::assemble(x, y, h.n, x.lo(), std::move(comps));
}

std::vector<Scalar> coordinates(const HomDegree& h, const GradedMap& g) {
  std::vector<Scalar> out;
  out.reserve(h.dim);
  for (std::size_t b = 0; b < h.spaces.size(); ++b) {
    auto c = h.spaces[b].coordinates(g.at(h.source_degrees[b]));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Matrix hom_differential(const Complex& x, const Complex& y, const HomDegree& from, const HomDegree& to) {
  Matrix m(to.dim, from.dim);
  auto block_of_degree = [&](int i) -> std::optional<std::size_t> {
    auto it = std::find(to.source_degrees.begin(), to.source_degrees.end(), i);
    if (it == to.source_degrees.end()) return std::nullopt;
    return static_cast<std::size_t>(it - to.source_degrees.begin());
  };
  const Scalar sgn = sign(from.n);
  for (std::size_t b = 0; b < from.spaces.size(); ++b) {
    const int i = from.source_degrees[b];
    auto here = block_of_degree(i);
    auto next = block_of_degree(i + 1);
    for (std::size_t k = 0; k < from.spaces[b].dim(); ++k) {
      const RepMap& f = from.spaces[b].basis()[k];
      const std::size_t col = from.offsets[b] + k;
      if (here) {
        auto c = to.spaces[*here].coordinates(compose(y.d(i + from.n), f));
        for (std::size_t r = 0; r < c.size(); ++r) m(to.offsets[*here] + r, col) += c[r];
      }
      if (next) {
        auto c = to.spaces[*next].coordinates(compose(f, x.d(i + 1)));
        for (std::size_t r = 0; r < c.size(); ++r) m(to.offsets[*next] + r, col) -= sgn * c[r];
      }
    }
  }
  return m;
}

HomComplex hom_complex(const Complex& x, const Complex& y) {
  HomComplex out;
  if (x.length() == 0 || y.length() == 0) return out;
  const int lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  out.vec.lo = lo;
  for (int n = lo; n <= hi; ++n) {
    out.degrees.push_back(hom_degree(x, y, n));
    out.vec.dims.push_back(out.degrees.back().dim);
  }
  out.vec.diffs.emplace_back(0, out.degrees[0].dim);
  for (int n = lo + 1; n <= hi; ++n) {
    const auto k = static_cast<std::size_t>(n - lo);
    out.vec.diffs.push_back(hom_differential(x, y, out.degrees[k], out.degrees[k - 1]));
  }
  return out;
}

std::optional<GradedMap> find_homotopy(const ChainMap& f, const ChainMap& g) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  GradedMap diff = f.graded() - g.graded();
  if (diff.is_zero()) return GradedMap::zero(x, y, 1);
  HomDegree h1 = hom_degree(x, y, 1), h0 = hom_degree(x, y, 0);
  Matrix d = hom_differential(x, y, h1, h0);
  auto sol = solve_right(d, Matrix::column(coordinates(h0, diff)));
  if (!sol) return std::nullopt;
  GradedMap s = element(x, y, h1, sol->col(0));
  if (!(boundary(s) == diff)) internal_failure("find_homotopy: solution does not satisfy ds + sd = f - g");
  return s;
}

std::optional<GradedMap> find_contraction(const Complex& x) {
  return find_homotopy(ChainMap::identity(x), ChainMap::zero(x, x));
}

bool is_contraction(const GradedMap& s) {
  if (s.degree() != 1) return false;
  return boundary(s) == ChainMap::identity(s.source()).graded();
}

ContractibleSplit split_contractible(const Complex& x, const GradedMap& s) {
  if (!is_contraction(s)) precondition_failed("split_contractible: ds + sd != 1");
  const Site& site = x.site();
  ContractibleSplit out;
  for (int n = x.lo(); n <= x.hi(); ++n) out.cycles.push_back(kernel(x.d(n)));
  auto Z = [&](int n) -> const Subobject* {
    if (n < x.lo() || n > x.hi()) return nullptr;
    return &out.cycles[static_cast<std::size_t>(n - x.lo())];
  };
  Graded u{x.lo() + 1, {}};
  for (const auto& z : out.cycles) u.terms.push_back(z.object);
  out.delta = delta(site, u);
  const Complex& dc = out.delta.complex;
  std::vector<RepMap> p, i;
  for (int n = dc.lo(); n <= dc.hi(); ++n) {
    const SumObject& sum = out.delta.sums[static_cast<std::size_t>(n - dc.lo())];
    std::vector<BlockEntry> blocks;
    std::vector<Matrix> pc, ic;
    for (std::size_t g = 0; g < site.size(); ++g) {
      std::vector<Matrix> cols, rows;
      const std::size_t dim = x.term(n).dim(g);
      if (const Subobject* z = Z(n - 1)) {
        cols.push_back(s.at(n - 1).at(g) * z->bases[g].basis);
        rows.push_back(span_coordinates(z->bases[g], x.d(n).at(g)));
      }
      if (const Subobject* z = Z(n)) {
        cols.push_back(z->bases[g].basis);
        rows.push_back(span_coordinates(z->bases[g], x.d(n + 1).at(g) * s.at(n).at(g)));
      }
      pc.push_back(hstack(cols, dim));
      ic.push_back(vstack(rows, dim));
    }
    p.push_back(RepMap::assemble(sum.object, x.term(n), std::move(pc)));
    i.push_back(RepMap::assemble(x.term(n), sum.object, std::move(ic)));
  }
  out.p = ChainMap::assemble(dc, x, dc.lo(), std::move(p));
  out.i = ChainMap::assemble(x, dc, x.lo(), std::move(i));
  if (!compose(out.p, out.i).is_identity() || !(compose(out.i, out.p) == ChainMap::identity(dc))) {
    internal_failure("split_contractible: p and i are not inverse");
  }
  return out;
}

namespace {

// Canonical basis of L_{<=s} X at every object.
std::vector<SpanBasis> filtration_spans(const RepObject& x, std::size_t s) {
  const Site& site = x.site();
  std::vector<SpanBasis> out;
  for (std::size_t t = 0; t < site.size(); ++t) {
    std::vector<Matrix> parts;
    for (std::size_t g = 0; g < site.size(); ++g) {
      if (site.order(g) > s) continue;
      for (std::size_t a : site.hom(t, g)) parts.push_back(x.action(a));
    }
    out.push_back(span_basis(hstack(parts, x.dim(t))));
  }
  return out;
}

}  // namespace

std::optional<ThinWitness> thin_violation(const Complex& c) {
  if (!is_degreewise_projective(c)) precondition_failed("is_thin: terms must be projective");
  const Site& site = c.site();
  std::size_t prev = 0;
  for (std::size_t s : site.orders()) {
    for (int n = c.lo() + 1; n <= c.hi(); ++n) {
      auto leq = filtration_spans(c.term(n), s);
      auto lt = filtration_spans(c.term(n - 1), prev);
      for (std::size_t g = 0; g < site.size(); ++g) {
        Matrix img = c.d(n).at(g) * leq[g].basis;
        Matrix back = lt[g].basis * span_coordinates(lt[g], img);
        for (std::size_t j = 0; j < img.cols(); ++j) {
          if (img.col(j) != back.col(j)) return ThinWitness{s, n, g, img.col(j)};
        }
      }
    }
    prev = s;
  }
  return std::nullopt;
}

bool is_degreewise_projective(const Complex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n) {
    if (!is_projective_by_layers(c.term(n))) return false;
  }
  return true;
}

}  // namespace glrep
