#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glrep/rep.hpp"

namespace glrep {

// A bounded chain complex in A(U) with homological grading: d_n maps
// degree n to degree n - 1.  Terms outside [lo, hi] are zero.
class Complex {
 public:
  Complex() = default;
  // diffs[k] is d_{lo+k+1}: term(lo+k+1) -> term(lo+k), so there is one
  // differential fewer than terms.  Checks naturality and d^2 = 0.
  static Complex create(const Site& site, int lo, std::vector<RepObject> terms, std::vector<RepMap> diffs);
  // Same, but the checks only run when validation is enabled.
  static Complex assemble(const Site& site, int lo, std::vector<RepObject> terms, std::vector<RepMap> diffs);
  static Complex zero(const Site& site);
  static Complex single(const RepObject& x, int degree = 0);

  const Site& site() const { return zero_.site(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  std::size_t length() const { return terms_.size(); }
  const RepObject& term(int n) const;
  // d_n: term(n) -> term(n-1), a zero map outside the range.
  const RepMap& d(int n) const;
  const RepObject& zero_object() const { return zero_; }
  bool is_zero() const;
  bool valid() const { return zero_.valid(); }
  std::optional<std::string> failure() const;
  // Same complex with zero terms removed from both ends.
  Complex trimmed() const;

 private:
  int lo_ = 0;
  RepObject zero_;
  std::vector<RepObject> terms_;
  std::vector<RepMap> diffs_;  // d_n for n in [lo, hi + 1]
  RepMap zero_map_;
};

// A family f_n: X_n -> Y_{n + degree}.  Chain maps are the cycles of
// degree 0; homotopies and contractions have degree 1.
class GradedMap {
 public:
  GradedMap() = default;
  // comps[k] is the component at source degree lo + k; anything outside is zero.
  static GradedMap assemble(const Complex& source, const Complex& target, int degree, int lo,
                            std::vector<RepMap> comps);
  static GradedMap zero(const Complex& source, const Complex& target, int degree);

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  int degree() const { return degree_; }
  // Component at source degree n.
  RepMap at(int n) const;
  bool is_zero() const;

  GradedMap operator-() const;
  GradedMap& operator+=(const GradedMap& o);
  GradedMap& operator-=(const GradedMap& o);
  GradedMap& operator*=(const Scalar& s);
  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
  friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
  friend GradedMap operator*(const Scalar& s, GradedMap a) { return a *= s; }
  friend bool operator==(const GradedMap& a, const GradedMap& b);

 private:
  Complex source_, target_;
  int degree_ = 0;
  int lo_ = 0;
  std::vector<RepMap> comps_;
};

// A degree-0 graded map commuting with the differentials.
class ChainMap {
 public:
  ChainMap() = default;
  static ChainMap create(const GradedMap& g);
  static ChainMap assemble(const GradedMap& g);
  // comps[k] is the component at degree lo + k.
  static ChainMap create(const Complex& source, const Complex& target, int lo, std::vector<RepMap> comps);
  static ChainMap assemble(const Complex& source, const Complex& target, int lo, std::vector<RepMap> comps);
  static ChainMap zero(const Complex& source, const Complex& target);
  static ChainMap identity(const Complex& x);

  const Complex& source() const { return g_.source(); }
  const Complex& target() const { return g_.target(); }
  RepMap at(int n) const { return g_.at(n); }
  const GradedMap& graded() const { return g_; }
  std::optional<std::string> failure() const;
  bool is_zero() const { return g_.is_zero(); }
  bool is_identity() const;
  // Degreewise and pointwise properties.
  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const;
  ChainMap inverse() const;

  ChainMap operator-() const;
  friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator*(const Scalar& s, const ChainMap& a);
  friend bool operator==(const ChainMap& a, const ChainMap& b) { return a.g_ == b.g_; }

 private:
  GradedMap g_;
};

GradedMap compose(const GradedMap& g, const GradedMap& f);
ChainMap compose(const ChainMap& g, const ChainMap& f);
// d g - (-1)^k g d for g of degree k.
GradedMap boundary(const GradedMap& g);
// Entries of all components, degree by degree over the source range.
std::vector<Scalar> flatten(const GradedMap& g);

// ---------------------------------------------------------------------------
// Homology.

// dims[n - lo][G] = dim H_n(C(G)).
struct HomologyTable {
  int lo = 0;
  std::vector<std::vector<std::size_t>> dims;
  std::size_t at(int n, std::size_t object) const;
  friend bool operator==(const HomologyTable& a, const HomologyTable& b);
};
HomologyTable homology_dims(const Complex& c);
bool is_acyclic(const Complex& c);
bool is_quasi_iso(const ChainMap& f);

struct HomologyObject {
  Subobject cycles;       // Z_n inside C_n
  Subobject boundaries;   // B_n inside Z_n
  QuotientObject homology;
};
HomologyObject homology(const Complex& c, int n);

// ---------------------------------------------------------------------------
// Constructions.

struct Graded {
  int lo = 0;
  std::vector<RepObject> terms;
};
Graded graded_of(const Complex& c);

// (Sigma^k X)_n = X_{n-k} with differential (-1)^k d.
Complex shift(const Complex& c, int k);
ChainMap shift(const ChainMap& f, int k);

// Delta(U)_n = U_n + U_{n+1} with d = [[0, 0], [1, 0]].
struct DeltaComplex {
  Complex complex;
  std::vector<SumObject> sums;  // per degree, parts (U_n, U_{n+1})
  GradedMap contraction;        // [[0, 1], [0, 0]]
};
DeltaComplex delta(const Site& site, const Graded& u);

struct SumComplex {
  Complex complex;
  std::vector<Complex> parts;
  std::vector<SumObject> sums;  // indexed by degree - complex.lo()
};
SumComplex direct_sum(const Site& site, std::vector<Complex> parts);
ChainMap inject(const SumComplex& s, std::size_t part);
ChainMap project(const SumComplex& s, std::size_t part);

// Cf_n = Y_n + X_{n-1}, d = [[d_Y, f], [0, -d_X]].
struct Cone {
  Complex complex;
  std::vector<SumObject> sums;
  ChainMap inclusion;   // Y -> Cf
  ChainMap projection;  // Cf -> Sigma X
};
Cone mapping_cone(const ChainMap& f);

// Degreewise kernels and cokernels of chain maps, with induced differentials.
struct SubComplex {
  Complex complex;
  ChainMap inclusion;
  std::vector<Subobject> terms;  // per degree of the ambient complex
};
struct QuotientComplex {
  Complex complex;
  ChainMap projection;
  std::vector<QuotientObject> terms;
};
SubComplex kernel(const ChainMap& f);
QuotientComplex cokernel(const ChainMap& f);

struct Pushout {
  Complex complex;
  ChainMap to_first;   // B -> P
  ChainMap to_second;  // C -> P
  SumComplex sum;      // B + C
  QuotientComplex quotient;
};
// Pushout of B <- A -> C.
Pushout pushout(const ChainMap& f, const ChainMap& g);
// P -> E induced by u: B -> E and v: C -> E agreeing on A.
ChainMap pushout_map(const Pushout& p, const ChainMap& u, const ChainMap& v);

struct Pullback {
  Complex complex;
  ChainMap from_first;   // P -> B
  ChainMap from_second;  // P -> C
  SumComplex sum;        // B + C
  SubComplex sub;
};
// Pullback of B -> D <- C.
Pullback pullback(const ChainMap& f, const ChainMap& g);
// E -> P induced by u: E -> B and v: E -> C agreeing in D.
ChainMap pullback_map(const Pullback& p, const ChainMap& u, const ChainMap& v);

// (X (x) Y)_n = sum over i + j = n of X_i (x) Y_j, d = d (x) 1 + (-1)^i 1 (x) d.
struct TensorComplex {
  Complex complex;
  std::vector<SumObject> sums;                 // per degree
  std::vector<std::vector<int>> first_degree;  // per degree, the i of each part
};
TensorComplex tensor(const Complex& x, const Complex& y);
ChainMap tensor(const ChainMap& f, const ChainMap& g, const TensorComplex& source, const TensorComplex& target);

// Reindex every term along pointwise basis changes; returns C' and C' -> C.
struct ComplexBasisChange {
  Complex complex;
  ChainMap to_original;
};
ComplexBasisChange change_basis(const Complex& c, const std::vector<std::vector<Matrix>>& per_degree);

// ---------------------------------------------------------------------------
// Hom complexes of vector spaces.

struct VecComplex {
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;  // diffs[k]: degree lo+k -> lo+k-1 (diffs[0] maps to zero)
  std::size_t homology_dim(int n) const;
};

// Hom(X, Y)_n = product over i of Hom(X_i, Y_{i+n}).
struct HomDegree {
  int n = 0;
  std::vector<int> source_degrees;
  std::vector<HomSpace> spaces;
  std::vector<std::size_t> offsets;
  std::size_t dim = 0;
};
HomDegree hom_degree(const Complex& x, const Complex& y, int n);
GradedMap element(const Complex& x, const Complex& y, const HomDegree& h, const std::vector<Scalar>& coeffs);
std::vector<Scalar> coordinates(const HomDegree& h, const GradedMap& g);
// Matrix of d(f) = d f - (-1)^n f d from degree n to degree n - 1.
Matrix hom_differential(const Complex& x, const Complex& y, const HomDegree& from, const HomDegree& to);

struct HomComplex {
  std::vector<HomDegree> degrees;
  VecComplex vec;
};
HomComplex hom_complex(const Complex& x, const Complex& y);

// s of degree 1 with ds + sd = f - g, when one exists.
std::optional<GradedMap> find_homotopy(const ChainMap& f, const ChainMap& g);
std::optional<GradedMap> find_contraction(const Complex& x);
bool is_contraction(const GradedMap& s);

// X isomorphic to Delta(U) with U_n = Z_{n-1} X.
struct ContractibleSplit {
  DeltaComplex delta;
  std::vector<Subobject> cycles;  // Z_n X by degree of X
  ChainMap p;                     // Delta(U) -> X, [s 1]
  ChainMap i;                     // X -> Delta(U), [d; ds]
};
ContractibleSplit split_contractible(const Complex& x, const GradedMap& s);

// First violation of d(L_{<=s} X_n) <= L_{<s} X_{n-1}.
struct ThinWitness {
  std::size_t order = 0;
  int degree = 0;
  std::size_t object = 0;
  std::vector<Scalar> image;  // d of a vector of L_{<=s}, outside L_{<s}
};
// Terms must be projective.
std::optional<ThinWitness> thin_violation(const Complex& c);
inline bool is_thin(const Complex& c) { return !thin_violation(c).has_value(); }
bool is_degreewise_projective(const Complex& c);

}  // namespace glrep
