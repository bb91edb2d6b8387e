#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "glrep/matrix.hpp"
#include "glrep/site.hpp"

namespace glrep {

// Global validation switch for constructions that are correct by design
// (direct sums, subobjects, induced maps).  Objects built from external data
// are always validated.  Tests turn this on to re-check every construction.
bool validation_enabled();
void set_validation(bool on);

// A contravariant functor from the site to finite-dimensional Q-vector
// spaces.  For a class a: H -> G the matrix action(a) is the induced map
// X(G) -> X(H), of shape dim(H) x dim(G).  Immutable value with cheap copies.
class RepObject {
 public:
  RepObject() = default;
  // Checks shapes, identities and (beta alpha)^* = alpha^* beta^*.
  static RepObject create(const Site& site, std::vector<std::size_t> dims, std::vector<Matrix> actions);
  // Same, but the functoriality check only runs when validation is enabled.
  static RepObject assemble(const Site& site, std::vector<std::size_t> dims, std::vector<Matrix> actions);
  static RepObject zero(const Site& site);

  const Site& site() const { return d_->site; }
  std::size_t dim(std::size_t object) const { return d_->dims.at(object); }
  const std::vector<std::size_t>& dims() const { return d_->dims; }
  std::size_t total_dim() const;
  const Matrix& action(std::size_t class_id) const { return d_->actions.at(class_id); }
  bool is_zero() const;
  bool valid() const { return d_ != nullptr; }
  // Empty optional when functorial, otherwise a description of the failure.
  std::optional<std::string> functoriality_failure() const;

  friend bool operator==(const RepObject& a, const RepObject& b);

 private:
  struct Data {
    Site site;
    std::vector<std::size_t> dims;
    std::vector<Matrix> actions;
  };
  std::shared_ptr<const Data> d_;
};

// A natural transformation, one matrix per object of the site.
class RepMap {
 public:
  RepMap() = default;
  static RepMap create(const RepObject& source, const RepObject& target, std::vector<Matrix> comps);
  static RepMap assemble(const RepObject& source, const RepObject& target, std::vector<Matrix> comps);
  static RepMap zero(const RepObject& source, const RepObject& target);
  static RepMap identity(const RepObject& x);

  const RepObject& source() const { return source_; }
  const RepObject& target() const { return target_; }
  const Matrix& at(std::size_t object) const { return comps_.at(object); }
  const std::vector<Matrix>& comps() const { return comps_; }
  bool is_zero() const;
  bool is_identity() const;
  std::optional<std::string> naturality_failure() const;
  // Pointwise properties.
  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const;
  // Pointwise inverse of an isomorphism.
  RepMap inverse() const;

  RepMap operator-() const;
  RepMap& operator+=(const RepMap& o);
  RepMap& operator-=(const RepMap& o);
  RepMap& operator*=(const Scalar& s);
  friend RepMap operator+(RepMap a, const RepMap& b) { return a += b; }
  friend RepMap operator-(RepMap a, const RepMap& b) { return a -= b; }
  friend RepMap operator*(const Scalar& s, RepMap a) { return a *= s; }
  friend bool operator==(const RepMap& a, const RepMap& b);

 private:
  RepObject source_, target_;
  std::vector<Matrix> comps_;
};

// g after f.
RepMap compose(const RepMap& g, const RepMap& f);

// ---------------------------------------------------------------------------
// Representations of a single automorphism group.

// A representation of Out(G) in the contravariant convention of RepObject:
// matrices indexed by position in hom(G, G), with (g h)^* = h^* g^*.
struct OutRep {
  std::size_t object = 0;
  std::size_t dim = 0;
  std::vector<Matrix> mats;
};

OutRep restrict_to(const RepObject& x, std::size_t object);
OutRep trivial_out_rep(const Site& site, std::size_t object, std::size_t dim = 1);
OutRep sub_out_rep(const Site& site, const OutRep& v, const SpanBasis& invariant_subspace);
// (1/|Out|) sum over g of (g^-1)^*_W phi g^*_V, an equivariant map V -> W.
Matrix average_equivariant(const Site& site, const OutRep& v, const OutRep& w, const Matrix& phi);
bool is_equivariant(const Site& site, const OutRep& v, const OutRep& w, const Matrix& phi);

// ---------------------------------------------------------------------------
// Generators.

RepObject unit_object(const Site& site);
// Representable object T -> Q[Hom(T, G)].
RepObject make_eG(const Site& site, std::size_t g);
// One copy of V per Out(G)-orbit of Hom(T, G).
RepObject make_eGV(const Site& site, const OutRep& v);
// T -> Q[Hom(T, G) / Out(G)].
RepObject make_cG(const Site& site, std::size_t g);
// e_H -> e_G induced by a class a: H -> G, [b] -> [a b].
RepMap e_morphism(const Site& site, std::size_t a);
// e_G -> X sending [b] to b^*(x) for x in X(G).
RepMap map_from_eG(const RepObject& eg, std::size_t g, const RepObject& x, const std::vector<Scalar>& element);
// e_{G,V} -> Y from an equivariant phi: V -> Y(G).
RepMap map_from_eGV(const RepObject& egv, const OutRep& v, const RepObject& y, const Matrix& phi);
// e_{G,V} -> e_{G,W} from an equivariant psi: V -> W, orbit slot by slot.
RepMap eGV_map(const RepObject& egv, const RepObject& egw, const OutRep& v, const OutRep& w, const Matrix& psi);

// ---------------------------------------------------------------------------
// Direct sums.

struct SumObject {
  RepObject object;
  std::vector<RepObject> parts;
  std::vector<std::vector<std::size_t>> offsets;  // offsets[part][object]
};

SumObject make_sum(const Site& site, std::vector<RepObject> parts);
RepMap inject(const SumObject& s, std::size_t part);
RepMap project(const SumObject& s, std::size_t part);

struct BlockEntry {
  std::size_t row = 0;  // target part
  std::size_t col = 0;  // source part
  RepMap map;
};
RepMap block_map(const SumObject& target, const SumObject& source, const std::vector<BlockEntry>& entries);
// Block (row, col) of a map between sums.
RepMap block_of(const RepMap& f, const SumObject& target, std::size_t row, const SumObject& source, std::size_t col);

// ---------------------------------------------------------------------------
// Subobjects and quotients with canonical bases.

struct Subobject {
  RepObject object;
  RepMap inclusion;
  std::vector<SpanBasis> bases;  // canonical basis of the subspace at each object
};

struct QuotientObject {
  RepObject object;
  RepMap projection;
  std::vector<Matrix> sections;  // linear (not natural) right inverses of the projection
};

// Subobject spanned pointwise by the given columns; the spans must be stable
// under the action.
Subobject make_subobject(const RepObject& x, const std::vector<Matrix>& generators);
QuotientObject make_quotient(const Subobject& sub);
// Coordinates of a natural map into X factoring through the subobject.
RepMap factor_through(const Subobject& sub, const RepMap& f);

Subobject kernel(const RepMap& f);
Subobject image(const RepMap& f);
QuotientObject cokernel(const RepMap& f);

// Subobject generated by the images of the given vectors of X(G) under all b^*.
Subobject generated_subobject(const RepObject& x, const std::vector<Matrix>& seeds_per_object);

// L_{<=s}: span of all b^*(X(G)) with |G| <= s.
Subobject filtration_leq(const RepObject& x, std::size_t s);
struct Layer {
  Subobject leq;          // L_{<=s} X
  Subobject lt_in_leq;    // L_{<s} X inside L_{<=s} X
  QuotientObject layer;   // L_s X = L_{<=s} / L_{<s}
};
Layer filtration_layer(const RepObject& x, std::size_t s);
bool is_s_pure(const RepObject& x, std::size_t s);
// Projective iff every layer is pure.
bool is_projective_by_layers(const RepObject& x);

// ---------------------------------------------------------------------------
// Counit and projectivity.

struct Counit {
  SumObject p0;                  // sum of e_{G, X(G)} over objects with X(G) != 0
  std::vector<std::size_t> groups;  // object of each summand
  std::vector<OutRep> reps;         // X(G) as Out(G)-representation for each summand
  RepMap epsilon;                // P0(X) -> X
};
Counit counit_P0(const RepObject& x);
// Map between P0 constructions induced by f: X -> Y.
RepMap P0_map(const RepMap& f, const Counit& source, const Counit& target);
// Natural section s with epsilon s = 1, if X is projective.
std::optional<RepMap> projectivity_section(const RepObject& x);

// ---------------------------------------------------------------------------
// Tensor products and Hom spaces.

RepObject tensor(const RepObject& x, const RepObject& y);
RepMap tensor(const RepMap& f, const RepMap& g);

class HomSpace {
 public:
  HomSpace() = default;
  HomSpace(RepObject source, RepObject target, std::vector<RepMap> basis, std::vector<std::size_t> free_positions,
           std::vector<std::size_t> offsets);
  const RepObject& source() const { return source_; }
  const RepObject& target() const { return target_; }
  const std::vector<RepMap>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  // Coordinates of a natural map in the basis.
  std::vector<Scalar> coordinates(const RepMap& f) const;
  RepMap combination(const std::vector<Scalar>& coeffs) const;

 private:
  RepObject source_, target_;
  std::vector<RepMap> basis_;
  std::vector<std::size_t> free_positions_;
  std::vector<std::size_t> offsets_;
};

HomSpace hom_space(const RepObject& x, const RepObject& y);
// Entries of all components, concatenated in object order.
std::vector<Scalar> flatten(const RepMap& f);

struct InternalHom {
  RepObject object;                // G -> Hom(e_G (x) X, Y)
  std::vector<RepObject> eg;       // e_G for each G
  std::vector<HomSpace> spaces;    // Hom(e_G (x) X, Y) for each G
};
InternalHom internal_hom(const RepObject& x, const RepObject& y);

// Generic scan for a natural isomorphism X -> Y.
std::optional<RepMap> find_isomorphism(const RepObject& x, const RepObject& y);

// An element x of X(G) with b^*(x) != 0 for every class b into G.
std::optional<std::vector<Scalar>> torsion_free_search(const RepObject& x, std::size_t g);

// Reindex X along pointwise basis changes: returns X' and the iso X' -> X
// whose component at G is basis_change[G].
struct BasisChange {
  RepObject object;
  RepMap to_original;
};
BasisChange change_basis(const RepObject& x, const std::vector<Matrix>& basis_change);

}  // namespace glrep
