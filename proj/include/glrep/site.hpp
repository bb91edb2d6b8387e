#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glrep/group.hpp"

namespace glrep {

// A morphism of the site: a class of surjective homomorphisms modulo
// post-composition with inner automorphisms of the target.
struct MorphismClass {
  std::size_t source = 0;
  std::size_t target = 0;
  Hom representative;       // lexicographically least member
  std::size_t members = 0;  // size of the conjugacy class
};

// How a class of Hom(T, G) sits in its orbit under Out(G): the class equals
// gamma composed with the chosen representative of orbit `orbit`.
struct OrbitPosition {
  std::size_t orbit = 0;
  std::size_t gamma = 0;  // an automorphism class of G
};

struct OrbitData {
  std::vector<std::size_t> reps;         // least class id of each orbit, increasing
  std::vector<OrbitPosition> positions;  // indexed like hom(T, G)
};

// A finite set of pairwise non-isomorphic groups with the surjection classes
// between them.  Objects are ordered by group order, then label.  Each
// morphism class has a global id; ids are grouped by (source, target) and
// within a hom set ordered by representative.
//
// The Site is an immutable value with cheap copies.
class Site {
 public:
  Site() = default;
  // Throws PreconditionError when two of the groups are isomorphic.
  static Site build(std::vector<Group> groups);

  std::size_t size() const { return d_->groups.size(); }
  const Group& object(std::size_t i) const { return d_->groups.at(i); }
  const std::vector<Group>& objects() const { return d_->groups; }
  std::size_t order(std::size_t i) const { return d_->groups.at(i).order(); }
  std::optional<std::size_t> find_label(const std::string& label) const;
  std::optional<std::size_t> find_isomorphic(const Group& g) const;
  // Object index by label or by isomorphism type of a group name.
  std::size_t resolve(const std::string& name) const;

  std::size_t class_count() const { return d_->classes.size(); }
  const MorphismClass& morphism(std::size_t id) const { return d_->classes.at(id); }
  const std::vector<std::size_t>& hom(std::size_t source, std::size_t target) const {
    return d_->hom.at(source * size() + target);
  }
  // Position of a class inside its hom set.
  std::size_t position(std::size_t id) const { return d_->position.at(id); }
  std::size_t identity(std::size_t object) const { return d_->identity.at(object); }
  // beta after alpha; requires target(alpha) == source(beta).
  std::size_t compose(std::size_t beta, std::size_t alpha) const;
  std::optional<std::size_t> try_compose(std::size_t beta, std::size_t alpha) const;
  const std::vector<std::size_t>& automorphisms(std::size_t object) const { return hom(object, object); }
  std::size_t inverse(std::size_t automorphism) const { return d_->inverse.at(automorphism); }
  bool is_iso(std::size_t id) const { return morphism(id).source == morphism(id).target; }

  // Orbits of Out(G) acting on Hom(T, G) by post-composition.
  const OrbitData& orbits(std::size_t t, std::size_t g) const { return d_->orbits.at(t * size() + g); }

  // Classes whose naturality squares imply all others: a generating set of
  // each automorphism group plus one representative of every double orbit
  // of non-invertible classes that do not factor through a third object.
  const std::vector<std::size_t>& generating_classes() const { return d_->generating; }
  const std::vector<std::size_t>& automorphism_generators(std::size_t object) const {
    return d_->aut_generators.at(object);
  }

  // Distinct group orders, increasing.
  const std::vector<std::size_t>& orders() const { return d_->orders; }
  std::optional<std::size_t> unit_object() const;
  const std::string& hash() const { return d_->hash; }
  bool same_as(const Site& o) const { return d_ == o.d_ || d_->hash == o.d_->hash; }
  bool valid() const { return d_ != nullptr; }

  // Catalogue of named sites used by the CLI and the test suites.
  static Site preset(const std::string& name);
  static std::vector<std::string> preset_names();
  // Either a preset name or a comma separated list of group names.
  static Site from_spec(const std::string& spec);

 private:
  struct Data {
    std::vector<Group> groups;
    std::vector<MorphismClass> classes;
    std::vector<std::vector<std::size_t>> hom;
    std::vector<std::size_t> position;
    std::vector<std::size_t> identity;
    std::vector<long> comp;  // class x class -> class or -1
    std::vector<std::size_t> inverse;
    std::vector<OrbitData> orbits;
    std::vector<std::size_t> generating;
    std::vector<std::vector<std::size_t>> aut_generators;
    std::vector<std::size_t> orders;
    std::string hash;
  };
  std::shared_ptr<const Data> d_;
};

// A witness that the site is not widely closed: a group G with two kernels
// N0, N1 of site surjections whose joint quotient G/(N0 n N1) is missing.
struct WideClosureWitness {
  std::size_t object = 0;
  std::size_t first = 0;   // class ids of the two surjections
  std::size_t second = 0;
  std::vector<int> intersection;
  std::size_t quotient_order = 0;
};

std::optional<WideClosureWitness> check_widely_closed(const Site& site);

// Objects all of whose outgoing morphisms are isomorphisms.
std::vector<std::size_t> minimal_objects(const Site& site);

struct SiteClassification {
  bool groupoid = false;
  std::vector<std::size_t> minimal;
  // Per object: number of normal subgroups with quotient isomorphic to some
  // minimal object.
  std::vector<std::size_t> minimal_quotient_counts;
  // True when every count equals one, the criterion for the unit to be projective.
  bool unit_projective_predicted = false;
};

SiteClassification classify_site(const Site& site);

}  // namespace glrep
