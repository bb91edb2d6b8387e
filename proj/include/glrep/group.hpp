#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace glrep {

// Finite group given by its multiplication table.  Elements are 0..n-1 and
// element 0 is always the identity.
class Group {
 public:
  Group() = default;

  // Validates closure, associativity, identity and inverses.  If the identity
  // is not element 0 the elements are relabelled so that it is.
  static Group from_table(std::string label, const std::vector<std::vector<int>>& table);
  static Group cyclic(int n);
  static Group elementary_abelian(int p, int rank);
  static Group product(const Group& a, const Group& b);
  static Group dihedral(int order);  // order 2m, symmetries of an m-gon
  static Group symmetric(int degree);

  // Accepts "1", "Cn", "Cp^r", "Dn" (order n), "Sn" and products "AxB".
  static Group from_name(const std::string& name);

  const std::string& label() const noexcept { return label_; }
  std::size_t order() const noexcept { return n_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int element_order(int a) const;
  std::vector<std::vector<int>> table() const;
  bool same_table(const Group& o) const { return n_ == o.n_ && table_ == o.table_; }

 private:
  std::string label_;
  std::size_t n_ = 0;
  std::vector<int> table_;
  std::vector<int> inv_;
};

// A homomorphism, or any set map, stored as the list of images of 0..n-1.
using Hom = std::vector<int>;

bool is_homomorphism(const Group& source, const Group& target, const Hom& f);
// second after first.
Hom compose(const Hom& second, const Hom& first);
Hom identity_hom(const Group& g);
// x -> t f(x) t^-1
Hom post_conjugate(const Group& target, int t, const Hom& f);
bool is_surjective(const Group& target, const Hom& f);

// Smallest generating sequence found greedily in element order.
std::vector<int> greedy_generators(const Group& g);

enum class EpiSearch {
  kBacktrack,   // extend along a generating sequence, pruning conflicts
  kExhaustive,  // test every set map; only feasible for tiny groups
};

// All surjective homomorphisms source -> target in lexicographic order of images.
std::vector<Hom> enumerate_epis(const Group& source, const Group& target, EpiSearch method = EpiSearch::kBacktrack);
bool exists_epi(const Group& source, const Group& target);

std::vector<int> kernel(const Group& source, const Hom& f);
std::vector<int> subgroup_generated(const Group& g, const std::vector<int>& gens);
bool is_normal_subgroup(const Group& g, const std::vector<int>& subset);

struct Quotient {
  Group group;
  Hom projection;
};
Quotient quotient_group(const Group& g, const std::vector<int>& normal);

bool is_isomorphic(const Group& a, const Group& b);

// Normal subgroups N of t with t/N isomorphic to m, as sorted element lists.
std::vector<std::vector<int>> normal_with_quotient(const Group& t, const Group& m);

std::vector<Hom> automorphisms(const Group& g);
std::vector<int> center(const Group& g);
// |Aut(g)| / |Inn(g)|
std::size_t outer_order(const Group& g);

// Classes of surjections source -> target modulo post-composition with inner
// automorphisms of the target.  Each class is sorted; its first element is
// the lexicographically least representative.  Classes are ordered by
// representative.
std::vector<std::vector<Hom>> surj_classes(const Group& source, const Group& target);
// Canonical representative of the class of f.
Hom class_representative(const Group& target, const Hom& f);

}  // namespace glrep
