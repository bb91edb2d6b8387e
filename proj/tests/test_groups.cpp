#include <algorithm>
#include <set>

#include "doctest.h"
#include "glrep/group.hpp"

using namespace glrep;

namespace {

// Every set map source -> target checked against the multiplication tables.
std::vector<Hom> oracle_epis(const Group& s, const Group& t) {
  std::vector<Hom> out;
  const std::size_t n = s.order(), m = t.order();
  Hom f(n, 0);
  while (true) {
    bool hom = true;
    for (int a = 0; a < static_cast<int>(n) && hom; ++a) {
      for (int b = 0; b < static_cast<int>(n) && hom; ++b) hom = f[s.mul(a, b)] == t.mul(f[a], f[b]);
    }
    std::set<int> image(f.begin(), f.end());
    if (hom && image.size() == m) out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == static_cast<int>(m)) f[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Normal subgroups with the given quotient, from all subsets of the group.
std::vector<std::vector<int>> oracle_normal_with_quotient(const Group& g, const Group& m) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(g.order());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    std::vector<int> sub;
    for (int x = 0; x < n; ++x) {
      if (mask & (1u << x)) sub.push_back(x);
    }
    if (sub.size() * m.order() != g.order()) continue;
    if (!is_normal_subgroup(g, sub)) continue;
    if (is_isomorphic(quotient_group(g, sub).group, m)) out.push_back(sub);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Group> small_groups() {
  return {Group::cyclic(1), Group::cyclic(2), Group::cyclic(3), Group::cyclic(4), Group::elementary_abelian(2, 2),
          Group::cyclic(6), Group::symmetric(3), Group::cyclic(8), Group::dihedral(8)};
}

}  // namespace

TEST_CASE("constructed groups are valid and labelled") {
  CHECK(Group::from_name("C4").order() == 4);
  CHECK(Group::from_name("C2^2").label() == "C2^2");
  CHECK(Group::from_name("C2xC3").order() == 6);
  CHECK(Group::from_name("S3").order() == 6);
  CHECK(Group::from_name("D8").order() == 8);
  CHECK_THROWS(Group::from_name("Q"));
  CHECK_THROWS(Group::from_table("bad", {{0, 1}, {1, 1}}));
  // A table whose identity is not element 0 is relabelled.
  Group g = Group::from_table("C2", {{1, 0}, {0, 1}});
  CHECK(g.mul(0, 1) == 1);
  CHECK(g.mul(1, 1) == 0);
}

TEST_CASE("backtracking epimorphism search matches brute force") {
  auto groups = small_groups();
  for (const auto& s : groups) {
    for (const auto& t : groups) {
      if (s.order() > 6 && t.order() > 2) continue;  // keep the brute force small
      auto fast = enumerate_epis(s, t);
      CHECK_MESSAGE(fast == oracle_epis(s, t), s.label() << " -> " << t.label());
      if (s.order() <= 6) CHECK(enumerate_epis(s, t, EpiSearch::kExhaustive) == fast);
    }
  }
}

TEST_CASE("known surjection counts") {
  Group c2 = Group::cyclic(2), c4 = Group::cyclic(4), v4 = Group::elementary_abelian(2, 2);
  CHECK(enumerate_epis(c4, c2).size() == 1);
  CHECK(enumerate_epis(v4, c2).size() == 3);
  CHECK(surj_classes(v4, v4).size() == 6);
  CHECK(outer_order(c4) == 2);
  CHECK(outer_order(v4) == 6);
  CHECK(outer_order(Group::symmetric(3)) == 1);
  CHECK(surj_classes(Group::symmetric(3), c2).size() == 1);
  // S3 -> S3: six automorphisms, all inner.
  CHECK(surj_classes(Group::symmetric(3), Group::symmetric(3)).size() == 1);
}

TEST_CASE("normal subgroups with prescribed quotient") {
  auto groups = small_groups();
  for (const auto& g : groups) {
    if (g.order() > 8) continue;
    for (const auto& m : groups) {
      if (g.order() % m.order() != 0) continue;
      CHECK_MESSAGE(normal_with_quotient(g, m) == oracle_normal_with_quotient(g, m), g.label() << " / " << m.label());
    }
  }
}

TEST_CASE("quotients and isomorphism") {
  Group c6 = Group::cyclic(6);
  Quotient q = quotient_group(c6, {0, 3});
  CHECK(is_isomorphic(q.group, Group::cyclic(3)));
  CHECK(is_homomorphism(c6, q.group, q.projection));
  CHECK(is_isomorphic(Group::from_name("C2xC3"), c6));
  CHECK_FALSE(is_isomorphic(Group::symmetric(3), c6));
  CHECK_FALSE(is_isomorphic(Group::cyclic(4), Group::elementary_abelian(2, 2)));
  CHECK_THROWS(quotient_group(Group::symmetric(3), {0, 1}));
}

TEST_CASE("class representatives are least and conjugation invariant") {
  Group s3 = Group::symmetric(3);
  for (const auto& cls : surj_classes(s3, s3)) {
    for (const auto& f : cls) {
      CHECK(class_representative(s3, f) == cls.front());
      for (int t = 0; t < 6; ++t) CHECK(class_representative(s3, post_conjugate(s3, t, f)) == cls.front());
    }
  }
}
