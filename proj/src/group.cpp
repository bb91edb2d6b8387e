#include "glrep/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "glrep/error.hpp"

namespace glrep {

Group Group::from_table(std::string label, const std::vector<std::vector<int>>& table) {
  const std::size_t n = table.size();
  if (n == 0) precondition_failed("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) precondition_failed("group table is not square");
    for (int v : row) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) precondition_failed("group table entry out of range");
    }
  }
  auto at = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(table[a][b]); };
  std::size_t e = n;
  for (std::size_t a = 0; a < n && e == n; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b) ok = at(a, b) == b && at(b, a) == b;
    if (ok) e = a;
  }
  if (e == n) precondition_failed("group table has no identity");
  for (std::size_t a = 0; a < n; ++a) {
    bool has_inv = false;
    for (std::size_t b = 0; b < n && !has_inv; ++b) has_inv = at(a, b) == e && at(b, a) == e;
    if (!has_inv) precondition_failed("group table: element without inverse");
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (at(at(a, b), c) != at(a, at(b, c))) precondition_failed("group table is not associative");
      }
    }
  }
  // Relabel so that the identity is element 0.
  std::vector<std::size_t> perm(n);  // new -> old
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::swap(perm[0], perm[e]);
  std::vector<std::size_t> back(n);
  for (std::size_t i = 0; i < n; ++i) back[perm[i]] = i;

  Group g;
  g.label_ = std::move(label);
  g.n_ = n;
  g.table_.resize(n * n);
  g.inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g.table_[a * n + b] = static_cast<int>(back[at(perm[a], perm[b])]);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.table_[a * n + b] == 0) g.inv_[a] = static_cast<int>(b);
    }
  }
  return g;
}

Group Group::cyclic(int n) {
  if (n < 1) precondition_failed("cyclic group of order < 1");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return from_table(n == 1 ? "1" : "C" + std::to_string(n), t);
}

Group Group::elementary_abelian(int p, int rank) {
  if (p < 2 || rank < 0) precondition_failed("elementary abelian group needs p >= 2 and rank >= 0");
  int n = 1;
  for (int i = 0; i < rank; ++i) n *= p;
  if (n > 4096) precondition_failed("elementary abelian group too large");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int r = 0, place = 1, x = a, y = b;
      for (int i = 0; i < rank; ++i) {
        r += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
      }
      t[a][b] = r;
    }
  }
  std::string label = rank == 0 ? "1" : rank == 1 ? "C" + std::to_string(p) : "C" + std::to_string(p) + "^" + std::to_string(rank);
  return from_table(label, t);
}

Group Group::product(const Group& a, const Group& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x) {
    for (std::size_t y = 0; y < na * nb; ++y) {
      int ga = a.mul(static_cast<int>(x / nb), static_cast<int>(y / nb));
      int gb = b.mul(static_cast<int>(x % nb), static_cast<int>(y % nb));
      t[x][y] = ga * static_cast<int>(nb) + gb;
    }
  }
  return from_table(a.label() + "x" + b.label(), t);
}

Group Group::dihedral(int order) {
  if (order < 2 || order % 2 != 0) precondition_failed("dihedral group order must be even and >= 2");
  const int m = order / 2;
  // Element r^i s^j encoded as i + m j.
  auto mul = [m](int x, int y) {
    int i1 = x % m, j1 = x / m, i2 = y % m, j2 = y / m;
    int i = j1 ? (i1 - i2 + m) % m : (i1 + i2) % m;
    return i + m * ((j1 + j2) % 2);
  };
  std::vector<std::vector<int>> t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) t[x][y] = mul(x, y);
  }
  return from_table("D" + std::to_string(order), t);
}

Group Group::symmetric(int degree) {
  if (degree < 1 || degree > 5) precondition_failed("symmetric group degree must be in 1..5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(perms.size(), std::vector<int>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(static_cast<std::size_t>(degree));
      for (int k = 0; k < degree; ++k) c[k] = perms[a][perms[b][k]];
      t[a][b] = index[c];
    }
  }
  return from_table(degree == 1 ? "1" : "S" + std::to_string(degree), t);
}

Group Group::from_name(const std::string& name) {
  auto bad = [&]() -> Group { precondition_failed("unknown group name '" + name + "'"); };
  if (name.empty()) return bad();
  auto xpos = name.find('x');
  if (xpos != std::string::npos) {
    return product(from_name(name.substr(0, xpos)), from_name(name.substr(xpos + 1)));
  }
  if (name == "1") return cyclic(1);
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), ::isdigit)) bad();
    return std::stoi(s);
  };
  const char kind = name[0];
  std::string rest = name.substr(1);
  if (kind == 'C') {
    auto caret = rest.find('^');
    if (caret == std::string::npos) return cyclic(parse_int(rest));
    return elementary_abelian(parse_int(rest.substr(0, caret)), parse_int(rest.substr(caret + 1)));
  }
  if (kind == 'D') return dihedral(parse_int(rest));
  if (kind == 'S') return symmetric(parse_int(rest));
  return bad();
}

int Group::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<std::vector<int>> Group::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) t[a][b] = table_[a * n_ + b];
  }
  return t;
}

bool is_homomorphism(const Group& source, const Group& target, const Hom& f) {
  if (f.size() != source.order()) return false;
  for (int v : f) {
    if (v < 0 || static_cast<std::size_t>(v) >= target.order()) return false;
  }
  const int n = static_cast<int>(source.order());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (f[source.mul(a, b)] != target.mul(f[a], f[b])) return false;
    }
  }
  return true;
}

Hom compose(const Hom& second, const Hom& first) {
  Hom r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = second[static_cast<std::size_t>(first[i])];
  return r;
}

Hom identity_hom(const Group& g) {
  Hom h(g.order());
  std::iota(h.begin(), h.end(), 0);
  return h;
}

Hom post_conjugate(const Group& target, int t, const Hom& f) {
  Hom r(f.size());
  const int ti = target.inv(t);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = target.mul(target.mul(t, f[i]), ti);
  return r;
}

bool is_surjective(const Group& target, const Hom& f) {
  std::vector<char> hit(target.order(), 0);
  std::size_t count = 0;
  for (int v : f) {
    if (!hit[static_cast<std::size_t>(v)]) {
      hit[static_cast<std::size_t>(v)] = 1;
      ++count;
    }
  }
  return count == target.order();
}

std::vector<int> subgroup_generated(const Group& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> queue{0};
  in[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (int s : gens) {
      int y = g.mul(queue[q], s);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<int> greedy_generators(const Group& g) {
  std::vector<int> gens;
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  for (int x = 1; x < static_cast<int>(g.order()); ++x) {
    if (in[static_cast<std::size_t>(x)]) continue;
    gens.push_back(x);
    for (int y : subgroup_generated(g, gens)) in[static_cast<std::size_t>(y)] = 1;
  }
  return gens;
}

namespace {

// Calls visit(f) for every surjective homomorphism until it returns false.
void backtrack_epis(const Group& source, const Group& target, const std::function<bool(const Hom&)>& visit) {
  const std::vector<int> gens = greedy_generators(source);
  std::vector<int> gen_images(gens.size(), -1);
  std::vector<int> gen_orders;
  for (int x : gens) gen_orders.push_back(source.element_order(x));
  std::vector<int> target_orders;
  for (int y = 0; y < static_cast<int>(target.order()); ++y) target_orders.push_back(target.element_order(y));
  bool stop = false;

  // Extends the assignment of the first k generators to the subgroup they
  // generate; false if it is not a well-defined homomorphism.
  auto extend = [&](std::size_t k, Hom& phi) {
    std::fill(phi.begin(), phi.end(), -1);
    phi[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int x = queue[q];
      for (std::size_t i = 0; i < k; ++i) {
        int y = source.mul(x, gens[i]);
        int img = target.mul(phi[static_cast<std::size_t>(x)], gen_images[i]);
        int& slot = phi[static_cast<std::size_t>(y)];
        if (slot < 0) {
          slot = img;
          queue.push_back(y);
        } else if (slot != img) {
          return false;
        }
      }
    }
    return true;
  };

  Hom phi(source.order(), -1);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (stop) return;
    if (k == gens.size()) {
      if (!extend(k, phi)) return;
      if (is_surjective(target, phi) && !visit(phi)) stop = true;
      return;
    }
    for (int h = 0; h < static_cast<int>(target.order()) && !stop; ++h) {
      if (gen_orders[k] % target_orders[static_cast<std::size_t>(h)] != 0) continue;
      gen_images[k] = h;
      if (extend(k + 1, phi)) rec(k + 1);
    }
    gen_images[k] = -1;
  };
  rec(0);
}

}  // namespace

std::vector<Hom> enumerate_epis(const Group& source, const Group& target, EpiSearch method) {
  std::vector<Hom> out;
  if (target.order() > source.order() || source.order() % target.order() != 0) return out;
  if (method == EpiSearch::kExhaustive) {
    const std::size_t n = source.order(), m = target.order();
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(m);
    if (total > 5e7) precondition_failed("exhaustive epimorphism search is too large");
    Hom f(n, 0);
    while (true) {
      if (f[0] == 0 && is_homomorphism(source, target, f) && is_surjective(target, f)) out.push_back(f);
      std::size_t i = 0;
      while (i < n && ++f[i] == static_cast<int>(m)) f[i++] = 0;
      if (i == n) break;
    }
  } else {
    backtrack_epis(source, target, [&](const Hom& f) {
      out.push_back(f);
      return true;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool exists_epi(const Group& source, const Group& target) {
  if (target.order() > source.order() || source.order() % target.order() != 0) return false;
  bool found = false;
  backtrack_epis(source, target, [&](const Hom&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<int> kernel(const Group& source, const Hom& f) {
  std::vector<int> k;
  for (int x = 0; x < static_cast<int>(source.order()); ++x) {
    if (f[static_cast<std::size_t>(x)] == 0) k.push_back(x);
  }
  return k;
}

bool is_normal_subgroup(const Group& g, const std::vector<int>& subset) {
  std::vector<char> in(g.order(), 0);
  for (int x : subset) {
    if (x < 0 || static_cast<std::size_t>(x) >= g.order()) return false;
    in[static_cast<std::size_t>(x)] = 1;
  }
  if (!in[0]) return false;
  for (int a : subset) {
    for (int b : subset) {
      if (!in[static_cast<std::size_t>(g.mul(a, g.inv(b)))]) return false;
    }
  }
  for (int t = 0; t < static_cast<int>(g.order()); ++t) {
    for (int a : subset) {
      if (!in[static_cast<std::size_t>(g.mul(g.mul(t, a), g.inv(t)))]) return false;
    }
  }
  return true;
}

Quotient quotient_group(const Group& g, const std::vector<int>& normal) {
  if (!is_normal_subgroup(g, normal)) precondition_failed("quotient_group: not a normal subgroup");
  const std::size_t n = g.order();
  // Cosets are indexed by their least element, in increasing order.
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < static_cast<int>(n); ++x) {
    if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int k : normal) coset_of[static_cast<std::size_t>(g.mul(x, k))] = idx;
  }
  std::vector<std::vector<int>> t(reps.size(), std::vector<int>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = 0; b < reps.size(); ++b) t[a][b] = coset_of[static_cast<std::size_t>(g.mul(reps[a], reps[b]))];
  }
  Quotient q{Group::from_table(g.label() + "/N", t), Hom(coset_of.begin(), coset_of.end())};
  return q;
}

bool is_isomorphic(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  std::vector<int> oa, ob;
  for (int x = 0; x < static_cast<int>(a.order()); ++x) oa.push_back(a.element_order(x));
  for (int x = 0; x < static_cast<int>(b.order()); ++x) ob.push_back(b.element_order(x));
  std::sort(oa.begin(), oa.end());
  std::sort(ob.begin(), ob.end());
  if (oa != ob) return false;
  return exists_epi(a, b);
}

std::vector<std::vector<int>> normal_with_quotient(const Group& t, const Group& m) {
  std::set<std::vector<int>> kernels;
  for (const auto& f : enumerate_epis(t, m)) kernels.insert(kernel(t, f));
  return {kernels.begin(), kernels.end()};
}

std::vector<Hom> automorphisms(const Group& g) { return enumerate_epis(g, g); }

std::vector<int> center(const Group& g) {
  std::vector<int> z;
  for (int a = 0; a < static_cast<int>(g.order()); ++a) {
    bool central = true;
    for (int b = 0; b < static_cast<int>(g.order()) && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

std::size_t outer_order(const Group& g) {
  std::size_t inner = g.order() / center(g).size();
  return automorphisms(g).size() / inner;
}

Hom class_representative(const Group& target, const Hom& f) {
  Hom best = f;
  for (int t = 1; t < static_cast<int>(target.order()); ++t) {
    Hom c = post_conjugate(target, t, f);
    if (c < best) best = std::move(c);
  }
  return best;
}

std::vector<std::vector<Hom>> surj_classes(const Group& source, const Group& target) {
  std::map<Hom, std::set<Hom>> classes;
  for (const auto& f : enumerate_epis(source, target)) {
    Hom rep = class_representative(target, f);
    classes[rep].insert(f);
  }
  std::vector<std::vector<Hom>> out;
  for (auto& [rep, members] : classes) out.emplace_back(members.begin(), members.end());
  return out;
}

}  // namespace glrep
