#include "glrep/site.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "glrep/error.hpp"

namespace glrep {

namespace {

std::string sha256_hex(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    internal_failure("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace

Site Site::build(std::vector<Group> groups) {
  if (groups.empty()) precondition_failed("a site needs at least one group");
  std::stable_sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    return std::make_tuple(a.order(), a.label()) < std::make_tuple(b.order(), b.label());
  });
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size() && groups[j].order() == groups[i].order(); ++j) {
      if (is_isomorphic(groups[i], groups[j])) {
        precondition_failed("site contains isomorphic groups " + groups[i].label() + " and " + groups[j].label());
      }
    }
  }
  auto data = std::make_shared<Data>();
  Data& d = *data;
  const std::size_t n = groups.size();
  d.groups = std::move(groups);
  d.hom.assign(n * n, {});

  std::map<std::tuple<std::size_t, std::size_t, Hom>, std::size_t> lookup;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      for (const auto& cls : surj_classes(d.groups[s], d.groups[t])) {
        std::size_t id = d.classes.size();
        d.classes.push_back(MorphismClass{s, t, cls.front(), cls.size()});
        d.position.push_back(d.hom[s * n + t].size());
        d.hom[s * n + t].push_back(id);
        lookup[{s, t, cls.front()}] = id;
      }
    }
  }
  const std::size_t c = d.classes.size();
  auto find_class = [&](std::size_t s, std::size_t t, const Hom& h) {
    auto it = lookup.find({s, t, class_representative(d.groups[t], h)});
    if (it == lookup.end()) internal_failure("composite surjection has no class");
    return it->second;
  };

  for (std::size_t o = 0; o < n; ++o) d.identity.push_back(find_class(o, o, identity_hom(d.groups[o])));

  d.comp.assign(c * c, -1);
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      if (d.classes[a].target != d.classes[b].source) continue;
      Hom h = glrep::compose(d.classes[b].representative, d.classes[a].representative);
      d.comp[b * c + a] = static_cast<long>(find_class(d.classes[a].source, d.classes[b].target, h));
    }
  }
  auto comp = [&](std::size_t b, std::size_t a) { return static_cast<std::size_t>(d.comp[b * c + a]); };

  // Category axioms, checked exhaustively.
  for (std::size_t a = 0; a < c; ++a) {
    const auto& ma = d.classes[a];
    if (comp(d.identity[ma.target], a) != a || comp(a, d.identity[ma.source]) != a) {
      internal_failure("identity law fails in site");
    }
  }
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t b : d.hom[d.classes[a].target * n + u]) {
        for (std::size_t w = 0; w < n; ++w) {
          for (std::size_t g : d.hom[u * n + w]) {
            if (comp(g, comp(b, a)) != comp(comp(g, b), a)) internal_failure("composition is not associative");
          }
        }
      }
    }
  }

  d.inverse.assign(c, 0);
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t a : d.hom[o * n + o]) {
      bool found = false;
      for (std::size_t b : d.hom[o * n + o]) {
        if (comp(b, a) == d.identity[o]) {
          d.inverse[a] = b;
          found = true;
        }
      }
      if (!found) internal_failure("automorphism class without inverse");
    }
  }

  d.orbits.assign(n * n, {});
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t g = 0; g < n; ++g) {
      const auto& hs = d.hom[t * n + g];
      const auto& out = d.hom[g * n + g];
      OrbitData od;
      od.positions.resize(hs.size());
      std::vector<char> done(hs.size(), 0);
      for (std::size_t i = 0; i < hs.size(); ++i) {
        if (done[i]) continue;
        const std::size_t rep = hs[i];  // least id in its orbit, since hs is increasing
        const std::size_t orbit = od.reps.size();
        od.reps.push_back(rep);
        for (std::size_t gamma : out) {
          std::size_t member = comp(gamma, rep);
          std::size_t pos = d.position[member];
          if (done[pos]) internal_failure("Out(G) does not act freely on Hom(T, G)");
          done[pos] = 1;
          od.positions[pos] = OrbitPosition{orbit, gamma};
        }
      }
      d.orbits[t * n + g] = std::move(od);
    }
  }

  d.aut_generators.assign(n, {});
  for (std::size_t o = 0; o < n; ++o) {
    std::set<std::size_t> closure{d.identity[o]};
    for (std::size_t a : d.hom[o * n + o]) {
      if (closure.count(a)) continue;
      d.aut_generators[o].push_back(a);
      std::vector<std::size_t> frontier(closure.begin(), closure.end());
      while (!frontier.empty()) {
        std::size_t x = frontier.back();
        frontier.pop_back();
        for (std::size_t gen : d.aut_generators[o]) {
          std::size_t y = comp(gen, x);
          if (closure.insert(y).second) frontier.push_back(y);
        }
      }
    }
    for (std::size_t a : d.aut_generators[o]) d.generating.push_back(a);
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t || d.hom[s * n + t].empty()) continue;
      std::set<std::size_t> composite;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == s || k == t) continue;
        for (std::size_t g1 : d.hom[s * n + k]) {
          for (std::size_t b1 : d.hom[k * n + t]) composite.insert(comp(b1, g1));
        }
      }
      std::set<std::size_t> covered;
      for (std::size_t a : d.hom[s * n + t]) {
        if (composite.count(a) || covered.count(a)) continue;
        d.generating.push_back(a);
        for (std::size_t g2 : d.hom[t * n + t]) {
          for (std::size_t g1 : d.hom[s * n + s]) covered.insert(comp(g2, comp(a, g1)));
        }
      }
    }
  }
  std::sort(d.generating.begin(), d.generating.end());

  for (const auto& g : d.groups) {
    if (d.orders.empty() || d.orders.back() != g.order()) d.orders.push_back(g.order());
  }

  std::ostringstream canon;
  for (const auto& g : d.groups) {
    canon << "G " << g.label() << " " << g.order();
    for (const auto& row : g.table()) {
      for (int v : row) canon << " " << v;
    }
    canon << "\n";
  }
  for (const auto& m : d.classes) {
    canon << "M " << m.source << " " << m.target;
    for (int v : m.representative) canon << " " << v;
    canon << "\n";
  }
  d.hash = sha256_hex(canon.str());

  Site site;
  site.d_ = std::move(data);
  return site;
}

std::optional<std::size_t> Site::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (d_->groups[i].label() == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Site::find_isomorphic(const Group& g) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (d_->groups[i].order() == g.order() && is_isomorphic(d_->groups[i], g)) return i;
  }
  return std::nullopt;
}

std::size_t Site::resolve(const std::string& name) const {
  if (auto i = find_label(name)) return *i;
  Group g = Group::from_name(name);
  if (auto i = find_isomorphic(g)) return *i;
  precondition_failed("group " + name + " is not an object of the site");
}

std::size_t Site::compose(std::size_t beta, std::size_t alpha) const {
  auto r = try_compose(beta, alpha);
  if (!r) precondition_failed("compose: morphism classes are not composable");
  return *r;
}

std::optional<std::size_t> Site::try_compose(std::size_t beta, std::size_t alpha) const {
  const std::size_t c = class_count();
  if (beta >= c || alpha >= c) precondition_failed("compose: class id out of range");
  long r = d_->comp[beta * c + alpha];
  if (r < 0) return std::nullopt;
  return static_cast<std::size_t>(r);
}

std::optional<std::size_t> Site::unit_object() const {
  if (!d_->groups.empty() && d_->groups.front().order() == 1) return 0;
  return std::nullopt;
}

std::vector<std::string> Site::preset_names() {
  return {"trivial", "1C2", "cyclic2", "cyclic2x3", "elemab2", "gpd-c2", "cyclic2-nounit"};
}

Site Site::preset(const std::string& name) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"trivial", {"1"}},
      {"1C2", {"1", "C2"}},
      {"cyclic2", {"1", "C2", "C4"}},
      {"cyclic2x3", {"1", "C2", "C4", "C8"}},
      {"elemab2", {"1", "C2", "C2^2"}},
      {"gpd-c2", {"C2"}},
      {"cyclic2-nounit", {"C2", "C4", "C8"}},
      {"c2c3c6", {"C2", "C3", "C6"}},
      {"not-wide", {"1", "C2", "C2^3"}},
  };
  auto it = table.find(name);
  if (it == table.end()) precondition_failed("unknown site preset '" + name + "'");
  std::vector<Group> groups;
  for (const auto& g : it->second) groups.push_back(Group::from_name(g));
  return build(std::move(groups));
}

Site Site::from_spec(const std::string& spec) {
  if (spec.find(',') == std::string::npos) {
    try {
      return preset(spec);
    } catch (const PreconditionError&) {
    }
  }
  std::vector<Group> groups;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) groups.push_back(Group::from_name(item));
  }
  return build(std::move(groups));
}

std::optional<WideClosureWitness> check_widely_closed(const Site& site) {
  for (std::size_t o = 0; o < site.size(); ++o) {
    const Group& g = site.object(o);
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < site.size(); ++t) {
      for (std::size_t a : site.hom(o, t)) out.push_back(a);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::vector<int> k0 = kernel(g, site.morphism(out[i]).representative);
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        std::vector<int> k1 = kernel(g, site.morphism(out[j]).representative);
        std::vector<int> both;
        std::set_intersection(k0.begin(), k0.end(), k1.begin(), k1.end(), std::back_inserter(both));
        Quotient q = quotient_group(g, both);
        if (!site.find_isomorphic(q.group)) {
          return WideClosureWitness{o, out[i], out[j], both, q.group.order()};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> minimal_objects(const Site& site) {
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < site.size(); ++o) {
    bool minimal = true;
    for (std::size_t t = 0; t < site.size() && minimal; ++t) {
      if (t != o && !site.hom(o, t).empty()) minimal = false;
    }
    if (minimal) out.push_back(o);
  }
  return out;
}

SiteClassification classify_site(const Site& site) {
  SiteClassification c;
  c.groupoid = true;
  for (std::size_t id = 0; id < site.class_count(); ++id) c.groupoid = c.groupoid && site.is_iso(id);
  c.minimal = minimal_objects(site);
  c.unit_projective_predicted = true;
  for (std::size_t o = 0; o < site.size(); ++o) {
    std::size_t count = 0;
    for (std::size_t m : c.minimal) count += normal_with_quotient(site.object(o), site.object(m)).size();
    c.minimal_quotient_counts.push_back(count);
    c.unit_projective_predicted = c.unit_projective_predicted && count == 1;
  }
  return c;
}

}  // namespace glrep
