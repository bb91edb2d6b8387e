#include "glrep/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "glrep/error.hpp"

namespace glrep::io {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing");
  return *it;
}

const Json& array_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& a = field(j, key, path);
  if (!a.is_array()) schema(path + "." + key, "expected an array");
  return a;
}

long long int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<long long>();
}

std::size_t count_from_json(const Json& j, const std::string& path) {
  const long long v = int_from_json(j, path);
  if (v < 0) schema(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string string_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Json site_groups(const Site& site) {
  Json groups = Json::array();
  for (const Group& g : site.objects()) groups.push_back(group_to_json(g));
  return groups;
}

Site groups_site(const Json& groups, const std::string& path) {
  if (!groups.is_array()) schema(path, "expected an array");
  std::vector<Group> gs;
  for (std::size_t i = 0; i < groups.size(); ++i) gs.push_back(group_from_json(groups[i], at(path, i)));
  try {
    return Site::build(std::move(gs));
  } catch (const PreconditionError& e) {
    schema(path, e.what());
  }
}

// The site of an object or complex file: the given one, or the embedded groups.
Site resolve_site(const Json& j, const Site& given, const std::string& path) {
  const std::string hash = string_from_json(field(j, "site_hash", path), path + ".site_hash");
  Site site = given.valid() ? given : groups_site(field(j, "site", path), path + ".site");
  if (site.hash() != hash) schema(path + ".site_hash", "does not match the site " + site.hash());
  return site;
}

}  // namespace

Json to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (!j.is_string()) schema(path, "expected a rational string \"a/b\" or an integer");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const std::exception&) {
    schema(path, "malformed rational '" + j.get<std::string>() + "'");
  }
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) schema(path, "expected a list of rows");
  if (j.size() != rows) schema(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string rp = at(path, r);
    if (!row.is_array()) schema(rp, "expected a row");
    if (row.size() != cols) schema(rp, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row[c], at(rp, c));
  }
  return m;
}

Json group_to_json(const Group& g) {
  Json spec;
  spec["kind"] = "table";
  spec["table"] = g.table();
  Json out;
  out["label"] = g.label();
  out["spec"] = std::move(spec);
  return out;
}

namespace {

Group group_spec(const Json& spec, const std::string& path) {
  const std::string kind = string_from_json(field(spec, "kind", path), path + ".kind");
  try {
    if (kind == "cyclic") return Group::cyclic(static_cast<int>(int_from_json(field(spec, "n", path), path + ".n")));
    if (kind == "elem_abelian") {
      return Group::elementary_abelian(static_cast<int>(int_from_json(field(spec, "p", path), path + ".p")),
                                       static_cast<int>(int_from_json(field(spec, "r", path), path + ".r")));
    }
    if (kind == "product") {
      return Group::product(group_spec(field(spec, "left", path), path + ".left"),
                            group_spec(field(spec, "right", path), path + ".right"));
    }
    if (kind == "table") {
      const Json& t = array_field(spec, "table", path);
      std::vector<std::vector<int>> table;
      for (std::size_t r = 0; r < t.size(); ++r) {
        if (!t[r].is_array()) schema(at(path + ".table", r), "expected a row");
        std::vector<int> row;
        for (std::size_t c = 0; c < t[r].size(); ++c) {
          row.push_back(static_cast<int>(int_from_json(t[r][c], at(at(path + ".table", r), c))));
        }
        table.push_back(std::move(row));
      }
      return Group::from_table("G", table);
    }
  } catch (const PreconditionError& e) {
    schema(path, e.what());
  }
  schema(path + ".kind", "unknown group kind '" + kind + "'");
}

Group relabel(const Group& g, const std::string& label) { return Group::from_table(label, g.table()); }

}  // namespace

Group group_from_json(const Json& j, const std::string& path) {
  Group g = group_spec(field(j, "spec", path), path + ".spec");
  auto it = j.find("label");
  if (it == j.end()) return g;
  return relabel(g, string_from_json(*it, path + ".label"));
}

Json site_to_json(const Site& site, bool forced) {
  Json out;
  out["groups"] = site_groups(site);
  Json homs = Json::array();
  for (std::size_t a = 0; a < site.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < site.size(); ++b) row.push_back(site.hom(a, b));
    homs.push_back(std::move(row));
  }
  out["homs"] = std::move(homs);
  Json classes = Json::array();
  for (std::size_t c = 0; c < site.class_count(); ++c) {
    const MorphismClass& m = site.morphism(c);
    classes.push_back({{"source", m.source}, {"target", m.target}, {"representative", m.representative}});
  }
  out["classes"] = std::move(classes);
  Json comp = Json::array();
  for (std::size_t b = 0; b < site.class_count(); ++b) {
    for (std::size_t a = 0; a < site.class_count(); ++a) {
      if (auto c = site.try_compose(b, a)) comp.push_back({b, a, *c});
    }
  }
  out["comp"] = std::move(comp);
  Json wide;
  if (auto w = check_widely_closed(site)) {
    wide["verdict"] = "FAIL";
    wide["witness"] = {{"object", site.object(w->object).label()},
                       {"first", w->first},
                       {"second", w->second},
                       {"intersection", w->intersection},
                       {"quotient_order", w->quotient_order}};
  } else {
    wide["verdict"] = "PASS";
  }
  out["widely_closed"] = std::move(wide);
  if (forced) out["forced"] = true;
  out["hash"] = site.hash();
  return out;
}

Site site_from_json(const Json& j, const std::string& path) {
  Site site = groups_site(field(j, "groups", path), path + ".groups");
  auto it = j.find("hash");
  if (it != j.end() && string_from_json(*it, path + ".hash") != site.hash()) {
    schema(path + ".hash", "stale: the groups hash to " + site.hash());
  }
  return site;
}

Json rep_to_json(const RepObject& x) {
  const Site& site = x.site();
  Json out;
  out["site"] = site_groups(site);
  out["site_hash"] = site.hash();
  out["dims"] = x.dims();
  Json act = Json::object();
  for (std::size_t c = 0; c < site.class_count(); ++c) act[std::to_string(c)] = to_json(x.action(c));
  out["act"] = std::move(act);
  return out;
}

RepObject rep_from_json(const Json& j, const Site& given, const std::string& path) {
  Site site = resolve_site(j, given, path);
  const Json& dj = array_field(j, "dims", path);
  if (dj.size() != site.size()) schema(path + ".dims", "expected " + std::to_string(site.size()) + " entries");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) dims.push_back(count_from_json(dj[i], at(path + ".dims", i)));
  const Json& act = field(j, "act", path);
  if (!act.is_object()) schema(path + ".act", "expected an object keyed by class index");
  for (auto it = act.begin(); it != act.end(); ++it) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      schema(path + ".act." + it.key(), "key is not a class index");
    }
    if (idx >= site.class_count()) schema(path + ".act." + it.key(), "class index out of range");
  }
  std::vector<Matrix> actions;
  for (std::size_t c = 0; c < site.class_count(); ++c) {
    const MorphismClass& m = site.morphism(c);
    const std::string key = std::to_string(c);
    auto it = act.find(key);
    if (it == act.end()) schema(path + ".act." + key, "missing");
    actions.push_back(matrix_from_json(*it, path + ".act." + key, dims[m.source], dims[m.target]));
  }
  return RepObject::create(site, std::move(dims), std::move(actions));
}

Json complex_to_json(const Complex& c) {
  const Site& site = c.site();
  Json out;
  out["site"] = site_groups(site);
  out["site_hash"] = site.hash();
  out["lo"] = c.lo();
  out["hi"] = c.hi();
  Json terms = Json::array();
  Json diffs = Json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    Json t = rep_to_json(c.term(n));
    t.erase("site");
    t.erase("site_hash");
    terms.push_back(std::move(t));
    if (n == c.lo()) continue;
    Json per = Json::array();
    for (std::size_t g = 0; g < site.size(); ++g) per.push_back(to_json(c.d(n).at(g)));
    diffs.push_back(std::move(per));
  }
  out["terms"] = std::move(terms);
  out["diffs"] = std::move(diffs);
  return out;
}

Complex complex_from_json(const Json& j, const Site& given, const std::string& base_dir, const std::string& path) {
  Site site = resolve_site(j, given, path);
  const long long lo = int_from_json(field(j, "lo", path), path + ".lo");
  const long long hi = int_from_json(field(j, "hi", path), path + ".hi");
  if (hi < lo - 1) schema(path + ".hi", "must be at least lo - 1");
  const Json& tj = array_field(j, "terms", path);
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  if (tj.size() != count) schema(path + ".terms", "expected " + std::to_string(count) + " terms");
  std::vector<RepObject> terms;
  for (std::size_t k = 0; k < count; ++k) {
    const std::string tp = at(path + ".terms", k);
    if (tj[k].is_string()) {
      const std::string file = (std::filesystem::path(base_dir) / tj[k].get<std::string>()).string();
      terms.push_back(rep_from_json(read_file(file), site, file));
    } else {
      Json t = tj[k];
      if (t.is_object()) {
        if (!t.contains("site_hash")) t["site_hash"] = site.hash();
      }
      terms.push_back(rep_from_json(t, site, tp));
    }
  }
  const Json& dj = array_field(j, "diffs", path);
  if (dj.size() + 1 != std::max<std::size_t>(count, 1)) {
    schema(path + ".diffs", "expected " + std::to_string(count == 0 ? 0 : count - 1) + " differentials");
  }
  std::vector<RepMap> diffs;
  for (std::size_t k = 0; k < dj.size(); ++k) {
    const std::string dp = at(path + ".diffs", k);
    if (!dj[k].is_array() || dj[k].size() != site.size()) schema(dp, "expected one matrix per object");
    std::vector<Matrix> comps;
    for (std::size_t g = 0; g < site.size(); ++g) {
      comps.push_back(matrix_from_json(dj[k][g], at(dp, g), terms[k].dim(g), terms[k + 1].dim(g)));
    }
    diffs.push_back(RepMap::create(terms[k + 1], terms[k], std::move(comps)));
  }
  return Complex::create(site, static_cast<int>(lo), std::move(terms), std::move(diffs));
}

Json read_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) schema(file, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    schema(file, std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const std::string& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw PreconditionError("cannot write " + file);
  out << j.dump(2) << "\n";
}

}  // namespace glrep::io
