#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "glrep/derived.hpp"
#include "glrep/error.hpp"
#include "glrep/io.hpp"
#include "glrep/model.hpp"
#include "glrep/random.hpp"
#include "glrep/thin.hpp"
#include "glrep/verify.hpp"

using namespace glrep;
using io::Json;

namespace {

struct Common {
  std::string site;
  std::string out;
  std::string format = "json";
  bool force = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_site = true) {
  if (with_site) cmd->add_option("--site", c.site, "Preset name, comma separated group names, or a site.json file");
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--force", c.force, "Operate on a site that is not widely closed");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void gate(const Site& site, bool force) {
  if (check_widely_closed(site) && !force) precondition_failed("site is not widely closed (pass --force to continue)");
}

Site load_site(const Common& c) {
  if (c.site.empty()) return {};
  Site s = ends_with(c.site, ".json") ? io::site_from_json(io::read_file(c.site)) : Site::from_spec(c.site);
  gate(s, c.force);
  return s;
}

Site require_site(const Common& c) {
  Site s = load_site(c);
  if (!s.valid()) throw SchemaError("--site: required");
  return s;
}

void emit(const Common& c, const Json& j, const std::string& text) {
  std::string body = c.format == "text" ? text : j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.out);
    if (!f) precondition_failed("cannot write " + c.out);
    f << body;
  }
}

std::string dims_text(const std::vector<std::size_t>& d) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ")";
  return os.str();
}

Json homology_json(const HomologyTable& h) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < h.dims.size(); ++k) rows.push_back({{"degree", h.lo + static_cast<int>(k)}, {"dims", h.dims[k]}});
  return rows;
}

std::string homology_text(const Site& site, const HomologyTable& h) {
  std::ostringstream os;
  os << "objects";
  for (const auto& g : site.objects()) os << " " << g.label();
  os << "\n";
  for (std::size_t k = 0; k < h.dims.size(); ++k) os << "H_" << h.lo + static_cast<int>(k) << " " << dims_text(h.dims[k]) << "\n";
  return os.str();
}

// A loaded input file: either an object or a complex.
struct Input {
  std::string file;
  RepObject rep;
  Complex complex;
  bool is_complex = false;
  const Site& site() const { return is_complex ? complex.site() : rep.site(); }
  Complex as_complex() const { return is_complex ? complex : Complex::single(rep); }
  const RepObject& as_rep() const {
    if (is_complex) throw PreconditionError(file + ": expected an object, found a complex");
    return rep;
  }
};

Input load_input(const std::string& file, const Site& site, bool force) {
  if (file.empty()) throw SchemaError("input file: required");
  Json j = io::read_file(file);
  Input in;
  in.file = file;
  if (j.is_object() && j.contains("terms")) {
    const std::string base = std::filesystem::path(file).parent_path().string();
    in.complex = io::complex_from_json(j, site, base.empty() ? "." : base, file);
    in.is_complex = true;
  } else {
    in.rep = io::rep_from_json(j, site, file);
  }
  gate(in.site(), force);
  return in;
}

int run_site(const std::string& action, const Common& c, const std::string& groups, const std::string& in) {
  Site s;
  if (action == "build") {
    if (groups.empty()) throw SchemaError("--groups: required");
    s = Site::from_spec(groups);
  } else if (!in.empty()) {
    s = io::site_from_json(io::read_file(in), in);
  } else {
    s = Site::from_spec(c.site.empty() ? "trivial" : c.site);
  }
  const bool wide = !check_widely_closed(s).has_value();
  if (!wide && !c.force) precondition_failed("site is not widely closed (pass --force to continue)");
  Json j;
  std::ostringstream text;
  if (action == "classify") {
    SiteClassification k = classify_site(s);
    Json minimal = Json::array();
    for (auto m : k.minimal) minimal.push_back(s.object(m).label());
    j = {{"groupoid", k.groupoid},
         {"minimal_objects", minimal},
         {"minimal_quotient_counts", k.minimal_quotient_counts},
         {"unit_projectivity_prediction", k.unit_projective_predicted}};
    text << "groupoid " << (k.groupoid ? "yes" : "no") << "\nminimal";
    for (auto m : k.minimal) text << " " << s.object(m).label();
    text << "\nunit projectivity prediction " << (k.unit_projective_predicted ? "TRUE" : "FALSE") << "\n";
  } else {
    j = io::site_to_json(s, !wide);
    text << "objects";
    for (const auto& g : s.objects()) text << " " << g.label();
    text << "\nmorphism classes " << s.class_count() << "\nwidely closed " << (wide ? "PASS" : "FAIL (forced)") << "\nhash "
         << s.hash() << "\n";
  }
  emit(c, j, text.str());
  return 0;
}

int run_rep(const std::string& action, const Common& c, const std::string& kind, const std::string& group,
            const std::string& in) {
  RepObject x;
  if (action == "make") {
    Site s = require_site(c);
    if (kind == "unit") {
      x = unit_object(s);
    } else {
      if (group.empty()) throw SchemaError("--group: required for kind " + kind);
      const std::size_t g = s.resolve(group);
      if (kind == "eG") x = make_eG(s, g);
      else if (kind == "cG") x = make_cG(s, g);
      else throw SchemaError("--kind: unknown kind '" + kind + "'");
    }
  } else {
    x = load_input(in, load_site(c), c.force).as_rep();
  }
  Json j = io::rep_to_json(x);
  std::ostringstream text;
  text << "dims " << dims_text(x.dims()) << "\nprojective " << (is_projective_by_layers(x) ? "yes" : "no") << "\n";
  emit(c, j, text.str());
  return 0;
}

int run_complex(const std::string& action, const Common& c, const std::string& kind, const std::string& group,
                const std::string& in, std::uint64_t seed, const RandomOptions& ro) {
  Complex x;
  if (action == "make") {
    Site s = require_site(c);
    Rng rng(seed);
    if (kind == "cofiber") {
      const std::size_t c2 = s.resolve(group.empty() ? "C2" : group);
      RepObject e = make_eG(s, c2);
      x = Complex::create(s, 0, {unit_object(s), e}, {map_from_eG(e, c2, unit_object(s), {Scalar(1)})});
    } else if (kind == "single") {
      x = load_input(in, s, c.force).as_complex();
    } else if (kind == "random") {
      x = random_complex(s, rng, ro);
    } else if (kind == "random-projective") {
      x = random_projective_complex(s, rng, ro);
    } else if (kind == "random-acyclic") {
      x = random_acyclic(s, rng, ro);
    } else {
      throw SchemaError("--kind: unknown kind '" + kind + "'");
    }
  } else {
    x = load_input(in, load_site(c), c.force).as_complex();
  }
  std::ostringstream text;
  text << "degrees [" << x.lo() << "," << x.hi() << "]\n";
  for (int n = x.lo(); n <= x.hi(); ++n) text << "C_" << n << " dims " << dims_text(x.term(n).dims()) << "\n";
  emit(c, io::complex_to_json(x), text.str());
  return 0;
}

int run_op(const std::string& name, const Common& c, const std::string& a, const std::string& b, const std::string& in,
           const std::string& group) {
  const Site given = load_site(c);
  auto one = [&]() { return load_input(in.empty() ? a : in, given, c.force); };
  auto two = [&]() { return std::make_pair(load_input(a, given, c.force), load_input(b, given, c.force)); };
  Json j;
  std::ostringstream text;
  if (name == "tensor") {
    auto [x, y] = two();
    if (!x.is_complex && !y.is_complex) {
      RepObject t = tensor(x.rep, y.rep);
      j = io::rep_to_json(t);
      text << "dims " << dims_text(t.dims()) << "\n";
    } else {
      Complex t = tensor(x.as_complex(), y.as_complex()).complex;
      j = io::complex_to_json(t);
      for (int n = t.lo(); n <= t.hi(); ++n) text << "C_" << n << " dims " << dims_text(t.term(n).dims()) << "\n";
    }
  } else if (name == "ihom") {
    auto [x, y] = two();
    RepObject h = internal_hom(x.as_rep(), y.as_rep()).object;
    j = io::rep_to_json(h);
    text << "dims " << dims_text(h.dims()) << "\n";
  } else if (name == "hom") {
    auto [x, y] = two();
    const std::size_t d = hom_space(x.as_rep(), y.as_rep()).dim();
    j = {{"dim", d}};
    text << "dim Hom " << d << "\n";
  } else if (name == "counit") {
    Input x = one();
    Counit k = counit_P0(x.as_rep());
    j = {{"p0", io::rep_to_json(k.p0.object)}, {"surjective", k.epsilon.is_surjective()}};
    text << "P0 dims " << dims_text(k.p0.object.dims()) << "\n";
  } else if (name == "section") {
    Input x = one();
    auto s = projectivity_section(x.as_rep());
    j = {{"projective", s.has_value()}};
    text << "section " << (s ? "found" : "NONE") << "\n";
  } else if (name == "resolve") {
    Input x = one();
    Resolution r = resolve_object(x.as_rep());
    Json stages = Json::array();
    for (std::size_t i = 0; i <= r.length(); ++i) stages.push_back(r.term(i).dims());
    j = {{"length", r.length()}, {"bound", resolution_bound(x.as_rep())}, {"stages", stages}};
    text << "length " << r.length() << " (bound " << resolution_bound(x.as_rep()) << ")\n";
    for (std::size_t i = 0; i <= r.length(); ++i) text << "P_" << i << " dims " << dims_text(r.term(i).dims()) << "\n";
  } else if (name == "torsion-free") {
    Input x = one();
    const Site& s = x.site();
    if (x.is_complex) {
      auto hit = torsion_free_homology(x.complex);
      if (hit) {
        Json v = Json::array();
        for (const auto& e : hit->vector) v.push_back(io::to_json(e));
        j = {{"degree", hit->degree}, {"object", s.object(hit->object).label()}, {"vector", v}};
        text << "torsion-free element in H_" << hit->degree << " at " << s.object(hit->object).label() << "\n";
      } else {
        j = nullptr;
        text << "NONE\n";
      }
    } else {
      if (group.empty()) throw SchemaError("--group: required for an object");
      auto v = torsion_free_search(x.rep, s.resolve(group));
      if (v) {
        Json vj = Json::array();
        for (const auto& e : *v) vj.push_back(io::to_json(e));
        j = {{"vector", vj}};
        text << "torsion-free vector found\n";
      } else {
        j = nullptr;
        text << "NONE\n";
      }
    }
  } else if (name == "homology") {
    Input x = one();
    HomologyTable h = homology_dims(x.as_complex());
    j = homology_json(h);
    text << homology_text(x.site(), h);
  } else if (name == "ptotal") {
    Input x = one();
    TotalResolution t = p_total(x.as_complex());
    j = io::complex_to_json(t.complex);
    text << "PC degrees [" << t.complex.lo() << "," << t.complex.hi() << "], epsilon quasi-iso "
         << (is_quasi_iso(t.epsilon) ? "yes" : "no") << "\n";
  } else if (name == "thin") {
    Input x = one();
    ThinReplacement r = thin_replacement(x.as_complex());
    j = io::complex_to_json(r.thin);
    text << "thin replacement degrees [" << r.thin.lo() << "," << r.thin.hi() << "]\n";
    for (const auto& p : r.split.pieces) {
      text << "  e_{" << x.site().object(p.object).label() << ",V} dim V " << p.dim << " in degree " << p.degree << "\n";
    }
  } else if (name == "is-thin") {
    Input x = one();
    auto w = thin_violation(x.as_complex());
    if (w) {
      Json img = Json::array();
      for (const auto& e : w->image) img.push_back(io::to_json(e));
      j = {{"thin", false},
           {"witness", {{"order", w->order}, {"degree", w->degree}, {"object", x.site().object(w->object).label()}, {"image", img}}}};
      text << "not thin: order " << w->order << ", degree " << w->degree << ", object " << x.site().object(w->object).label()
           << "\n";
    } else {
      j = {{"thin", true}};
      text << "thin\n";
    }
  } else if (name == "derived-hom") {
    auto [x, y] = two();
    DerivedHom d = derived_hom(x.as_complex(), y.as_complex());
    j = {{"lo", d.lo}, {"dims", d.dims}};
    for (std::size_t k = 0; k < d.dims.size(); ++k) text << "t=" << d.lo + static_cast<int>(k) << " dim " << d.dims[k] << "\n";
  } else if (name == "compactness") {
    Input x = one();
    auto t = compactness_table(x.as_complex());
    j = t;
    text << "total homology " << dims_text(t) << "\n";
  } else if (name == "perfect") {
    Input x = one();
    PerfectCertificate p = perfect_certificate(x.as_complex());
    Json gens = Json::array();
    for (const auto& g : p.generators) {
      gens.push_back({{"order", g.order}, {"object", x.site().object(g.object).label()}, {"degree", g.degree}, {"dim", g.dim}});
    }
    j = {{"model", io::complex_to_json(p.model)}, {"generators", gens}};
    text << gens.size() << " generator summands\n";
  } else if (name == "dualizable") {
    Input x = one();
    DualizabilityVerdict v = dualizable_test(x.as_complex());
    j = {{"dualizable", v.dualizable}, {"nu_quasi_iso", v.nu_quasi_iso}, {"witness", v.witness}};
    if (v.constant_comparison) j["constant_comparison"] = *v.constant_comparison;
    j["source_homology"] = homology_json(v.source_homology);
    j["target_homology"] = homology_json(v.target_homology);
    text << (v.dualizable ? "dualizable" : "NOT dualizable") << "\n" << v.witness << "\n";
  } else if (name == "contract") {
    Input x = one();
    auto s = find_contraction(x.as_complex());
    j = {{"contractible", s.has_value()}};
    text << (s ? "contraction found" : "not contractible") << "\n";
  } else {
    throw SchemaError("op: unknown operation '" + name + "'");
  }
  emit(c, j, text.str());
  return 0;
}

int run_verify(const std::string& suite, const Common& c, std::uint64_t seed, std::size_t count, bool timing) {
  SuiteOptions o;
  o.site = c.site;
  o.seed = seed;
  o.count = count;
  o.force = c.force;
  SuiteReport r = run_suite(suite, o);
  emit(c, report_to_json(r, timing), report_to_text(r, timing));
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global representations over finite sites of groups: objects, complexes, and verification suites"};
  app.require_subcommand(1);

  Common common;
  std::string action, rep_kind, cx_kind, group, in, a, b, groups, suite, op_name;
  std::uint64_t seed = 1;
  std::size_t count = 10;
  bool timing = false;
  RandomOptions ro;

  CLI::App* site = app.add_subcommand("site", "Build, show or classify a site");
  site->add_option("action", action, "build | show | classify")->required()->check(CLI::IsMember({"build", "show", "classify"}));
  site->add_option("--groups", groups, "Comma separated group names, e.g. 1,C2,C4");
  site->add_option("--in", in, "A site.json file");
  add_common(site, common);

  CLI::App* rep = app.add_subcommand("rep", "Construct or inspect an object");
  rep->add_option("action", action, "make | show")->required()->check(CLI::IsMember({"make", "show"}));
  rep->add_option("--kind", rep_kind, "unit | eG | cG")->default_val("eG");
  rep->add_option("--group", group, "Site object");
  rep->add_option("--in", in, "A rep.json file");
  add_common(rep, common);

  CLI::App* cx = app.add_subcommand("complex", "Construct or inspect a complex");
  cx->add_option("action", action, "make | show")->required()->check(CLI::IsMember({"make", "show"}));
  cx->add_option("--kind", cx_kind, "cofiber | single | random | random-projective | random-acyclic")->default_val("cofiber");
  cx->add_option("--group", group, "Site object (cofiber of e_G -> 1)");
  cx->add_option("--in", in, "A rep.json or complex.json file");
  cx->add_option("--seed", seed, "Seed for random kinds");
  cx->add_option("--lo", ro.lo, "Lowest degree for random kinds");
  cx->add_option("--hi", ro.hi, "Highest degree for random kinds");
  add_common(cx, common);

  CLI::App* op = app.add_subcommand("op", "Run an operation on object or complex files");
  op->add_option("name", op_name,
                 "tensor | ihom | hom | counit | section | resolve | torsion-free | homology | ptotal | thin | is-thin | "
                 "derived-hom | compactness | perfect | dualizable | contract")
      ->required();
  op->add_option("--a", a, "First input file");
  op->add_option("--b", b, "Second input file");
  op->add_option("--in", in, "Input file");
  op->add_option("--group", group, "Site object, where an operation needs one");
  add_common(op, common);

  CLI::App* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "dgproj | thin | resolutions | model | derived | dualizable | all")->required();
  ver->add_option("--seed", seed, "Seed of the instance stream");
  ver->add_option("--count", count, "Random instances per claim");
  ver->add_flag("--timing", timing, "Include wall time per row");
  add_common(ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*site) return run_site(action, common, groups, in);
    if (*rep) return run_rep(action, common, rep_kind, group, in);
    if (*cx) return run_complex(action, common, cx_kind, group, in, seed, ro);
    if (*op) return run_op(op_name, common, a, b, in, group);
    if (*ver) return run_verify(suite, common, seed, count, timing);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
