#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "glrep/verify.hpp"

using namespace glrep;

namespace {

struct Run {
  std::string site;
  std::vector<std::string> claims;
  std::size_t count = 1;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Run> runs;
  double time_limit = 0;  // seconds; 0 for none
};

constexpr std::uint64_t kSeed = 7;

bool check(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t rows = 0, passed = 0;
  std::vector<std::string> failures;
  for (const Run& r : c.runs) {
    SuiteOptions o;
    o.site = r.site;
    o.seed = kSeed;
    o.count = r.count;
    try {
      SuiteReport rep = run_claims("criterion " + std::to_string(c.number), r.claims, o);
      for (const auto& row : rep.rows) {
        ++rows;
        if (row.verdict == "PASS") {
          ++passed;
        } else {
          failures.push_back(row.claim + " [" + row.site + " #" + std::to_string(row.index) + "] " + row.instance + ": " +
                             row.witness);
        }
      }
    } catch (const std::exception& e) {
      failures.push_back(std::string("error: ") + e.what());
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = c.time_limit <= 0 || seconds <= c.time_limit;
  const bool ok = failures.empty() && rows > 0 && in_time;
  char line[256];
  std::snprintf(line, sizeof line, "%s criterion %2d  %-34s %zu/%zu rows  %.1fs%s", ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), passed, rows, seconds, in_time ? "" : "  (over time limit)");
  std::cout << line << std::endl;
  for (const auto& f : failures) std::cerr << "    " << f << "\n";
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "dg-projectivity", {{"cyclic2", {"dgproj.h0-vanishes", "dgproj.nullhomotopy"}, 50}}, 180},
      {2,
       "contractibility",
       {{"cyclic2", {"dgproj.contraction"}, 50}, {"1C2", {"dgproj.contraction"}, 20}, {"elemab2", {"dgproj.contraction"}, 20}}},
      {3,
       "resolution bound and augmentation",
       {{"cyclic2", {"resolutions.length-bound", "resolutions.epsilon"}, 50},
        {"elemab2", {"resolutions.length-bound", "resolutions.epsilon"}, 50}}},
      {4, "thin replacement", {{"cyclic2", {"thin.replacement", "thin.uniqueness"}, 30}}},
      {5, "cofiber homology table", {{"", {"derived.cofiber-table", "derived.torsion-free-hit"}, 1}}, 10},
      {6, "thin tensor counterexample", {{"", {"thin.tensor-counterexample"}, 1}}},
      {7, "unit projectivity", {{"", {"derived.unit-projectivity"}, 1}}},
      {8,
       "model structure",
       {{"1C2", {"model.factor-M", "model.factor-N", "model.lifting", "model.rlp", "model.pushout-product"}, 20},
        {"1C2", {"model.properness"}, 5},
        {"cyclic2", {"model.properness"}, 5}},
       300},
      {9,
       "dualizability",
       {{"", {"dualizable.groupoid", "dualizable.witness"}, 1},
        {"1C2", {"dualizable.constant"}, 10},
        {"1C2", {"dualizable.agreement"}, 20}}},
      {10, "generator formula", {}},
  };
  for (const auto& name : Site::preset_names()) criteria.back().runs.push_back({name, {"derived.generator-formula"}, 20});

  int failed = 0;
  for (const auto& c : criteria) {
    if (!check(c)) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
