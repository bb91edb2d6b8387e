#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glrep/io.hpp"

namespace glrep {

struct SuiteRow {
  std::string claim;
  std::string anchor;
  std::string site;
  std::size_t index = 0;
  std::string instance;
  std::string verdict;  // PASS, FAIL or SKIPPED(reason)
  std::string witness;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  std::string site;
  std::uint64_t seed = 0;
  bool forced = false;
  std::vector<SuiteRow> rows;
  bool passed() const;
  std::size_t count(const std::string& verdict) const;
};

struct SuiteOptions {
  std::string site;         // preset or group list; empty means each claim's default
  std::uint64_t seed = 1;
  std::size_t count = 10;   // random instances per claim
  bool force = false;       // run on a site that is not widely closed
};

struct Claim {
  std::string id;
  std::string suite;
  std::string anchor;
  std::string default_site;
  bool fixed_site = false;  // the claim is about one particular site and ignores --site
};
const std::vector<Claim>& claims();
std::vector<std::string> suite_names();

// Throws SchemaError for an unknown suite or claim, and PreconditionError
// for a site that is not widely closed unless forced.
SuiteReport run_suite(const std::string& suite, const SuiteOptions& options);
SuiteReport run_claims(const std::string& title, const std::vector<std::string>& ids, const SuiteOptions& options);

// Wall time is included only when `timing` is set, keeping reports reproducible.
io::Json report_to_json(const SuiteReport& r, bool timing = false);
std::string report_to_text(const SuiteReport& r, bool timing = false);

}  // namespace glrep
