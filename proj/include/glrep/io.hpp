#pragma once

#include <string>

#include "json.hpp"

#include "glrep/complex.hpp"
#include "glrep/site.hpp"

namespace glrep::io {

using Json = nlohmann::ordered_json;

// Scalars are written as "a/b", or "a" when the denominator is 1.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const std::string& path);
// A matrix is a list of rows.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path, std::size_t rows, std::size_t cols);

Json group_to_json(const Group& g);
// Accepts {"label", "spec": {"kind": cyclic|elem_abelian|product|table, ...}}.
Group group_from_json(const Json& j, const std::string& path);

// Full site description with hom sets, composition table, hash and the
// wide-closure verdict.
Json site_to_json(const Site& site, bool forced = false);
// Rebuilds the site from its groups; a stored hash that does not match throws SchemaError.
Site site_from_json(const Json& j, const std::string& path = "$");

// Objects and complexes carry the site's groups and hash, so a file can be
// read without naming its site.  When `site` is valid it is used instead and
// must match the stored hash.
Json rep_to_json(const RepObject& x);
RepObject rep_from_json(const Json& j, const Site& site = {}, const std::string& path = "$");
Json complex_to_json(const Complex& c);
// String entries of "terms" are paths of rep files, resolved against base_dir.
Complex complex_from_json(const Json& j, const Site& site = {}, const std::string& base_dir = ".",
                          const std::string& path = "$");

Json read_file(const std::string& file);
void write_file(const std::string& file, const Json& j);

}  // namespace glrep::io
