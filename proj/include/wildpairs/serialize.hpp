#pragma once

// JSON encodings. A document carries its field once at the top level:
//   {"schema_version": 1, "field": {"p": 7, "deg": 1}, ...named payloads}
// and every scalar inside is a string in Field::format notation.

#include <json.hpp>
#include <string>

#include "wildpairs/algebras.hpp"
#include "wildpairs/bruteforce.hpp"
#include "wildpairs/homspace.hpp"
#include "wildpairs/tuples.hpp"

namespace wildpairs {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json to_json(const Field& f);
Field field_from_json(const json& j);

json to_json(const Field& f, Elem e);
Elem elem_from_json(const Field& f, const json& j);

/// {"rows", "cols", "entries": [[row], ...]}
json to_json(const Mat& m);
Mat mat_from_json(const Field& f, const json& j);

/// {"t", "mats"}
json to_json(const MatTuple& t);
MatTuple tuple_from_json(const Field& f, const json& j);

/// Tagged by "kind" (witness_kind); matrices under "R", "S", "r".
json to_json(const Witness& w);
Witness witness_from_json(const Field& f, const json& j);

json to_json(const Morphism& m);
Morphism morphism_from_json(const Field& f, const json& j);

/// {"dim", "unital": k or null, "gamma": gamma[i][j][k]}
json to_json(const AlgebraStructure& a);
AlgebraStructure algebra_from_json(const Field& f, const json& j);

json to_json(const NoInstanceCertificate& c);
json to_json(const Decomposition& d);
json to_json(const InvariantVerdict& v);
/// elapsed_seconds only when with_timing: reports stay byte-reproducible.
json to_json(const SearchReport& r, bool with_timing = false);

/// {"schema_version", "field"}; callers add payloads.
json make_document(const Field& f);
/// Checks the schema version and returns the document's field.
Field document_field(const json& doc);

json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const json& doc);
std::string dump(const json& doc);

}  // namespace wildpairs
