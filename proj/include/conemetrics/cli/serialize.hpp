#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conemetrics/cones.hpp"
#include "conemetrics/curvature.hpp"
#include "conemetrics/embedding.hpp"

namespace conemetrics::cli {

using Json = nlohmann::json;

/// Malformed user input; the message carries line/column for JSON text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Round-trip exact decimal text ("%.17g"); "inf"/"-inf"/"nan" otherwise.
std::string format_double(double value);

/// "orthant:3", "lorentz:2", "sympd:2", or "oracle:<closed-form spec>" for
/// the membership-oracle wrapper of a closed-form cone.
Cone parse_cone_spec(std::string_view spec);

Json cone_to_json(const Cone& cone);
Cone cone_from_json(const Json& j);

/// {"cone": {...}, "coords": [...]}; SymPD coords are the row-major upper
/// triangle with off-diagonals scaled by sqrt 2.
Json point_to_json(const ConePoint& p);

/// Accepts a point object, a flat coordinate array, or (SymPD only) a nested
/// array holding the full matrix. `fallback` supplies the cone for arrays.
ConePoint point_from_json(const Json& j, const Cone* fallback);

/// Parses JSON text, reporting failures as "line L, column C: ...".
Json parse_json_text(const std::string& text, const std::string& source);

Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);

/// {lhs, rhs, R, s, satisfied, witness_points, ...}.
Json report_to_json(const InequalityReport& r);

Json embedding_to_json(const Embedding& e);
Json embedding_report_to_json(const EmbeddingReport& r);
Json transfer_report_to_json(const TransferReport& r);

}  // namespace conemetrics::cli
