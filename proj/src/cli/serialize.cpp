#include "conemetrics/cli/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace conemetrics::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::size_t parse_size(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  if (text.empty()) throw ParseError("cone spec '" + std::string(spec) + "': missing dimension");
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError("cone spec '" + std::string(spec) + "': bad dimension");
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

}  // namespace

Cone parse_cone_spec(std::string_view spec) {
  if (spec.rfind("oracle:", 0) == 0) return as_oracle(parse_cone_spec(spec.substr(7)));
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("cone spec '" + std::string(spec) + "': expected kind:dimension");
  }
  const auto kind = spec.substr(0, colon);
  const auto dim = parse_size(spec.substr(colon + 1), spec);
  try {
    if (kind == "orthant") return Cone::orthant(dim);
    if (kind == "lorentz") return Cone::lorentz(dim);
    if (kind == "sympd") return Cone::sympd(dim);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("cone spec '") + std::string(spec) + "': " + e.what());
  }
  throw ParseError("cone spec '" + std::string(spec) + "': unknown kind (orthant|lorentz|sympd|oracle:...)");
}

Json cone_to_json(const Cone& cone) {
  return std::visit(
      [&](const auto& k) -> Json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return {{"kind", "orthant"}, {"dim", k.dim}};
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return {{"kind", "lorentz"}, {"n", k.spatial}};
        } else if constexpr (std::is_same_v<K, SymPD>) {
          return {{"kind", "sympd"}, {"n", k.order}};
        } else {
          return {{"kind", "oracle"}, {"dim", k.dim}, {"tolerance", k.tolerance}, {"wraps", k.label}};
        }
      },
      cone.kind());
}

Cone cone_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_cone_spec(j.get<std::string>());
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "orthant") return Cone::orthant(j.at("dim").get<std::size_t>());
    if (kind == "lorentz") return Cone::lorentz(j.at("n").get<std::size_t>());
    if (kind == "sympd") return Cone::sympd(j.at("n").get<std::size_t>());
    if (kind == "oracle") {
      if (!j.contains("wraps")) throw ParseError("oracle cones can only be read as wrappers ('wraps')");
      return as_oracle(parse_cone_spec(j.at("wraps").get<std::string>()), j.value("tolerance", 1e-9));
    }
    throw ParseError("unknown cone kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cone description: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("cone description: ") + e.what());
  }
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Json point_to_json(const ConePoint& p) {
  return {{"cone", cone_to_json(p.cone())}, {"coords", vector_to_json(p.coords())}};
}

namespace {

Vector numbers(const Json& arr, const char* what) {
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ParseError(std::string(what) + ": entry " + std::to_string(i) + " is not a number");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

}  // namespace

ConePoint point_from_json(const Json& j, const Cone* fallback) {
  try {
    if (j.is_object()) {
      const Cone cone = j.contains("cone") ? cone_from_json(j.at("cone"))
                        : fallback       ? *fallback
                                         : throw ParseError("point has no cone and no --cone was given");
      return point_from_json(j.at("coords"), &cone);
    }
    if (!j.is_array()) throw ParseError("point must be an array or an object with coords");
    if (fallback == nullptr) throw ParseError("coordinate array given without --cone");
    if (!j.empty() && j.front().is_array()) {
      const auto* kind = std::get_if<SymPD>(&fallback->kind());
      if (kind == nullptr) throw ParseError("nested arrays are only accepted as SymPD matrices");
      Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.size()));
      for (std::size_t r = 0; r < j.size(); ++r) {
        const Vector row = numbers(j[r], "matrix row");
        if (row.size() != m.cols()) throw ParseError("matrix rows must form a square matrix");
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw ParseError("matrix point is not symmetric");
      }
      return {*fallback, sym::to_coords(m)};
    }
    return {*fallback, numbers(j, "coordinates")};
  } catch (const DimensionMismatch& e) {
    throw ParseError(e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("point: ") + e.what());
  }
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ": line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": invalid JSON");
  }
}

Json report_to_json(const InequalityReport& r) {
  Json witness = Json::array();
  for (const auto& p : r.witness) witness.push_back(vector_to_json(p.coords()));
  Json j = {{"check", r.check},
            {"metric", std::string(to_string(r.metric))},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"R", r.radius},
            {"s", r.s},
            {"satisfied", r.satisfied},
            {"witness_points", witness}};
  if (r.span_dim > 0) j["span_dim"] = r.span_dim;
  if (r.two_dim_rhs) j["two_dim_rhs"] = *r.two_dim_rhs;
  return j;
}

Json embedding_to_json(const Embedding& e) {
  Json images = Json::array();
  for (const auto& p : e.images) images.push_back(vector_to_json(p.coords()));
  Json pairs = Json::array();
  for (const auto& [i, j] : e.pairs) pairs.push_back({i, j});
  return {{"cone", e.sources.empty() ? Json() : cone_to_json(e.sources.front().cone())},
          {"image_dim", e.functionals.rows()},
          {"betas", matrix_to_json(e.betas)},
          {"pairs", pairs},
          {"functionals", matrix_to_json(e.functionals)},
          {"images", images},
          {"notes", e.notes},
          {"lower_accuracy", e.lower_accuracy}};
}

Json embedding_report_to_json(const EmbeddingReport& r) {
  return {{"max_order_error", r.max_order_error},
          {"max_thompson_error", r.max_thompson_error},
          {"max_hilbert_error", r.max_hilbert_error},
          {"max_normalization_error", r.max_normalization_error},
          {"max_support_residual", r.max_support_residual},
          {"images_interior", r.images_interior},
          {"ok", r.ok}};
}

Json transfer_report_to_json(const TransferReport& r) {
  return {{"skipped", r.skipped},
          {"notice", r.notice},
          {"span_dim", r.span_dim},
          {"commuting_residual", r.commuting_residual},
          {"lhs_thompson", {r.lhs_thompson, r.lhs_thompson_image}},
          {"lhs_hilbert", {r.lhs_hilbert, r.lhs_hilbert_image}},
          {"rhs_thompson", {r.rhs_thompson, r.rhs_thompson_image}},
          {"rhs_hilbert", {r.rhs_hilbert, r.rhs_hilbert_image}},
          {"R", {r.radius, r.radius_image}},
          {"invariance_error", r.invariance_error},
          {"ok", r.ok}};
}

}  // namespace conemetrics::cli
