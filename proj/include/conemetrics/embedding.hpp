#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conemetrics/cones.hpp"
#include "conemetrics/metrics.hpp"

namespace conemetrics {

/// Linear map F from the span W of n points into R^{n(n-1)} with
/// M(x_i/x_j) = M(F x_i / F x_j) for all pairs. Row (i, j) of F is a
/// functional that is non-negative on the cone, vanishes at the boundary
/// point beta_ij x_j - x_i and is normalized by f_ij(x_j) = 1.
struct Embedding {
  std::vector<ConePoint> sources;
  /// Orthonormal basis of W, one ambient column per basis vector.
  Matrix basis;
  /// n(n-1) x ambient; row r is the functional of pairs[r].
  Matrix functionals;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// betas(i, j) = M(x_i / x_j); unit diagonal.
  Matrix betas;
  std::vector<ConePoint> images;
  /// Per-row construction notes (ties, null-space multiplicity, fallbacks).
  std::vector<std::string> notes;
  /// True when any row came from the numerical oracle construction.
  bool lower_accuracy = false;

  Cone image_cone() const { return Cone::orthant(static_cast<std::size_t>(functionals.rows())); }

  /// F restricted to W, in the coordinates of `basis`.
  Matrix restricted() const { return functionals * basis; }

  /// F z for an ambient point z (intended for z in W).
  ConePoint apply(const ConePoint& z) const;
};

Embedding embed(const std::vector<ConePoint>& points);

struct EmbeddingReport {
  double max_order_error = 0.0;
  double max_thompson_error = 0.0;
  double max_hilbert_error = 0.0;
  double max_normalization_error = 0.0;
  double max_support_residual = 0.0;
  bool images_interior = true;
  bool ok = true;
};

EmbeddingReport verify_embedding(const Embedding& e, double tol = 1e-8);

struct TransferReport {
  bool skipped = false;
  std::string notice;
  int span_dim = 0;
  /// max relative residual of F(phi(s;u,z)) - phi(s;F u, F z), z in {x, y}.
  double commuting_residual = 0.0;
  double lhs_thompson = 0.0;
  double lhs_thompson_image = 0.0;
  double lhs_hilbert = 0.0;
  double lhs_hilbert_image = 0.0;
  double rhs_thompson = 0.0;
  double rhs_thompson_image = 0.0;
  double rhs_hilbert = 0.0;
  double rhs_hilbert_image = 0.0;
  double radius = 0.0;
  double radius_image = 0.0;
  /// Largest |before - after| over the quantities above.
  double invariance_error = 0.0;
  bool ok = true;
};

TransferReport transfer_geodesic_check(const ConePoint& u, const ConePoint& x, const ConePoint& y,
                                       double s, double tol = 1e-8);

}  // namespace conemetrics
