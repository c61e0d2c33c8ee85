#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conemetrics/cones.hpp"
#include "conemetrics/geodesics.hpp"
#include "conemetrics/metrics.hpp"

namespace conemetrics {

/// gamma, theta and Gamma for a fixed exponent 0 < s < 1.
struct ScalarFunctions {
  explicit ScalarFunctions(double exponent);

  /// (1 - t^s)/(1 - t), with gamma(1) = s. Strictly decreasing on [0, inf).
  double gamma(double t) const;
  /// (1 - s) - t^s + s t >= 0, vanishing only at t = 1.
  double theta(double t) const;
  /// 2 gamma(t) - s.
  double big_gamma(double t) const;

  double s;
};

/// g(x) = phi(s; 1, x) on the interior of the orthant, written as
/// a^{s-1} gamma(b/a) x + a^s (1 - gamma(b/a)) 1 with b = max x, a = min x.
ConePoint g_map(const ConePoint& x, double s);

/// Logarithmic partial derivatives h_ij = (x_j / g_i) dg_i/dx_j of g_map.
struct DerivativeTable {
  Vector x;
  double s;
  /// order[k] is the original index of the k-th smallest coordinate.
  std::vector<Eigen::Index> order;
  Eigen::Index min_index;
  Eigen::Index max_index;
  Matrix h;
};

/// Closed-form table on the smooth region (unique strict min and max).
/// Throws NonSmoothPoint on ties within 1e-12 relative.
DerivativeTable derivative_table(const ConePoint& x, double s);

/// Ties closer than this relative gap are treated as non-smooth.
inline constexpr double kTieTolerance = 1e-12;

double thompson_opnorm_analytic(const ConePoint& x, double s);
double hilbert_opnorm_analytic(const ConePoint& x, double s);

/// max_i sum_j |h_ij|: the exact supremum over the unit Thompson ball.
double thompson_opnorm_from_table(const Matrix& h);

struct HilbertOpnorm {
  double value;
  /// Maximizing row pair (i, k) in original coordinates, i < k.
  Eigen::Index row_i;
  Eigen::Index row_k;
};

/// max_{i,k} sum_j max(h_ij - h_kj, 0): the exact supremum over the slab
/// {max v - min v <= 1}.
HilbertOpnorm hilbert_opnorm_from_table(const Matrix& h);

double thompson_opnorm_numeric(const ConePoint& x, double s);
HilbertOpnorm hilbert_opnorm_numeric(const ConePoint& x, double s);

/// Supremum restricted to directions with <functional, v> = 0, by exhaustive
/// enumeration of the vertices of the constrained slab.
double hilbert_opnorm_constrained(const DerivativeTable& table, const Vector& functional);

/// 2(1 - e^{-Rs})/(1 - e^{-R}) - s.
double bound_thompson(double radius, double s);
/// (1 - e^{-Rs})/(1 - e^{-R}).
double bound_hilbert(double radius, double s);
double bound(double radius, double s, Metric metric);

struct InequalityReport {
  std::string check;
  Metric metric = Metric::Thompson;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Hilbert radius used (theorem checks only); NaN otherwise.
  double radius = std::numeric_limits<double>::quiet_NaN();
  double s = std::numeric_limits<double>::quiet_NaN();
  bool satisfied = true;
  /// Dimension of span{u, x, y} for theorem checks.
  int span_dim = 0;
  /// s d(x, y), checked as well when the span is at most two-dimensional.
  std::optional<double> two_dim_rhs;
  std::vector<ConePoint> witness;
};

inline constexpr double kInequalityTolerance = 1e-9;

/// Records d(m_ux, m_uy) against d(x, y)/2 for the distinguished geodesics.
InequalityReport check_busemann(const ConePoint& u, const ConePoint& x, const ConePoint& y,
                                Metric metric, double tol = kInequalityTolerance);

/// Same midpoint inequality with the matrix geometric mean X # Y in place of
/// the distinguished geodesic; SymPD points only.
InequalityReport check_sym_busemann(const ConePoint& u, const ConePoint& x, const ConePoint& y,
                                    Metric metric, double tol = kInequalityTolerance);

/// lhs = d(phi(s;u,x), phi(s;u,y)), rhs = bound(R, s) d(x, y) with
/// R = max(d_H(u,x), d_H(u,y)).
InequalityReport check_theorem(const ConePoint& u, const ConePoint& x, const ConePoint& y, double s,
                               Metric metric, double tol = kInequalityTolerance);

/// Bounded-bicombing constant for 1-perturbed endpoints.
inline constexpr double kSemihyperbolicBound = 8.0;

InequalityReport check_semihyperbolic(const ConePoint& x, const ConePoint& y, const ConePoint& xp,
                                      const ConePoint& yp, double t, Metric metric,
                                      double tol = kInequalityTolerance);

/// Numerical dimension of span{points}.
int span_dimension(const std::vector<ConePoint>& points, double rel_tol = 1e-10);

}  // namespace conemetrics
