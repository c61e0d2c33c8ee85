#pragma once

#include "conemetrics/cones.hpp"
#include "conemetrics/metrics.hpp"

namespace conemetrics {

/// Relative gap |beta - alpha| <= kDegenerateGap * beta selects the ray branch.
inline constexpr double kDegenerateGap = 1e-12;

/// The projective straight-line geodesic from x to y,
///
///   phi(s) = (b^s - a^s)/(b - a) y + (b a^s - a b^s)/(b - a) x,   b != a,
///   phi(s) = a^s x,                                               b == a,
///
/// with b = M(y/x) and a = 1/M(x/y). It is minimal for both the Thompson and
/// Hilbert metrics.
class Geodesic {
 public:
  Geodesic(ConePoint x, ConePoint y, double alpha, double beta);

  const ConePoint& x() const { return x_; }
  const ConePoint& y() const { return y_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool degenerate() const { return degenerate_; }

  /// Coefficients (c_y, c_x) of phi(s) = c_y y + c_x x.
  std::pair<double, double> coefficients(double s) const;

  ConePoint evaluate(double s) const;

 private:
  ConePoint x_;
  ConePoint y_;
  double alpha_;
  double beta_;
  bool degenerate_;
};

/// Throws DifferentParts when either order bound is infinite.
Geodesic make_geodesic(const ConePoint& x, const ConePoint& y);

ConePoint evaluate(const Geodesic& g, double s);

ConePoint midpoint(const ConePoint& x, const ConePoint& y);

/// zeta_{(x,y)}(t): unit-speed along phi up to arrival at y, then parked at y.
ConePoint bicombing(const ConePoint& x, const ConePoint& y, double t, Metric metric);

/// X^{1/2} (X^{-1/2} Y X^{-1/2})^s X^{1/2} for SymPD points.
ConePoint sym_geodesic(const ConePoint& x, const ConePoint& y, double s);

}  // namespace conemetrics
