#include "conemetrics/geodesics.hpp"

#include <cmath>

namespace conemetrics {

namespace {

void check_parameter(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidArgument("geodesic parameter s = " + std::to_string(s) + " outside [0, 1]");
  }
}

}  // namespace

Geodesic::Geodesic(ConePoint x, ConePoint y, double alpha, double beta)
    : x_(std::move(x)), y_(std::move(y)), alpha_(alpha), beta_(beta) {
  if (!(alpha_ > 0.0) || !(beta_ >= alpha_ * (1.0 - 1e-12))) {
    throw InvalidArgument("Geodesic: need 0 < alpha <= beta");
  }
  degenerate_ = std::abs(beta_ - alpha_) <= kDegenerateGap * beta_;
}

std::pair<double, double> Geodesic::coefficients(double s) const {
  check_parameter(s);
  if (degenerate_) return {0.0, std::pow(alpha_, s)};
  // With r = beta/alpha = e^L:
  //   c_y = alpha^{s-1} (r^s - 1)/(r - 1),  c_x = alpha^s (r - r^s)/(r - 1).
  const double log_ratio = std::log(beta_ / alpha_);
  const double denom = std::expm1(log_ratio);
  const double grow = std::expm1(s * log_ratio);
  const double cy = std::pow(alpha_, s - 1.0) * (grow / denom);
  const double cx = std::pow(alpha_, s) * ((denom - grow) / denom);
  return {cy, cx};
}

ConePoint Geodesic::evaluate(double s) const {
  check_parameter(s);
  if (s == 0.0) return x_;
  if (s == 1.0) return y_;
  const auto [cy, cx] = coefficients(s);
  return {x_.cone(), cy * y_.coords() + cx * x_.coords()};
}

Geodesic make_geodesic(const ConePoint& x, const ConePoint& y) {
  const OrderBound up = order_sup(y, x);
  const OrderBound down = order_sup(x, y);
  if (!up.is_finite() || !down.is_finite()) {
    throw DifferentParts("make_geodesic: points lie in different parts");
  }
  const double beta = up.value;
  const double alpha = 1.0 / down.value;
  // Rounding can put alpha a hair above beta on a common ray.
  return {x, y, std::min(alpha, beta), std::max(alpha, beta)};
}

ConePoint evaluate(const Geodesic& g, double s) { return g.evaluate(s); }

ConePoint midpoint(const ConePoint& x, const ConePoint& y) { return make_geodesic(x, y).evaluate(0.5); }

ConePoint bicombing(const ConePoint& x, const ConePoint& y, double t, Metric metric) {
  if (!(t >= 0.0)) throw InvalidArgument("bicombing: t must be non-negative");
  const double d = distance(x, y, metric);
  if (!std::isfinite(d)) throw DifferentParts("bicombing: points lie in different parts");
  if (t == 0.0) return x;
  if (t >= d) return y;
  return make_geodesic(x, y).evaluate(t / d);
}

ConePoint sym_geodesic(const ConePoint& x, const ConePoint& y, double s) {
  check_parameter(s);
  const auto* kind = std::get_if<SymPD>(&x.cone().kind());
  if (kind == nullptr || !x.cone().same_as(y.cone())) {
    throw ConeMismatch("sym_geodesic: both points must be in the same SymPD cone");
  }
  if (!contains_interior(x) || !contains_interior(y)) {
    throw NotInterior("sym_geodesic: matrices must be positive definite");
  }
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  const Matrix xm = sym::from_coords(x.coords(), kind->order);
  const Matrix ym = sym::from_coords(y.coords(), kind->order);

  Eigen::SelfAdjointEigenSolver<Matrix> ex(xm);
  const Vector root = ex.eigenvalues().cwiseSqrt();
  const Matrix half = ex.eigenvectors() * root.asDiagonal() * ex.eigenvectors().transpose();
  const Matrix inv_half =
      ex.eigenvectors() * root.cwiseInverse().asDiagonal() * ex.eigenvectors().transpose();

  Matrix reduced = inv_half * ym * inv_half;
  reduced = 0.5 * (reduced + reduced.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> er(reduced);
  const Vector powered = er.eigenvalues().array().pow(s).matrix();
  const Matrix middle = er.eigenvectors() * powered.asDiagonal() * er.eigenvectors().transpose();
  Matrix result = half * middle * half;
  result = 0.5 * (result + result.transpose());
  return {x.cone(), sym::to_coords(result)};
}

}  // namespace conemetrics
