#include "conemetrics/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace conemetrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view to_string(Metric metric) {
  return metric == Metric::Thompson ? "thompson" : "hilbert";
}

Metric parse_metric(std::string_view text) {
  if (text == "thompson") return Metric::Thompson;
  if (text == "hilbert") return Metric::Hilbert;
  throw InvalidArgument("unknown metric '" + std::string(text) + "' (expected thompson|hilbert)");
}

double thompson_distance(const ConePoint& x, const ConePoint& y) {
  const double forward = order_sup(x, y).value;
  const double backward = order_sup(y, x).value;
  if (!std::isfinite(forward) || !std::isfinite(backward)) return kInf;
  return std::max(0.0, std::log(std::max(forward, backward)));
}

double hilbert_distance(const ConePoint& x, const ConePoint& y) {
  const double forward = order_sup(x, y).value;
  const double backward = order_sup(y, x).value;
  if (!std::isfinite(forward) || !std::isfinite(backward)) return kInf;
  return std::max(0.0, std::log(forward) + std::log(backward));
}

double distance(const ConePoint& x, const ConePoint& y, Metric metric) {
  return metric == Metric::Thompson ? thompson_distance(x, y) : hilbert_distance(x, y);
}

double chord_exit(const Cone& cone, const Vector& p, const Vector& d) {
  auto inside = [&](double t) { return cone.contains_closed(p + t * d); };
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0; inside(hi); ++k) {
    if (k > 200) throw SearchFailure("chord boundary search: chord does not leave the cone");
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double hilbert_cross_ratio(const ConePoint& x, const ConePoint& y, const Vector& functional) {
  const Cone& cone = x.cone();
  if (!cone.same_as(y.cone())) throw ConeMismatch("hilbert_cross_ratio: points in different cones");
  cone.check_dim(functional, "cross-section functional");
  if (!contains_interior(x) || !contains_interior(y)) {
    throw NotInterior("hilbert_cross_ratio: points must be interior");
  }
  const double lx = functional.dot(x.coords());
  const double ly = functional.dot(y.coords());
  if (!(lx > 0.0) || !(ly > 0.0)) {
    throw InvalidArgument("hilbert_cross_ratio: functional must be positive on the interior");
  }
  const Vector xs = x.coords() / lx;
  const Vector ys = y.coords() / ly;
  const Vector d = ys - xs;
  if (d.norm() <= 1e-14 * xs.norm()) return 0.0;

  // a = xs - ta d and b = ys + tb d lie on the boundary, so |ax| = ta|d|,
  // |ay| = (1 + ta)|d|, |by| = tb|d| and |bx| = (1 + tb)|d|.
  const double ta = chord_exit(cone, xs, -d);
  const double tb = chord_exit(cone, ys, d);
  if (!(ta > 0.0) || !(tb > 0.0)) throw SearchFailure("hilbert_cross_ratio: degenerate chord");
  return std::log1p(1.0 / ta) + std::log1p(1.0 / tb);
}

TangentVector::TangentVector(ConePoint base_point, Vector dir)
    : base(std::move(base_point)), direction(std::move(dir)) {
  base.cone().check_dim(direction, "tangent direction");
}

double finsler_thompson_norm(const TangentVector& v) {
  const Cone& cone = v.base.cone();
  const double up = signed_order_sup(cone, v.direction, v.base.coords());
  const double down = signed_order_sup(cone, -v.direction, v.base.coords());
  return std::max({up, down, 0.0});
}

double finsler_hilbert_seminorm(const TangentVector& v) {
  const Cone& cone = v.base.cone();
  const double up = signed_order_sup(cone, v.direction, v.base.coords());
  const double down = signed_order_sup(cone, -v.direction, v.base.coords());
  // m(v/x) = -M(-v/x)
  return std::max(0.0, up + down);
}

double finsler_norm(const TangentVector& v, Metric metric) {
  return metric == Metric::Thompson ? finsler_thompson_norm(v) : finsler_hilbert_seminorm(v);
}

PathSample::PathSample(std::vector<double> times, std::vector<ConePoint> points)
    : times_(std::move(times)), points_(std::move(points)) {
  if (times_.size() < 2 || times_.size() != points_.size()) {
    throw InvalidArgument("PathSample: need at least two samples and one point per time");
  }
  if (times_.front() != 0.0 || times_.back() != 1.0) {
    throw InvalidArgument("PathSample: times must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) throw InvalidArgument("PathSample: times not strictly increasing");
  }
  const Cone& cone = points_.front().cone();
  for (const auto& p : points_) {
    if (!p.cone().same_as(cone)) throw ConeMismatch("PathSample: points from different cones");
    if (!contains_interior(p)) throw NotInterior("PathSample: sample not interior");
  }
}

PathSample PathSample::from_curve(const std::function<ConePoint(double)>& curve, std::size_t count) {
  if (count < 2) throw InvalidArgument("PathSample::from_curve: need at least two samples");
  std::vector<double> times(count);
  std::vector<ConePoint> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    times[k] = (k + 1 == count) ? 1.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    points.push_back(curve(times[k]));
  }
  return {std::move(times), std::move(points)};
}

Vector PathSample::segment_derivative(std::size_t k) const {
  return (points_[k + 1].coords() - points_[k].coords()) / (times_[k + 1] - times_[k]);
}

double path_length(const PathSample& path, Metric metric) {
  const auto& pts = path.points();
  const auto& ts = path.times();
  const Cone& cone = pts.front().cone();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (thompson_distance(pts[k], pts[k + 1]) > kMaxStepDistance) {
      throw InvalidArgument("path_length: grid too coarse at segment " + std::to_string(k) +
                            " (consecutive Thompson distance exceeds 0.1)");
    }
    const ConePoint mid(cone, 0.5 * (pts[k].coords() + pts[k + 1].coords()));
    const double dt = ts[k + 1] - ts[k];
    total += finsler_norm(TangentVector(mid, path.segment_derivative(k)), metric) * dt;
  }
  return total;
}

}  // namespace conemetrics
