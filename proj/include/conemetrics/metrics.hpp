#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "conemetrics/cones.hpp"

namespace conemetrics {

enum class Metric { Thompson, Hilbert };

std::string_view to_string(Metric metric);
/// Accepts "thompson" or "hilbert".
Metric parse_metric(std::string_view text);

/// log max(M(x/y), M(y/x)); +inf across parts.
double thompson_distance(const ConePoint& x, const ConePoint& y);

/// log(M(x/y) M(y/x)); +inf across parts.
double hilbert_distance(const ConePoint& x, const ConePoint& y);

double distance(const ConePoint& x, const ConePoint& y, Metric metric);

/// Hilbert distance from the cross ratio of the chord through x and y in the
/// cross-section {z : <functional, z> = 1}. The chord endpoints are found by
/// bisection on the closed membership test only, so this is independent of
/// the closed-form order bounds.
double hilbert_cross_ratio(const ConePoint& x, const ConePoint& y, const Vector& functional);

/// Largest t >= 0 with p + t d in the closed cone, by bisection on membership.
double chord_exit(const Cone& cone, const Vector& p, const Vector& d);

struct TangentVector {
  TangentVector(ConePoint base, Vector direction);

  ConePoint base;
  Vector direction;
};

/// inf{a > 0 : -a x <= v <= a x} = max(M(v/x), M(-v/x)).
double finsler_thompson_norm(const TangentVector& v);

/// M(v/x) - m(v/x); vanishes exactly on span(x).
double finsler_hilbert_seminorm(const TangentVector& v);

double finsler_norm(const TangentVector& v, Metric metric);

/// A sampled curve t -> alpha(t) on a strictly increasing grid of [0, 1].
class PathSample {
 public:
  PathSample(std::vector<double> times, std::vector<ConePoint> points);

  /// Samples `curve` on `count` equally spaced times.
  static PathSample from_curve(const std::function<ConePoint(double)>& curve, std::size_t count);

  const std::vector<double>& times() const { return times_; }
  const std::vector<ConePoint>& points() const { return points_; }
  std::size_t size() const { return times_.size(); }

  /// Chord difference (p_{k+1} - p_k) / (t_{k+1} - t_k) for segment k; a
  /// centered estimate of the derivative at the segment midpoint.
  Vector segment_derivative(std::size_t k) const;

 private:
  std::vector<double> times_;
  std::vector<ConePoint> points_;
};

/// Largest Thompson distance between consecutive samples accepted by path_length.
inline constexpr double kMaxStepDistance = 0.1;

/// Midpoint-rule length: sum over segments of |alpha'(t_mid)|_{alpha(t_mid)} dt,
/// with the derivative from the chord and the base point at the chord midpoint.
double path_length(const PathSample& path, Metric metric);

}  // namespace conemetrics
