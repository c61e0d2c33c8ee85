#pragma once

#include <cmath>
#include <initializer_list>
#include <random>

#include "conemetrics/cones.hpp"

namespace testing {

using conemetrics::Cone;
using conemetrics::ConePoint;
using conemetrics::Matrix;
using conemetrics::Vector;

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v;
}

inline ConePoint point(const Cone& cone, std::initializer_list<double> values) { return {cone, vec(values)}; }

inline ConePoint diag_point(std::initializer_list<double> values) {
  const Vector d = vec(values);
  return {Cone::sympd(static_cast<std::size_t>(d.size())), conemetrics::sym::to_coords(d.asDiagonal())};
}

inline ConePoint random_point(const Cone& cone, double radius, std::mt19937_64& rng) {
  return conemetrics::sample_interior(ConePoint(cone, cone.unit()), radius, rng);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace testing
