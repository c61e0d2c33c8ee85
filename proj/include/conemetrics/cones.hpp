#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <variant>

#include "conemetrics/errors.hpp"

namespace conemetrics {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// The closed positive orthant of R^N.
struct Orthant {
  std::size_t dim;
};

/// {(t, v) in R^{n+1} : t >= |v|_2}.
struct Lorentz {
  std::size_t spatial;
};

/// Positive semidefinite symmetric n x n matrices, stored in symmetric
/// coordinates (row-major upper triangle, off-diagonals scaled by sqrt 2).
struct SymPD {
  std::size_t order;
};

/// A finite-dimensional closed cone known only through a membership test.
///
/// `member` must be a pure, positively homogeneous predicate for the closed
/// cone. `tolerance` is the relative tolerance used by every bisection run
/// against this cone.
struct Oracle {
  std::size_t dim;
  std::function<bool(const Vector&)> member;
  double tolerance = 1e-9;
  std::string label;
  /// Optional known interior point and interior-positive functional.
  Vector interior_hint;
  Vector functional_hint;
};

using ConeKind = std::variant<Orthant, Lorentz, SymPD, Oracle>;

/// Immutable, cheaply copyable cone descriptor.
class Cone {
 public:
  explicit Cone(ConeKind kind);

  static Cone orthant(std::size_t dim) { return Cone(Orthant{dim}); }
  static Cone lorentz(std::size_t spatial) { return Cone(Lorentz{spatial}); }
  static Cone sympd(std::size_t order) { return Cone(SymPD{order}); }

  const ConeKind& kind() const { return *kind_; }
  std::size_t ambient_dim() const { return ambient_dim_; }

  bool is_orthant() const { return std::holds_alternative<Orthant>(*kind_); }
  bool is_lorentz() const { return std::holds_alternative<Lorentz>(*kind_); }
  bool is_sympd() const { return std::holds_alternative<SymPD>(*kind_); }
  bool is_oracle() const { return std::holds_alternative<Oracle>(*kind_); }

  /// e.g. "orthant:3", "lorentz:2", "sympd:2", "oracle:<label>" (or "oracle(4)" when unlabelled).
  std::string name() const;

  /// Two cones are the same when they are the same closed-form cone with the
  /// same dimension, or the same oracle instance.
  bool same_as(const Cone& other) const;

  /// Membership in the closed cone.
  bool contains_closed(const Vector& z) const;

  /// Strict interior membership. Throws DimensionMismatch.
  bool contains_interior(const Vector& z) const;

  /// A point that is interior for every implemented closed-form cone
  /// (the all-ones vector, (1, 0, ..., 0), the identity matrix).
  Vector unit() const;

  /// A linear functional positive on the interior, as an ambient vector.
  Vector positive_functional() const;

  void check_dim(const Vector& z, const char* what) const;

 private:
  std::shared_ptr<const ConeKind> kind_;
  std::size_t ambient_dim_;
};

/// Wrap a closed-form cone as an Oracle cone using its closed membership test.
Cone as_oracle(const Cone& cone, double tolerance = 1e-9);

/// An element of the ambient space of a cone. Construction only checks
/// dimension and finiteness; interiority is checked by the operations.
class ConePoint {
 public:
  ConePoint(Cone cone, Vector coords);

  const Cone& cone() const { return cone_; }
  const Vector& coords() const { return coords_; }
  std::size_t dim() const { return static_cast<std::size_t>(coords_.size()); }

  ConePoint scaled(double factor) const { return {cone_, factor * coords_}; }

 private:
  Cone cone_;
  Vector coords_;
};

/// Value of M(x/y). Infinite when x and y lie in different parts.
struct OrderBound {
  double value;

  bool is_finite() const { return std::isfinite(value); }
  static OrderBound infinite() { return {std::numeric_limits<double>::infinity()}; }
};

bool contains_interior(const ConePoint& p);
bool contains_interior(const Cone& cone, const Vector& coords);

/// M(x/y) = inf{lambda : lambda y - x in C} for interior x, y.
OrderBound order_sup(const ConePoint& x, const ConePoint& y);

/// m(x/y) = sup{lambda : x - lambda y in C} = 1 / M(y/x) for interior x, y.
OrderBound order_inf(const ConePoint& x, const ConePoint& y);

/// M(v/x) for an arbitrary ambient vector v against an interior base x.
/// Always finite; may be negative.
double signed_order_sup(const Cone& cone, const Vector& v, const Vector& x);

/// Fixed-bracket bisection of M(v/x) using only the closed membership test.
/// Works for every cone kind; used for oracle cones and as a test oracle.
double bisect_signed_order_sup(const Cone& cone, const Vector& v, const Vector& x,
                               double rel_tol);

/// Draw an interior point with d_H(point, base) <= radius.
ConePoint sample_interior(const ConePoint& base, double radius, std::mt19937_64& rng);
ConePoint sample_interior(const ConePoint& base, double radius, std::uint64_t seed);

namespace sym {

/// Ambient dimension n(n+1)/2 of SymPD(n).
inline std::size_t coord_dim(std::size_t order) { return order * (order + 1) / 2; }

/// Matrix order n from the coordinate count; throws if not triangular.
std::size_t order_from_dim(std::size_t dim);

Vector to_coords(const Matrix& m);
Matrix from_coords(const Vector& coords, std::size_t order);

/// Frobenius inner product equals the Euclidean product of coordinates.
inline double frobenius(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

}  // namespace sym

}  // namespace conemetrics
