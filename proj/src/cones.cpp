#include "conemetrics/cones.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conemetrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t ambient_dim_of(const ConeKind& kind) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return k.dim;
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return k.spatial + 1;
        } else if constexpr (std::is_same_v<K, SymPD>) {
          return sym::coord_dim(k.order);
        } else {
          return k.dim;
        }
      },
      kind);
}

// (t - |v|)(t + |v|) avoids the cancellation of t^2 - |v|^2 near the boundary.
double lorentz_quad(const Vector& z) {
  const double t = z(0);
  const double r = z.tail(z.size() - 1).norm();
  return (t - r) * (t + r);
}

// Larger root of q(lambda y - v) = lambda^2 q(y) - 2 lambda B + q(v).
// The discriminant B^2 - q(v) q(y) equals (q(y) |w|^2 + (y_s . w)^2) / t_y^2
// with w = t_v y_s - t_y v_s, a sum of squares that stays accurate when v
// is nearly proportional to y.
double lorentz_sup(const Vector& v, const Vector& y) {
  const auto n = v.size() - 1;
  const double qy = lorentz_quad(y);
  const double qv = lorentz_quad(v);
  const double b = v(0) * y(0) - v.tail(n).dot(y.tail(n));
  const Vector w = v(0) * y.tail(n) - y(0) * v.tail(n);
  const double yw = y.tail(n).dot(w);
  const double disc = std::sqrt(std::max(0.0, qy * w.squaredNorm() + yw * yw)) / y(0);
  if (b >= 0.0) return (b + disc) / qy;
  return qv / (b - disc);
}

double sympd_sup(const Vector& v, const Vector& y, std::size_t order) {
  const Matrix vm = sym::from_coords(v, order);
  const Matrix ym = sym::from_coords(y, order);
  // Congruence by the Cholesky factor: L^{-1} V L^{-T} has the generalized
  // eigenvalues of the pencil (V, Y).
  Eigen::LLT<Matrix> llt(ym);
  const Matrix linv_v = llt.matrixL().solve(vm);
  const Matrix reduced = llt.matrixL().solve(linv_v.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (reduced + reduced.transpose()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// Geometric bracketing then log-space bisection for interior x, y.
double oracle_sup(const Oracle& oracle, const Vector& x, const Vector& y) {
  auto member = [&](double lambda) { return oracle.member(lambda * y - x); };
  double lo = 1e-8;
  double hi = 1e8;
  while (member(lo)) {
    lo *= 1e-4;
    if (lo < 1e-40) throw SearchFailure("oracle order bound: lower bracket collapsed");
  }
  while (!member(hi)) {
    hi *= 10.0;
    if (hi > 1e12) return kInf;
  }
  for (int it = 0; it < 400 && hi / lo - 1.0 > oracle.tolerance; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (member(mid) ? hi : lo) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

namespace sym {

std::size_t order_from_dim(std::size_t dim) {
  const auto n = static_cast<std::size_t>(std::llround((std::sqrt(8.0 * dim + 1.0) - 1.0) / 2.0));
  if (coord_dim(n) != dim || n == 0) {
    throw InvalidArgument("symmetric coordinate count " + std::to_string(dim) +
                          " is not n(n+1)/2");
  }
  return n;
}

Vector to_coords(const Matrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  Vector c(coord_dim(n));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      c(k++) = (i == j) ? m(i, i) : M_SQRT2 * 0.5 * (m(i, j) + m(j, i));
    }
  }
  return c;
}

Matrix from_coords(const Vector& coords, std::size_t order) {
  if (static_cast<std::size_t>(coords.size()) != coord_dim(order)) {
    throw DimensionMismatch(coord_dim(order), coords.size(), "symmetric coordinates");
  }
  const auto n = static_cast<Eigen::Index>(order);
  Matrix m(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (i == j) {
        m(i, i) = coords(k++);
      } else {
        m(i, j) = m(j, i) = coords(k++) / M_SQRT2;
      }
    }
  }
  return m;
}

}  // namespace sym

Cone::Cone(ConeKind kind)
    : kind_(std::make_shared<const ConeKind>(std::move(kind))), ambient_dim_(ambient_dim_of(*kind_)) {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          if (k.dim < 1) throw InvalidArgument("orthant dimension must be >= 1");
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          if (k.spatial < 1) throw InvalidArgument("lorentz spatial dimension must be >= 1");
        } else if constexpr (std::is_same_v<K, SymPD>) {
          if (k.order < 1) throw InvalidArgument("sympd order must be >= 1");
        } else {
          if (k.dim < 1) throw InvalidArgument("oracle dimension must be >= 1");
          if (!k.member) throw InvalidArgument("oracle cone needs a membership predicate");
          if (!(k.tolerance > 0.0)) throw InvalidArgument("oracle tolerance must be positive");
        }
      },
      *kind_);
}

std::string Cone::name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return "orthant:" + std::to_string(k.dim);
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return "lorentz:" + std::to_string(k.spatial);
        } else if constexpr (std::is_same_v<K, SymPD>) {
          return "sympd:" + std::to_string(k.order);
        } else {
          return k.label.empty() ? "oracle(" + std::to_string(k.dim) + ")" : "oracle:" + k.label;
        }
      },
      *kind_);
}

bool Cone::same_as(const Cone& other) const {
  if (kind_ == other.kind_) return true;
  if (kind_->index() != other.kind_->index() || is_oracle()) return false;
  return ambient_dim_ == other.ambient_dim_;
}

void Cone::check_dim(const Vector& z, const char* what) const {
  if (static_cast<std::size_t>(z.size()) != ambient_dim_) {
    throw DimensionMismatch(ambient_dim_, z.size(), std::string(what) + " in " + name());
  }
}

bool Cone::contains_closed(const Vector& z) const {
  check_dim(z, "membership test");
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return (z.array() >= 0.0).all();
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return z(0) >= z.tail(z.size() - 1).norm();
        } else if constexpr (std::is_same_v<K, SymPD>) {
          Eigen::SelfAdjointEigenSolver<Matrix> es(sym::from_coords(z, k.order),
                                                   Eigen::EigenvaluesOnly);
          return es.eigenvalues()(0) >= 0.0;
        } else {
          return k.member(z);
        }
      },
      *kind_);
}

bool Cone::contains_interior(const Vector& z) const {
  check_dim(z, "interior test");
  if (!z.allFinite()) return false;
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return (z.array() > 0.0).all();
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return z(0) > z.tail(z.size() - 1).norm();
        } else if constexpr (std::is_same_v<K, SymPD>) {
          Eigen::SelfAdjointEigenSolver<Matrix> es(sym::from_coords(z, k.order),
                                                   Eigen::EigenvaluesOnly);
          return es.eigenvalues()(0) > 0.0;
        } else {
          // A cross-polytope around z inside the cone certifies interiority.
          const double r = 1e-8 * z.norm();
          if (!(r > 0.0) || !k.member(z)) return false;
          Vector probe = z;
          for (Eigen::Index i = 0; i < z.size(); ++i) {
            for (double sign : {1.0, -1.0}) {
              probe(i) = z(i) + sign * r;
              if (!k.member(probe)) return false;
            }
            probe(i) = z(i);
          }
          return true;
        }
      },
      *kind_);
}

Vector Cone::unit() const {
  return std::visit(
      [&](const auto& k) -> Vector {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return Vector::Ones(k.dim);
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return Vector::Unit(k.spatial + 1, 0);
        } else if constexpr (std::is_same_v<K, SymPD>) {
          return sym::to_coords(Matrix::Identity(k.order, k.order));
        } else {
          if (k.interior_hint.size() == 0) throw InvalidArgument("oracle cone has no interior hint");
          return k.interior_hint;
        }
      },
      *kind_);
}

Vector Cone::positive_functional() const {
  if (const auto* o = std::get_if<Oracle>(kind_.get())) {
    if (o->functional_hint.size() == 0) {
      throw InvalidArgument("oracle cone has no interior-positive functional");
    }
    return o->functional_hint;
  }
  // The orthant, Lorentz and PSD cones are self-dual.
  return unit();
}

Cone as_oracle(const Cone& cone, double tolerance) {
  if (cone.is_oracle()) return cone;
  Oracle o;
  o.dim = cone.ambient_dim();
  o.member = [cone](const Vector& z) { return cone.contains_closed(z); };
  o.tolerance = tolerance;
  o.label = cone.name();
  o.interior_hint = cone.unit();
  o.functional_hint = cone.positive_functional();
  return Cone(std::move(o));
}

ConePoint::ConePoint(Cone cone, Vector coords) : cone_(std::move(cone)), coords_(std::move(coords)) {
  cone_.check_dim(coords_, "point");
  if (!coords_.allFinite()) throw InvalidArgument("point has non-finite coordinates");
}

bool contains_interior(const ConePoint& p) { return p.cone().contains_interior(p.coords()); }

bool contains_interior(const Cone& cone, const Vector& coords) {
  return cone.contains_interior(coords);
}

namespace {

void require_pair(const ConePoint& x, const ConePoint& y, const char* what) {
  if (!x.cone().same_as(y.cone())) {
    throw ConeMismatch(std::string(what) + ": points belong to " + x.cone().name() + " and " +
                       y.cone().name());
  }
  if (!contains_interior(x) || !contains_interior(y)) {
    throw NotInterior(std::string(what) + ": both points must be interior to " + x.cone().name());
  }
}

}  // namespace

OrderBound order_sup(const ConePoint& x, const ConePoint& y) {
  require_pair(x, y, "order_sup");
  const Vector& xv = x.coords();
  const Vector& yv = y.coords();
  const double value = std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return (xv.array() / yv.array()).maxCoeff();
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return lorentz_sup(xv, yv);
        } else if constexpr (std::is_same_v<K, SymPD>) {
          return sympd_sup(xv, yv, k.order);
        } else {
          return oracle_sup(k, xv, yv);
        }
      },
      x.cone().kind());
  return {value};
}

OrderBound order_inf(const ConePoint& x, const ConePoint& y) {
  const OrderBound reverse = order_sup(y, x);
  if (!reverse.is_finite()) return {0.0};
  return {1.0 / reverse.value};
}

double bisect_signed_order_sup(const Cone& cone, const Vector& v, const Vector& x, double rel_tol) {
  cone.check_dim(v, "direction");
  cone.check_dim(x, "base point");
  auto member = [&](double lambda) { return cone.contains_closed(lambda * x - v); };
  double hi = 1.0;
  for (int k = 0; !member(hi); ++k) {
    if (k > 1100) throw SearchFailure("signed order bound: upper bracket not found");
    hi *= 2.0;
  }
  double step = 1.0;
  double lo = hi - step;
  for (int k = 0; member(lo); ++k) {
    if (k > 1100) throw SearchFailure("signed order bound: lower bracket not found");
    step *= 2.0;
    lo = hi - step;
  }
  for (int it = 0; it < 2000; ++it) {
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (member(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double signed_order_sup(const Cone& cone, const Vector& v, const Vector& x) {
  cone.check_dim(v, "direction");
  if (!cone.contains_interior(x)) throw NotInterior("signed order bound: base point not interior");
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return (v.array() / x.array()).maxCoeff();
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return lorentz_sup(v, x);
        } else if constexpr (std::is_same_v<K, SymPD>) {
          return sympd_sup(v, x, k.order);
        } else {
          return bisect_signed_order_sup(cone, v, x, k.tolerance);
        }
      },
      cone.kind());
}

namespace {

double hilbert_between(const ConePoint& p, const ConePoint& q) {
  return std::log(order_sup(p, q).value * order_sup(q, p).value);
}

}  // namespace

ConePoint sample_interior(const ConePoint& base, double radius, std::mt19937_64& rng) {
  if (!(radius > 0.0)) throw InvalidArgument("sample_interior: radius must be positive");
  if (!contains_interior(base)) throw NotInterior("sample_interior: base point not interior");
  const Cone& cone = base.cone();
  const Vector& b = base.coords();
  const auto dim = b.size();
  std::uniform_real_distribution<double> half(-0.5 * radius, 0.5 * radius);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;

  // Directions stay in the slice {l = l(base)}, which is bounded when l is
  // positive on the closed cone minus the origin.
  Vector l = b;
  if (const auto* o = std::get_if<Oracle>(&cone.kind()); o == nullptr || o->functional_hint.size() == dim) {
    l = cone.positive_functional();
  }

  constexpr int kBudget = 1000;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    Vector p(dim);
    if (cone.is_orthant()) {
      // log-coordinates spread over [-R/2, R/2] keep max - min <= R.
      const double scale = half(rng);
      for (Eigen::Index i = 0; i < dim; ++i) p(i) = b(i) * std::exp(half(rng) + scale);
    } else {
      Vector w(dim);
      for (Eigen::Index i = 0; i < dim; ++i) w(i) = normal(rng);
      w -= (l.dot(w) / l.dot(b)) * b;
      if (w.norm() == 0.0) continue;
      w *= b.norm() / w.norm();
      auto admissible = [&](double t) {
        const Vector z = b + t * w;
        if (!cone.contains_interior(z)) return false;
        return hilbert_between(ConePoint(cone, z), base) <= radius;
      };
      // Locate the radius-R sphere along the ray, then draw inside it.
      double lo = 0.0;
      double hi = 1.0;
      int grow = 0;
      while (admissible(hi) && grow < 60) {
        lo = hi;
        hi *= 2.0;
        ++grow;
      }
      if (grow == 60) continue;  // unbounded slice direction
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? lo : hi) = mid;
      }
      const double t = lo * std::pow(unit(rng), 1.0 / static_cast<double>(std::max<Eigen::Index>(1, dim - 1)));
      p = std::exp(half(rng)) * (b + t * w);
    }
    if (!cone.contains_interior(p)) continue;
    ConePoint candidate(cone, p);
    if (hilbert_between(candidate, base) <= radius) return candidate;
  }
  std::ostringstream msg;
  msg << "sample_interior: rejection budget of " << kBudget << " exhausted for " << cone.name()
      << " at radius " << radius;
  throw SearchFailure(msg.str());
}

ConePoint sample_interior(const ConePoint& base, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_interior(base, radius, rng);
}

}  // namespace conemetrics
