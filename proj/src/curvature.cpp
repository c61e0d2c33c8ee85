#include "conemetrics/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conemetrics {

namespace {

void check_exponent(double s) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("exponent s must lie in (0, 1)");
}

const Vector& orthant_coords(const ConePoint& x, const char* what) {
  if (!x.cone().is_orthant()) throw ConeMismatch(std::string(what) + ": needs an orthant point");
  if (!contains_interior(x)) throw NotInterior(std::string(what) + ": point not interior");
  return x.coords();
}

// Sorted frame with the smooth-region check.
std::vector<Eigen::Index> smooth_order(const Vector& x, const char* what) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x(a) < x(b); });
  const auto n = order.size();
  if (n >= 2) {
    const double lo = x(order[0]);
    const double lo_next = x(order[1]);
    const double hi = x(order[n - 1]);
    const double hi_prev = x(order[n - 2]);
    if (lo_next - lo <= kTieTolerance * lo_next || hi - hi_prev <= kTieTolerance * hi) {
      throw NonSmoothPoint(std::string(what) + ": minimum or maximum coordinate is tied");
    }
  }
  return order;
}

// Quantities in the sorted frame shared by the closed forms.
struct Frame {
  double lo;        // x_1
  double hi;        // x_N
  double span;      // x_N - x_1
  double pow_gap;   // x_N^s - x_1^s
  double constant;  // x_N x_1^s - x_1 x_N^s
  double theta_up;  // theta(x_N / x_1)
  double theta_dn;  // theta(x_1 / x_N)
  double s;

  Frame(double x1, double xn, double exponent) : lo(x1), hi(xn), s(exponent) {
    const ScalarFunctions f(exponent);
    span = hi - lo;
    const double log_ratio = std::log(hi / lo);
    pow_gap = std::pow(lo, s) * std::expm1(s * log_ratio);
    constant = std::pow(lo, s) * hi * -std::expm1(-(1.0 - s) * log_ratio);
    theta_up = f.theta(hi / lo);
    theta_dn = f.theta(lo / hi);
  }

  double e(double xi) const { return xi * pow_gap + constant; }
  double h_first(double xi) const {
    return (hi - xi) / span * theta_up * std::pow(lo, s + 1.0) / e(xi);
  }
  double h_diag(double xi) const { return pow_gap * xi / e(xi); }
  double h_last(double xi) const {
    return -(xi - lo) / span * theta_dn * std::pow(hi, s + 1.0) / e(xi);
  }
};

}  // namespace

ScalarFunctions::ScalarFunctions(double exponent) : s(exponent) { check_exponent(exponent); }

double ScalarFunctions::gamma(double t) const {
  if (!(t >= 0.0)) throw InvalidArgument("gamma: argument must be non-negative");
  if (t == 1.0) return s;
  if (std::isinf(t)) return 0.0;
  const double lt = std::log(t);
  return std::expm1(s * lt) / std::expm1(lt);
}

double ScalarFunctions::theta(double t) const {
  if (!(t >= 0.0)) throw InvalidArgument("theta: argument must be non-negative");
  if (t == 0.0) return 1.0 - s;
  // s (t - 1) - (t^s - 1)
  return s * (t - 1.0) - std::expm1(s * std::log(t));
}

double ScalarFunctions::big_gamma(double t) const { return 2.0 * gamma(t) - s; }

ConePoint g_map(const ConePoint& x, double s) {
  const ScalarFunctions f(s);
  const Vector& v = orthant_coords(x, "g_map");
  const double a = v.minCoeff();
  const double b = v.maxCoeff();
  const double gam = f.gamma(b / a);
  Vector out = std::pow(a, s - 1.0) * gam * v;
  out.array() += std::pow(a, s) * (1.0 - gam);
  return {x.cone(), out};
}

DerivativeTable derivative_table(const ConePoint& x, double s) {
  check_exponent(s);
  const Vector& v = orthant_coords(x, "derivative_table");
  const auto order = smooth_order(v, "derivative_table");
  const auto n = v.size();
  DerivativeTable table{v, s, order, order.front(), order.back(), Matrix::Zero(n, n)};
  if (n <= 2) {
    table.h = s * Matrix::Identity(n, n);
    return table;
  }
  const Eigen::Index first = order.front();
  const Eigen::Index last = order.back();
  const Frame frame(v(first), v(last), s);
  table.h(first, first) = s;
  table.h(last, last) = s;
  for (std::size_t k = 1; k + 1 < order.size(); ++k) {
    const Eigen::Index i = order[k];
    const double xi = v(i);
    table.h(i, first) = frame.h_first(xi);
    table.h(i, i) = frame.h_diag(xi);
    table.h(i, last) = frame.h_last(xi);
  }
  return table;
}

double thompson_opnorm_analytic(const ConePoint& x, double s) {
  check_exponent(s);
  const Vector& v = orthant_coords(x, "thompson_opnorm_analytic");
  const auto order = smooth_order(v, "thompson_opnorm_analytic");
  const auto n = order.size();
  if (n <= 2) return s;
  const Frame frame(v(order.front()), v(order.back()), s);
  const double second = v(order[n - 2]);
  const double e = frame.e(second);
  return (frame.hi - second) / frame.span * frame.theta_up * std::pow(frame.lo, s + 1.0) / e +
         frame.pow_gap * second / e +
         (second - frame.lo) / frame.span * frame.theta_dn * std::pow(frame.hi, s + 1.0) / e;
}

double hilbert_opnorm_analytic(const ConePoint& x, double s) {
  check_exponent(s);
  const Vector& v = orthant_coords(x, "hilbert_opnorm_analytic");
  if (v.size() < 2) throw InvalidArgument("hilbert_opnorm_analytic: needs N >= 2");
  const auto order = smooth_order(v, "hilbert_opnorm_analytic");
  const auto n = order.size();
  if (n == 2) return s;
  const Frame frame(v(order.front()), v(order.back()), s);
  const double second = v(order[n - 2]);
  const double e = frame.e(second);
  return (frame.hi - second) / frame.span * frame.theta_up * std::pow(frame.lo, s + 1.0) / e +
         frame.pow_gap * second / e;
}

double thompson_opnorm_from_table(const Matrix& h) {
  return h.cwiseAbs().rowwise().sum().maxCoeff();
}

HilbertOpnorm hilbert_opnorm_from_table(const Matrix& h) {
  HilbertOpnorm best{-std::numeric_limits<double>::infinity(), 0, 0};
  const auto n = h.rows();
  if (n < 2) throw InvalidArgument("hilbert operator norm needs N >= 2");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (i == k) continue;
      const double value = (h.row(i) - h.row(k)).cwiseMax(0.0).sum();
      if (value > best.value) best = {value, std::min(i, k), std::max(i, k)};
    }
  }
  return best;
}

double thompson_opnorm_numeric(const ConePoint& x, double s) {
  return thompson_opnorm_from_table(derivative_table(x, s).h);
}

HilbertOpnorm hilbert_opnorm_numeric(const ConePoint& x, double s) {
  return hilbert_opnorm_from_table(derivative_table(x, s).h);
}

double hilbert_opnorm_constrained(const DerivativeTable& table, const Vector& functional) {
  const auto n = table.h.rows();
  if (functional.size() != n) throw DimensionMismatch(n, functional.size(), "constraint functional");
  if (n > 20) throw InvalidArgument("hilbert_opnorm_constrained: enumeration limited to N <= 20");
  // With v_j = x_j u_j the constraint reads sum_j w_j u_j = 0; vertices of the
  // constrained slab are u = c 1 + 1_S with c fixed by the constraint.
  const Vector w = functional.cwiseProduct(table.x);
  const double total = w.sum();
  if (!(total > 0.0)) throw InvalidArgument("constraint functional must be positive on the point");
  double best = -std::numeric_limits<double>::infinity();
  Vector u(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (Eigen::Index j = 0; j < n; ++j) u(j) = (mask >> j) & 1u ? 1.0 : 0.0;
    u.array() -= w.dot(u) / total;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < n; ++k) {
        if (i != k) best = std::max(best, (table.h.row(i) - table.h.row(k)).dot(u));
      }
    }
  }
  return best;
}

double bound_thompson(double radius, double s) { return 2.0 * bound_hilbert(radius, s) - s; }

double bound_hilbert(double radius, double s) {
  check_exponent(s);
  if (!(radius > 0.0)) throw InvalidArgument("bound: radius must be positive");
  return std::expm1(-radius * s) / std::expm1(-radius);
}

double bound(double radius, double s, Metric metric) {
  return metric == Metric::Thompson ? bound_thompson(radius, s) : bound_hilbert(radius, s);
}

int span_dimension(const std::vector<ConePoint>& points, double rel_tol) {
  if (points.empty()) return 0;
  Matrix m(points.front().dim(), points.size());
  for (std::size_t k = 0; k < points.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = points[k].coords();
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) rank += sv(k) > rel_tol * sv(0) ? 1 : 0;
  return rank;
}

namespace {

void require_finite(double d, const char* what) {
  if (!std::isfinite(d)) throw DifferentParts(std::string(what) + ": points lie in different parts");
}

}  // namespace

InequalityReport check_busemann(const ConePoint& u, const ConePoint& x, const ConePoint& y,
                                Metric metric, double tol) {
  InequalityReport report;
  report.check = "busemann";
  report.metric = metric;
  const ConePoint mux = midpoint(u, x);
  const ConePoint muy = midpoint(u, y);
  report.lhs = distance(mux, muy, metric);
  report.rhs = 0.5 * distance(x, y, metric);
  require_finite(report.rhs, "check_busemann");
  report.satisfied = report.lhs <= report.rhs + tol;
  report.witness = {u, x, y};
  return report;
}

InequalityReport check_sym_busemann(const ConePoint& u, const ConePoint& x, const ConePoint& y,
                                    Metric metric, double tol) {
  InequalityReport report;
  report.check = "sym-busemann";
  report.metric = metric;
  const ConePoint mux = sym_geodesic(u, x, 0.5);
  const ConePoint muy = sym_geodesic(u, y, 0.5);
  report.lhs = distance(mux, muy, metric);
  report.rhs = 0.5 * distance(x, y, metric);
  require_finite(report.rhs, "check_sym_busemann");
  report.satisfied = report.lhs <= report.rhs + tol;
  report.witness = {u, x, y};
  return report;
}

InequalityReport check_theorem(const ConePoint& u, const ConePoint& x, const ConePoint& y, double s,
                               Metric metric, double tol) {
  check_exponent(s);
  InequalityReport report;
  report.check = "theorem";
  report.metric = metric;
  report.s = s;
  report.radius = std::max(hilbert_distance(u, x), hilbert_distance(u, y));
  require_finite(report.radius, "check_theorem");
  const ConePoint px = make_geodesic(u, x).evaluate(s);
  const ConePoint py = make_geodesic(u, y).evaluate(s);
  const double dxy = distance(x, y, metric);
  report.lhs = distance(px, py, metric);
  // A zero radius means u, x, y share a ray, where the bound's R -> 0 limit s applies.
  const double factor = report.radius > 0.0 ? bound(report.radius, s, metric) : s;
  report.rhs = factor * dxy;
  report.satisfied = report.lhs <= report.rhs + tol;
  report.span_dim = span_dimension({u, x, y});
  if (report.span_dim <= 2) {
    report.two_dim_rhs = s * dxy;
    report.satisfied = report.satisfied && report.lhs <= *report.two_dim_rhs + tol;
  }
  report.witness = {u, x, y};
  return report;
}

InequalityReport check_semihyperbolic(const ConePoint& x, const ConePoint& y, const ConePoint& xp,
                                      const ConePoint& yp, double t, Metric metric, double tol) {
  const double dx = distance(x, xp, metric);
  const double dy = distance(y, yp, metric);
  require_finite(distance(x, y, metric), "check_semihyperbolic");
  if (dx > 1.0 + 1e-12 || dy > 1.0 + 1e-12) {
    throw InvalidArgument("check_semihyperbolic: endpoints must be perturbed by at most 1");
  }
  if (!(t >= 0.0)) throw InvalidArgument("check_semihyperbolic: t must be non-negative");
  InequalityReport report;
  report.check = "semihyperbolic";
  report.metric = metric;
  report.lhs = distance(bicombing(x, y, t, metric), bicombing(xp, yp, t, metric), metric);
  report.rhs = kSemihyperbolicBound;
  report.satisfied = report.lhs <= report.rhs + tol;
  report.witness = {x, y, xp, yp};
  return report;
}

}  // namespace conemetrics
