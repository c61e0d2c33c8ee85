// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conemetrics/cli/campaign.hpp"
#include "conemetrics/curvature.hpp"
#include "conemetrics/embedding.hpp"
#include "conemetrics/geodesics.hpp"
#include "conemetrics/metrics.hpp"

using namespace conemetrics;
using namespace conemetrics::cli;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

const double kRadii[] = {0.5, 1.0, 2.0, 5.0};
const double kExponents[] = {0.1, 0.5, 0.9};

ConePoint random_point(const Cone& c, double radius, std::mt19937_64& rng) {
  return sample_interior(ConePoint(c, c.unit()), radius, rng);
}

Outcome theorem_campaign(CampaignKind kind) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst = 0.0;
  std::uint64_t seed = kind == CampaignKind::Theorem1 ? 1000 : 2000;
  for (int n : {3, 4, 5}) {
    for (double r : kRadii) {
      for (double s : kExponents) {
        CampaignConfig c;
        c.kind = kind;
        c.cone_spec = "orthant:" + std::to_string(n);
        c.radius = r;
        c.s = s;
        c.samples = 10000;
        c.seed = ++seed;
        c.include_trials = false;
        const CampaignReport rep = run_campaign(c);
        trials += rep.trials.size();
        violations += rep.violations;
        worst = std::max(worst, rep.max_ratio);
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool timed = kind != CampaignKind::Theorem1 || seconds <= 120.0;
  return {violations == 0 && timed,
          std::to_string(trials) + " triples, " + std::to_string(violations) + " violations, " +
              fmt("max lhs/rhs %.6f, %.1f s", worst, seconds)};
}

// Triples with two-dimensional span: y is a combination of u and x.
Outcome two_dimensional() {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-0.5, 2.0);
  std::size_t violations = 0;
  std::size_t trials = 0;
  double worst = -1e300;
  for (const Cone& c : {Cone::orthant(2), Cone::lorentz(3), Cone::sympd(2)}) {
    for (int k = 0; k < 10000; ++k) {
      const ConePoint u = random_point(c, 2.0, rng);
      const ConePoint x = random_point(c, 2.0, rng);
      ConePoint y = random_point(c, 2.0, rng);
      if (!c.is_orthant()) {
        for (;;) {
          const Vector z = coef(rng) * u.coords() + coef(rng) * x.coords();
          if (c.contains_interior(z) && hilbert_distance(ConePoint(c, z), u) <= 6.0) {
            y = ConePoint(c, z);
            break;
          }
        }
      }
      const double s = 0.05 + 0.9 * unit(rng);
      for (Metric m : {Metric::Thompson, Metric::Hilbert}) {
        const InequalityReport r = check_theorem(u, x, y, s, m);
        const double rhs = s * distance(x, y, m);
        ++trials;
        if (r.span_dim > 2 || r.lhs > rhs + 1e-9) ++violations;
        worst = std::max(worst, r.lhs - rhs);
      }
    }
  }
  return {violations == 0, std::to_string(trials) + " checks, " + std::to_string(violations) +
                               " violations, " + fmt("max lhs - s d %.3g", worst)};
}

Matrix fd_table(const Vector& x, double s) {
  const Cone c = Cone::orthant(static_cast<std::size_t>(x.size()));
  const Vector g = g_map(ConePoint(c, x), s).coords();
  Matrix h(x.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double step = 1e-6 * x(j);
    Vector up = x;
    Vector down = x;
    up(j) += step;
    down(j) -= step;
    h.col(j) = x(j) * ((g_map(ConePoint(c, up), s).coords() - g_map(ConePoint(c, down), s).coords()) / (2 * step))
                          .cwiseQuotient(g);
  }
  return h;
}

Outcome opnorm_agreement() {
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> spread(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  double exact_gap = 0.0;
  double fd_gap = 0.0;
  int points = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int k = 0; k < 1000;) {
      Vector v(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::exp(spread(rng));
      const double s = unit(rng);
      const ConePoint x(Cone::orthant(n), v);
      try {
        const double t = thompson_opnorm_analytic(x, s);
        const double h = hilbert_opnorm_analytic(x, s);
        exact_gap = std::max({exact_gap, std::abs(t - thompson_opnorm_numeric(x, s)),
                              std::abs(h - hilbert_opnorm_numeric(x, s).value)});
        const Matrix fd = fd_table(v, s);
        fd_gap = std::max({fd_gap, std::abs(thompson_opnorm_from_table(fd) - t) / t,
                           std::abs(hilbert_opnorm_from_table(fd).value - h) / h});
        ++k;
        ++points;
      } catch (const NonSmoothPoint&) {
      }
    }
  }
  return {exact_gap <= 1e-9 && fd_gap <= 1e-4,
          std::to_string(points) + " points, " + fmt("exact gap %.3g, finite-difference gap %.3g", exact_gap, fd_gap)};
}

Outcome tightness() {
  double worst = 0.0;
  bool ok = true;
  for (Metric m : {Metric::Thompson, Metric::Hilbert}) {
    for (double r : kRadii) {
      for (double s : kExponents) {
        const TightnessReport rep = run_tightness(m, r, s);
        ok = ok && rep.within(0.01);
        worst = std::max(worst, rep.gap / rep.bound);
      }
    }
  }
  return {ok, fmt("24 cells, worst relative gap %.3g", worst)};
}

Outcome limits() {
  double worst = 0.0;
  for (double s : kExponents) {
    worst = std::max({worst, std::abs(bound_thompson(1e-8, s) - s), std::abs(bound_hilbert(1e-8, s) - s),
                      std::abs(bound_thompson(1e6, s) - (2 - s)), std::abs(bound_hilbert(1e6, s) - 1)});
  }
  return {worst <= 1e-6, fmt("max deviation %.3g", worst)};
}

Outcome geodesic_length() {
  std::mt19937_64 rng(7007);
  double worst = 0.0;
  int pairs = 0;
  for (const Cone& c : {Cone::orthant(3), Cone::lorentz(3), Cone::sympd(2)}) {
    for (int k = 0; k < 100; ++k) {
      const ConePoint x = random_point(c, 3.0, rng);
      const ConePoint y = random_point(c, 3.0, rng);
      const Geodesic g = make_geodesic(x, y);
      const PathSample path = PathSample::from_curve([&](double s) { return g.evaluate(s); }, 1000);
      worst = std::max({worst, std::abs(path_length(path, Metric::Thompson) - thompson_distance(x, y)),
                        std::abs(path_length(path, Metric::Hilbert) - hilbert_distance(x, y))});
      ++pairs;
    }
  }
  return {worst <= 1e-3, std::to_string(pairs) + " pairs, " + fmt("max length error %.3g", worst)};
}

Outcome embedding_isometry() {
  std::mt19937_64 rng(8008);
  double distance_err = 0.0;
  double residual = 0.0;
  int sets = 0;
  int skipped = 0;
  for (const Cone& c : {Cone::lorentz(3), Cone::sympd(2)}) {
    for (int k = 0; k < 100; ++k) {
      std::vector<ConePoint> pts;
      for (int j = 0; j < 5; ++j) pts.push_back(random_point(c, 2.0, rng));
      const EmbeddingReport rep = verify_embedding(embed(pts));
      distance_err = std::max({distance_err, rep.max_thompson_error, rep.max_hilbert_error});
      const TransferReport tr = transfer_geodesic_check(pts[0], pts[1], pts[2], 0.5);
      if (tr.skipped) ++skipped;
      residual = std::max(residual, tr.commuting_residual);
      ++sets;
    }
  }
  return {distance_err <= 1e-8 && residual <= 1e-8 && skipped == 0,
          std::to_string(sets) + " sets, " + fmt("max distance error %.3g, commuting residual %.3g", distance_err, residual)};
}

Outcome sym_busemann() {
  std::mt19937_64 rng(9009);
  std::size_t violations = 0;
  double worst = -1e300;
  for (std::size_t n : {2u, 3u}) {
    const Cone c = Cone::sympd(n);
    for (int k = 0; k < 10000; ++k) {
      const ConePoint u = random_point(c, 3.0, rng);
      const ConePoint x = random_point(c, 3.0, rng);
      const ConePoint y = random_point(c, 3.0, rng);
      for (Metric m : {Metric::Thompson, Metric::Hilbert}) {
        const InequalityReport r = check_sym_busemann(u, x, y, m);
        if (!r.satisfied) ++violations;
        worst = std::max(worst, r.lhs - r.rhs);
      }
    }
  }
  return {violations == 0, "40000 checks, " + std::to_string(violations) + " violations, " +
                               fmt("max lhs - d/2 %.3g", worst)};
}

Outcome semihyperbolic() {
  std::size_t violations = 0;
  double worst = 0.0;
  std::uint64_t seed = 10010;
  for (Metric m : {Metric::Thompson, Metric::Hilbert}) {
    CampaignConfig c;
    c.kind = CampaignKind::Semihyperbolic;
    c.cone_spec = "orthant:4";
    c.metric = m;
    c.radius = 2.0;
    c.samples = 100000;
    c.seed = ++seed;
    c.include_trials = false;
    const CampaignReport rep = run_campaign(c);
    violations += rep.violations;
    for (const auto& t : rep.trials) worst = std::max(worst, t.lhs);
  }
  return {violations == 0, "200000 quadruples, " + std::to_string(violations) + " violations, " +
                               fmt("max distance %.4f (bound 8)", worst)};
}

Outcome scale_laws() {
  std::mt19937_64 rng(11011);
  std::uniform_real_distribution<double> logscale(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int instances = 0;
  for (const Cone& c : {Cone::orthant(4), Cone::lorentz(3), Cone::sympd(2)}) {
    for (int k = 0; k < 1000; ++k) {
      const ConePoint x = random_point(c, 3.0, rng);
      const ConePoint y = random_point(c, 3.0, rng);
      const double lambda = std::exp(logscale(rng));
      const double mu = std::exp(logscale(rng));
      const double s = unit(rng);
      const Vector lhs = make_geodesic(x.scaled(lambda), y.scaled(mu)).evaluate(s).coords();
      const Vector rhs = std::pow(lambda, 1 - s) * std::pow(mu, s) * make_geodesic(x, y).evaluate(s).coords();
      worst = std::max({worst, hilbert_distance(x, x.scaled(lambda)),
                        std::abs(hilbert_distance(x.scaled(lambda), y.scaled(mu)) - hilbert_distance(x, y)),
                        (lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff()});
      ++instances;
    }
  }
  return {worst <= 1e-10, std::to_string(instances) + " instances, " + fmt("max deviation %.3g", worst)};
}

// Hilbert distance in the unit disk from an exact line-circle intersection.
double disk_chord_distance(double ax, double ay, double bx, double by) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len = std::hypot(dx, dy);
  const double ux = dx / len;
  const double uy = dy / len;
  // |a + t u| = 1: t^2 + 2 (a.u) t + |a|^2 - 1 = 0.
  const double p = ax * ux + ay * uy;
  const double q = ax * ax + ay * ay - 1.0;
  const double root = std::sqrt(p * p - q);
  const double t_plus = p > 0 ? -q / (p + root) : root - p;  // exit beyond b
  const double t_minus = p > 0 ? -(p + root) : q / (root - p);  // exit behind a
  // Points on the line: a at 0, b at len, endpoints at t_minus < 0 < len < t_plus.
  return std::log(((t_plus - 0.0) * (len - t_minus)) / ((t_plus - len) * (0.0 - t_minus)));
}

Outcome klein_model() {
  std::mt19937_64 rng(12012);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Cone c = Cone::lorentz(2);
  Vector l(3);
  l << 1, 0, 0;
  auto disk_point = [&] {
    const double r = 0.95 * std::sqrt(unit(rng));
    const double a = 2 * M_PI * unit(rng);
    return std::pair{r * std::cos(a), r * std::sin(a)};
  };
  double cross_gap = 0.0;
  double chord_gap = 0.0;
  for (int k = 0; k < 500; ++k) {
    const auto [ax, ay] = disk_point();
    const auto [bx, by] = disk_point();
    const ConePoint x(c, (Vector(3) << 1, ax, ay).finished());
    const ConePoint y(c, (Vector(3) << 1, bx, by).finished());
    const double dh = hilbert_distance(x, y);
    cross_gap = std::max(cross_gap, std::abs(hilbert_cross_ratio(x, y, l) - dh));
    chord_gap = std::max(chord_gap, std::abs(disk_chord_distance(ax, ay, bx, by) - dh));
  }
  double diameter_gap = 0.0;
  for (int k = 0; k < 500; ++k) {
    const double a = 2 * M_PI * unit(rng);
    const double r = 0.99 * unit(rng);
    const double s = -0.99 * unit(rng);
    const ConePoint x(c, (Vector(3) << 1, s * std::cos(a), s * std::sin(a)).finished());
    const ConePoint y(c, (Vector(3) << 1, r * std::cos(a), r * std::sin(a)).finished());
    const ConePoint o(c, (Vector(3) << 1, 0, 0).finished());
    const double centered = std::log((1 + r) / (1 - r));
    const double general = std::log((1 + r) * (1 - s) / ((1 - r) * (1 + s)));
    diameter_gap = std::max({diameter_gap, std::abs(hilbert_cross_ratio(o, y, l) - centered),
                             std::abs(hilbert_distance(o, y) - centered),
                             std::abs(hilbert_cross_ratio(x, y, l) - general),
                             std::abs(disk_chord_distance(s * std::cos(a), s * std::sin(a), r * std::cos(a),
                                                          r * std::sin(a)) -
                                      general)});
  }
  return {cross_gap <= 1e-8 && chord_gap <= 1e-8 && diameter_gap <= 1e-8,
          fmt("cross ratio gap %.3g, chord oracle gap %.3g, diameter gap %.3g", cross_gap, chord_gap, diameter_gap)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 Thompson contraction campaign", [] { return theorem_campaign(CampaignKind::Theorem1); }},
      {"AC2 Hilbert contraction campaign", [] { return theorem_campaign(CampaignKind::Theorem2); }},
      {"AC3 factor s on two-dimensional spans", two_dimensional},
      {"AC4 operator-norm agreement", opnorm_agreement},
      {"AC5 tightness of the bounds", tightness},
      {"AC6 bound limits", limits},
      {"AC7 geodesic length", geodesic_length},
      {"AC8 embedding isometry", embedding_isometry},
      {"AC9 symmetric-cone Busemann", sym_busemann},
      {"AC10 semihyperbolicity", semihyperbolic},
      {"AC11 pseudo-metric and scale laws", scale_laws},
      {"AC12 Klein-model cross-check", klein_model},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
