#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "conemetrics/errors.hpp"
#include "conemetrics/geodesics.hpp"
#include "conemetrics/metrics.hpp"
#include "helpers.hpp"

using namespace conemetrics;
using testing::point;
using testing::vec;

namespace {

const double e = std::exp(1.0);

// d_H in the orthant by brute force over every pair of coordinate ratios.
double brute_hilbert(const Vector& x, const Vector& y) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      best = std::max(best, std::log((x(i) / y(i)) * (y(j) / x(j))));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("distance examples") {
  const Cone c2 = Cone::orthant(2);
  CHECK(thompson_distance(point(c2, {1, 1}), point(c2, {e, 1})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hilbert_distance(point(c2, {1, 1}), point(c2, {e, 1})) == doctest::Approx(1.0).epsilon(1e-15));

  for (const Cone& c : {Cone::orthant(3), Cone::lorentz(2), Cone::sympd(2)}) {
    const ConePoint x(c, c.unit());
    CHECK(thompson_distance(x, x) == 0.0);
    CHECK(hilbert_distance(x, x) == 0.0);
    CHECK(hilbert_distance(x, x.scaled(7.0)) <= 1e-15);
  }

  const Cone c3 = Cone::orthant(3);
  const ConePoint x = point(c3, {1, 2, 3});
  const ConePoint y = point(c3, {3, 2, 1});
  CHECK(hilbert_distance(x, y) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-15));
  CHECK(hilbert_distance(x, y) == doctest::Approx(brute_hilbert(x.coords(), y.coords())).epsilon(1e-15));
}

TEST_CASE("SymPD distances match the oracle wrapper") {
  const ConePoint id = testing::diag_point({1, 1});
  const ConePoint y = testing::diag_point({4, 9});
  CHECK(thompson_distance(id, y) == doctest::Approx(std::log(9.0)).epsilon(1e-14));
  CHECK(hilbert_distance(id, y) == doctest::Approx(std::log(9.0 / 4.0)).epsilon(1e-14));
  const Cone o = as_oracle(id.cone(), 1e-13);
  const ConePoint oid(o, id.coords());
  const ConePoint oy(o, y.coords());
  CHECK(std::abs(thompson_distance(oid, oy) - std::log(9.0)) <= 1e-10);
  CHECK(std::abs(hilbert_distance(oid, oy) - std::log(9.0 / 4.0)) <= 1e-10);
}

TEST_CASE("cross ratio on a disk section of the Lorentz cone") {
  const Cone c = Cone::lorentz(2);
  const Vector l = vec({1, 0, 0});
  const ConePoint center = point(c, {1, 0, 0});
  for (double r : {0.1, 0.5, 0.9, 0.99}) {
    const ConePoint y = point(c, {1, r, 0});
    const double chord = std::log((1 + r) / (1 - r));
    CHECK(std::abs(hilbert_cross_ratio(center, y, l) - chord) <= 1e-8);
    CHECK(std::abs(hilbert_distance(center, y) - chord) <= 1e-12);
  }
  CHECK(hilbert_cross_ratio(center, center.scaled(3.0), l) == 0.0);
}

TEST_CASE("cross ratio in the orthant with the sum functional") {
  const Cone c = Cone::orthant(2);
  const ConePoint x = point(c, {0.5, 0.5});
  const ConePoint y = point(c, {e / (e + 1), 1 / (e + 1)});
  CHECK(std::abs(hilbert_cross_ratio(x, y, vec({1, 1})) - 1.0) <= 1e-8);
}

TEST_CASE("cross ratio equals Hilbert distance on random pairs") {
  std::mt19937_64 rng(5);
  for (const Cone& c : {Cone::orthant(3), Cone::lorentz(2), Cone::sympd(2)}) {
    const Vector l = c.positive_functional();
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
      const ConePoint x = testing::random_point(c, 2.0, rng);
      const ConePoint y = testing::random_point(c, 2.0, rng);
      worst = std::max(worst, std::abs(hilbert_cross_ratio(x, y, l) - hilbert_distance(x, y)));
    }
    INFO(c.name());
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("Finsler norms") {
  const Cone c = Cone::orthant(3);
  const ConePoint one(c, c.unit());
  CHECK(finsler_thompson_norm({one, vec({1, -2, 0})}) == 2.0);
  CHECK(finsler_hilbert_seminorm({one, vec({1, -2, 0})}) == 3.0);
  CHECK(finsler_thompson_norm({one, vec({0, 0, 0})}) == 0.0);
  CHECK(finsler_hilbert_seminorm({point(c, {1, 2, 3}), vec({2, 4, 6})}) <= 1e-15);

  const ConePoint id = testing::diag_point({1, 1});
  Matrix v(2, 2);
  v << 3, 0, 0, -1;
  const Vector vc = sym::to_coords(v);
  CHECK(finsler_thompson_norm({id, vc}) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(finsler_hilbert_seminorm({id, vc}) == doctest::Approx(4.0).epsilon(1e-14));
  const double up = bisect_signed_order_sup(id.cone(), vc, id.coords(), 1e-14);
  const double down = bisect_signed_order_sup(id.cone(), -vc, id.coords(), 1e-14);
  CHECK(std::abs(std::max(up, down) - 3.0) <= 1e-10);
  CHECK(std::abs(up + down - 4.0) <= 1e-10);
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(17);
  for (const Cone& c : {Cone::orthant(4), Cone::lorentz(3), Cone::sympd(2)}) {
    for (int k = 0; k < 300; ++k) {
      const ConePoint x = testing::random_point(c, 3.0, rng);
      const ConePoint y = testing::random_point(c, 3.0, rng);
      const ConePoint z = testing::random_point(c, 3.0, rng);
      for (Metric m : {Metric::Thompson, Metric::Hilbert}) {
        CHECK(distance(x, y, m) == distance(y, x, m));
        CHECK(distance(x, z, m) <= distance(x, y, m) + distance(y, z, m) + 1e-10);
        CHECK(distance(x, y, m) >= 0.0);
      }
      const double lambda = std::exp(std::uniform_real_distribution<double>(-3, 3)(rng));
      const double mu = std::exp(std::uniform_real_distribution<double>(-3, 3)(rng));
      CHECK(std::abs(hilbert_distance(x.scaled(lambda), y.scaled(mu)) - hilbert_distance(x, y)) <= 1e-10);
      CHECK(hilbert_distance(x, x.scaled(lambda)) <= 1e-10);
    }
  }
}

TEST_CASE("linear isometries of the orthant preserve both distances") {
  std::mt19937_64 rng(23);
  const Cone c = Cone::orthant(5);
  std::vector<Eigen::Index> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = 0; k < 200; ++k) {
    const ConePoint x = testing::random_point(c, 2.0, rng);
    const ConePoint y = testing::random_point(c, 2.0, rng);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vector px(5), py(5);
    for (Eigen::Index i = 0; i < 5; ++i) {
      px(i) = x.coords()(perm[static_cast<std::size_t>(i)]);
      py(i) = y.coords()(perm[static_cast<std::size_t>(i)]);
    }
    CHECK(thompson_distance(ConePoint(c, px), ConePoint(c, py)) == thompson_distance(x, y));
    CHECK(hilbert_distance(ConePoint(c, px), ConePoint(c, py)) == hilbert_distance(x, y));

    const Vector u = testing::random_point(c, 4.0, rng).coords();
    const ConePoint lx(c, u.cwiseProduct(x.coords()));
    const ConePoint ly(c, u.cwiseProduct(y.coords()));
    CHECK(std::abs(thompson_distance(lx, ly) - thompson_distance(x, y)) <= 1e-13);
    CHECK(std::abs(hilbert_distance(lx, ly) - hilbert_distance(x, y)) <= 1e-13);
  }
}

TEST_CASE("path length of simple curves") {
  const Cone c = Cone::orthant(2);
  const ConePoint x = point(c, {1, 1});
  const PathSample constant = PathSample::from_curve([&](double) { return x; }, 50);
  CHECK(path_length(constant, Metric::Thompson) == 0.0);
  CHECK(path_length(constant, Metric::Hilbert) == 0.0);

  const ConePoint y = point(c, {e, 1});
  const PathSample segment = PathSample::from_curve(
      [&](double t) { return ConePoint(c, (1 - t) * x.coords() + t * y.coords()); }, 1000);
  CHECK(std::abs(path_length(segment, Metric::Thompson) - 1.0) <= 1e-4);

  std::mt19937_64 rng(2);
  const ConePoint a = testing::random_point(Cone::lorentz(3), 2.0, rng);
  const ConePoint b = testing::random_point(Cone::lorentz(3), 2.0, rng);
  const Geodesic g = make_geodesic(a, b);
  const PathSample path = PathSample::from_curve([&](double s) { return g.evaluate(s); }, 1000);
  CHECK(std::abs(path_length(path, Metric::Hilbert) - hilbert_distance(a, b)) <= 1e-3);
  CHECK(std::abs(path_length(path, Metric::Thompson) - thompson_distance(a, b)) <= 1e-3);
}

TEST_CASE("path length converges at second order under dyadic refinement") {
  std::mt19937_64 rng(31);
  const Cone c = Cone::lorentz(2);
  const ConePoint a = testing::random_point(c, 3.0, rng);
  const ConePoint b = testing::random_point(c, 3.0, rng);
  const Geodesic g = make_geodesic(a, b);
  // A non-uniform speed makes the quadrature error visible.
  auto curve = [&](double t) { return g.evaluate(t * t); };
  for (Metric m : {Metric::Thompson, Metric::Hilbert}) {
    const double exact = distance(a, b, m);
    std::vector<double> errors;
    for (std::size_t n : {64, 128, 256, 512}) {
      errors.push_back(std::abs(path_length(PathSample::from_curve(curve, n + 1), m) - exact));
    }
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
      INFO("metric " << to_string(m) << " level " << k << " errors " << errors[k] << " " << errors[k + 1]);
      CHECK(std::log2(errors[k] / errors[k + 1]) >= 1.9);
    }
  }
}

TEST_CASE("path samples validate their grid") {
  const Cone c = Cone::orthant(2);
  const ConePoint x = point(c, {1, 1});
  CHECK_THROWS_AS(PathSample({0.0, 0.5, 0.5, 1.0}, {x, x, x, x}), InvalidArgument);
  CHECK_THROWS_AS(PathSample({0.1, 1.0}, {x, x}), InvalidArgument);
  const PathSample coarse({0.0, 1.0}, {x, point(c, {3, 1})});
  CHECK_THROWS_AS(path_length(coarse, Metric::Thompson), InvalidArgument);
}
