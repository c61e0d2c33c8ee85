#include <doctest.h>

#include "conemetrics/cones.hpp"
#include "conemetrics/errors.hpp"
#include "conemetrics/metrics.hpp"
#include "helpers.hpp"

using namespace conemetrics;
using testing::point;
using testing::vec;

TEST_CASE("interior membership of the closed-form cones") {
  CHECK(contains_interior(point(Cone::orthant(3), {1, 2, 3})));
  CHECK_FALSE(contains_interior(point(Cone::orthant(3), {1, 0, 3})));
  CHECK_FALSE(contains_interior(point(Cone::lorentz(2), {1, 1, 0})));
  CHECK(Cone::lorentz(2).contains_closed(vec({1, 1, 0})));
  CHECK(contains_interior(point(Cone::lorentz(2), {1, 0.5, 0.5})));

  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  CHECK_FALSE(contains_interior(ConePoint(Cone::sympd(2), sym::to_coords(m))));
  CHECK(contains_interior(testing::diag_point({1, 2})));
}

TEST_CASE("dimension mismatches are reported with both sizes") {
  const Cone c = Cone::orthant(3);
  CHECK_THROWS_AS(ConePoint(c, vec({1, 2})), DimensionMismatch);
  try {
    c.contains_interior(vec({1, 2, 3, 4}));
    FAIL("expected DimensionMismatch");
  } catch (const DimensionMismatch& e) {
    CHECK(e.expected() == 3);
    CHECK(e.got() == 4);
  }
  CHECK_THROWS_AS(ConePoint(c, vec({1, NAN, 1})), InvalidArgument);
}

TEST_CASE("order bounds in the orthant") {
  const Cone c = Cone::orthant(3);
  CHECK(order_sup(point(c, {2, 1, 4}), point(c, {1, 1, 1})).value == 4.0);
  CHECK(order_inf(point(c, {2, 1, 4}), point(c, {1, 1, 1})).value == 1.0);
  const Cone c2 = Cone::orthant(2);
  CHECK(order_sup(point(c2, {1, 1}), point(c2, {1, 1})).value == 1.0);
  CHECK(order_inf(point(c2, {3, 6}), point(c2, {1, 2})).value == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(order_sup(point(c2, {1, 0}), point(c2, {1, 1})), NotInterior);
  CHECK_THROWS_AS(order_sup(point(c2, {1, 1}), point(Cone::orthant(3), {1, 1, 1})), ConeMismatch);
}

TEST_CASE("Lorentz order bound agrees with bisection on membership") {
  const Cone c = Cone::lorentz(2);
  const ConePoint x = point(c, {2, 1, 0});
  const ConePoint y = point(c, {1, 0, 0});
  const double closed = order_sup(x, y).value;
  const double bisected = bisect_signed_order_sup(c, x.coords(), y.coords(), 1e-14);
  CHECK(std::abs(bisected - 3.0) <= 1e-10);
  CHECK(std::abs(closed - bisected) <= 1e-10);
}

TEST_CASE("SymPD order bounds are generalized eigenvalues") {
  const ConePoint x = testing::diag_point({2, 5});
  const ConePoint id = testing::diag_point({1, 1});
  CHECK(order_inf(x, id).value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(order_sup(x, id).value == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("oracle wrappers reproduce the closed forms") {
  std::mt19937_64 rng(7);
  for (const Cone& c : {Cone::orthant(3), Cone::lorentz(3), Cone::sympd(2)}) {
    const Cone o = as_oracle(c, 1e-12);
    CHECK(o.is_oracle());
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const ConePoint x = testing::random_point(c, 3.0, rng);
      const ConePoint y = testing::random_point(c, 3.0, rng);
      const double closed = order_sup(x, y).value;
      const double oracle = order_sup(ConePoint(o, x.coords()), ConePoint(o, y.coords())).value;
      worst = std::max(worst, std::abs(oracle - closed) / closed);
    }
    INFO(c.name());
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("signed order bound against bisection for arbitrary directions") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (const Cone& c : {Cone::orthant(4), Cone::lorentz(2), Cone::sympd(3)}) {
    for (int k = 0; k < 200; ++k) {
      const ConePoint x = testing::random_point(c, 2.0, rng);
      Vector v(x.coords().size());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gauss(rng);
      const double closed = signed_order_sup(c, v, x.coords());
      const double bisected = bisect_signed_order_sup(c, v, x.coords(), 1e-13);
      INFO(c.name());
      CHECK(std::abs(closed - bisected) <= 1e-9 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("sampled points stay within the requested Hilbert radius") {
  for (const Cone& c : {Cone::orthant(4), Cone::lorentz(3), Cone::sympd(3), as_oracle(Cone::lorentz(2))}) {
    const ConePoint base(c, c.unit());
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
      const ConePoint p = sample_interior(base, 1.5, rng);
      CHECK(contains_interior(p));
      CHECK(hilbert_distance(p, base) <= 1.5 + 1e-9);
    }
    CHECK(sample_interior(base, 1.0, 42).coords() == sample_interior(base, 1.0, 42).coords());
  }
}

TEST_CASE("symmetric coordinates preserve the Frobenius product") {
  Matrix a(3, 3);
  a << 2, 1, -1, 1, 3, 0.5, -1, 0.5, 4;
  Matrix b(3, 3);
  b << 1, 0.2, 0.3, 0.2, 2, -0.7, 0.3, -0.7, 5;
  CHECK(sym::to_coords(a).size() == 6);
  CHECK(sym::to_coords(a).dot(sym::to_coords(b)) == doctest::Approx(sym::frobenius(a, b)).epsilon(1e-14));
  CHECK((sym::from_coords(sym::to_coords(a), 3) - a).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(sym::order_from_dim(6) == 3);
  CHECK_THROWS_AS(sym::order_from_dim(5), InvalidArgument);
}
