#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "yosida/gauges.hpp"
#include "yosida/sampling.hpp"
#include "yosida/spaces.hpp"

using namespace yosida;

namespace {

Eigen::VectorXd random_vec(std::mt19937_64& rng, std::size_t n, double scale) {
  std::normal_distribution<double> d(0.0, scale);
  Eigen::VectorXd v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

}  // namespace

TEST_CASE("space construction") {
  const PNormSpace sp(3, 3.0);
  CHECK(sp.q() == doctest::Approx(1.5));
  CHECK(std::abs(1.0 / sp.p() + 1.0 / sp.q() - 1.0) <= 1e-14);
  CHECK_THROWS_AS(PNormSpace(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PNormSpace(2, INFINITY), std::invalid_argument);
  CHECK_THROWS_AS(PNormSpace(0, 2.0), std::invalid_argument);
}

TEST_CASE("norms and pairing") {
  CHECK(pnorm(PNormSpace(2, 2.0), Point{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(pnorm(PNormSpace(2, 3.0), Point::zero(2)) == 0.0);
  CHECK(pnorm(PNormSpace(2, 3.0), Point{1.0, 1.0}) == doctest::Approx(std::cbrt(2.0)));
  CHECK(dual_pairing(DualPoint{1.0, 0.0}, Point{0.0, 1.0}) == 0.0);
  CHECK(dual_pairing(DualPoint{1.0, 2.0}, Point{3.0, 4.0}) == 11.0);
  CHECK_THROWS_AS(pnorm(PNormSpace(3, 2.0), Point{1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(dual_pairing(DualPoint{1.0}, Point{1.0, 2.0}), std::invalid_argument);

  // Scaled evaluation survives magnitudes where the naive sum overflows.
  CHECK(lp_norm(Eigen::Vector2d(1e200, 1e200), 3.0) == doctest::Approx(std::cbrt(2.0) * 1e200));

  std::mt19937_64 rng(1);
  for (double p : {1.5, 2.0, 3.0, 4.0})
    for (int i = 0; i < 50; ++i) {
      const Eigen::VectorXd v = random_vec(rng, 5, 2.0);
      CHECK(lp_norm(v, p) == doctest::Approx(oracle::lp_norm(v, p)).epsilon(1e-13));
    }
}

TEST_CASE("normalized duality map") {
  const PNormSpace e(2, 2.0);
  CHECK(normalized_duality(e, Point{3.0, 4.0}) == DualPoint{3.0, 4.0});
  CHECK(normalized_duality(PNormSpace(2, 3.0), Point::zero(2)) == DualPoint::zero(2));

  const PNormSpace sp(2, 3.0);
  const DualPoint j = normalized_duality(sp, Point{1.0, 1.0});
  CHECK(j[0] == doctest::Approx(std::pow(2.0, -1.0 / 3.0)));
  CHECK(j[1] == doctest::Approx(std::pow(2.0, -1.0 / 3.0)));
  CHECK(dual_norm(sp, j) == doctest::Approx(std::cbrt(2.0)));
  CHECK(dual_pairing(j, Point{1.0, 1.0}) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)));
}

TEST_CASE("gauge duality map") {
  const PNormSpace e(2, 2.0);
  CHECK(gauge_duality(e, normalized_gauge(), Point{3.0, 4.0}) == DualPoint{3.0, 4.0});
  const DualPoint j = gauge_duality(e, power_gauge(3.0), Point{3.0, 4.0});
  CHECK(j[0] == doctest::Approx(15.0));
  CHECK(j[1] == doctest::Approx(20.0));
  CHECK(dual_pairing(j, Point{3.0, 4.0}) == doctest::Approx(125.0));
  CHECK(dual_norm(e, j) == doctest::Approx(25.0));
  for (const Gauge& g : gauge_catalog()) CHECK(gauge_duality(PNormSpace(3, 1.5), g, Point::zero(3)) == DualPoint::zero(3));

  // Below the origin cutoff the map returns exactly zero instead of overflowing.
  CHECK(gauge_duality(PNormSpace(2, 4.0), normalized_gauge(), Point{1e-310, 0.0}) == DualPoint::zero(2));
}

TEST_CASE("gauge duality matches the textbook formula") {
  std::mt19937_64 rng(2);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const PNormSpace sp(4, p);
    for (const Gauge& g : gauge_catalog())
      for (int i = 0; i < 20; ++i) {
        const Eigen::VectorXd v = random_vec(rng, 4, 1.5);
        const Eigen::VectorXd want = oracle::duality(v, p, [&](double r) { return g.eval(r); });
        const Eigen::VectorXd got = gauge_duality(sp, g, Point(v)).vec();
        CHECK((got - want).norm() <= 1e-12 * (1.0 + want.norm()));
      }
  }
}

TEST_CASE("inverse duality map") {
  const PNormSpace e(2, 2.0);
  CHECK(inverse_gauge_duality(e, normalized_gauge(), DualPoint{1.0, 1.0}) == Point{1.0, 1.0});
  CHECK(inverse_gauge_duality(PNormSpace(2, 3.0), log1p_gauge(), DualPoint::zero(2)) == Point::zero(2));
  const Point back = inverse_gauge_duality(e, power_gauge(3.0), DualPoint{15.0, 20.0});
  CHECK(back[0] == doctest::Approx(3.0));
  CHECK(back[1] == doctest::Approx(4.0));

  std::mt19937_64 rng(4);
  for (double p : {1.5, 3.0, 4.0}) {
    const PNormSpace sp(3, p);
    for (const Gauge& g : gauge_catalog())
      for (int i = 0; i < 10; ++i) {
        const Eigen::VectorXd xs = random_vec(rng, 3, 1.0);
        const Eigen::VectorXd want = oracle::inverse_duality(xs, p, [&](double r) { return g.eval(r); });
        const Eigen::VectorXd got = inverse_gauge_duality(sp, g, DualPoint(xs)).vec();
        CHECK((got - want).norm() <= 1e-9 * (1.0 + want.norm()));
      }
  }
}

TEST_CASE("homogeneity of J and of power-gauge duality maps") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> s_dist(0.0, 10.0);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const PNormSpace sp(4, p);
    for (int i = 0; i < 200; ++i) {
      const Point x(random_vec(rng, 4, 1.0));
      const double s = s_dist(rng);
      const DualPoint jx = normalized_duality(sp, x);
      CHECK(dual_norm(sp, normalized_duality(sp, s * x) - s * jx) <= 1e-10 * (1.0 + s * dual_norm(sp, jx)));
      const Gauge g = power_gauge(p);
      const double f = std::pow(s, p - 1.0);
      const DualPoint gx = gauge_duality(sp, g, x);
      CHECK(dual_norm(sp, gauge_duality(sp, g, s * x) - f * gx) <= 1e-9 * (1.0 + f * dual_norm(sp, gx)));
    }
  }
}

TEST_CASE("coordinate arithmetic") {
  Point a{1.0, 2.0};
  const Point b{0.5, -1.0};
  CHECK(a + b == Point{1.5, 1.0});
  CHECK(a - b == Point{0.5, 3.0});
  CHECK(2.0 * a == Point{2.0, 4.0});
  CHECK(a / 2.0 == Point{0.5, 1.0});
  CHECK(-a == Point{-1.0, -2.0});
  a += b;
  CHECK(a == Point{1.5, 1.0});
  CHECK_THROWS_AS(a + Point{1.0}, std::invalid_argument);
  CHECK(Point::zero(3).size() == 3);
}
