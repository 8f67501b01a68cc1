#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "yosida/analysis.hpp"

using namespace yosida;

TEST_CASE("sequence builders") {
  const Point x0{1.0, 0.5, -0.25};
  const auto ray = shrinking_ray(x0, Point{1.0, 0.0, 0.0}, 4);
  REQUIRE(ray.size() == 4);
  CHECK(ray[0] == Point{2.0, 0.5, -0.25});
  CHECK(ray[3] == Point{1.25, 0.5, -0.25});

  const PNormSpace sp(3, 3.0);
  const auto rot = rotating_sphere(sp, x0, 50);
  REQUIRE(rot.size() == 50);
  for (const Point& x : rot) {
    CHECK(pnorm(sp, x) == doctest::Approx(pnorm(sp, x0)).epsilon(1e-13));
    CHECK(pnorm(sp, x - x0) > 0.5 * pnorm(sp, x0));
  }
  const auto c = constant_sequence(x0, 7);
  CHECK(c.size() == 7);
  CHECK(c.back() == x0);
}

TEST_CASE("corollary and S+ checks on the three sequence types") {
  const Point x0{1.0, 0.5, -0.25};
  for (double p : {1.5, 2.0, 3.0, 4.0})
    for (const Gauge& g : gauge_catalog()) {
      const PNormSpace sp(3, p);
      const auto ray = shrinking_ray(x0, Point{0.3, -0.2, 0.1}, 100);
      const auto rot = rotating_sphere(sp, x0, 100);
      const auto cst = constant_sequence(x0, 100);

      const ProbeReport r1 = check_convergence_corollary(sp, g, x0, ray);
      CHECK(r1.verdict);
      CHECK(r1.metrics.at("vacuous") == 0.0);
      CHECK(check_s_plus(sp, g, x0, ray).verdict);

      const ProbeReport r2 = check_convergence_corollary(sp, g, x0, rot);
      CHECK(r2.verdict);
      CHECK(r2.metrics.at("vacuous") == 1.0);
      CHECK(r2.metrics.at("d_min") > 0.0);
      CHECK(check_s_plus(sp, g, x0, rot).verdict);

      const ProbeReport r3 = check_convergence_corollary(sp, g, x0, cst);
      CHECK(r3.verdict);
      CHECK(r3.metrics.at("d_max") == 0.0);
      const ProbeReport s3 = check_s_plus(sp, g, x0, cst);
      CHECK(s3.verdict);
      CHECK(s3.metrics.at("limsup_d") == 0.0);
    }
}

TEST_CASE("gap d_n on the ray matches the direct formula") {
  const PNormSpace sp(2, 3.0);
  const Gauge g = power_gauge(3.0);
  const Point x0{1.0, 2.0};
  const auto ray = shrinking_ray(x0, Point{1.0, -1.0}, 30);
  const ProbeReport r = check_convergence_corollary(sp, g, x0, ray);
  double d_max = 0.0;
  for (const Point& x : ray)
    d_max = std::max(d_max, dual_pairing(gauge_duality(sp, g, x) - gauge_duality(sp, g, x0), x - x0));
  CHECK(r.metrics.at("d_max") == doctest::Approx(d_max).epsilon(1e-14));
}

TEST_CASE("trend test rejects d -> 0 with e bounded away from 0") {
  std::vector<std::array<double, 2>> pairs;
  for (int n = 1; n <= 100; ++n) pairs.push_back({1.0 / (n * n), 1.0});
  const ProbeReport r = convergence_trend("counterexample", pairs);
  CHECK_FALSE(r.verdict);
  CHECK(r.metrics.at("vacuous") == 0.0);

  std::vector<std::array<double, 2>> zero_d{{0.0, 0.0}, {0.0, 0.3}};
  CHECK_FALSE(convergence_trend("zero-d", zero_d).verdict);
  std::vector<std::array<double, 2>> all_zero{{0.0, 0.0}, {0.0, 0.0}};
  CHECK(convergence_trend("all-zero", all_zero).verdict);
  std::vector<std::array<double, 2>> nan_e{{1.0, 1.0}, {1e-2, std::nan("")}, {1e-4, 1e-3}};
  CHECK_FALSE(convergence_trend("nan", nan_e).verdict);
  CHECK_THROWS_AS(convergence_trend("empty", std::span<const std::array<double, 2>>{}),
                  std::invalid_argument);
}
