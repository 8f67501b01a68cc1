#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "yosida/gauges.hpp"

using namespace yosida;

TEST_CASE("gauge evaluation on the catalog") {
  CHECK(normalized_gauge().eval(5.0) == 5.0);
  CHECK(power_gauge(3.0).eval(2.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(log1p_gauge().eval(0.0) == 0.0);
  CHECK(expm1_gauge().eval(1.0) == doctest::Approx(std::numbers::e - 1.0));
  for (const Gauge& g : gauge_catalog()) CHECK(g.eval(0.0) == 0.0);
}

TEST_CASE("gauge evaluation rejects negative and non-finite radii") {
  const Gauge g = log1p_gauge();
  CHECK_THROWS_AS(g.eval(-1e-12), std::domain_error);
  CHECK_THROWS_AS(g.eval(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(g.eval(INFINITY), std::domain_error);
  CHECK_THROWS_AS(eval_inverse(g, -1.0), std::domain_error);
}

TEST_CASE("inverse: closed forms and numeric bracketing") {
  CHECK(power_gauge(3.0).inverse(9.0) == doctest::Approx(3.0).epsilon(1e-14));
  for (const Gauge& g : gauge_catalog()) CHECK(g.inverse(0.0) == 0.0);

  // phi(ln 2) = 1 for e^r - 1; the bisection oracle agrees.
  const Gauge e = expm1_gauge();
  REQUIRE_FALSE(e.has_closed_inverse());
  const double r = e.inverse(1.0);
  CHECK(r == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(r == doctest::Approx(oracle::bisect_inverse([](double t) { return std::expm1(t); }, 1.0)).epsilon(1e-12));

  const Gauge l = log1p_gauge();
  for (double s : {1e-8, 0.3, 2.0, 40.0}) {
    const double want = oracle::bisect_inverse([](double t) { return std::log1p(t); }, s);
    CHECK(l.inverse(s) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("inverse of a gauge given only by its formula") {
  // Strictly increasing: derivative 1 + cos(r)/2 > 0.
  const Gauge g("wobble", [](double r) { return r + 0.5 * std::sin(r); });
  for (double s : {0.1, 1.0, 7.5, 123.0}) {
    const double want = oracle::bisect_inverse([](double r) { return r + 0.5 * std::sin(r); }, s);
    CHECK(g.inverse(s) == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("inverse round trip on random radii") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.0, 100.0);
  for (const Gauge& g : gauge_catalog()) {
    if (g.label() == "expm1") continue;  // e^100 is representable but the check below is for moderate values
    for (int i = 0; i < 1000; ++i) {
      const double x = r(rng);
      CHECK(std::abs(g.inverse(g.eval(x)) - x) <= 1e-8 * (1.0 + x));
    }
  }
  const Gauge e = expm1_gauge();
  for (int i = 0; i < 1000; ++i) {
    const double x = r(rng);
    CHECK(std::abs(e.inverse(e.eval(x)) - x) <= 1e-8 * (1.0 + x));
  }
}

TEST_CASE("antiderivative against the quadrature oracle") {
  CHECK(normalized_gauge().antiderivative(2.0) == doctest::Approx(2.0));
  CHECK(power_gauge(3.0).antiderivative(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(log1p_gauge().antiderivative(1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-14));

  for (const Gauge& g : gauge_catalog())
    for (double r : {0.0, 0.5, 1.0, 3.0}) {
      // t = u^2 removes the r^{p-1} kink at 0 that Simpson cannot resolve.
      const double want = oracle::simpson([&](double u) { return 2.0 * u * g.eval(u * u); }, 0.0,
                                          std::sqrt(r), 4000);
      CHECK(g.antiderivative(r) == doctest::Approx(want).epsilon(1e-9));
    }

  // No closed form: the Gauss-Kronrod fallback.
  const Gauge g("wobble", [](double r) { return r + 0.5 * std::sin(r); });
  REQUIRE_FALSE(g.has_closed_antiderivative());
  for (double r : {0.2, 2.0, 9.0}) {
    const double exact = 0.5 * r * r + 0.5 * (1.0 - std::cos(r));
    CHECK(g.antiderivative(r) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("antiderivative derivative is the gauge") {
  for (const Gauge& g : gauge_catalog())
    for (double r : {0.3, 1.0, 2.5}) {
      const double h = 1e-5;
      const double fd = (g.antiderivative(r + h) - g.antiderivative(r - h)) / (2.0 * h);
      CHECK(fd == doctest::Approx(g.eval(r)).epsilon(1e-7));
    }
}

TEST_CASE("antiderivative is convex (midpoint test)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> r(0.0, 5.0);
  for (const Gauge& g : gauge_catalog())
    for (int i = 0; i < 300; ++i) {
      const double a = r(rng), b = r(rng);
      CHECK(g.antiderivative(0.5 * (a + b)) <= 0.5 * (g.antiderivative(a) + g.antiderivative(b)) + 1e-10);
    }
}

TEST_CASE("catalog gauges are strictly increasing on random pairs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(0.0, 50.0);
  for (const Gauge& g : gauge_catalog())
    for (int i = 0; i < 1000; ++i) {
      double a = r(rng), b = r(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      CHECK(g.eval(a) < g.eval(b));
    }
}

TEST_CASE("labels") {
  CHECK(gauge_from_label("identity").is_normalized());
  CHECK(gauge_from_label("power:2").is_normalized());
  CHECK(gauge_from_label("power:4").power_exponent() == 4.0);
  CHECK(gauge_catalog().size() == 7);
  CHECK_THROWS_AS(gauge_from_label("power:"), std::invalid_argument);
  CHECK_THROWS_AS(gauge_from_label("power:3x"), std::invalid_argument);
  CHECK_THROWS_AS(gauge_from_label("cosh"), std::invalid_argument);
  CHECK_THROWS_AS(power_gauge(1.0), std::invalid_argument);
}

TEST_CASE("validation report") {
  const std::vector<double> grid{0.0, 1.0, 2.0};
  CHECK(validate_gauge(normalized_gauge(), grid, 10.0).ok());
  // ln(1 + r) stays below 710 on the doubles.
  for (const Gauge& g : gauge_catalog()) CHECK(validate_gauge(g, grid, 100.0).ok());

  const auto constant = validate_gauge(Gauge("one", [](double) { return 1.0; }), grid, 10.0);
  CHECK_FALSE(constant.zero_at_origin);
  CHECK_FALSE(constant.monotone);
  CHECK_FALSE(constant.ok());

  const auto bounded = validate_gauge(Gauge("atan", [](double r) { return std::atan(r); }), grid, 10.0);
  CHECK(bounded.monotone);
  CHECK_FALSE(bounded.divergent);
  CHECK_FALSE(bounded.divergence_witness.has_value());

  const auto witness = validate_gauge(log1p_gauge(), grid, 10.0);
  REQUIRE(witness.divergence_witness.has_value());
  CHECK(log1p_gauge().eval(*witness.divergence_witness) > 10.0);

  CHECK_THROWS_AS(validate_gauge(normalized_gauge(), std::vector<double>{0.5, 1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(validate_gauge(normalized_gauge(), std::vector<double>{0.0, 1.0, 1.0}, 1.0), std::invalid_argument);
}
