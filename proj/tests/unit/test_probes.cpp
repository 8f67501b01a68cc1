#include <cmath>
#include <vector>

#include "doctest.h"
#include "yosida/analysis.hpp"
#include "yosida/fixtures.hpp"
#include "yosida/sampling.hpp"

using namespace yosida;

namespace {

const PNormSpace kPlane(2, 2.0);

// A_lambda x = x / (1 + lambda) for A = I in the Euclidean normalized case.
Eigen::VectorXd identity_yosida(double lambda, const Eigen::VectorXd& x) { return x / (1.0 + lambda); }

}  // namespace

TEST_CASE("report verdicts") {
  ProbeReport r;
  r.tolerance = 1.0;
  r.observe(0.0, 0.5);
  r.observe(0.0, 2.0, 3.0);
  CHECK(r.finalize());
  r.observe(0.0, std::nan(""));
  CHECK_FALSE(r.finalize());
  ProbeReport empty;
  CHECK(empty.finalize());
}

TEST_CASE("boundedness: zero operator and the identity closed form") {
  const auto [k0, r0] = boundedness_probe(kPlane, normalized_gauge(), zero_operator(2), 1.0, 0.1, 10.0, 4, 1);
  CHECK(k0 == 0.0);
  CHECK(r0.verdict);

  for (double rho : {0.5, 1.0, 3.0})
    for (double lambda1 : {0.1, 1.0}) {
      const auto [k, r] = boundedness_probe(kPlane, normalized_gauge(), identity_operator(2), rho,
                                            lambda1, 10.0, 4, 2);
      CHECK(std::abs(k - rho / (1.0 + lambda1)) <= 1e-6);
      CHECK(r.verdict);
      CHECK(r.metrics.at("solver_failures") == 0.0);
    }

  CHECK_THROWS_AS(boundedness_probe(kPlane, normalized_gauge(), zero_operator(2), 1.0, 2.0, 1.0, 4, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundedness_probe(kPlane, normalized_gauge(), zero_operator(2), 1.0, 0.0, 1.0, 4, 1),
                  std::invalid_argument);
}

TEST_CASE("boundedness is stable for a nonhomogeneous gauge and the quartic operator") {
  const PNormSpace sp(3, 3.0);
  const auto [k, r] = boundedness_probe(sp, log1p_gauge(), quartic_operator(3), 1.0, 0.1, 10.0, 16, 5);
  CHECK(std::isfinite(k));
  CHECK(k > 0.0);
  CHECK(r.verdict);
}

TEST_CASE("continuity: zero operator gives zero deviations") {
  const ProbeReport r = continuity_probe(kPlane, expm1_gauge(), zero_operator(2), 1.0, Point{0.8, 0.8}, 20,
                                         Point{-0.5, -0.5}, 1e-4);
  CHECK(r.verdict);
  for (const auto& [n, delta] : r.trace) CHECK(delta == 0.0);
}

TEST_CASE("continuity: identity matches the closed form") {
  const Point x0{0.8, -0.3};
  const Point dir{-0.5, 0.25};
  const double lambda0 = 1.5;
  const ProbeReport r = continuity_probe(kPlane, normalized_gauge(), identity_operator(2), lambda0, x0, 20, dir, 1e-4);
  CHECK(r.verdict);
  REQUIRE(r.trace.size() == 20);
  const Eigen::VectorXd y0 = identity_yosida(lambda0, x0.vec());
  for (const auto& [n, delta] : r.trace) {
    const double h = std::ldexp(1.0, -int(n));
    const Eigen::VectorXd yn = identity_yosida(lambda0 * (1.0 + h), x0.vec() + h * dir.vec());
    CHECK(std::abs(delta - (yn - y0).norm()) <= 1e-9);
  }
}

TEST_CASE("continuity: expm1 gauge with softplus in l^3") {
  const PNormSpace sp(2, 3.0);
  const ProbeReport r = continuity_probe(sp, expm1_gauge(), softplus_operator(2), 1.0, Point{0.8, 0.8}, 20,
                                         Point{-0.5, -0.5}, 1e-4);
  CHECK(r.verdict);
  CHECK(r.metrics.at("delta_final_plus") <= 1e-4);
  CHECK(r.metrics.at("gamma_final_minus") <= 1e-4);
  CHECK_THROWS_AS(continuity_probe(sp, expm1_gauge(), softplus_operator(2), 1.0, Point{0.8, 0.8}, 9,
                                   Point{-0.5, -0.5}, 1e-4),
                  std::invalid_argument);
}

TEST_CASE("homotopy parameter endpoints") {
  CHECK(homotopy_parameter(0.5, 2.0, 0.0) == 2.0);
  CHECK(homotopy_parameter(0.5, 2.0, 1.0) == 0.5);
  CHECK(homotopy_parameter(0.5, 2.0, 0.5) == 1.25);
}

TEST_CASE("reciprocal sequences stay in the unit interval") {
  const auto up = reciprocal_t_sequence(0.5, 20, 1);
  CHECK(up.size() == 19);
  CHECK(up.front() == 1.0);
  CHECK(up.back() == 0.5 + 1.0 / 20.0);
  const auto down = reciprocal_t_sequence(0.5, 20, -1);
  CHECK(down.front() == 0.0);
  for (double t : down) CHECK((t >= 0.0 && t <= 1.0));
  CHECK_THROWS_AS(reciprocal_t_sequence(0.5, 20, 0), std::invalid_argument);
}

TEST_CASE("homotopy: constant sequence is exact") {
  const PNormSpace sp(3, 1.5);
  const std::vector<double> t(10, 0.3);
  const ProbeReport r = homotopy_check(sp, log1p_gauge(), quartic_operator(3), 0.5, 2.0, t, 0.3,
                                       Point{1.0, -0.5, 0.2}, 0.0);
  CHECK(r.verdict);
  for (const auto& o : r.observations) CHECK(o.deviation == 0.0);
}

TEST_CASE("homotopy: identity matches the closed form in lambda") {
  const Point x0{1.0, 2.0};
  const double l1 = 0.5, l2 = 2.0, t0 = 0.5;
  for (int sign : {1, -1}) {
    const auto t = reciprocal_t_sequence(t0, 20, sign);
    const ProbeReport r = homotopy_check(kPlane, normalized_gauge(), identity_operator(2), l1, l2, t, t0, x0, 1e-5);
    const Eigen::VectorXd y0 = identity_yosida(homotopy_parameter(l1, l2, t0), x0.vec());
    REQUIRE(r.trace.size() == t.size());
    for (std::size_t n = 0; n < t.size(); ++n) {
      const Eigen::VectorXd yn = identity_yosida(homotopy_parameter(l1, l2, t[n]), x0.vec());
      CHECK(std::abs(r.trace[n][1] - (yn - y0).norm()) <= 1e-8);
    }
    // O(1/n) decay: the 1/20 term is far above 1e-5.
    CHECK(r.metrics.at("final_deviation") > 1e-3);
    CHECK_FALSE(r.verdict);
  }
  std::vector<double> geometric;
  for (int k = 1; k <= 20; ++k) geometric.push_back(t0 + std::ldexp(1.0, -k));
  CHECK(homotopy_check(kPlane, normalized_gauge(), identity_operator(2), l1, l2, geometric, t0, x0, 1e-5).verdict);

  const std::vector<double> outside{1.5};
  CHECK_THROWS_AS(homotopy_check(kPlane, normalized_gauge(), identity_operator(2), l1, l2, outside, t0, x0, 1e-5),
                  std::invalid_argument);
}

TEST_CASE("homogeneity probe") {
  const PNormSpace sp(3, 3.0);
  const std::vector<double> degrees{0.0, 1.0, 2.0, 0.5};
  const ProbeReport quartic = homogeneity_probe(PNormSpace(3, 4.0), 4.0, quartic_operator(3), degrees, 50, 3);
  CHECK(quartic.verdict);
  REQUIRE(quartic.observations.size() == 4);
  CHECK(quartic.observations[1].deviation == 0.0);
  CHECK(quartic.metrics.count("yosida_max_deviation") == 1);

  const ProbeReport id = homogeneity_probe(PNormSpace(3, 2.0), 2.0, identity_operator(3), degrees, 50, 3);
  CHECK(id.verdict);
  CHECK_THROWS_AS(homogeneity_probe(sp, 3.0, identity_operator(3), degrees, 10, 3), std::invalid_argument);
  CHECK_THROWS_AS(homogeneity_probe(PNormSpace(3, 2.0), 2.0, softplus_operator(3), degrees, 10, 3),
                  std::invalid_argument);
}

TEST_CASE("J_phi(2x) = 4 J_phi x for the p = 3 power gauge") {
  const PNormSpace sp(4, 3.0);
  const Gauge g = power_gauge(3.0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    SampleStream rng(12, i);
    const Point x = sample_cube(rng, 4, 2.0);
    const DualPoint jx = gauge_duality(sp, g, x);
    const DualPoint j2x = gauge_duality(sp, g, 2.0 * x);
    CHECK(dual_norm(sp, j2x - 4.0 * jx) <= 1e-10 * (1.0 + 4.0 * dual_norm(sp, jx)));
  }
}

TEST_CASE("resolvent audit over a small fixture slice") {
  const auto lambdas = fixture_lambdas();
  for (const Fixture& f : fixture_grid(2)) {
    if (f.gauge.label() != "log1p") continue;
    ProbeOptions opts;
    opts.solver.tol = 1e-8;
    const ProbeReport r = resolvent_audit(f.space, f.gauge, f.op, lambdas, 2, 4, 1e-7, opts);
    CHECK_MESSAGE(r.verdict, f.label());
    CHECK(r.metrics.at("solves") == 10.0);
  }
}

TEST_CASE("oracle and surjectivity audits") {
  const ProbeReport o = oracle_audit(20, 5, 9);
  CHECK(o.verdict);
  const PNormSpace sp(3, 1.5);
  const ProbeReport s = surjectivity_audit(sp, expm1_gauge(), rotation_psd_operator(3), 1.0, 10, 4);
  CHECK(s.verdict);
}
