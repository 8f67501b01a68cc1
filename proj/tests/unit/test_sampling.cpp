#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "yosida/sampling.hpp"

using namespace yosida;

TEST_CASE("streams are keyed by seed, index and stream id") {
  SampleStream a(1, 7, streams::kAudit), b(1, 7, streams::kAudit);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t idx = 0; idx < 100; ++idx) firsts.insert(SampleStream(1, idx, 0)());
  firsts.insert(SampleStream(2, 0, 0)());
  firsts.insert(SampleStream(1, 0, 1)());
  CHECK(firsts.size() == 102);
}

TEST_CASE("uniform and normal draws have the right moments") {
  SampleStream rng(9, 0);
  double sum = 0.0, sum2 = 0.0, nsum = 0.0, nsum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK_FALSE((u < 0.0 || u >= 1.0));
    sum += u;
    sum2 += u * u;
    const double z = rng.normal();
    nsum += z;
    nsum2 += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.02));
  CHECK(std::abs(nsum / n) < 0.01);
  CHECK(nsum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sphere and ball samples have the requested norm") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const PNormSpace sp(5, p);
    for (std::uint64_t i = 0; i < 200; ++i) {
      SampleStream rng(3, i);
      CHECK(pnorm(sp, sample_p_sphere(rng, 5, p)) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(pnorm(sp, sample_p_ball(rng, 5, p, 2.5, true)) == doctest::Approx(2.5).epsilon(1e-14));
      CHECK(pnorm(sp, sample_p_ball(rng, 5, p, 2.5, false)) <= 2.5 * (1.0 + 1e-14));
      const Point c = sample_cube(rng, 5, 3.0);
      CHECK(c.vec().cwiseAbs().maxCoeff() <= 3.0);
    }
  }
}

TEST_CASE("sphere directions cover both signs of every coordinate") {
  int pos[3] = {0, 0, 0};
  for (std::uint64_t i = 0; i < 1000; ++i) {
    SampleStream rng(4, i);
    const Point d = sample_p_sphere(rng, 3, 3.0);
    for (int k = 0; k < 3; ++k) pos[k] += d[k] > 0.0;
  }
  for (int k = 0; k < 3; ++k) CHECK(std::abs(pos[k] - 500) < 80);
}

TEST_CASE("sphere law matches radial projection of a uniform ball point") {
  // Oracle: rejection from the cube, then projection.
  for (double p : {1.5, 4.0}) {
    const int n = 3, draws = 40000;
    std::mt19937_64 ref(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double ref_mean = 0.0, lib_mean = 0.0;
    for (int k = 0; k < draws;) {
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = u(ref);
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::pow(std::abs(z[i]), p);
      if (s > 1.0) continue;
      ref_mean += std::abs(z[0]) / std::pow(s, 1.0 / p);
      ++k;
    }
    for (int k = 0; k < draws; ++k) {
      SampleStream rng(12, std::uint64_t(k));
      lib_mean += std::abs(sample_p_sphere(rng, n, p)[0]);
    }
    CHECK(lib_mean / draws == doctest::Approx(ref_mean / draws).epsilon(0.01));
  }
}
