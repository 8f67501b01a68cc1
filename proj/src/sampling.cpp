#include "yosida/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace yosida {
namespace {

constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index, std::uint64_t stream)
    : state_(mix(mix(seed ^ 0x6a09e667f3bcc908ULL) ^ mix(index + 0x9e3779b97f4a7c15ULL * stream))) {}

SampleStream::result_type SampleStream::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double SampleStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double SampleStream::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Point sample_p_sphere(SampleStream& rng, std::size_t n, double p) {
  // Coordinates with density proportional to exp(-|t|^p): |t| = G^{1/p} with
  // G ~ Gamma(1/p). The normalized vector follows the cone measure, the same
  // law as a uniform point of the ball projected radially.
  std::gamma_distribution<double> gamma(1.0 / p, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(n));
  for (;;) {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double magnitude = std::pow(gamma(rng), 1.0 / p);
      z[i] = rng.uniform() < 0.5 ? -magnitude : magnitude;
    }
    const double r = lp_norm(z, p);
    if (r > 0.0 && std::isfinite(r)) return Point(z / r);
  }
}

Point sample_cube(SampleStream& rng, std::size_t n, double radius) {
  Eigen::VectorXd z(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.uniform(-radius, radius);
  return Point(std::move(z));
}

Point sample_p_ball(SampleStream& rng, std::size_t n, double p, double radius, bool on_sphere) {
  Point dir = sample_p_sphere(rng, n, p);
  const double rho =
      on_sphere ? radius : radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  return rho * dir;
}

}  // namespace yosida
