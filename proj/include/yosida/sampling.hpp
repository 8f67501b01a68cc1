#pragma once

#include <cstdint>
#include <limits>

#include "yosida/spaces.hpp"

namespace yosida {

/// SplitMix64 generator keyed by (seed, stream, index).
///
/// Each sample of a parallel kernel owns one of these, derived from its
/// index alone, so the drawn values do not depend on thread scheduling.
class SampleStream {
 public:
  using result_type = std::uint64_t;

  SampleStream(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::uint64_t state_;
};

/// Stream identifiers so that independent uses of one seed never collide.
namespace streams {
inline constexpr std::uint64_t kPsiEstimate = 1;
inline constexpr std::uint64_t kPsiFresh = 2;
inline constexpr std::uint64_t kAudit = 3;
inline constexpr std::uint64_t kMonotonicity = 4;
inline constexpr std::uint64_t kBoundedness = 5;
inline constexpr std::uint64_t kHomogeneity = 6;
inline constexpr std::uint64_t kFixtures = 7;
inline constexpr std::uint64_t kConvexity = 8;
}  // namespace streams

/// Point on the unit sphere of the p-norm, distributed as a uniform point of
/// the unit p-ball projected radially (cone measure).
Point sample_p_sphere(SampleStream& rng, std::size_t n, double p);

/// Point uniform in the cube [-radius, radius]^n.
Point sample_cube(SampleStream& rng, std::size_t n, double radius);

/// Point in the closed p-ball of the given radius: even draws on the sphere,
/// odd draws at radius * U^{1/n} (uniform in volume).
Point sample_p_ball(SampleStream& rng, std::size_t n, double p, double radius, bool on_sphere);

}  // namespace yosida
