#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "analysis/common.hpp"
#include "yosida/analysis.hpp"

namespace yosida {
namespace {

constexpr std::size_t kDecades = 16;
constexpr double kShrinkRatio = 0.5;

std::vector<std::array<double, 2>> gap_pairs(const PNormSpace& sp, const Gauge& g, const Point& x0,
                                             std::span<const Point> sequence) {
  if (x0.size() != sp.dim()) throw std::invalid_argument("sequence check: x0 dimension mismatch");
  const DualPoint j0 = gauge_duality(sp, g, x0);
  std::vector<std::array<double, 2>> out;
  out.reserve(sequence.size());
  for (const Point& x : sequence) {
    const Point h = x - x0;
    out.push_back({dual_pairing(gauge_duality(sp, g, x) - j0, h), pnorm(sp, h)});
  }
  return out;
}

void describe(ProbeReport& rep, const PNormSpace& sp, const Gauge& g, std::size_t count) {
  rep.parameters["p"] = detail::fmt(sp.p());
  rep.parameters["n"] = std::to_string(sp.dim());
  rep.parameters["gauge"] = g.label();
  rep.parameters["terms"] = std::to_string(count);
}

}  // namespace

std::vector<Point> shrinking_ray(const Point& x0, const Point& direction, std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) out.push_back(x0 + direction / double(n));
  return out;
}

std::vector<Point> rotating_sphere(const PNormSpace& sp, const Point& x0, std::size_t count) {
  if (sp.dim() < 2 || x0.size() != sp.dim())
    throw std::invalid_argument("rotating_sphere: needs dimension >= 2 matching the space");
  if (x0[0] == 0.0 && x0[1] == 0.0)
    throw std::invalid_argument("rotating_sphere: x0 has no component in the (0, 1) plane");
  const double radius = pnorm(sp, x0);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    double frac = std::fmod(double(n) * std::numbers::phi, 1.0);
    const double theta = std::numbers::pi * (0.5 + frac);
    Point x = x0;
    x[0] = std::cos(theta) * x0[0] - std::sin(theta) * x0[1];
    x[1] = std::sin(theta) * x0[0] + std::cos(theta) * x0[1];
    out.push_back(x * (radius / pnorm(sp, x)));
  }
  return out;
}

std::vector<Point> constant_sequence(const Point& x0, std::size_t count) {
  return std::vector<Point>(count, x0);
}

ProbeReport convergence_trend(std::string label, std::span<const std::array<double, 2>> pairs) {
  ProbeReport rep;
  rep.label = std::move(label);
  rep.tolerance = kShrinkRatio;
  if (pairs.empty()) throw std::invalid_argument("convergence_trend: empty sequence");

  std::size_t non_finite = 0;
  for (const auto& [d, e] : pairs) non_finite += !std::isfinite(d) || !std::isfinite(e);
  if (non_finite > 0) {
    rep.metrics["non_finite"] = double(non_finite);
    rep.observe(0.0, std::numeric_limits<double>::quiet_NaN());
    rep.finalize();
    return rep;
  }

  double d_max = -INFINITY, e_max = 0.0, d_min = INFINITY;
  for (const auto& [d, e] : pairs) {
    d_max = std::max(d_max, d);
    d_min = std::min(d_min, d);
    e_max = std::max(e_max, e);
  }
  rep.metrics["d_max"] = d_max;
  rep.metrics["d_min"] = d_min;
  rep.metrics["e_max"] = e_max;

  if (!(d_max > 0.0)) {
    // d vanishes identically; e must vanish too.
    rep.observe(0.0, e_max, 0.0);
    rep.metrics["populated_decades"] = 0.0;
    rep.finalize();
    return rep;
  }

  std::vector<std::array<double, 2>> levels;
  for (std::size_t j = 0; j < kDecades; ++j) {
    const double delta = d_max * std::pow(10.0, -double(j));
    double level_max = -1.0;
    for (const auto& [d, e] : pairs)
      if (d <= delta) level_max = std::max(level_max, e);
    if (level_max < 0.0) break;
    levels.push_back({delta, level_max});
  }
  rep.trace = levels;
  rep.metrics["populated_decades"] = double(levels.size());

  if (levels.size() >= 3) {
    const double first = levels.front()[1];
    const double last = levels.back()[1];
    rep.observe(levels.back()[0], first > 0.0 ? last / first : 0.0);
    rep.metrics["vacuous"] = 0.0;
  } else {
    // d_n stays within two decades of its maximum: d_n -> 0 is not observed.
    rep.observe(levels.front()[0], 0.0);
    rep.metrics["vacuous"] = 1.0;
  }
  rep.finalize();
  return rep;
}

ProbeReport check_convergence_corollary(const PNormSpace& sp, const Gauge& g, const Point& x0,
                                        std::span<const Point> sequence) {
  const auto pairs = gap_pairs(sp, g, x0, sequence);
  ProbeReport rep = convergence_trend("convergence_corollary", pairs);
  describe(rep, sp, g, sequence.size());
  return rep;
}

ProbeReport check_s_plus(const PNormSpace& sp, const Gauge& g, const Point& x0,
                         std::span<const Point> sequence) {
  auto pairs = gap_pairs(sp, g, x0, sequence);
  // Tail suprema, computed back to front.
  for (std::size_t k = pairs.size(); k-- > 1;) {
    pairs[k - 1][0] = std::max(pairs[k - 1][0], pairs[k][0]);
    pairs[k - 1][1] = std::max(pairs[k - 1][1], pairs[k][1]);
  }
  ProbeReport rep = convergence_trend("s_plus", pairs);
  describe(rep, sp, g, sequence.size());
  if (!pairs.empty()) rep.metrics["limsup_d"] = pairs.back()[0];
  return rep;
}

}  // namespace yosida
