#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "analysis/common.hpp"
#include "yosida/analysis.hpp"
#include "yosida/sampling.hpp"

namespace yosida {
namespace {

void check_grid(std::span<const double> r_grid, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("estimate_psi: R must be finite and > 0");
  if (r_grid.empty()) throw std::invalid_argument("estimate_psi: empty r_grid");
  if (!(r_grid.front() > 0.0)) throw std::invalid_argument("estimate_psi: r_grid must lie in (0, R]");
  for (std::size_t k = 1; k < r_grid.size(); ++k)
    if (!(r_grid[k] > r_grid[k - 1]))
      throw std::invalid_argument("estimate_psi: r_grid must be strictly increasing");
  if (r_grid.back() > radius) throw std::invalid_argument("estimate_psi: r_grid must lie in (0, R]");
}

// Index of the largest grid radius <= rho, or -1.
long shell_of(std::span<const double> r_grid, double rho) {
  const auto it = std::upper_bound(r_grid.begin(), r_grid.end(), rho);
  return static_cast<long>(it - r_grid.begin()) - 1;
}

}  // namespace

double monotone_quotient(const PNormSpace& sp, const Gauge& g, const Point& x0, const Point& x) {
  const Point h = x - x0;
  const double e = pnorm(sp, h);
  if (!(e > 0.0)) throw std::invalid_argument("monotone_quotient: x coincides with x0");
  return dual_pairing(gauge_duality(sp, g, x) - gauge_duality(sp, g, x0), h) / e;
}

double PsiCurve::at(double r) const {
  const long k = shell_of(r_grid, r);
  return k < 0 ? 0.0 : psi_hat[static_cast<std::size_t>(k)];
}

PsiCurve estimate_psi(const PNormSpace& sp, const Gauge& g, const Point& x0, double radius,
                      std::span<const double> r_grid, std::size_t samples, std::uint64_t seed,
                      Execution exec) {
  check_grid(r_grid, radius);
  if (samples < 1000) throw std::invalid_argument("estimate_psi: samples must be >= 1000");
  if (x0.size() != sp.dim()) throw std::invalid_argument("estimate_psi: x0 dimension mismatch");

  const std::size_t k_count = r_grid.size();
  const double r_min = r_grid.front();
  std::vector<double> quotient(samples);
  std::vector<long> shell(samples);
  detail::for_each_index(exec, samples, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kPsiEstimate);
    const Point d = sample_p_sphere(rng, sp.dim(), sp.p());
    const double rho = i % 4 == 0 ? r_grid[(i / 4) % k_count] : rng.uniform(r_min, radius);
    quotient[i] = monotone_quotient(sp, g, x0, x0 + rho * d);
    shell[i] = shell_of(r_grid, rho);
  });

  std::vector<double> bucket(k_count, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < samples; ++i)
    if (shell[i] >= 0) {
      double& b = bucket[static_cast<std::size_t>(shell[i])];
      b = std::min(b, quotient[i]);
    }

  PsiCurve curve;
  curve.x0 = x0;
  curve.radius = radius;
  curve.r_grid.assign(r_grid.begin(), r_grid.end());
  curve.psi_hat.assign(k_count, 0.0);
  curve.sample_count = samples;
  curve.seed = seed;
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t k = k_count; k-- > 0;) {
    running = std::min(running, bucket[k]);
    if (!std::isfinite(running))
      throw std::invalid_argument("estimate_psi: no sample reached the outer shell; raise samples");
    curve.psi_hat[k] = running;
  }
  return curve;
}

ProbeReport check_lower_bound(const PNormSpace& sp, const Gauge& g, const Point& x0,
                              const PsiCurve& curve, std::size_t fresh_samples,
                              std::uint64_t seed, double slack, Execution exec) {
  if (x0.size() != sp.dim() || curve.x0.size() != sp.dim() || !(curve.x0 == x0))
    throw std::invalid_argument("check_lower_bound: curve was estimated for a different space or x0");
  if (curve.r_grid.empty() || curve.psi_hat.size() != curve.r_grid.size())
    throw std::invalid_argument("check_lower_bound: malformed curve");
  if (fresh_samples == 0) throw std::invalid_argument("check_lower_bound: zero samples");

  const double r_min = curve.r_grid.front();
  std::vector<double> margin(fresh_samples), quotient(fresh_samples);
  std::vector<long> shell(fresh_samples);
  std::vector<char> violated(fresh_samples);
  detail::for_each_index(exec, fresh_samples, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kPsiFresh);
    const Point d = sample_p_sphere(rng, sp.dim(), sp.p());
    const double rho = rng.uniform(r_min, curve.radius);
    const double bound = curve.at(rho);
    quotient[i] = monotone_quotient(sp, g, x0, x0 + rho * d);
    shell[i] = shell_of(curve.r_grid, rho);
    margin[i] = bound - quotient[i];
    violated[i] = margin[i] > slack * (1.0 + bound);
  });

  // Refined curve: suffix minimum over estimator and fresh samples together,
  // i.e. psi_hat lowered wherever a fresh sample undercuts it.
  const std::size_t k_count = curve.r_grid.size();
  std::vector<double> fresh_min(k_count, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < fresh_samples; ++i) {
    double& b = fresh_min[static_cast<std::size_t>(shell[i])];
    b = std::min(b, quotient[i]);
  }
  std::vector<double> refined(k_count);
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t k = k_count; k-- > 0;) {
    running = std::min({running, fresh_min[k], curve.psi_hat[k]});
    refined[k] = running;
  }

  const auto w = detail::worst_of(margin);
  std::size_t violations = 0;
  for (char v : violated) violations += v;

  ProbeReport rep;
  rep.label = "psi_lower_bound";
  rep.tolerance = std::nextafter(1.0, 0.0);
  rep.parameters = {{"p", detail::fmt(sp.p())},
                    {"n", std::to_string(sp.dim())},
                    {"gauge", g.label()},
                    {"R", detail::fmt(curve.radius)},
                    {"fresh_samples", std::to_string(fresh_samples)},
                    {"seed", std::to_string(seed)}};
  // The refined curve stays positive iff the relative shrink is below 1.
  double worst_relative = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    const double shrink = (curve.psi_hat[k] - refined[k]) / curve.psi_hat[k];
    worst_relative = std::max(worst_relative, shrink);
    rep.observe(curve.r_grid[k], shrink);
    rep.trace.push_back({curve.r_grid[k], refined[k]});
  }
  rep.metrics["violations"] = double(violations);
  rep.metrics["violation_rate"] = double(violations) / double(fresh_samples);
  rep.metrics["worst_margin"] = w.value;
  rep.metrics["worst_relative_shrink"] = worst_relative;
  rep.finalize();
  return rep;
}

ProbeReport check_psi_shape(const PsiCurve& curve) {
  ProbeReport rep;
  rep.label = "psi_shape";
  rep.tolerance = 0.0;
  rep.parameters = {{"R", detail::fmt(curve.radius)},
                    {"samples", std::to_string(curve.sample_count)},
                    {"seed", std::to_string(curve.seed)}};
  // -psi_hat <= -DBL_MIN is strict positivity.
  const double positive = -std::numeric_limits<double>::min();
  for (std::size_t k = 0; k < curve.r_grid.size(); ++k) {
    const double drop = k == 0 ? 0.0 : curve.psi_hat[k - 1] - curve.psi_hat[k];
    rep.observe(curve.r_grid[k], drop);
    rep.observe(curve.r_grid[k], -curve.psi_hat[k], positive);
    rep.trace.push_back({curve.r_grid[k], curve.psi_hat[k]});
  }
  rep.finalize();
  return rep;
}

}  // namespace yosida
