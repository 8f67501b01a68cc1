#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "analysis/common.hpp"
#include "yosida/analysis.hpp"
#include "yosida/sampling.hpp"

namespace yosida {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxFailureRate = 0.01;
constexpr double kMaxGrowth = 0.10;

void describe(ProbeReport& rep, const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a) {
  rep.parameters["p"] = detail::fmt(sp.p());
  rep.parameters["n"] = std::to_string(sp.dim());
  rep.parameters["gauge"] = g.label();
  rep.parameters["operator"] = a.label();
}

struct GridMax {
  double k_hat = 0.0;
  std::size_t solves = 0;
  std::size_t failures = 0;
};

GridMax boundedness_grid(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                         double ball_radius, double lambda1, double lambda2, std::size_t m,
                         std::uint64_t seed, const ProbeOptions& opts) {
  std::vector<ResolventJob> jobs;
  jobs.reserve(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    // Index-keyed draws: the first m points of a 2m grid repeat the m grid.
    SampleStream rng(seed, j, streams::kBoundedness);
    const Point x = sample_p_ball(rng, sp.dim(), sp.p(), ball_radius, j % 2 == 0);
    for (std::size_t i = 0; i < m; ++i) {
      const double lambda = lambda1 + (lambda2 - lambda1) * double(i) / double(m - 1);
      jobs.push_back({lambda, x});
    }
  }
  const auto solves = solve_batch(sp, g, a, jobs, opts.solver, opts.exec);
  GridMax out;
  out.solves = solves.size();
  for (const auto& s : solves) {
    if (!s.converged()) {
      ++out.failures;
      continue;
    }
    out.k_hat = std::max(out.k_hat, dual_norm(sp, s.a_lambda));
  }
  return out;
}

}  // namespace

bool ProbeReport::finalize() {
  verdict = std::all_of(observations.begin(), observations.end(),
                        [](const Observation& o) { return o.deviation <= o.tolerance; });
  return verdict;
}

std::pair<double, ProbeReport> boundedness_probe(const PNormSpace& sp, const Gauge& g,
                                                 const MonotoneOperator& a, double ball_radius,
                                                 double lambda1, double lambda2,
                                                 std::size_t grid_size, std::uint64_t seed,
                                                 const ProbeOptions& opts) {
  if (!(lambda1 > 0.0) || !(lambda2 > lambda1))
    throw std::invalid_argument("boundedness_probe: need 0 < lambda1 < lambda2");
  if (!(ball_radius > 0.0)) throw std::invalid_argument("boundedness_probe: ball_radius must be > 0");
  if (grid_size < 2) throw std::invalid_argument("boundedness_probe: grid_size must be >= 2");

  const GridMax coarse = boundedness_grid(sp, g, a, ball_radius, lambda1, lambda2, grid_size, seed, opts);
  const GridMax fine = boundedness_grid(sp, g, a, ball_radius, lambda1, lambda2, 2 * grid_size, seed, opts);

  ProbeReport rep;
  rep.label = "boundedness";
  rep.tolerance = kMaxGrowth;
  describe(rep, sp, g, a);
  rep.parameters["ball_radius"] = detail::fmt(ball_radius);
  rep.parameters["lambda1"] = detail::fmt(lambda1);
  rep.parameters["lambda2"] = detail::fmt(lambda2);
  rep.parameters["grid_size"] = std::to_string(grid_size);
  rep.parameters["seed"] = std::to_string(seed);

  const double change = fine.k_hat == coarse.k_hat
                            ? 0.0
                            : std::abs(fine.k_hat - coarse.k_hat) / std::max(coarse.k_hat, fine.k_hat);
  rep.observe(double(grid_size), change);
  const std::size_t failures = coarse.failures + fine.failures;
  const std::size_t solves = coarse.solves + fine.solves;
  rep.observe(double(solves), double(failures) / double(solves), kMaxFailureRate);
  rep.metrics["k_hat_coarse"] = coarse.k_hat;
  rep.metrics["k_hat_fine"] = fine.k_hat;
  rep.metrics["solver_failures"] = double(failures);
  rep.metrics["solves"] = double(solves);
  rep.finalize();
  return {fine.k_hat, rep};
}

ProbeReport continuity_probe(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                             double lambda0, const Point& x0, std::size_t decay_steps,
                             const Point& direction, double tol, const ProbeOptions& opts) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("continuity_probe: lambda0 must be > 0");
  if (decay_steps < 10) throw std::invalid_argument("continuity_probe: decay_steps must be >= 10");
  if (x0.size() != sp.dim() || direction.size() != sp.dim())
    throw std::invalid_argument("continuity_probe: dimension mismatch");

  // Job 0 is the base point; then s = +1 for n = 1..N, then s = -1.
  const std::size_t steps = decay_steps;
  std::vector<ResolventJob> jobs{{lambda0, x0}};
  for (double s : {1.0, -1.0})
    for (std::size_t n = 1; n <= steps; ++n) {
      const double h = std::ldexp(1.0, -int(n));
      jobs.push_back({lambda0 * (1.0 + s * h), x0 + h * direction});
    }
  const auto solves = solve_batch(sp, g, a, jobs, opts.solver, opts.exec);

  ProbeReport rep;
  rep.label = "continuity";
  rep.tolerance = tol;
  describe(rep, sp, g, a);
  rep.parameters["lambda0"] = detail::fmt(lambda0);
  rep.parameters["decay_steps"] = std::to_string(steps);

  std::size_t failures = 0;
  for (const auto& s : solves) failures += !s.converged();
  rep.metrics["solver_failures"] = double(failures);

  // Increments below this are solver noise.
  const double floor =
      1e3 * opts.solver.tol * solves[0].residual_scale * (1.0 + 1.0 / lambda0);
  rep.metrics["noise_floor"] = floor;

  const auto& base = solves[0];
  for (int side = 0; side < 2; ++side) {
    std::vector<double> delta(steps + 1), gamma(steps + 1);
    for (std::size_t n = 1; n <= steps; ++n) {
      const auto& s = solves[side * steps + n];
      const bool ok = base.converged() && s.converged();
      delta[n] = ok ? dual_norm(sp, s.a_lambda - base.a_lambda) : kNaN;
      gamma[n] = ok ? pnorm(sp, s.x_lambda - base.x_lambda) : kNaN;
      if (side == 0) rep.trace.push_back({double(n), delta[n]});
    }
    const double h_final = std::ldexp(1.0, -int(steps));
    rep.observe(h_final, delta[steps]);
    rep.observe(h_final, gamma[steps]);
    double worst_rise = 0.0;
    for (std::size_t n = steps / 2 + 1; n <= steps; ++n) {
      const double rise = std::max({delta[n] - delta[n - 1], gamma[n] - gamma[n - 1], 0.0});
      worst_rise = std::isnan(delta[n] + gamma[n] + delta[n - 1] + gamma[n - 1]) ? kNaN
                                                                              : std::max(worst_rise, rise);
      if (std::isnan(worst_rise)) break;
    }
    rep.observe(double(steps / 2), worst_rise, floor);
    const char* tag = side == 0 ? "plus" : "minus";
    rep.metrics[std::string("delta_final_") + tag] = delta[steps];
    rep.metrics[std::string("gamma_final_") + tag] = gamma[steps];
  }
  rep.finalize();
  return rep;
}

double homotopy_parameter(double lambda1, double lambda2, double t) {
  return lambda1 * t + (1.0 - t) * lambda2;
}

std::vector<double> reciprocal_t_sequence(double t0, std::size_t last_n, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("reciprocal_t_sequence: sign must be +1 or -1");
  std::vector<double> out;
  for (std::size_t n = 1; n <= last_n; ++n) {
    const double t = t0 + double(sign) / double(n);
    if (t >= 0.0 && t <= 1.0) out.push_back(t);
  }
  return out;
}

ProbeReport homotopy_check(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                           double lambda1, double lambda2, std::span<const double> t_sequence,
                           double t0, const Point& x0, double tol, const ProbeOptions& opts) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
    throw std::invalid_argument("homotopy_check: lambda1 and lambda2 must be > 0");
  if (t_sequence.empty()) throw std::invalid_argument("homotopy_check: empty t sequence");
  auto in_unit = [](double t) { return t >= 0.0 && t <= 1.0; };
  if (!in_unit(t0) || !std::all_of(t_sequence.begin(), t_sequence.end(), in_unit))
    throw std::invalid_argument("homotopy_check: t values must lie in [0, 1]");

  std::vector<ResolventJob> jobs{{homotopy_parameter(lambda1, lambda2, t0), x0}};
  for (double t : t_sequence) jobs.push_back({homotopy_parameter(lambda1, lambda2, t), x0});
  const auto solves = solve_batch(sp, g, a, jobs, opts.solver, opts.exec);

  ProbeReport rep;
  rep.label = "homotopy";
  rep.tolerance = tol;
  describe(rep, sp, g, a);
  rep.parameters["lambda1"] = detail::fmt(lambda1);
  rep.parameters["lambda2"] = detail::fmt(lambda2);
  rep.parameters["t0"] = detail::fmt(t0);
  rep.parameters["terms"] = std::to_string(t_sequence.size());

  std::size_t failures = 0;
  const auto& base = solves[0];
  for (std::size_t n = 0; n < t_sequence.size(); ++n) {
    const auto& s = solves[n + 1];
    failures += !s.converged();
    const double dev =
        base.converged() && s.converged() ? dual_norm(sp, s.a_lambda - base.a_lambda) : kNaN;
    // Only the last term is held to the tolerance; earlier terms document the decay.
    const bool last = n + 1 == t_sequence.size();
    rep.observe(std::abs(t_sequence[n] - t0), dev,
                last ? tol : std::numeric_limits<double>::infinity());
    rep.trace.push_back({t_sequence[n], dev});
  }
  rep.metrics["solver_failures"] = double(failures + !base.converged());
  rep.metrics["final_deviation"] = rep.observations.back().deviation;
  rep.finalize();
  return rep;
}

ProbeReport homogeneity_probe(const PNormSpace& sp, double gauge_exponent,
                              const MonotoneOperator& a, std::span<const double> degrees,
                              std::size_t samples, std::uint64_t seed, double tol,
                              const ProbeOptions& opts) {
  const double gamma = gauge_exponent - 1.0;
  if (!a.is_homogeneous_of_degree(gamma))
    throw std::invalid_argument("homogeneity_probe: operator is not declared homogeneous of degree p - 1");
  if (samples == 0 || degrees.empty())
    throw std::invalid_argument("homogeneity_probe: need samples and degrees");
  if (std::any_of(degrees.begin(), degrees.end(), [](double s) { return !(s >= 0.0); }))
    throw std::invalid_argument("homogeneity_probe: degrees must be >= 0");
  const Gauge g = power_gauge(gauge_exponent);
  const std::size_t m = degrees.size();
  const double lambda = 1.0;

  std::vector<double> dev_a(samples * m), dev_j(samples * m), dev_y(samples * m, 0.0);
  std::vector<char> failed(samples * m, 0);
  detail::for_each_index(opts.exec, samples * m, [&](std::size_t idx) {
    const std::size_t i = idx / m;
    const double s = degrees[idx % m];
    SampleStream rng(seed, i, streams::kHomogeneity);
    const Point x = sample_p_ball(rng, sp.dim(), sp.p(), 2.0, i % 2 == 0);
    const double f = std::pow(s, gamma);
    const DualPoint ax = a.evaluate(x);
    const DualPoint jx = gauge_duality(sp, g, x);
    dev_a[idx] = dual_norm(sp, a.evaluate(s * x) - f * ax) / (1.0 + f * dual_norm(sp, ax));
    dev_j[idx] = dual_norm(sp, gauge_duality(sp, g, s * x) - f * jx) / (1.0 + f * dual_norm(sp, jx));
    const auto y1 = solve_inclusion(sp, g, a, lambda, x, opts.solver);
    const auto ys = solve_inclusion(sp, g, a, lambda, s * x, opts.solver);
    if (y1.converged() && ys.converged())
      dev_y[idx] = dual_norm(sp, ys.a_lambda - f * y1.a_lambda) / (1.0 + f * dual_norm(sp, y1.a_lambda));
    else
      failed[idx] = 1;
  });

  ProbeReport rep;
  rep.label = "homogeneity";
  rep.tolerance = tol;
  rep.parameters["p"] = detail::fmt(sp.p());
  rep.parameters["n"] = std::to_string(sp.dim());
  rep.parameters["gauge"] = g.label();
  rep.parameters["operator"] = a.label();
  rep.parameters["samples"] = std::to_string(samples);
  rep.parameters["seed"] = std::to_string(seed);

  double y_worst = 0.0;
  std::size_t failures = 0;
  for (std::size_t k = 0; k < m; ++k) {
    double wa = 0.0, wj = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t idx = i * m + k;
      wa = std::isnan(dev_a[idx]) ? kNaN : std::max(wa, dev_a[idx]);
      wj = std::isnan(dev_j[idx]) ? kNaN : std::max(wj, dev_j[idx]);
      if (failed[idx]) ++failures;
      else y_worst = std::max(y_worst, dev_y[idx]);
    }
    rep.observe(degrees[k], std::isnan(wa) || std::isnan(wj) ? kNaN : std::max(wa, wj));
  }
  rep.metrics["yosida_max_deviation"] = y_worst;
  rep.metrics["yosida_solver_failures"] = double(failures);
  rep.finalize();
  return rep;
}

}  // namespace yosida
