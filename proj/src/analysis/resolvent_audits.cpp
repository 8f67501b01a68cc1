#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "analysis/common.hpp"
#include "yosida/analysis.hpp"
#include "yosida/sampling.hpp"

namespace yosida {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void describe(ProbeReport& rep, const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a) {
  rep.parameters["p"] = detail::fmt(sp.p());
  rep.parameters["n"] = std::to_string(sp.dim());
  rep.parameters["gauge"] = g.label();
  rep.parameters["operator"] = a.label();
}

}  // namespace

ProbeReport resolvent_audit(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                            std::span<const double> lambdas, std::size_t points,
                            std::uint64_t seed, double split_tol, const ProbeOptions& opts) {
  if (lambdas.empty() || points == 0) throw std::invalid_argument("resolvent_audit: empty grid");
  std::vector<ResolventJob> jobs;
  for (std::size_t j = 0; j < points; ++j) {
    SampleStream rng(seed, j, streams::kFixtures);
    const Point x = sample_p_ball(rng, sp.dim(), sp.p(), 2.0, j % 2 == 0);
    for (double lambda : lambdas) jobs.push_back({lambda, x});
  }
  const auto solves = solve_batch(sp, g, a, jobs, opts.solver, opts.exec);

  std::vector<double> residual(jobs.size()), split(jobs.size()), scale(jobs.size());
  detail::for_each_index(opts.exec, jobs.size(), [&](std::size_t i) {
    const auto& s = solves[i];
    const auto& job = jobs[i];
    scale[i] = pnorm(sp, job.x);
    if (!s.converged()) {
      residual[i] = split[i] = 0.0;
      return;
    }
    const double fresh = inclusion_residual(sp, g, a, job.lambda, job.x, s.x_lambda);
    residual[i] = fresh / inclusion_scale(sp, g, a, job.lambda, job.x);
    split[i] = splitting_defect(sp, g, job.lambda, job.x, s, opts.solver.inverse_tol) / (1.0 + scale[i]);
  });

  ProbeReport rep;
  rep.label = "resolvent_correctness";
  rep.tolerance = opts.solver.tol;
  describe(rep, sp, g, a);
  rep.parameters["points"] = std::to_string(points);
  rep.parameters["lambdas"] = std::to_string(lambdas.size());
  rep.parameters["seed"] = std::to_string(seed);

  std::size_t failures = 0;
  for (const auto& s : solves) failures += !s.converged();
  const auto wr = detail::worst_of(residual);
  const auto ws = detail::worst_of(split);
  rep.observe(scale[wr.index], wr.value);
  rep.observe(scale[ws.index], ws.value, split_tol);
  rep.observe(double(solves.size()), double(failures), 0.0);
  rep.metrics["solves"] = double(solves.size());
  rep.metrics["solver_failures"] = double(failures);
  rep.metrics["worst_relative_residual"] = wr.value;
  rep.metrics["worst_splitting_defect"] = ws.value;
  rep.finalize();
  return rep;
}

ProbeReport oracle_audit(std::size_t instances, std::size_t max_dim, std::uint64_t seed,
                         double tol, const ProbeOptions& opts) {
  if (instances == 0 || max_dim == 0) throw std::invalid_argument("oracle_audit: empty instance set");
  const Gauge g = normalized_gauge();
  std::vector<double> dev_x(instances), dev_a(instances), lam(instances);
  detail::for_each_index(opts.exec, instances, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kFixtures);
    const std::size_t n = 1 + rng() % max_dim;
    Eigen::MatrixXd b(n, n), k(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        b(r, c) = rng.normal();
        k(r, c) = rng.normal();
      }
    const Eigen::MatrixXd m = b * b.transpose() / double(n) + (k - k.transpose()) / 2.0;
    const double lambda = std::pow(10.0, rng.uniform(-1.0, 1.0));
    const PNormSpace sp(n, 2.0);
    const MonotoneOperator a = make_linear_psd(m, "random-psd");
    const Point x = sample_p_ball(rng, n, 2.0, 2.0, i % 2 == 0);

    const auto oracle = euclidean_oracle(m, lambda, x);
    const auto s = solve_inclusion(sp, g, a, lambda, x, opts.solver);
    lam[i] = lambda;
    if (!s.converged()) {
      dev_x[i] = dev_a[i] = kNaN;
      return;
    }
    dev_x[i] = (s.x_lambda.vec() - oracle.x_lambda.vec()).norm();
    dev_a[i] = (s.a_lambda.vec() - oracle.a_lambda.vec()).norm();
  });

  ProbeReport rep;
  rep.label = "oracle_equivalence";
  rep.tolerance = tol;
  rep.parameters = {{"instances", std::to_string(instances)},
                    {"solver_tol", detail::fmt(opts.solver.tol)},
                    {"max_dim", std::to_string(max_dim)},
                    {"seed", std::to_string(seed)}};
  const auto wx = detail::worst_of(dev_x);
  const auto wa = detail::worst_of(dev_a);
  rep.observe(lam[wx.index], wx.value);
  rep.observe(lam[wa.index], wa.value);
  rep.finalize();
  return rep;
}

ProbeReport surjectivity_audit(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                               double lambda, std::size_t count, std::uint64_t seed,
                               double residual_tol, double unique_tol, const ProbeOptions& opts) {
  if (count == 0) throw std::invalid_argument("surjectivity_audit: zero count");
  std::vector<double> residual(count), gap(count), scale(count);
  detail::for_each_index(opts.exec, count, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kFixtures);
    const DualPoint y0(sample_p_ball(rng, sp.dim(), sp.q(), 5.0, i % 2 == 0).vec());
    SolverOptions second = opts.solver;
    second.initial = sample_p_ball(rng, sp.dim(), sp.p(), 3.0, false);
    const auto s1 = surjectivity_solve(sp, g, a, lambda, y0, opts.solver);
    const auto s2 = surjectivity_solve(sp, g, a, lambda, y0, second);
    scale[i] = dual_norm(sp, y0);
    if (!s1.converged() || !s2.converged()) {
      residual[i] = gap[i] = kNaN;
      return;
    }
    residual[i] = surjectivity_residual(sp, g, a, lambda, y0, s1.x0) / surjectivity_scale(sp, y0);
    gap[i] = pnorm(sp, s1.x0 - s2.x0);
  });

  ProbeReport rep;
  rep.label = "surjectivity";
  rep.tolerance = residual_tol;
  describe(rep, sp, g, a);
  rep.parameters["lambda"] = detail::fmt(lambda);
  rep.parameters["solver_tol"] = detail::fmt(opts.solver.tol);
  rep.parameters["count"] = std::to_string(count);
  rep.parameters["seed"] = std::to_string(seed);
  const auto wr = detail::worst_of(residual);
  const auto wg = detail::worst_of(gap);
  rep.observe(scale[wr.index], wr.value);
  rep.observe(scale[wg.index], wg.value, unique_tol);
  rep.finalize();
  return rep;
}

}  // namespace yosida
