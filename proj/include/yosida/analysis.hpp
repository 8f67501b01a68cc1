#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "yosida/execution.hpp"
#include "yosida/gauges.hpp"
#include "yosida/operators.hpp"
#include "yosida/resolvent.hpp"
#include "yosida/spaces.hpp"

namespace yosida {

struct Observation {
  double input_scale = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
};

/// Outcome of a numerical check. `verdict` is pass iff every observation's
/// deviation is <= its tolerance (NaN deviations fail). `tolerance` is the
/// headline threshold of the check; individual observations may carry a
/// different one (e.g. a failure-rate cap next to a growth bound).
struct ProbeReport {
  std::string label;
  std::map<std::string, std::string> parameters;
  std::vector<Observation> observations;
  double tolerance = 0.0;
  bool verdict = false;
  /// Recorded quantities that do not enter the verdict.
  std::map<std::string, double> metrics;
  /// Raw per-step data backing the observations (e.g. (d_n, e_n) pairs).
  std::vector<std::array<double, 2>> trace;

  void observe(double input_scale, double deviation) {
    observations.push_back({input_scale, deviation, tolerance});
  }
  void observe(double input_scale, double deviation, double tol) {
    observations.push_back({input_scale, deviation, tol});
  }
  /// Sets and returns the verdict from the observations.
  bool finalize();
};

// ---------------------------------------------------------------------------
// Inequality audits over random samples.

/// Checks |<J_phi x, x> - phi(|x|)|x|| <= tol (1 + phi(|x|)|x|) and
/// ||J_phi x|_q - phi(|x|)| <= tol (1 + phi(|x|)) on `triples` random
/// (space, gauge, x) draws from the given lists.
ProbeReport audit_duality_axioms(std::span<const PNormSpace> spaces, std::span<const Gauge> gauges,
                                 std::size_t triples, std::uint64_t seed, double tol = 1e-9,
                                 Execution exec = Execution::parallel);

/// Checks <J_phi u1 - J_phi u0, u1 - u0> >= (phi(|u1|) - phi(|u0|))(|u1| - |u0|) - slack
/// and the monotonicity of J_phi on `pairs` random pairs in the p-ball.
ProbeReport audit_alber(const PNormSpace& sp, const Gauge& g, std::size_t pairs, double radius,
                        std::uint64_t seed, double slack = 1e-10,
                        Execution exec = Execution::parallel);

/// Checks |J_{phi^{-1}}(J_phi x) - x|_p <= tol (1 + |x|_p).
ProbeReport audit_inverse_roundtrip(std::span<const PNormSpace> spaces,
                                    std::span<const Gauge> gauges, std::size_t samples,
                                    std::uint64_t seed, double tol = 1e-7,
                                    Execution exec = Execution::parallel);

/// Checks |J(sx) - sJx| and, for power gauges, |J_phi(sx) - s^{p-1} J_phi x|
/// relative to (1 + magnitude), over s in [0, 10].
ProbeReport audit_duality_homogeneity(const PNormSpace& sp, const Gauge& g, std::size_t samples,
                                      std::uint64_t seed, double tol = 1e-9,
                                      Execution exec = Execution::parallel);

// ---------------------------------------------------------------------------
// Lower-bound modulus psi.

/// <J_phi x - J_phi x0, x - x0> / |x - x0|.
double monotone_quotient(const PNormSpace& sp, const Gauge& g, const Point& x0, const Point& x);

struct PsiCurve {
  Point x0;
  double radius = 0.0;
  std::vector<double> r_grid;
  std::vector<double> psi_hat;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;

  /// psi_hat at the largest grid radius <= r; 0 below the grid.
  double at(double r) const;
};

/// Sampled estimate of psi(r) = inf { quotient(x) : r <= |x - x0| <= R }.
///
/// Samples x = x0 + rho d with d on the unit p-sphere. One sample in four is
/// placed exactly on a grid shell rho = r_k (cycling through the grid); the
/// rest take rho uniform on [r_grid.front(), R]. psi_hat(r_k) is the minimum
/// quotient over samples with rho >= r_k (suffix minimum), so the curve is
/// nondecreasing by construction and overestimates the true infimum.
PsiCurve estimate_psi(const PNormSpace& sp, const Gauge& g, const Point& x0, double radius,
                      std::span<const double> r_grid, std::size_t samples, std::uint64_t seed,
                      Execution exec = Execution::parallel);

/// Draws fresh samples (independent stream) and measures how far the
/// quotient falls below psi_hat at the sample's shell. Metrics record the
/// violation count, rate and worst margin. The refined curve (suffix minimum
/// over estimator and fresh samples, kept in the trace) is psi_hat shrunk by
/// the observed margins; the verdict passes when it stays positive on every
/// grid radius. Observations are the relative shrink per radius.
ProbeReport check_lower_bound(const PNormSpace& sp, const Gauge& g, const Point& x0,
                              const PsiCurve& curve, std::size_t fresh_samples,
                              std::uint64_t seed, double slack = 1e-12,
                              Execution exec = Execution::parallel);

/// Shape invariants of a curve: psi_hat nondecreasing along the grid and
/// strictly positive. Two observations per grid point.
ProbeReport check_psi_shape(const PsiCurve& curve);

// ---------------------------------------------------------------------------
// Sequence checks (finite dimensions: weak and strong convergence coincide).

/// x0 + direction / n for n = 1..count.
std::vector<Point> shrinking_ray(const Point& x0, const Point& direction, std::size_t count);
/// Points of norm |x0|_p obtained by rotating x0 in the (0, 1) coordinate
/// plane through angles in [pi/2, 3pi/2); they stay away from x0.
std::vector<Point> rotating_sphere(const PNormSpace& sp, const Point& x0, std::size_t count);
std::vector<Point> constant_sequence(const Point& x0, std::size_t count);

/// Trend test on pairs (d_n, e_n): E(delta) = max { e_n : d_n <= delta }
/// evaluated on decades delta = max(d) 10^-j. When the d values span at
/// least two decades, E at the smallest populated decade must be at most
/// half of E at the top one; otherwise the hypothesis d_n -> 0 is not
/// observed and the check passes vacuously. All-zero d requires all-zero e;
/// non-finite pairs fail.
ProbeReport convergence_trend(std::string label, std::span<const std::array<double, 2>> pairs);

/// d_n = <J_phi x_n - J_phi x0, x_n - x0>, e_n = |x_n - x0|; d_n -> 0 must
/// force e_n -> 0.
ProbeReport check_convergence_corollary(const PNormSpace& sp, const Gauge& g, const Point& x0,
                                        std::span<const Point> sequence);

/// Same machinery on tail suprema: L_k = sup_{n>=k} d_n (the limsup
/// condition), S_k = sup_{n>=k} e_n.
ProbeReport check_s_plus(const PNormSpace& sp, const Gauge& g, const Point& x0,
                         std::span<const Point> sequence);

// ---------------------------------------------------------------------------
// Resolvent probes.

struct ProbeOptions {
  SolverOptions solver = [] {
    SolverOptions s;
    s.tol = 1e-10;
    return s;
  }();
  Execution exec = Execution::parallel;
};

/// Samples (lambda, x) on [lambda1, lambda2] x closed p-ball and returns the
/// largest |A^phi_lambda x|_q. The probe runs at grid_size and 2 grid_size
/// (grid_size lambdas times grid_size points each); it passes when K changes
/// by at most 10% and at most 1% of solves fail. Returns K from the finer grid.
std::pair<double, ProbeReport> boundedness_probe(const PNormSpace& sp, const Gauge& g,
                                                 const MonotoneOperator& a, double ball_radius,
                                                 double lambda1, double lambda2,
                                                 std::size_t grid_size, std::uint64_t seed,
                                                 const ProbeOptions& opts = {});

/// Solves along lambda_n = lambda0 (1 + s 2^-n), x_n = x0 + 2^-n direction for
/// s = +1 and -1, recording delta_n = |A_{lambda_n} x_n - A_{lambda0} x0|_q and
/// gamma_n = |J_{lambda_n} x_n - J_{lambda0} x0|_p. Passes when the last step
/// is below tol and the second half of each series is nonincreasing up to
/// solver noise. The trace holds (n, delta_n) for s = +1.
ProbeReport continuity_probe(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                             double lambda0, const Point& x0, std::size_t decay_steps,
                             const Point& direction, double tol, const ProbeOptions& opts = {});

/// q(t) = lambda1 t + (1 - t) lambda2.
double homotopy_parameter(double lambda1, double lambda2, double t);

/// Solves at every lambda for `points` random x in the p-ball of radius 2 and
/// checks, by fresh evaluation, residual <= tol * scale and the splitting
/// defect |x - x_lambda - J_phi^{-1}(lambda a_lambda)|_p <= split_tol (1 + |x|_p).
/// Solves that do not converge count as failures (tolerance 0).
ProbeReport resolvent_audit(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                            std::span<const double> lambdas, std::size_t points,
                            std::uint64_t seed, double split_tol = 1e-7,
                            const ProbeOptions& opts = {});

/// Iterative solver vs `euclidean_oracle` on random Euclidean instances with
/// M = B B^T + S (S skew), n in [1, max_dim], lambda log-uniform in [0.1, 10].
/// Compares both x_lambda and A_lambda x in the 2-norm.
ProbeReport oracle_audit(std::size_t instances, std::size_t max_dim, std::uint64_t seed,
                         double tol = 1e-7, const ProbeOptions& opts = {});

/// Solves A x0 + lambda J_phi x0 = y0 for `count` random y0 (q-ball of radius
/// 5), once from 0 and once from a random start; checks residual <=
/// residual_tol * scale and agreement of the two solutions within unique_tol.
/// The solves run at opts.solver.tol, which should be tighter than
/// residual_tol: slow-growing gauges put solutions far out where a relative
/// residual translates into a large displacement.
ProbeReport surjectivity_audit(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                               double lambda, std::size_t count, std::uint64_t seed,
                               double residual_tol = 1e-8, double unique_tol = 1e-6,
                               const ProbeOptions& opts = {});

/// t0 + sign / n for n = 1..last_n, keeping only terms inside [0, 1].
std::vector<double> reciprocal_t_sequence(double t0, std::size_t last_n, int sign);

/// y0 = A^phi_{q(t0)} x0, y_n = A^phi_{q(t_n)} x0; passes when the last
/// |y_n - y0|_q is <= tol. Observations are (|t_n - t0|, |y_n - y0|_q).
ProbeReport homotopy_check(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                           double lambda1, double lambda2, std::span<const double> t_sequence,
                           double t0, const Point& x0, double tol, const ProbeOptions& opts = {});

/// For the power gauge r^{p-1} and an operator declared homogeneous of degree
/// p - 1: checks A(sx) = s^{p-1} A x and J_phi(sx) = s^{p-1} J_phi x on random
/// x for each s in `degrees`. Whether the Yosida approximant inherits the
/// pattern is recorded in the metrics but does not affect the verdict.
ProbeReport homogeneity_probe(const PNormSpace& sp, double gauge_exponent,
                              const MonotoneOperator& a, std::span<const double> degrees,
                              std::size_t samples, std::uint64_t seed, double tol = 1e-10,
                              const ProbeOptions& opts = {});

}  // namespace yosida
