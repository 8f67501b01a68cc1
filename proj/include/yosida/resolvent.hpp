#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "yosida/execution.hpp"
#include "yosida/gauges.hpp"
#include "yosida/operators.hpp"
#include "yosida/spaces.hpp"

namespace yosida {

enum class SolveStatus { converged, iteration_cap, stalled };
enum class SolverRoute { automatic, variational, extragradient, closed_form };

std::string_view to_string(SolveStatus status);
std::string_view to_string(SolverRoute route);

struct SolverOptions {
  /// Relative tolerance on the dual-norm residual; the absolute target is
  /// tol * scale (see `inclusion_scale`, `surjectivity_scale`).
  double tol = 1e-8;
  std::size_t max_iter = 100'000;
  SolverRoute route = SolverRoute::automatic;
  /// Initial iterate; defaults to x for the inclusion and 0 for the
  /// surjectivity equation.
  std::optional<Point> initial;
  /// Euclidean normalized case with a linear operator only: start from the
  /// closed-form resolvent. The residual is still recomputed from scratch.
  bool seed_from_closed_form = false;
  /// Tolerance handed to numeric gauge inversion.
  double inverse_tol = kDefaultInverseTol;
};

/// Output of the regularized inclusion 0 = J_phi(x_lambda - x) + lambda A x_lambda.
struct ResolventSolve {
  Point x_lambda;    ///< resolvent J^phi_lambda x
  DualPoint a_lambda;  ///< Yosida approximant (1/lambda) J_phi(x - x_lambda)
  double residual = 0.0;  ///< |J_phi(x_lambda - x) + lambda A x_lambda|_q, recomputed
  double residual_scale = 1.0;
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::iteration_cap;
  SolverRoute route = SolverRoute::automatic;

  bool converged() const { return status == SolveStatus::converged; }
};

class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& what, ResolventSolve record)
      : std::runtime_error(what), record_(std::move(record)) {}
  const ResolventSolve& record() const { return record_; }

 private:
  ResolventSolve record_;
};

/// |J_phi(u - x) + lambda A u|_q, from fresh evaluations of J_phi and A.
double inclusion_residual(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                          double lambda, const Point& x, const Point& u);
/// 1 + phi(|x|_p) + lambda |A x|_q.
double inclusion_scale(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                       double lambda, const Point& x);

/// Solves 0 = J_phi(u - x) + lambda A u.
///
/// Route selection (automatic): when A carries a potential f, minimizes the
/// convex merit lambda f(u) + Phi(|u - x|_p), whose gradient is exactly the
/// inclusion map; otherwise runs the projection extragradient method on
/// G(u) = J_phi(u - x) + lambda A u. Both stop on the same residual test.
ResolventSolve solve_inclusion(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                               double lambda, const Point& x, const SolverOptions& opts = {});

/// A^phi_lambda x. Throws SolveFailure when the solve does not converge.
DualPoint yosida(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a, double lambda,
                 const Point& x, const SolverOptions& opts = {});

/// Closed form for p = 2, phi(r) = r, A = M: x_lambda = (I + lambda M)^{-1} x,
/// A_lambda x = M x_lambda. Direct LU solve, independent of the iterative path.
ResolventSolve euclidean_oracle(const Eigen::MatrixXd& m, double lambda, const Point& x);

/// |x - x_lambda - J_phi^{-1}(lambda a_lambda)|_p, the splitting defect.
double splitting_defect(const PNormSpace& sp, const Gauge& g, double lambda, const Point& x,
                        const ResolventSolve& solve, double inverse_tol = kDefaultInverseTol);

struct SurjectivitySolve {
  Point x0;
  double residual = 0.0;  ///< |A x0 + lambda J_phi x0 - y0|_q, recomputed
  double residual_scale = 1.0;
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::iteration_cap;
  SolverRoute route = SolverRoute::automatic;

  bool converged() const { return status == SolveStatus::converged; }
};

double surjectivity_residual(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                             double lambda, const DualPoint& y0, const Point& x0);
/// 1 + |y0|_q.
double surjectivity_scale(const PNormSpace& sp, const DualPoint& y0);

/// Solves A x0 + lambda J_phi x0 = y0 (the range of A + lambda J_phi is all
/// of X* for maximal monotone A).
SurjectivitySolve surjectivity_solve(const PNormSpace& sp, const Gauge& g,
                                     const MonotoneOperator& a, double lambda,
                                     const DualPoint& y0, const SolverOptions& opts = {});

struct ResolventJob {
  double lambda;
  Point x;
};

/// Independent solves, run concurrently under Execution::parallel.
std::vector<ResolventSolve> solve_batch(const PNormSpace& sp, const Gauge& g,
                                        const MonotoneOperator& a,
                                        std::span<const ResolventJob> jobs,
                                        const SolverOptions& opts = {},
                                        Execution exec = Execution::parallel);

}  // namespace yosida
