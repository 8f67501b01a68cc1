#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Core>

#include "yosida/resolvent.hpp"

namespace yosida::detail {

/// Equation G(u) = 0 with G: R^n -> (R^n)* continuous and monotone.
struct MonotoneSystem {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> field;
  /// Convex h with grad h = G, when one exists.
  std::function<double(const Eigen::VectorXd&)> merit;
  /// Norm in which the residual G(u) is measured (dual norm of the space).
  std::function<double(const Eigen::VectorXd&)> residual_norm;
};

struct SystemSolve {
  Eigen::VectorXd u;
  double residual = 0.0;
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::iteration_cap;
};

inline constexpr double kStepFloor = 1e-12;

/// Hyperplane-projection extragradient method for monotone equations.
/// Trial point z = u - alpha G(u) with alpha backtracked (halving) until
/// <G(z), G(u)> >= sigma alpha |G(u)|^2, then u is projected onto the
/// hyperplane {v : <G(z), v - z> = 0}, which separates u from the solution
/// set. Converges for any continuous monotone G; no Lipschitz constant is
/// needed. Trial steps are Barzilai-Borwein estimates. alpha below
/// kStepFloor ends the run as `stalled`.
SystemSolve solve_by_projection(const MonotoneSystem& sys, Eigen::VectorXd u0, double abs_tol,
                                std::size_t max_iter);

/// L-BFGS on the merit with Armijo backtracking. When the merit can no
/// longer resolve a decrease (floating-point flatness near the minimizer)
/// the remaining budget is spent in `solve_by_projection`.
SystemSolve solve_by_minimization(const MonotoneSystem& sys, Eigen::VectorXd u0, double abs_tol,
                                  std::size_t max_iter);

}  // namespace yosida::detail
