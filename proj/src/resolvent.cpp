#include "yosida/resolvent.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "monotone_solver.hpp"

namespace yosida {
namespace {

void check_inputs(const PNormSpace& sp, const MonotoneOperator& a, double lambda,
                  const SolverOptions& opts, std::size_t vector_dim, const char* where) {
  if (!std::isfinite(lambda) || !(lambda > 0.0))
    throw std::invalid_argument(std::string(where) + ": lambda must be finite and > 0");
  if (!(opts.tol > 0.0)) throw std::invalid_argument(std::string(where) + ": tol must be > 0");
  if (opts.max_iter == 0) throw std::invalid_argument(std::string(where) + ": max_iter must be > 0");
  if (a.dim() != sp.dim() || vector_dim != sp.dim())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

SolverRoute pick_route(const MonotoneOperator& a, SolverRoute requested) {
  if (requested == SolverRoute::automatic)
    return a.potential() ? SolverRoute::variational : SolverRoute::extragradient;
  if (requested == SolverRoute::variational && !a.potential())
    throw std::invalid_argument("variational route requested for an operator without potential");
  if (requested == SolverRoute::closed_form)
    throw std::invalid_argument("closed_form is not an iterative route; use euclidean_oracle");
  return requested;
}

// Iterates that leave the domain of a fast-growing gauge or operator raise
// std::domain_error; the solvers see those as non-finite values and reject
// the step.
detail::MonotoneSystem guarded(const detail::MonotoneSystem& sys) {
  detail::MonotoneSystem out = sys;
  out.field = [&sys](const Eigen::VectorXd& u) {
    try {
      return sys.field(u);
    } catch (const std::domain_error&) {
      return Eigen::VectorXd::Constant(u.size(), std::numeric_limits<double>::quiet_NaN()).eval();
    }
  };
  if (sys.merit) {
    out.merit = [&sys](const Eigen::VectorXd& u) {
      try {
        return sys.merit(u);
      } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
  }
  return out;
}

detail::SystemSolve run_route(SolverRoute route, const detail::MonotoneSystem& sys,
                              Eigen::VectorXd u0, double abs_tol, std::size_t max_iter) {
  const detail::MonotoneSystem safe = guarded(sys);
  if (route == SolverRoute::variational)
    return detail::solve_by_minimization(safe, std::move(u0), abs_tol, max_iter);
  return detail::solve_by_projection(safe, std::move(u0), abs_tol, max_iter);
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::iteration_cap: return "iteration_cap";
    case SolveStatus::stalled: return "stalled";
  }
  return "unknown";
}

std::string_view to_string(SolverRoute route) {
  switch (route) {
    case SolverRoute::automatic: return "automatic";
    case SolverRoute::variational: return "variational";
    case SolverRoute::extragradient: return "extragradient";
    case SolverRoute::closed_form: return "closed_form";
  }
  return "unknown";
}

double inclusion_residual(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                          double lambda, const Point& x, const Point& u) {
  const DualPoint r = gauge_duality(sp, g, u - x) + lambda * a.evaluate(u);
  return dual_norm(sp, r);
}

double inclusion_scale(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                       double lambda, const Point& x) {
  return 1.0 + g.eval(pnorm(sp, x)) + lambda * dual_norm(sp, a.evaluate(x));
}

ResolventSolve solve_inclusion(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                               double lambda, const Point& x, const SolverOptions& opts) {
  check_inputs(sp, a, lambda, opts, x.size(), "solve_inclusion");
  const SolverRoute route = pick_route(a, opts.route);
  const double scale = inclusion_scale(sp, g, a, lambda, x);

  Point u0 = opts.initial.value_or(x);
  if (opts.seed_from_closed_form && sp.is_euclidean() && g.is_normalized() &&
      a.closed_form_resolvent())
    u0 = (*a.closed_form_resolvent())(lambda, x);
  if (u0.size() != sp.dim()) throw std::invalid_argument("solve_inclusion: initial iterate dimension");

  detail::MonotoneSystem sys;
  sys.field = [&](const Eigen::VectorXd& u) {
    const Point up(u);
    return (gauge_duality(sp, g, up - x) + lambda * a.evaluate(up)).vec();
  };
  sys.residual_norm = [&](const Eigen::VectorXd& r) { return lp_norm(r, sp.q()); };
  if (route == SolverRoute::variational) {
    const auto& f = *a.potential();
    sys.merit = [&](const Eigen::VectorXd& u) {
      const Point up(u);
      return lambda * f(up) + g.antiderivative(pnorm(sp, up - x));
    };
  }

  const detail::SystemSolve raw = run_route(route, sys, u0.vec(), opts.tol * scale, opts.max_iter);

  ResolventSolve out;
  out.x_lambda = Point(raw.u);
  out.a_lambda = (1.0 / lambda) * gauge_duality(sp, g, x - out.x_lambda);
  out.residual = inclusion_residual(sp, g, a, lambda, x, out.x_lambda);
  out.residual_scale = scale;
  out.iterations = raw.iterations;
  out.route = route;
  if (out.residual <= opts.tol * scale) {
    out.status = SolveStatus::converged;
  } else {
    out.status = raw.status == SolveStatus::converged ? SolveStatus::stalled : raw.status;
  }
  return out;
}

DualPoint yosida(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a, double lambda,
                 const Point& x, const SolverOptions& opts) {
  ResolventSolve s = solve_inclusion(sp, g, a, lambda, x, opts);
  if (!s.converged()) {
    std::ostringstream msg;
    msg << "yosida: solve ended with status " << to_string(s.status) << " (residual " << s.residual
        << ", target " << opts.tol * s.residual_scale << ")";
    throw SolveFailure(msg.str(), std::move(s));
  }
  return s.a_lambda;
}

ResolventSolve euclidean_oracle(const Eigen::MatrixXd& m, double lambda, const Point& x) {
  if (!std::isfinite(lambda) || !(lambda > 0.0))
    throw std::invalid_argument("euclidean_oracle: lambda must be finite and > 0");
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != x.size())
    throw std::invalid_argument("euclidean_oracle: dimension mismatch");

  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m.rows(), m.cols()) + lambda * m;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible())
    throw std::domain_error("euclidean_oracle: I + lambda M is singular (M is not monotone)");

  ResolventSolve out;
  out.x_lambda = Point(lu.solve(x.vec()));
  out.a_lambda = DualPoint(m * out.x_lambda.vec());
  out.residual = ((out.x_lambda.vec() - x.vec()) + lambda * out.a_lambda.vec()).norm();
  out.residual_scale = 1.0 + x.vec().norm() + lambda * (m * x.vec()).norm();
  out.status = SolveStatus::converged;
  out.route = SolverRoute::closed_form;
  return out;
}

double splitting_defect(const PNormSpace& sp, const Gauge& g, double lambda, const Point& x,
                        const ResolventSolve& solve, double inverse_tol) {
  const Point back = inverse_gauge_duality(sp, g, lambda * solve.a_lambda, inverse_tol);
  return pnorm(sp, x - (solve.x_lambda + back));
}

double surjectivity_residual(const PNormSpace& sp, const Gauge& g, const MonotoneOperator& a,
                             double lambda, const DualPoint& y0, const Point& x0) {
  return dual_norm(sp, a.evaluate(x0) + lambda * gauge_duality(sp, g, x0) - y0);
}

double surjectivity_scale(const PNormSpace& sp, const DualPoint& y0) {
  return 1.0 + dual_norm(sp, y0);
}

SurjectivitySolve surjectivity_solve(const PNormSpace& sp, const Gauge& g,
                                     const MonotoneOperator& a, double lambda,
                                     const DualPoint& y0, const SolverOptions& opts) {
  check_inputs(sp, a, lambda, opts, y0.size(), "surjectivity_solve");
  const SolverRoute route = pick_route(a, opts.route);
  const double scale = surjectivity_scale(sp, y0);
  const Point u0 = opts.initial.value_or(Point::zero(sp.dim()));

  detail::MonotoneSystem sys;
  sys.field = [&](const Eigen::VectorXd& u) {
    const Point up(u);
    return (lambda * gauge_duality(sp, g, up) + a.evaluate(up) - y0).vec();
  };
  sys.residual_norm = [&](const Eigen::VectorXd& r) { return lp_norm(r, sp.q()); };
  if (route == SolverRoute::variational) {
    const auto& f = *a.potential();
    sys.merit = [&](const Eigen::VectorXd& u) {
      const Point up(u);
      return lambda * g.antiderivative(pnorm(sp, up)) + f(up) - y0.vec().dot(u);
    };
  }

  const detail::SystemSolve raw = run_route(route, sys, u0.vec(), opts.tol * scale, opts.max_iter);

  SurjectivitySolve out;
  out.x0 = Point(raw.u);
  out.residual = surjectivity_residual(sp, g, a, lambda, y0, out.x0);
  out.residual_scale = scale;
  out.iterations = raw.iterations;
  out.route = route;
  if (out.residual <= opts.tol * scale) {
    out.status = SolveStatus::converged;
  } else {
    out.status = raw.status == SolveStatus::converged ? SolveStatus::stalled : raw.status;
  }
  return out;
}

std::vector<ResolventSolve> solve_batch(const PNormSpace& sp, const Gauge& g,
                                        const MonotoneOperator& a,
                                        std::span<const ResolventJob> jobs,
                                        const SolverOptions& opts, Execution exec) {
  std::vector<ResolventSolve> out(jobs.size());
  detail::for_each_index(exec, jobs.size(), [&](std::size_t i) {
    out[i] = solve_inclusion(sp, g, a, jobs[i].lambda, jobs[i].x, opts);
  });
  return out;
}

}  // namespace yosida
