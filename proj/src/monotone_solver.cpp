#include "monotone_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

namespace yosida::detail {
namespace {

constexpr double kSeparation = 1e-4;  // sigma in the separation test
constexpr double kArmijo = 1e-4;
constexpr std::size_t kMemory = 8;
constexpr double kFlatMerit = 1e-12;
constexpr double kDecrease = 0.1;
constexpr double kCurvature = 0.9;

double clamp_step(double s) { return std::clamp(s, 1e-10, 1e10); }

}  // namespace

SystemSolve solve_by_projection(const MonotoneSystem& sys, Eigen::VectorXd u0, double abs_tol,
                                std::size_t max_iter) {
  SystemSolve out;
  out.u = std::move(u0);
  Eigen::VectorXd g = sys.field(out.u);
  out.residual = sys.residual_norm(g);
  if (!std::isfinite(out.residual)) {
    out.status = SolveStatus::stalled;
    return out;
  }

  double beta = 1.0;
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    if (out.residual <= abs_tol) {
      out.status = SolveStatus::converged;
      return out;
    }

    const double gg = g.squaredNorm();
    double alpha = beta;
    Eigen::VectorXd z;
    Eigen::VectorXd gz;
    bool separated = false;
    while (alpha >= kStepFloor) {
      z = out.u - alpha * g;
      gz = sys.field(z);
      if (gz.allFinite()) {
        const double rz = sys.residual_norm(gz);
        if (rz <= abs_tol) {
          out.u = std::move(z);
          out.residual = rz;
          out.status = SolveStatus::converged;
          ++out.iterations;
          return out;
        }
        if (gz.dot(g) >= kSeparation * alpha * gg) {
          separated = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!separated) {
      out.status = SolveStatus::stalled;
      return out;
    }

    const double xi = gz.dot(out.u - z) / gz.squaredNorm();
    Eigen::VectorXd u_next = out.u - xi * gz;
    Eigen::VectorXd g_next = sys.field(u_next);
    if (!g_next.allFinite()) {
      u_next = z;
      g_next = gz;
    }

    const Eigen::VectorXd s = u_next - out.u;
    const Eigen::VectorXd y = g_next - g;
    const double sy = s.dot(y);
    beta = sy > 0.0 ? clamp_step(s.squaredNorm() / sy) : clamp_step(2.0 * alpha);

    out.u = std::move(u_next);
    g = std::move(g_next);
    out.residual = sys.residual_norm(g);
  }
  out.status = out.residual <= abs_tol ? SolveStatus::converged : SolveStatus::iteration_cap;
  return out;
}

SystemSolve solve_by_minimization(const MonotoneSystem& sys, Eigen::VectorXd u0, double abs_tol,
                                  std::size_t max_iter) {
  Eigen::VectorXd u = std::move(u0);
  double h = sys.merit(u);
  Eigen::VectorXd g = sys.field(u);
  double residual = sys.residual_norm(g);

  std::deque<Eigen::VectorXd> s_hist;
  std::deque<Eigen::VectorXd> y_hist;
  std::deque<double> rho_hist;

  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    if (residual <= abs_tol) return SystemSolve{u, residual, it, SolveStatus::converged};

    // Two-loop recursion for d = -H g.
    Eigen::VectorXd d = -g;
    std::vector<double> a(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      a[k] = rho_hist[k] * s_hist[k].dot(d);
      d -= a[k] * y_hist[k];
    }
    if (!s_hist.empty()) d *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double b = rho_hist[k] * y_hist[k].dot(d);
      d += (a[k] - b) * s_hist[k];
    }
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -g;
      slope = -g.squaredNorm();
    }

    double alpha = s_hist.empty() ? std::min(1.0, 1.0 / g.cwiseAbs().maxCoeff()) : 1.0;
    Eigen::VectorXd u_next;
    Eigen::VectorXd g_next;
    double h_next = 0.0;
    bool accepted = false;
    while (alpha >= kStepFloor) {
      u_next = u + alpha * d;
      h_next = sys.merit(u_next);
      if (std::isfinite(h_next)) {
        g_next = sys.field(u_next);
        if (h_next <= h + kArmijo * alpha * slope) {
          accepted = true;
          break;
        }
        // Approximate Wolfe test: once merit differences drown in rounding,
        // the directional derivative still certifies progress.
        const double slope_next = g_next.dot(d);
        if (g_next.allFinite() && h_next <= h + kFlatMerit * (1.0 + std::abs(h)) &&
            slope_next >= kCurvature * slope && slope_next <= (2.0 * kDecrease - 1.0) * slope) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // The merit is flat to rounding here; finish on the residual alone.
      SystemSolve polish = solve_by_projection(sys, u, abs_tol, max_iter - it);
      polish.iterations += it;
      return polish;
    }

    Eigen::VectorXd s = u_next - u;
    Eigen::VectorXd y = g_next - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (s_hist.size() == kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }
    u = std::move(u_next);
    h = h_next;
    g = std::move(g_next);
    residual = sys.residual_norm(g);
  }
  return SystemSolve{u, residual, it,
                     residual <= abs_tol ? SolveStatus::converged : SolveStatus::iteration_cap};
}

}  // namespace yosida::detail
