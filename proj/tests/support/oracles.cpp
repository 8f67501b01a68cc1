#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

double lp_norm(const Eigen::VectorXd& v, double e) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), e);
  return std::pow(s, 1.0 / e);
}

Eigen::VectorXd duality(const Eigen::VectorXd& x, double p, const Fn& phi) {
  const double r = lp_norm(x, p);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  if (r == 0.0) return out;
  const double c = phi(r) * std::pow(r, 1.0 - p);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[i] = c * std::copysign(std::pow(std::abs(x[i]), p - 1.0), x[i]);
  return out;
}

double bisect_inverse(const Fn& phi, double s) {
  if (s == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (phi(hi) < s) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd inverse_duality(const Eigen::VectorXd& x_star, double p, const Fn& phi) {
  const double q = p / (p - 1.0);
  const double s = lp_norm(x_star, q);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x_star.size());
  if (s == 0.0) return out;
  Eigen::VectorXd dir(x_star.size());
  for (Eigen::Index i = 0; i < x_star.size(); ++i)
    dir[i] = std::copysign(std::pow(std::abs(x_star[i]), q - 1.0), x_star[i]);
  return bisect_inverse(phi, s) / lp_norm(dir, p) * dir;
}

double simpson(const Fn& f, double a, double b, std::size_t panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / double(panels);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * double(i));
  return s * h / 3.0;
}

Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

std::vector<double> brute_force_psi(double p, const Fn& phi, const Eigen::Vector2d& x0, double R,
                                    const std::vector<double>& r_grid, std::size_t angles,
                                    std::size_t radii) {
  const Eigen::VectorXd j0 = duality(x0, p, phi);
  const double r_min = r_grid.front();
  std::vector<double> shell_min(r_grid.size(), std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < angles; ++a) {
    const double theta = 2.0 * std::numbers::pi * double(a) / double(angles);
    Eigen::Vector2d d(std::cos(theta), std::sin(theta));
    d /= lp_norm(d, p);
    for (std::size_t k = 0; k < radii; ++k) {
      const double rho = r_min + (R - r_min) * double(k) / double(radii - 1);
      const Eigen::VectorXd h = rho * d;
      const Eigen::VectorXd x = x0 + h;
      const double quotient = (duality(x, p, phi) - j0).dot(h) / lp_norm(h, p);
      const auto it = std::upper_bound(r_grid.begin(), r_grid.end(), rho * (1.0 + 1e-12));
      const std::size_t shell = std::size_t(it - r_grid.begin()) - 1;
      shell_min[shell] = std::min(shell_min[shell], quotient);
    }
  }
  for (std::size_t k = r_grid.size() - 1; k-- > 0;) shell_min[k] = std::min(shell_min[k], shell_min[k + 1]);
  return shell_min;
}

}  // namespace oracle
