#pragma once

// Reference computations for the tests. Everything here is written from the
// defining formulas with plain loops and does not call the library's
// numerical routines; only the Point type is shared.

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "yosida/spaces.hpp"

namespace oracle {

using Fn = std::function<double(double)>;

/// (sum |v_i|^e)^{1/e} without scaling.
double lp_norm(const Eigen::VectorXd& v, double e);

/// phi(|x|) |x|^{1-p} sign(x_i) |x_i|^{p-1}; 0 at the origin.
Eigen::VectorXd duality(const Eigen::VectorXd& x, double p, const Fn& phi);

/// Root of phi(r) = s on [0, inf) by doubling + 200 bisection steps.
double bisect_inverse(const Fn& phi, double s);

/// Inverse duality map from its definition: the x with |x|_p = phi^{-1}(|x*|_q)
/// in the direction sign(x*_i)|x*_i|^{q-1}.
Eigen::VectorXd inverse_duality(const Eigen::VectorXd& x_star, double p, const Fn& phi);

/// Composite Simpson rule on [a, b] with `panels` (even) panels.
double simpson(const Fn& f, double a, double b, std::size_t panels = 2000);

/// Central-difference gradient.
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x, double h = 1e-6);

/// psi on the annulus r <= |x - x0|_p <= R in R^2, by exhaustive evaluation
/// on an angles x radii polar grid (directions normalized to the unit
/// p-sphere). Returns the infimum over grid points with radius >= r for
/// each r in r_grid.
std::vector<double> brute_force_psi(double p, const Fn& phi, const Eigen::Vector2d& x0, double R,
                                    const std::vector<double>& r_grid, std::size_t angles,
                                    std::size_t radii);

}  // namespace oracle
