#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "yosida/execution.hpp"
#include "yosida/spaces.hpp"

namespace yosida {

/// A single-valued continuous monotone operator A: R^n -> (R^n)*, defined on
/// the whole space.
///
/// Optional attachments:
///  - potential f with A = grad f (enables the variational resolvent route);
///  - matrix M when A is linear (enables the Euclidean closed form);
///  - closed-form resolvent (lambda, x) -> (I + lambda A)^{-1} x for the
///    Euclidean normalized case;
///  - a declared homogeneity degree.
///
/// Instances are immutable; `evaluate` is pure and reentrant.
class MonotoneOperator {
 public:
  using Map = std::function<DualPoint(const Point&)>;
  using Potential = std::function<double(const Point&)>;
  using Resolvent = std::function<Point(double, const Point&)>;

  MonotoneOperator(std::string label, std::size_t dim, Map map);

  const std::string& label() const { return label_; }
  std::size_t dim() const { return dim_; }

  /// A x. Throws std::invalid_argument on dimension mismatch and
  /// std::domain_error when the output is not finite.
  DualPoint evaluate(const Point& x) const;
  DualPoint operator()(const Point& x) const { return evaluate(x); }

  const std::optional<Potential>& potential() const { return potential_; }
  const std::optional<Eigen::MatrixXd>& matrix() const { return matrix_; }
  const std::optional<Resolvent>& closed_form_resolvent() const { return resolvent_; }
  std::optional<double> lipschitz_bound() const { return lipschitz_; }
  /// Radius of the ball on which `lipschitz_bound` holds (infinite = global).
  double lipschitz_radius() const { return lipschitz_radius_; }

  /// True when A(s x) = s^degree A x for every s >= 0.
  bool is_homogeneous_of_degree(double degree) const;
  bool is_zero() const { return zero_; }

  MonotoneOperator& with_potential(Potential f);
  MonotoneOperator& with_matrix(Eigen::MatrixXd m);
  MonotoneOperator& with_resolvent(Resolvent r);
  MonotoneOperator& with_lipschitz(double bound, double radius);
  MonotoneOperator& with_homogeneity(double degree);
  MonotoneOperator& mark_zero();

 private:
  std::string label_;
  std::size_t dim_;
  Map map_;
  std::optional<Potential> potential_;
  std::optional<Eigen::MatrixXd> matrix_;
  std::optional<Resolvent> resolvent_;
  std::optional<double> lipschitz_;
  double lipschitz_radius_ = 0.0;
  std::optional<double> homogeneity_;
  bool zero_ = false;
};

DualPoint evaluate(const MonotoneOperator& a, const Point& x);

MonotoneOperator zero_operator(std::size_t n);
MonotoneOperator identity_operator(std::size_t n);
/// x -> c x, c >= 0.
MonotoneOperator scaled_identity(std::size_t n, double c);

/// x -> M x. Requires M + M^T positive semidefinite: the smallest eigenvalue
/// of the symmetric part must be >= -1e-10, otherwise std::invalid_argument.
/// Symmetric matrices also get the potential x^T M x / 2.
MonotoneOperator make_linear_psd(const Eigen::MatrixXd& m, std::string label = "psd");

/// Gradient operator of a convex f. Convexity is checked by midpoint
/// sampling on the ball of radius 10; failure throws std::invalid_argument.
MonotoneOperator make_gradient(std::size_t n, MonotoneOperator::Potential f,
                               MonotoneOperator::Map grad, std::string label,
                               std::uint64_t seed = 0x5eed);

/// grad of |x|_2^4 / 4, i.e. x -> |x|_2^2 x. Homogeneous of degree 3.
MonotoneOperator quartic_operator(std::size_t n);
/// grad of sum softplus(x_i), i.e. the componentwise logistic sigmoid.
MonotoneOperator softplus_operator(std::size_t n);
/// I + S with S the block rotation by pi/2 in coordinate pairs (0,1), (2,3)...
/// Monotone but not a gradient.
MonotoneOperator rotation_psd_operator(std::size_t n);

/// x -> alpha A x + beta B x with alpha, beta >= 0.
MonotoneOperator combine(const MonotoneOperator& a, const MonotoneOperator& b, double alpha,
                         double beta);

/// Comma-separated numeric CSV, one matrix row per line.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

/// "zero", "identity", "quartic", "softplus", "rotation-psd", "psd:<csv file>".
MonotoneOperator operator_from_label(std::string_view label, std::size_t n);

struct MonotonicityReport {
  std::size_t pairs = 0;
  /// min over pairs of <Au - Av, u - v> / (1 + |Au - Av|_2 |u - v|_2).
  double worst = 0.0;
  Point witness_u;
  Point witness_v;
  bool ok = true;
};

/// Samples pairs uniformly in the cube of the given radius and checks
/// <Au - Av, u - v> >= -1e-10 * scale.
MonotonicityReport sample_monotonicity(const MonotoneOperator& a, std::size_t pairs,
                                       double radius, std::uint64_t seed,
                                       Execution exec = Execution::parallel);

}  // namespace yosida
