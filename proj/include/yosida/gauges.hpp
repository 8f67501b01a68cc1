#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace yosida {

using ScalarFn = std::function<double(double)>;

/// Raised when an iterative scalar routine (bracketing, bisection,
/// quadrature) fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultInverseTol = 1e-12;
inline constexpr double kDefaultQuadratureTol = 1e-12;

/// A gauge function phi: [0, inf) -> [0, inf), strictly increasing and
/// continuous with phi(0) = 0 and phi(r) -> inf.
///
/// The inverse and the antiderivative Phi(r) = int_0^r phi are optional;
/// when absent they are computed numerically (bracketing + bisection for the
/// inverse, adaptive Gauss-Kronrod for Phi). Gauges are immutable and safe to
/// share between threads.
class Gauge {
 public:
  Gauge(std::string label, ScalarFn eval, std::optional<ScalarFn> inverse = std::nullopt,
        std::optional<ScalarFn> antiderivative = std::nullopt,
        std::optional<double> power_exponent = std::nullopt);

  const std::string& label() const { return label_; }

  /// phi(r). Throws std::domain_error for negative or non-finite r.
  double eval(double r) const;
  double operator()(double r) const { return eval(r); }

  /// phi^{-1}(s), accurate to |phi(r) - s| <= tol * (1 + s).
  double inverse(double s, double tol = kDefaultInverseTol) const;

  /// Phi(r) = int_0^r phi(t) dt.
  double antiderivative(double r, double tol = kDefaultQuadratureTol) const;

  bool has_closed_inverse() const { return inverse_.has_value(); }
  bool has_closed_antiderivative() const { return antiderivative_.has_value(); }

  /// For power gauges phi(r) = r^{p-1}, the exponent p.
  std::optional<double> power_exponent() const { return power_exponent_; }

  /// True when phi(r) = r, i.e. the duality map is the normalized one.
  bool is_normalized() const;

 private:
  std::string label_;
  ScalarFn eval_;
  std::optional<ScalarFn> inverse_;
  std::optional<ScalarFn> antiderivative_;
  std::optional<double> power_exponent_;
};

/// phi(r) = r^{p-1}, p > 1. Closed-form inverse and antiderivative.
Gauge power_gauge(double p);
/// phi(r) = r.
Gauge normalized_gauge();
/// phi(r) = ln(1 + r). Numeric inverse, closed-form antiderivative.
Gauge log1p_gauge();
/// phi(r) = e^r - 1. Numeric inverse, closed-form antiderivative.
Gauge expm1_gauge();

/// Parses "normalized" (alias "identity"), "power:<p>", "log1p", "expm1".
/// Throws std::invalid_argument on unknown labels.
Gauge gauge_from_label(std::string_view label);

/// normalized, power:{1.5, 2, 3, 4}, log1p, expm1.
std::vector<Gauge> gauge_catalog();

// Free-function forms of the gauge operations.
double eval_gauge(const Gauge& g, double r);
double eval_inverse(const Gauge& g, double s, double tol = kDefaultInverseTol);
double eval_antiderivative(const Gauge& g, double r, double tol = kDefaultQuadratureTol);

struct ValidationReport {
  bool zero_at_origin = true;
  bool monotone = true;
  bool divergent = true;
  bool inverse_round_trip = true;
  std::optional<double> divergence_witness;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks the gauge axioms on a finite grid. `grid` must be sorted and start
/// at 0. Divergence is accepted when some r (grid points, then geometric
/// continuation past the grid) has phi(r) > divergence_bound. Failures are
/// collected in the report rather than thrown.
ValidationReport validate_gauge(const Gauge& g, std::span<const double> grid,
                                double divergence_bound, double inverse_tol = 1e-8);

}  // namespace yosida
