#include "yosida/gauges.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace yosida {
namespace {

constexpr int kMaxBracketExpansions = 1100;
constexpr int kMaxBisectionSteps = 2200;

void require_nonnegative(double r, const char* where) {
  if (!std::isfinite(r) || r < 0.0) {
    std::ostringstream msg;
    msg << where << ": argument must be finite and >= 0, got " << r;
    throw std::domain_error(msg.str());
  }
}

std::string format_exponent(double p) {
  std::ostringstream out;
  out << p;
  return out.str();
}

}  // namespace

Gauge::Gauge(std::string label, ScalarFn eval, std::optional<ScalarFn> inverse,
             std::optional<ScalarFn> antiderivative, std::optional<double> power_exponent)
    : label_(std::move(label)),
      eval_(std::move(eval)),
      inverse_(std::move(inverse)),
      antiderivative_(std::move(antiderivative)),
      power_exponent_(power_exponent) {
  if (!eval_) throw std::invalid_argument("Gauge: eval function is empty");
}

double Gauge::eval(double r) const {
  require_nonnegative(r, "Gauge::eval");
  return eval_(r);
}

bool Gauge::is_normalized() const {
  return power_exponent_.has_value() && *power_exponent_ == 2.0;
}

double Gauge::inverse(double s, double tol) const {
  require_nonnegative(s, "Gauge::inverse");
  if (s == 0.0) return 0.0;
  if (inverse_) return (*inverse_)(s);

  // Expand [lo, hi] geometrically until phi(hi) >= s.
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0;; ++k) {
    const double f = eval_(hi);
    if (std::isnan(f)) throw ConvergenceError("Gauge::inverse: gauge returned NaN while bracketing");
    if (f >= s) break;
    lo = hi;
    hi *= 2.0;
    if (k >= kMaxBracketExpansions || !std::isfinite(hi))
      throw ConvergenceError("Gauge::inverse: could not bracket phi^{-1}(" + std::to_string(s) + ")");
  }

  // Bisect down to floating-point resolution of the bracket.
  int steps = 0;
  for (; steps < kMaxBisectionSteps; ++steps) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f = eval_(mid);
    if (std::isnan(f)) throw ConvergenceError("Gauge::inverse: gauge returned NaN while bisecting");
    if (f < s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (steps == kMaxBisectionSteps)
    throw ConvergenceError("Gauge::inverse: bisection iteration cap reached");

  const double err_lo = std::abs(eval_(lo) - s);
  const double err_hi = std::abs(eval_(hi) - s);
  const double r = err_lo <= err_hi ? lo : hi;
  if (std::min(err_lo, err_hi) > tol * (1.0 + s)) {
    std::ostringstream msg;
    msg << "Gauge::inverse: residual " << std::min(err_lo, err_hi) << " exceeds tolerance "
        << tol * (1.0 + s) << " for gauge " << label_;
    throw ConvergenceError(msg.str());
  }
  return r;
}

double Gauge::antiderivative(double r, double tol) const {
  require_nonnegative(r, "Gauge::antiderivative");
  if (r == 0.0) return 0.0;
  if (antiderivative_) return (*antiderivative_)(r);

  bool finite = true;
  auto integrand = [&](double t) {
    const double v = eval_(t);
    if (!std::isfinite(v)) finite = false;
    return v;
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, r, 15, tol, &error);
  if (!finite || !std::isfinite(value))
    throw ConvergenceError("Gauge::antiderivative: non-finite gauge values in quadrature");
  if (error > 1e3 * tol * (1.0 + std::abs(value)))
    throw ConvergenceError("Gauge::antiderivative: quadrature error estimate above tolerance");
  return value;
}

Gauge power_gauge(double p) {
  if (!std::isfinite(p) || p <= 1.0)
    throw std::invalid_argument("power_gauge: exponent p must lie in (1, inf), got " + format_exponent(p));
  const double e = p - 1.0;
  return Gauge(
      "power:" + format_exponent(p), [e](double r) { return std::pow(r, e); },
      [e](double s) { return std::pow(s, 1.0 / e); },
      [p](double r) { return std::pow(r, p) / p; }, p);
}

Gauge normalized_gauge() {
  return Gauge(
      "normalized", [](double r) { return r; }, [](double s) { return s; },
      [](double r) { return 0.5 * r * r; }, 2.0);
}

Gauge log1p_gauge() {
  return Gauge(
      "log1p", [](double r) { return std::log1p(r); }, std::nullopt,
      [](double r) { return (1.0 + r) * std::log1p(r) - r; });
}

Gauge expm1_gauge() {
  return Gauge(
      "expm1", [](double r) { return std::expm1(r); }, std::nullopt,
      [](double r) { return std::expm1(r) - r; });
}

Gauge gauge_from_label(std::string_view label) {
  if (label == "normalized" || label == "identity") return normalized_gauge();
  if (label == "log1p") return log1p_gauge();
  if (label == "expm1") return expm1_gauge();
  constexpr std::string_view prefix = "power:";
  if (label.substr(0, prefix.size()) == prefix) {
    const std::string tail(label.substr(prefix.size()));
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size())
      throw std::invalid_argument("gauge label '" + std::string(label) + "': bad exponent");
    return power_gauge(p);
  }
  throw std::invalid_argument("unknown gauge label '" + std::string(label) + "'");
}

std::vector<Gauge> gauge_catalog() {
  return {normalized_gauge(), power_gauge(1.5), power_gauge(2.0), power_gauge(3.0),
          power_gauge(4.0),   log1p_gauge(),    expm1_gauge()};
}

double eval_gauge(const Gauge& g, double r) { return g.eval(r); }

double eval_inverse(const Gauge& g, double s, double tol) { return g.inverse(s, tol); }

double eval_antiderivative(const Gauge& g, double r, double tol) {
  return g.antiderivative(r, tol);
}

ValidationReport validate_gauge(const Gauge& g, std::span<const double> grid,
                                double divergence_bound, double inverse_tol) {
  if (grid.empty() || grid.front() != 0.0)
    throw std::invalid_argument("validate_gauge: grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("validate_gauge: grid must be strictly increasing");

  ValidationReport report;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = g.eval(grid[i]);

  if (values.front() != 0.0) {
    report.zero_at_origin = false;
    std::ostringstream msg;
    msg << "phi(0) = " << values.front() << ", expected 0";
    report.failures.push_back(msg.str());
  }

  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      report.monotone = false;
      std::ostringstream msg;
      msg << "not strictly increasing: phi(" << grid[i - 1] << ") = " << values[i - 1]
          << " >= phi(" << grid[i] << ") = " << values[i];
      report.failures.push_back(msg.str());
      break;
    }
  }

  for (std::size_t i = 0; i < grid.size() && !report.divergence_witness; ++i)
    if (values[i] > divergence_bound) report.divergence_witness = grid[i];
  for (double r = std::max(grid.back(), 1.0); !report.divergence_witness && std::isfinite(r);
       r *= 2.0) {
    const double v = g.eval(r);
    if (v > divergence_bound) report.divergence_witness = r;
    if (r > 1e300) break;
  }
  if (!report.divergence_witness) {
    report.divergent = false;
    std::ostringstream msg;
    msg << "no divergence witness: phi(r) <= " << divergence_bound << " for every probed r";
    report.failures.push_back(msg.str());
  }

  // Round trips only make sense once the map is monotone.
  if (report.monotone && report.zero_at_origin) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double back = 0.0;
      try {
        back = g.inverse(values[i], inverse_tol * 1e-4);
      } catch (const std::exception& e) {
        report.inverse_round_trip = false;
        report.failures.push_back(std::string("inverse failed: ") + e.what());
        break;
      }
      if (std::abs(back - grid[i]) > inverse_tol * (1.0 + grid[i])) {
        report.inverse_round_trip = false;
        std::ostringstream msg;
        msg << "inverse round trip at r = " << grid[i] << " returned " << back;
        report.failures.push_back(msg.str());
        break;
      }
    }
  }
  return report;
}

}  // namespace yosida
