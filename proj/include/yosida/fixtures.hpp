#pragma once

#include <string>
#include <vector>

#include "yosida/gauges.hpp"
#include "yosida/operators.hpp"
#include "yosida/spaces.hpp"

namespace yosida {

/// One (space, gauge, operator) configuration of the shipped test grid.
struct Fixture {
  PNormSpace space;
  Gauge gauge;
  MonotoneOperator op;

  std::string label() const;
};

/// Exponents of the shipped grid: 1.5, 2, 3, 4.
std::vector<double> fixture_exponents();
/// Gauges of the shipped grid: normalized, power:3, log1p, expm1.
std::vector<std::string> fixture_gauge_labels();
/// Operators of the shipped grid: identity, quartic, softplus, rotation-psd.
std::vector<std::string> fixture_operator_labels();
/// Step sizes of the shipped grid: 0.01, 0.1, 1, 10, 100.
std::vector<double> fixture_lambdas();

/// Full product gauges x exponents x operators in dimension n (64 fixtures),
/// gauge-major order.
std::vector<Fixture> fixture_grid(std::size_t n);

}  // namespace yosida
