#include "yosida/fixtures.hpp"

#include <sstream>

namespace yosida {

std::string Fixture::label() const {
  std::ostringstream s;
  s << "n=" << space.dim() << " p=" << space.p() << " gauge=" << gauge.label()
    << " op=" << op.label();
  return s.str();
}

std::vector<double> fixture_exponents() { return {1.5, 2.0, 3.0, 4.0}; }

std::vector<std::string> fixture_gauge_labels() { return {"normalized", "power:3", "log1p", "expm1"}; }

std::vector<std::string> fixture_operator_labels() {
  return {"identity", "quartic", "softplus", "rotation-psd"};
}

std::vector<double> fixture_lambdas() { return {0.01, 0.1, 1.0, 10.0, 100.0}; }

std::vector<Fixture> fixture_grid(std::size_t n) {
  std::vector<Fixture> out;
  for (const auto& g : fixture_gauge_labels())
    for (double p : fixture_exponents())
      for (const auto& a : fixture_operator_labels())
        out.push_back({PNormSpace(n, p), gauge_from_label(g), operator_from_label(a, n)});
  return out;
}

}  // namespace yosida
