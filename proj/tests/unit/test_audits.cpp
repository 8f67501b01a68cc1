#include <cmath>
#include <vector>

#include "doctest.h"
#include "yosida/analysis.hpp"

using namespace yosida;

namespace {

std::vector<PNormSpace> desk_spaces() {
  std::vector<PNormSpace> out;
  for (std::size_t n : {1, 2, 4, 8})
    for (double p : {1.5, 2.0, 3.0, 4.0}) out.emplace_back(n, p);
  return out;
}

}  // namespace

TEST_CASE("duality axioms hold on the catalog") {
  const auto spaces = desk_spaces();
  const auto gauges = gauge_catalog();
  const ProbeReport r = audit_duality_axioms(spaces, gauges, 1000, 1);
  CHECK(r.verdict);
  CHECK(r.metrics.at("pairing_violations") == 0.0);
  CHECK(r.metrics.at("norm_violations") == 0.0);
}

TEST_CASE("duality axioms flag a gauge that returns NaN") {
  // NaN deviations must fail, never pass silently.
  const Gauge broken("broken", [](double r) { return r < 1.0 ? r : std::nan(""); });
  const std::vector<PNormSpace> spaces{PNormSpace(2, 2.0)};
  const std::vector<Gauge> gauges{broken};
  CHECK_FALSE(audit_duality_axioms(spaces, gauges, 200, 1).verdict);
}

TEST_CASE("Alber inequality per configuration") {
  for (double p : {1.5, 2.0, 3.0, 4.0})
    for (const Gauge& g : gauge_catalog()) {
      const ProbeReport r = audit_alber(PNormSpace(4, p), g, 2000, 5.0, 7);
      CHECK_MESSAGE(r.verdict, g.label() << " p=" << p);
      CHECK(r.metrics.at("alber_violations") == 0.0);
      CHECK(r.metrics.at("monotonicity_violations") == 0.0);
    }
}

TEST_CASE("inverse round trip, including numeric inverses") {
  const auto spaces = desk_spaces();
  const auto gauges = gauge_catalog();
  const ProbeReport r = audit_inverse_roundtrip(spaces, gauges, 1000, 2);
  CHECK(r.verdict);
  CHECK(r.metrics.at("numeric_inverse_samples") > 0.0);

  const Gauge wrong("wrong-inverse", [](double r) { return r * r; }, [](double s) { return s; });
  const std::vector<Gauge> bad{wrong};
  CHECK_FALSE(audit_inverse_roundtrip(spaces, bad, 200, 2).verdict);
}

TEST_CASE("duality homogeneity") {
  for (double p : {1.5, 3.0})
    for (const Gauge& g : {normalized_gauge(), power_gauge(p), log1p_gauge()})
      CHECK(audit_duality_homogeneity(PNormSpace(3, p), g, 500, 4).verdict);
}
