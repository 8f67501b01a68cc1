#include <cmath>
#include <vector>

#include "analysis/common.hpp"
#include "yosida/analysis.hpp"
#include "yosida/sampling.hpp"

namespace yosida {
namespace {

// Radius spread over four decades, [1e-3, 10).
double audit_radius(SampleStream& rng) { return std::pow(10.0, rng.uniform(-3.0, 1.0)); }

template <class T>
const T& pick(SampleStream& rng, std::span<const T> items) {
  return items[rng() % items.size()];
}

void require_nonempty(std::size_t spaces, std::size_t gauges, std::size_t samples,
                      const char* where) {
  if (spaces == 0 || gauges == 0 || samples == 0)
    throw std::invalid_argument(std::string(where) + ": empty space list, gauge list or sample count");
}

}  // namespace

ProbeReport audit_duality_axioms(std::span<const PNormSpace> spaces, std::span<const Gauge> gauges,
                                 std::size_t triples, std::uint64_t seed, double tol,
                                 Execution exec) {
  require_nonempty(spaces.size(), gauges.size(), triples, "audit_duality_axioms");
  std::vector<double> pairing(triples), norm(triples), scale(triples);
  detail::for_each_index(exec, triples, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kAudit);
    const PNormSpace& sp = pick(rng, spaces);
    const Gauge& g = pick(rng, gauges);
    const Point x = audit_radius(rng) * sample_p_sphere(rng, sp.dim(), sp.p());
    const double r = pnorm(sp, x);
    const double phi = g.eval(r);
    const DualPoint jx = gauge_duality(sp, g, x);
    pairing[i] = std::abs(dual_pairing(jx, x) - phi * r) / (1.0 + phi * r);
    norm[i] = std::abs(dual_norm(sp, jx) - phi) / (1.0 + phi);
    scale[i] = r;
  });

  ProbeReport rep;
  rep.label = "duality_axioms";
  rep.tolerance = tol;
  rep.parameters = {{"triples", std::to_string(triples)},
                    {"spaces", std::to_string(spaces.size())},
                    {"gauges", std::to_string(gauges.size())},
                    {"seed", std::to_string(seed)}};
  const auto wp = detail::worst_of(pairing);
  const auto wn = detail::worst_of(norm);
  rep.observe(scale[wp.index], wp.value);
  rep.observe(scale[wn.index], wn.value);
  rep.metrics["pairing_violations"] = double(detail::count_above(pairing, tol));
  rep.metrics["norm_violations"] = double(detail::count_above(norm, tol));
  rep.finalize();
  return rep;
}

ProbeReport audit_alber(const PNormSpace& sp, const Gauge& g, std::size_t pairs, double radius,
                        std::uint64_t seed, double slack, Execution exec) {
  if (pairs == 0 || !(radius > 0.0)) throw std::invalid_argument("audit_alber: need pairs > 0 and radius > 0");
  std::vector<double> alber(pairs), mono(pairs), scale(pairs);
  detail::for_each_index(exec, pairs, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kAudit);
    const Point u0 = sample_p_ball(rng, sp.dim(), sp.p(), radius, i % 2 == 0);
    const Point u1 = sample_p_ball(rng, sp.dim(), sp.p(), radius, i % 2 == 1);
    const double r0 = pnorm(sp, u0), r1 = pnorm(sp, u1);
    const double f0 = g.eval(r0), f1 = g.eval(r1);
    const double lhs = dual_pairing(gauge_duality(sp, g, u1) - gauge_duality(sp, g, u0), u1 - u0);
    const double rhs = (f1 - f0) * (r1 - r0);
    // Rounding in the pairings is proportional to phi(|u|)|u|.
    const double s = 1.0 + f0 * r0 + f1 * r1;
    alber[i] = (rhs - lhs) / s;
    mono[i] = -lhs / s;
    scale[i] = std::max(r0, r1);
  });

  ProbeReport rep;
  rep.label = "alber_inequality";
  rep.tolerance = slack;
  rep.parameters = {{"p", detail::fmt(sp.p())},
                    {"n", std::to_string(sp.dim())},
                    {"gauge", g.label()},
                    {"pairs", std::to_string(pairs)},
                    {"radius", detail::fmt(radius)},
                    {"seed", std::to_string(seed)}};
  const auto wa = detail::worst_of(alber);
  const auto wm = detail::worst_of(mono);
  rep.observe(scale[wa.index], wa.value);
  rep.observe(scale[wm.index], wm.value);
  rep.metrics["alber_violations"] = double(detail::count_above(alber, slack));
  rep.metrics["monotonicity_violations"] = double(detail::count_above(mono, slack));
  rep.finalize();
  return rep;
}

ProbeReport audit_inverse_roundtrip(std::span<const PNormSpace> spaces,
                                    std::span<const Gauge> gauges, std::size_t samples,
                                    std::uint64_t seed, double tol, Execution exec) {
  require_nonempty(spaces.size(), gauges.size(), samples, "audit_inverse_roundtrip");
  std::vector<double> dev(samples), scale(samples), numeric(samples);
  detail::for_each_index(exec, samples, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kAudit);
    const PNormSpace& sp = pick(rng, spaces);
    const Gauge& g = pick(rng, gauges);
    const Point x = audit_radius(rng) * sample_p_sphere(rng, sp.dim(), sp.p());
    const Point back = inverse_gauge_duality(sp, g, gauge_duality(sp, g, x));
    scale[i] = pnorm(sp, x);
    dev[i] = pnorm(sp, back - x) / (1.0 + scale[i]);
    numeric[i] = g.has_closed_inverse() ? 0.0 : 1.0;
  });

  ProbeReport rep;
  rep.label = "inverse_roundtrip";
  rep.tolerance = tol;
  rep.parameters = {{"samples", std::to_string(samples)}, {"seed", std::to_string(seed)}};
  const auto w = detail::worst_of(dev);
  rep.observe(scale[w.index], w.value);
  rep.metrics["violations"] = double(detail::count_above(dev, tol));
  double n_numeric = 0.0;
  for (double v : numeric) n_numeric += v;
  rep.metrics["numeric_inverse_samples"] = n_numeric;
  rep.finalize();
  return rep;
}

ProbeReport audit_duality_homogeneity(const PNormSpace& sp, const Gauge& g, std::size_t samples,
                                      std::uint64_t seed, double tol, Execution exec) {
  if (samples == 0) throw std::invalid_argument("audit_duality_homogeneity: zero samples");
  const auto pe = g.power_exponent();
  std::vector<double> plain(samples), gauged(samples), scale(samples);
  detail::for_each_index(exec, samples, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kAudit);
    const Point x = audit_radius(rng) * sample_p_sphere(rng, sp.dim(), sp.p());
    const double s = rng.uniform(0.0, 10.0);
    const DualPoint jx = normalized_duality(sp, x);
    plain[i] = dual_norm(sp, normalized_duality(sp, s * x) - s * jx) / (1.0 + s * dual_norm(sp, jx));
    if (pe) {
      const double f = std::pow(s, *pe - 1.0);
      const DualPoint gx = gauge_duality(sp, g, x);
      gauged[i] = dual_norm(sp, gauge_duality(sp, g, s * x) - f * gx) / (1.0 + f * dual_norm(sp, gx));
    } else {
      gauged[i] = 0.0;
    }
    scale[i] = s;
  });

  ProbeReport rep;
  rep.label = "duality_homogeneity";
  rep.tolerance = tol;
  rep.parameters = {{"p", detail::fmt(sp.p())},
                    {"n", std::to_string(sp.dim())},
                    {"gauge", g.label()},
                    {"samples", std::to_string(samples)},
                    {"seed", std::to_string(seed)}};
  const auto w1 = detail::worst_of(plain);
  rep.observe(scale[w1.index], w1.value);
  if (pe) {
    const auto w2 = detail::worst_of(gauged);
    rep.observe(scale[w2.index], w2.value);
  }
  rep.finalize();
  return rep;
}

}  // namespace yosida
