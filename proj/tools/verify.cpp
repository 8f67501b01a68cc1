#include <cmath>

#include "app.hpp"
#include "yosida/fixtures.hpp"
#include "yosida/sampling.hpp"

namespace yosida::app {
namespace {

constexpr std::size_t kFixtureDim = 2;
constexpr std::size_t kSequenceTerms = 100;
constexpr std::size_t kBoundednessGrid = 16;

void tag(ProbeReport& rep, const std::string& fixture) { rep.parameters["fixture"] = fixture; }

Point ones_like(std::size_t n, double scale) {
  Point x = Point::zero(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = scale / double(i + 1);
  return x;
}

void audits(const SuiteOptions& o, std::vector<ProbeReport>& out) {
  const Execution exec = o.probe.exec;
  std::vector<PNormSpace> spaces;
  for (std::size_t n : {1u, 2u, 4u, 8u})
    for (double p : fixture_exponents()) spaces.emplace_back(n, p);
  const auto gauges = gauge_catalog();
  out.push_back(audit_duality_axioms(spaces, gauges, 1000, o.seed, 1e-9, exec));
  out.push_back(audit_inverse_roundtrip(spaces, gauges, 1000, o.seed, 1e-7, exec));
  for (double p : fixture_exponents())
    for (const auto& g : gauges) {
      const PNormSpace sp(4, p);
      out.push_back(audit_alber(sp, g, 2000, 5.0, o.seed, 1e-10, exec));
      if (g.power_exponent()) out.push_back(audit_duality_homogeneity(sp, g, 200, o.seed, 1e-9, exec));
    }
}

void psi_curves(const SuiteOptions& o, std::vector<ProbeReport>& out) {
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(0.1 * k);
  for (const auto& label : fixture_gauge_labels())
    for (double p : fixture_exponents()) {
      const PNormSpace sp(kFixtureDim, p);
      const Gauge g = gauge_from_label(label);
      for (const Point& x0 : {Point{1.0, 0.0}, Point::zero(kFixtureDim)}) {
        const PsiCurve c = estimate_psi(sp, g, x0, 2.0, grid, o.psi_samples, o.seed, o.probe.exec);
        ProbeReport shape = check_psi_shape(c);
        shape.parameters["p"] = csv_number(p);
        shape.parameters["gauge"] = label;
        out.push_back(std::move(shape));
        out.push_back(check_lower_bound(sp, g, x0, c, o.psi_samples, o.seed, 1e-12, o.probe.exec));
      }
    }
}

void sequences(std::vector<ProbeReport>& out) {
  for (const auto& label : fixture_gauge_labels())
    for (double p : fixture_exponents()) {
      const PNormSpace sp(3, p);
      const Gauge g = gauge_from_label(label);
      const Point x0{1.0, 0.5, -0.25};
      const Point dir{0.3, -0.2, 0.1};
      for (const auto& seq : {shrinking_ray(x0, dir, kSequenceTerms), rotating_sphere(sp, x0, kSequenceTerms),
                              constant_sequence(x0, kSequenceTerms)}) {
        out.push_back(check_convergence_corollary(sp, g, x0, seq));
        out.push_back(check_s_plus(sp, g, x0, seq));
      }
    }
}

void resolvent_probes(const SuiteOptions& o, std::vector<ProbeReport>& out) {
  ProbeOptions correctness = o.probe;
  correctness.solver.tol = 1e-8;
  const auto lambdas = fixture_lambdas();
  const auto t_seq = [] {
    std::vector<double> t;
    for (int k = 1; k <= 20; ++k) t.push_back(0.5 + std::ldexp(1.0, -k));
    return t;
  }();
  for (const Fixture& f : fixture_grid(kFixtureDim)) {
    const std::string name = f.label();
    auto add = [&](ProbeReport rep) {
      tag(rep, name);
      out.push_back(std::move(rep));
    };
    add(resolvent_audit(f.space, f.gauge, f.op, lambdas, 2, o.seed, 1e-7, correctness));
    add(boundedness_probe(f.space, f.gauge, f.op, 1.0, 0.1, 10.0, kBoundednessGrid, o.seed, o.probe).second);
    add(continuity_probe(f.space, f.gauge, f.op, 1.0, ones_like(kFixtureDim, 0.8), 20,
                         ones_like(kFixtureDim, -0.5), 1e-4, o.probe));
    add(homotopy_check(f.space, f.gauge, f.op, 0.5, 2.0, t_seq, 0.5, ones_like(kFixtureDim, 1.0),
                       1e-5, o.probe));
    add(surjectivity_audit(f.space, f.gauge, f.op, 1.0, 10, o.seed, 1e-8, 1e-6, o.probe));
  }
  out.push_back(oracle_audit(50, 6, o.seed, 1e-7, o.probe));

  const std::vector<double> degrees{0.0, 0.5, 1.0, 2.0, 3.0};
  for (double p : fixture_exponents()) {
    const PNormSpace sp(3, p);
    out.push_back(homogeneity_probe(sp, 2.0, identity_operator(3), degrees, 50, o.seed, 1e-10, o.probe));
    out.push_back(homogeneity_probe(sp, 4.0, quartic_operator(3), degrees, 50, o.seed, 1e-10, o.probe));
  }
}

}  // namespace

std::vector<ProbeReport> verification_suite(const SuiteOptions& opts) {
  std::vector<ProbeReport> out;
  audits(opts, out);
  psi_curves(opts, out);
  sequences(out);
  resolvent_probes(opts, out);
  return out;
}

}  // namespace yosida::app
