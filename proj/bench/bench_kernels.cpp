// Wall-clock comparison of the OpenMP kernels against their serial reference
// paths. Results of both paths are compared bit for bit before timing.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "yosida/analysis.hpp"
#include "yosida/fixtures.hpp"

using namespace yosida;

namespace {

struct Kernel {
  std::string name;
  std::function<std::vector<double>(Execution)> run;
};

double seconds_of(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

std::vector<double> flatten(const ProbeReport& r) {
  std::vector<double> out;
  for (const auto& o : r.observations) out.push_back(o.deviation);
  for (const auto& [k, v] : r.metrics) out.push_back(v);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  int reps = 3;
  int threads = 0;
  double scale = 1.0;
  app.add_option("--reps", reps, "Repetitions per kernel (best time is reported)")->capture_default_str();
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--scale", scale, "Multiplier on the problem sizes")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);
  auto sized = [&](double n) { return std::max<std::size_t>(1000, std::size_t(n * scale)); };

  const PNormSpace plane(2, 3.0);
  const PNormSpace space4(4, 1.5);
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(0.1 * k);
  const std::vector<PNormSpace> spaces{PNormSpace(3, 1.5), PNormSpace(8, 4.0)};
  const auto gauges = gauge_catalog();

  std::vector<ResolventJob> jobs;
  for (std::size_t i = 0; i < sized(2000); ++i)
    jobs.push_back({0.01 * double(1 + i % 1000), Point{std::sin(double(i)), std::cos(3.0 * double(i))}});

  const std::vector<Kernel> kernels{
      {"duality axioms audit",
       [&](Execution e) { return flatten(audit_duality_axioms(spaces, gauges, sized(200000), 1, 1e-9, e)); }},
      {"Alber audit",
       [&](Execution e) { return flatten(audit_alber(space4, log1p_gauge(), sized(200000), 5.0, 1, 1e-10, e)); }},
      {"inverse round trip audit",
       [&](Execution e) { return flatten(audit_inverse_roundtrip(spaces, gauges, sized(50000), 1, 1e-7, e)); }},
      {"psi estimator",
       [&](Execution e) {
         return estimate_psi(plane, expm1_gauge(), Point{1.0, 0.0}, 2.0, grid, sized(400000), 1, e).psi_hat;
       }},
      {"resolvent batch",
       [&](Execution e) {
         std::vector<double> out;
         for (const auto& s : solve_batch(plane, log1p_gauge(), quartic_operator(2), jobs, {}, e))
           out.insert(out.end(), s.x_lambda.vec().data(), s.x_lambda.vec().data() + 2);
         return out;
       }},
      {"monotonicity sampling",
       [&](Execution e) {
         return std::vector<double>{sample_monotonicity(rotation_psd_operator(8), sized(400000), 10.0, 1, e).worst};
       }},
  };

  std::printf("threads: %d, reps: %d, scale: %g\n", omp_get_max_threads(), reps, scale);
  std::printf("%-26s %12s %12s %9s  %s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "results");
  int mismatches = 0;
  for (const auto& k : kernels) {
    const bool same = k.run(Execution::serial) == k.run(Execution::parallel);
    mismatches += !same;
    const double ts = seconds_of([&] { k.run(Execution::serial); }, reps);
    const double tp = seconds_of([&] { k.run(Execution::parallel); }, reps);
    std::printf("%-26s %12.4f %12.4f %9.2f  %s\n", k.name.c_str(), ts, tp, ts / tp,
                same ? "identical" : "DIFFER");
  }
  return mismatches == 0 ? 0 : 1;
}
