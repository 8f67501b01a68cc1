#include "app.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "yosida/sampling.hpp"

namespace yosida::app {
namespace {

using nlohmann::json;

struct Setup {
  PNormSpace space;
  Gauge gauge;
  MonotoneOperator op;
};

Setup setup_of(const ExperimentConfig& c) {
  PNormSpace sp = parse_space(c.space);
  try {
    return {sp, gauge_from_label(c.gauge), operator_from_label(c.op, sp.dim())};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

double solver_tol(const ExperimentConfig& c, double fallback) {
  const double tol = c.tol.value_or(fallback);
  if (!(tol > 0.0)) throw ConfigError("--tol: tolerance must be > 0");
  return tol;
}

std::string format_of(const ExperimentConfig& c, const std::string& fallback) {
  const std::string f = c.format.value_or(fallback);
  if (f != "csv" && f != "json") throw ConfigError("--format: must be 'csv' or 'json'");
  return f;
}

Point required_point(const ExperimentConfig& c, std::size_t n) {
  if (!c.x) throw ConfigError("--x: required for command '" + c.command + "'");
  return parse_point(*c.x, n);
}

double required_lambda(const ExperimentConfig& c) {
  if (!c.lambda) throw ConfigError("--lambda: required for command '" + c.command + "'");
  if (!(*c.lambda > 0.0)) throw ConfigError("--lambda: lambda must be > 0");
  return *c.lambda;
}

json point_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json setup_json(const ExperimentConfig& c, const Setup& s) {
  return {{"n", s.space.dim()}, {"p", s.space.p()}, {"gauge", c.gauge}, {"operator", c.op}};
}

// Writes to --out when given, else to `out`; the summary line goes to the
// other stream so piped artifacts stay clean.
void emit(const ExperimentConfig& c, const std::string& body, const std::string& summary,
          std::ostream& out, std::ostream& err) {
  if (c.out) {
    std::ofstream f(*c.out, std::ios::binary);
    if (!f) throw ConfigError("--out: cannot open '" + c.out->string() + "' for writing");
    f << body;
    out << summary << '\n';
  } else {
    out << body;
    err << summary << '\n';
  }
}

ProbeOptions probe_options(const ExperimentConfig& c) {
  ProbeOptions o;
  o.solver.tol = solver_tol(c, o.solver.tol);
  o.exec = c.serial ? Execution::serial : Execution::parallel;
  return o;
}

int cmd_resolve(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Setup s = setup_of(c);
  const double lambda = required_lambda(c);
  const Point x = required_point(c, s.space.dim());
  SolverOptions opts;
  opts.tol = solver_tol(c, opts.tol);
  const ResolventSolve r = solve_inclusion(s.space, s.gauge, s.op, lambda, x, opts);

  std::string body;
  if (format_of(c, "json") == "json") {
    json j = setup_json(c, s);
    j["command"] = "resolve";
    j["lambda"] = lambda;
    j["tol"] = opts.tol;
    j["x"] = point_json(x.vec());
    j["x_lambda"] = point_json(r.x_lambda.vec());
    j["a_lambda"] = point_json(r.a_lambda.vec());
    j["residual"] = json_number(r.residual);
    j["residual_scale"] = r.residual_scale;
    j["iterations"] = r.iterations;
    j["status"] = std::string(to_string(r.status));
    j["route"] = std::string(to_string(r.route));
    body = j.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "lambda,residual,residual_scale,iterations,status,route";
    for (std::size_t i = 0; i < x.size(); ++i) csv << ",x_lambda_" << i;
    for (std::size_t i = 0; i < x.size(); ++i) csv << ",a_lambda_" << i;
    csv << '\n' << csv_number(lambda) << ',' << csv_number(r.residual) << ','
        << csv_number(r.residual_scale) << ',' << r.iterations << ',' << to_string(r.status) << ','
        << to_string(r.route);
    for (std::size_t i = 0; i < x.size(); ++i) csv << ',' << csv_number(r.x_lambda[i]);
    for (std::size_t i = 0; i < x.size(); ++i) csv << ',' << csv_number(r.a_lambda[i]);
    csv << '\n';
    body = csv.str();
  }
  std::ostringstream summary;
  summary << "resolve: " << to_string(r.status) << " after " << r.iterations
          << " iterations, residual " << r.residual;
  emit(c, body, summary.str(), out, err);
  return r.converged() ? kOk : kSolverFailure;
}

int cmd_sweep(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Setup s = setup_of(c);
  std::vector<double> lambdas;
  if (c.lambda_range) lambdas = parse_lambda_range(*c.lambda_range);
  else lambdas = {required_lambda(c)};
  const Point x = required_point(c, s.space.dim());
  SolverOptions opts;
  opts.tol = solver_tol(c, opts.tol);

  std::vector<ResolventJob> jobs;
  for (double l : lambdas) jobs.push_back({l, x});
  const auto solves = solve_batch(s.space, s.gauge, s.op, jobs, opts,
                                  c.serial ? Execution::serial : Execution::parallel);
  std::size_t failures = 0;
  for (const auto& r : solves) failures += !r.converged();

  std::string body;
  if (format_of(c, "csv") == "csv") {
    std::ostringstream csv;
    csv << "lambda,a_lambda_norm,displacement,residual,iterations,status\n";
    for (std::size_t i = 0; i < solves.size(); ++i) {
      const auto& r = solves[i];
      csv << csv_number(lambdas[i]) << ',' << csv_number(dual_norm(s.space, r.a_lambda)) << ','
          << csv_number(pnorm(s.space, r.x_lambda - x)) << ',' << csv_number(r.residual) << ','
          << r.iterations << ',' << to_string(r.status) << '\n';
    }
    body = csv.str();
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < solves.size(); ++i) {
      const auto& r = solves[i];
      rows.push_back({{"lambda", lambdas[i]},
                      {"a_lambda_norm", dual_norm(s.space, r.a_lambda)},
                      {"displacement", pnorm(s.space, r.x_lambda - x)},
                      {"residual", r.residual},
                      {"iterations", r.iterations},
                      {"status", std::string(to_string(r.status))}});
    }
    json j = setup_json(c, s);
    j["command"] = "sweep";
    j["x"] = point_json(x.vec());
    j["rows"] = rows;
    body = j.dump(2) + "\n";
  }
  std::ostringstream summary;
  summary << "sweep: " << solves.size() << " lambdas, " << failures << " solver failures";
  emit(c, body, summary.str(), out, err);
  return failures == 0 ? kOk : kSolverFailure;
}

int cmd_psi_curve(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Setup s = setup_of(c);
  const Point x0 = c.x ? parse_point(*c.x, s.space.dim()) : Point::zero(s.space.dim());
  if (!(c.radius > 0.0)) throw ConfigError("--radius: R must be > 0");
  if (c.samples < 1000) throw ConfigError("--samples: psi estimation needs samples >= 1000");
  std::vector<double> grid;
  if (c.r_grid) {
    grid = parse_grid(*c.r_grid);
  } else {
    for (int k = 1; k <= 10; ++k) grid.push_back(c.radius * k / 10.0);
  }
  if (!(grid.front() > 0.0) || grid.back() > c.radius)
    throw ConfigError("--r-grid: radii must lie in (0, R]");
  const Execution exec = c.serial ? Execution::serial : Execution::parallel;

  const PsiCurve curve = estimate_psi(s.space, s.gauge, x0, c.radius, grid, c.samples, c.seed, exec);
  const ProbeReport shape = check_psi_shape(curve);
  const ProbeReport bound = check_lower_bound(s.space, s.gauge, x0, curve, c.samples, c.seed, 1e-12, exec);

  std::string body;
  if (format_of(c, "csv") == "csv") {
    std::ostringstream csv;
    csv << "r,psi_hat\n";
    for (std::size_t k = 0; k < grid.size(); ++k)
      csv << csv_number(curve.r_grid[k]) << ',' << csv_number(curve.psi_hat[k]) << '\n';
    body = csv.str();
  } else {
    json j = setup_json(c, s);
    j["command"] = "psi-curve";
    j["x0"] = point_json(x0.vec());
    j["R"] = curve.radius;
    j["r_grid"] = curve.r_grid;
    j["psi_hat"] = curve.psi_hat;
    j["sample_count"] = curve.sample_count;
    j["seed"] = curve.seed;
    j["shape"] = report_to_json(shape);
    j["lower_bound"] = report_to_json(bound);
    body = j.dump(2) + "\n";
  }
  const bool pass = shape.verdict && bound.verdict;
  std::ostringstream summary;
  summary << "psi-curve: " << (pass ? "pass" : "fail") << ", " << grid.size() << " radii, "
          << bound.metrics.at("violations") << " lower-bound violations";
  emit(c, body, summary.str(), out, err);
  return pass ? kOk : kVerdictFailure;
}

int cmd_homotopy(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Setup s = setup_of(c);
  const Point x0 = required_point(c, s.space.dim());
  if (!(c.lambda1 > 0.0) || !(c.lambda2 > 0.0))
    throw ConfigError("--lambda1/--lambda2: lambda values must be > 0");
  if (!(c.check_tol > 0.0)) throw ConfigError("--check-tol: tolerance must be > 0");
  const auto t_seq = parse_t_sequence(c.t_sequence, c.t0);
  const ProbeReport rep = homotopy_check(s.space, s.gauge, s.op, c.lambda1, c.lambda2, t_seq, c.t0,
                                         x0, c.check_tol, probe_options(c));

  std::string body;
  if (format_of(c, "csv") == "csv") {
    std::ostringstream csv;
    csv << "t,abs_dt,deviation,tolerance\n";
    for (std::size_t i = 0; i < t_seq.size(); ++i) {
      const auto& o = rep.observations[i];
      csv << csv_number(t_seq[i]) << ',' << csv_number(o.input_scale) << ','
          << csv_number(o.deviation) << ',' << csv_number(o.tolerance) << '\n';
    }
    body = csv.str();
  } else {
    json j = report_to_json(rep);
    j["command"] = "homotopy";
    body = j.dump(2) + "\n";
  }
  std::ostringstream summary;
  summary << "homotopy: " << (rep.verdict ? "pass" : "fail") << ", final deviation "
          << rep.metrics.at("final_deviation");
  emit(c, body, summary.str(), out, err);
  if (rep.metrics.at("solver_failures") > 0) return kSolverFailure;
  return rep.verdict ? kOk : kVerdictFailure;
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out, std::ostream& /*err*/) {
  SuiteOptions o;
  o.seed = c.seed;
  if (c.samples < 1000) throw ConfigError("--samples: psi estimation needs samples >= 1000");
  o.psi_samples = c.samples;
  o.probe = probe_options(c);
  const std::filesystem::path dir = c.out.value_or("verify-artifacts");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("--out: cannot create directory '" + dir.string() + "'");

  const auto reports = verification_suite(o);
  std::size_t failed = 0;
  json list = json::array();
  for (const auto& r : reports) {
    failed += !r.verdict;
    json j = report_to_json(r);
    j.erase("trace");
    list.push_back(std::move(j));
  }
  const json summary = {{"command", "verify"},
                        {"seed", c.seed},
                        {"samples", c.samples},
                        {"reports", reports.size()},
                        {"failed", failed},
                        {"verdict", failed == 0 ? "pass" : "fail"},
                        {"results", list}};
  {
    std::ofstream f(dir / "verify_summary.json", std::ios::binary);
    f << summary.dump(2) << '\n';
  }
  {
    std::ofstream f(dir / "verify_observations.csv", std::ios::binary);
    f << reports_to_csv(reports);
  }
  out << "verify: " << (failed == 0 ? "pass" : "fail") << ", " << reports.size() - failed << "/"
      << reports.size() << " reports passed, artifacts in " << dir.string() << '\n';
  for (const auto& r : reports)
    if (!r.verdict) {
      out << "  failed: " << r.label;
      for (const auto& [k, v] : r.parameters) out << ' ' << k << '=' << v;
      out << '\n';
    }
  return failed == 0 ? kOk : kVerdictFailure;
}

void add_common_options(CLI::App& app, ExperimentConfig& c) {
  app.add_option("--space", c.space, "Space as 'n,p'")->capture_default_str();
  app.add_option("--gauge", c.gauge, "normalized | power:<p> | log1p | expm1")->capture_default_str();
  app.add_option("--operator", c.op, "zero | identity | quartic | softplus | rotation-psd | psd:<csv>")
      ->capture_default_str();
  app.add_option("--lambda", c.lambda, "Step size lambda > 0");
  app.add_option("--lambda-range", c.lambda_range, "Log-spaced lambdas 'a:b:k'");
  app.add_option("--x", c.x, "Point: inline '1,2' / '[1,2]' or a file");
  app.add_option("--tol", c.tol, "Relative solver tolerance");
  app.add_option("--samples", c.samples, "Sample count")->capture_default_str();
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--out", c.out, "Output file (directory for verify)");
  app.add_option("--format", c.format, "csv | json");
  app.add_option("--radius", c.radius, "Outer radius R")->capture_default_str();
  app.add_option("--r-grid", c.r_grid, "Radii 'a:b:k' or a comma list");
  app.add_option("--lambda1", c.lambda1, "Homotopy endpoint q(1)")->capture_default_str();
  app.add_option("--lambda2", c.lambda2, "Homotopy endpoint q(0)")->capture_default_str();
  app.add_option("--t0", c.t0, "Homotopy limit parameter")->capture_default_str();
  app.add_option("--t-sequence", c.t_sequence,
                 "reciprocal:N[:+|-] | pow2:K[:+|-] | constant:N | comma list")
      ->capture_default_str();
  app.add_option("--check-tol", c.check_tol, "Homotopy verdict tolerance")->capture_default_str();
  app.add_flag("--serial", c.serial, "Run kernels on the serial reference path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig c;
  CLI::App app{"Gauge duality maps, resolvents and Yosida approximants on l^p spaces", "yosida"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");
  add_common_options(app, c);
  app.require_subcommand(1);
  const std::pair<const char*, const char*> commands[] = {
      {"resolve", "Solve for the resolvent and Yosida approximant at one (lambda, x)"},
      {"sweep", "Resolve over a log-spaced lambda range, one CSV row per lambda"},
      {"psi-curve", "Estimate the lower-bound modulus psi around x0 and check it"},
      {"verify", "Run the fixture-wide verification suite and write artifacts"},
      {"homotopy", "Track A_q(t) x0 along a t sequence converging to t0"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    if (c.command == "resolve") return cmd_resolve(c, out, err);
    if (c.command == "sweep") return cmd_sweep(c, out, err);
    if (c.command == "psi-curve") return cmd_psi_curve(c, out, err);
    if (c.command == "homotopy") return cmd_homotopy(c, out, err);
    return cmd_verify(c, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace yosida::app
