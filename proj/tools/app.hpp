#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "yosida/analysis.hpp"

namespace yosida::app {

enum ExitCode : int { kOk = 0, kVerdictFailure = 1, kConfigError = 2, kSolverFailure = 3 };

/// Invalid configuration; the message names the violated invariant.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Parsed command line (and optional config file). Strings are kept raw and
/// validated by the accessors below so errors surface as ConfigError.
struct ExperimentConfig {
  std::string command;
  std::string space = "2,2";
  std::string gauge = "normalized";
  std::string op = "zero";
  std::optional<double> lambda;
  std::optional<std::string> lambda_range;
  std::optional<std::string> x;
  std::optional<double> tol;
  std::size_t samples = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> format;
  double radius = 1.0;
  std::optional<std::string> r_grid;
  double lambda1 = 0.5;
  double lambda2 = 2.0;
  double t0 = 0.5;
  std::string t_sequence = "reciprocal:20";
  double check_tol = 1e-5;
  bool serial = false;
};

/// "n,p".
PNormSpace parse_space(const std::string& spec);
/// Inline "1,2,3" / "[1,2,3]" or a path to a file with the same content.
Point parse_point(const std::string& spec, std::size_t n);
/// "a:b:k", log-spaced, ascending.
std::vector<double> parse_lambda_range(const std::string& spec);
/// "a:b:k" linear, or a comma list; strictly increasing.
std::vector<double> parse_grid(const std::string& spec);
/// "reciprocal:N[:+|-]", "pow2:K[:+|-]", "constant:N", or a comma list.
std::vector<double> parse_t_sequence(const std::string& spec, double t0);

/// Finite doubles as JSON numbers; inf, -inf and nan as strings, since JSON
/// has no literal for them.
nlohmann::json json_number(double v);
double json_to_double(const nlohmann::json& j);

nlohmann::json report_to_json(const ProbeReport& rep);
/// Inverse of report_to_json; the trace is optional.
ProbeReport report_from_json(const nlohmann::json& j);
/// Header plus one row per observation: report,label,input_scale,deviation,tolerance.
std::string reports_to_csv(const std::vector<ProbeReport>& reports);
/// Doubles formatted with 17 significant digits.
std::string csv_number(double v);

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t psi_samples = 10000;
  ProbeOptions probe;
};

/// Fixture-wide verification suite: inequality audits, psi curves, sequence
/// checks, resolvent probes. Deterministic for a given seed.
std::vector<ProbeReport> verification_suite(const SuiteOptions& opts);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace yosida::app
