#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "app.hpp"

namespace yosida::app {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

double to_double(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError(what + ": '" + s + "' is not a number");
  if (!std::isfinite(v)) throw ConfigError(what + ": value must be finite");
  return v;
}

std::size_t to_count(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError(what + ": '" + s + "' is not a nonnegative integer");
  return v;
}

std::vector<double> number_list(std::string text, const std::string& what) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(what + ": malformed JSON array (" + e.what() + ")");
    }
    if (!j.is_array()) throw ConfigError(what + ": expected a JSON array");
    std::vector<double> out;
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError(what + ": JSON array must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  std::replace_if(text.begin(), text.end(), [](char c) { return c == '\n' || c == '\r' || c == ';'; }, ',');
  std::vector<double> out;
  for (const auto& item : split(text, ','))
    if (!trim(item).empty()) out.push_back(to_double(item, what));
  return out;
}

}  // namespace

PNormSpace parse_space(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 2) throw ConfigError("--space: expected 'n,p'; got '" + spec + "'");
  const std::size_t n = to_count(parts[0], "--space n");
  const double p = to_double(parts[1], "--space p");
  if (n == 0) throw ConfigError("--space: dimension n must be >= 1");
  if (!(p > 1.0)) throw ConfigError("--space: exponent p must lie in (1, inf); got " + trim(parts[1]));
  return PNormSpace(n, p);
}

Point parse_point(const std::string& spec, std::size_t n) {
  std::string text = spec;
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  const auto values = number_list(text, "--x");
  if (values.size() != n)
    throw ConfigError("--x: has " + std::to_string(values.size()) +
                      " components but the space has dimension " + std::to_string(n));
  Point x = Point::zero(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = values[i];
  return x;
}

std::vector<double> parse_lambda_range(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw ConfigError("--lambda-range: expected 'a:b:k'; got '" + spec + "'");
  const double a = to_double(parts[0], "--lambda-range a");
  const double b = to_double(parts[1], "--lambda-range b");
  const std::size_t k = to_count(parts[2], "--lambda-range k");
  if (!(a > 0.0) || !(b >= a)) throw ConfigError("--lambda-range: need 0 < a <= b (lambda must be > 0)");
  if (k == 0) throw ConfigError("--lambda-range: k must be >= 1");
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i)
    out[i] = k == 1 ? a : std::exp(std::log(a) + (std::log(b) - std::log(a)) * double(i) / double(k - 1));
  out.front() = a;
  out.back() = k == 1 ? a : b;
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  const auto parts = split(spec, ':');
  if (parts.size() == 3) {
    const double a = to_double(parts[0], "--r-grid a");
    const double b = to_double(parts[1], "--r-grid b");
    const std::size_t k = to_count(parts[2], "--r-grid k");
    if (k < 2 || !(b > a)) throw ConfigError("--r-grid: 'a:b:k' needs a < b and k >= 2");
    for (std::size_t i = 0; i < k; ++i) out.push_back(a + (b - a) * double(i) / double(k - 1));
    out.back() = b;
  } else {
    out = number_list(spec, "--r-grid");
  }
  if (out.empty()) throw ConfigError("--r-grid: empty grid");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) throw ConfigError("--r-grid: grid must be strictly increasing");
  return out;
}

std::vector<double> parse_t_sequence(const std::string& spec, double t0) {
  if (!(t0 >= 0.0 && t0 <= 1.0)) throw ConfigError("--t0: must lie in [0, 1]");
  const auto parts = split(spec, ':');
  auto sign_of = [&](std::size_t idx) {
    if (parts.size() <= idx) return 1;
    const std::string s = trim(parts[idx]);
    if (s == "+") return 1;
    if (s == "-") return -1;
    throw ConfigError("--t-sequence: sign must be '+' or '-'");
  };
  std::vector<double> out;
  if (parts.size() >= 2 && parts[0] == "reciprocal") {
    out = reciprocal_t_sequence(t0, to_count(parts[1], "--t-sequence N"), sign_of(2));
  } else if (parts.size() >= 2 && parts[0] == "pow2") {
    const std::size_t k_max = to_count(parts[1], "--t-sequence K");
    if (k_max > 60) throw ConfigError("--t-sequence: pow2 exponent must be <= 60");
    const int sign = sign_of(2);
    for (std::size_t k = 0; k <= k_max; ++k) {
      const double t = t0 + double(sign) * std::ldexp(1.0, -int(k));
      if (t >= 0.0 && t <= 1.0) out.push_back(t);
    }
  } else if (parts.size() == 2 && parts[0] == "constant") {
    out.assign(to_count(parts[1], "--t-sequence N"), t0);
  } else {
    out = number_list(spec, "--t-sequence");
  }
  if (out.empty()) throw ConfigError("--t-sequence: no terms inside [0, 1]");
  for (double t : out)
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("--t-sequence: t values must lie in [0, 1]");
  return out;
}

std::string csv_number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

double json_to_double(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw std::invalid_argument("json_to_double: not a number: '" + s + "'");
}

nlohmann::json report_to_json(const ProbeReport& rep) {
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : rep.observations)
    obs.push_back({{"input_scale", json_number(o.input_scale)},
                   {"deviation", json_number(o.deviation)},
                   {"tolerance", json_number(o.tolerance)}});
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto& [k, v] : rep.metrics) metrics[k] = json_number(v);
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : rep.trace) trace.push_back({json_number(t[0]), json_number(t[1])});
  return {{"label", rep.label},
          {"parameters", rep.parameters},
          {"observations", obs},
          {"tolerance", json_number(rep.tolerance)},
          {"verdict", rep.verdict ? "pass" : "fail"},
          {"metrics", metrics},
          {"trace", trace}};
}

ProbeReport report_from_json(const nlohmann::json& j) {
  ProbeReport rep;
  rep.label = j.at("label").get<std::string>();
  rep.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  for (const auto& o : j.at("observations"))
    rep.observations.push_back({json_to_double(o.at("input_scale")), json_to_double(o.at("deviation")),
                                json_to_double(o.at("tolerance"))});
  rep.tolerance = json_to_double(j.at("tolerance"));
  rep.verdict = j.at("verdict").get<std::string>() == "pass";
  for (const auto& [k, v] : j.at("metrics").items()) rep.metrics[k] = json_to_double(v);
  if (j.contains("trace"))
    for (const auto& t : j.at("trace")) rep.trace.push_back({json_to_double(t[0]), json_to_double(t[1])});
  return rep;
}

std::string reports_to_csv(const std::vector<ProbeReport>& reports) {
  std::ostringstream s;
  s << "report,label,input_scale,deviation,tolerance\n";
  for (std::size_t r = 0; r < reports.size(); ++r)
    for (const auto& o : reports[r].observations)
      s << r << ',' << reports[r].label << ',' << csv_number(o.input_scale) << ','
        << csv_number(o.deviation) << ',' << csv_number(o.tolerance) << '\n';
  return s.str();
}

}  // namespace yosida::app
