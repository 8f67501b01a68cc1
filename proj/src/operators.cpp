#include "yosida/operators.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "yosida/sampling.hpp"

namespace yosida {
namespace {

constexpr double kPsdSlack = 1e-10;
constexpr double kMonotoneSlack = 1e-10;

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

MonotoneOperator::MonotoneOperator(std::string label, std::size_t dim, Map map)
    : label_(std::move(label)), dim_(dim), map_(std::move(map)) {
  if (dim_ == 0) throw std::invalid_argument("MonotoneOperator: dimension must be >= 1");
  if (!map_) throw std::invalid_argument("MonotoneOperator: empty map");
}

DualPoint MonotoneOperator::evaluate(const Point& x) const {
  if (x.size() != dim_) throw std::invalid_argument("MonotoneOperator::evaluate: dimension mismatch");
  DualPoint y = map_(x);
  if (!y.all_finite())
    throw std::domain_error("MonotoneOperator '" + label_ + "': non-finite output");
  return y;
}

bool MonotoneOperator::is_homogeneous_of_degree(double degree) const {
  if (zero_) return true;
  return homogeneity_.has_value() && std::abs(*homogeneity_ - degree) < 1e-14;
}

MonotoneOperator& MonotoneOperator::with_potential(Potential f) {
  potential_ = std::move(f);
  return *this;
}
MonotoneOperator& MonotoneOperator::with_matrix(Eigen::MatrixXd m) {
  matrix_ = std::move(m);
  return *this;
}
MonotoneOperator& MonotoneOperator::with_resolvent(Resolvent r) {
  resolvent_ = std::move(r);
  return *this;
}
MonotoneOperator& MonotoneOperator::with_lipschitz(double bound, double radius) {
  lipschitz_ = bound;
  lipschitz_radius_ = radius;
  return *this;
}
MonotoneOperator& MonotoneOperator::with_homogeneity(double degree) {
  homogeneity_ = degree;
  return *this;
}
MonotoneOperator& MonotoneOperator::mark_zero() {
  zero_ = true;
  return *this;
}

DualPoint evaluate(const MonotoneOperator& a, const Point& x) { return a.evaluate(x); }

MonotoneOperator zero_operator(std::size_t n) {
  MonotoneOperator a("zero", n, [n](const Point&) { return DualPoint::zero(n); });
  a.with_potential([](const Point&) { return 0.0; })
      .with_matrix(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)))
      .with_resolvent([](double, const Point& x) { return x; })
      .with_lipschitz(0.0, std::numeric_limits<double>::infinity())
      .mark_zero();
  return a;
}

MonotoneOperator scaled_identity(std::size_t n, double c) {
  if (!std::isfinite(c) || c < 0.0)
    throw std::invalid_argument("scaled_identity: coefficient must be finite and >= 0");
  if (c == 0.0) return zero_operator(n);
  std::ostringstream label;
  label << "scaled:" << c;
  MonotoneOperator a(c == 1.0 ? "identity" : label.str(), n,
                     [c](const Point& x) { return DualPoint(c * x.vec()); });
  const auto dim = static_cast<Eigen::Index>(n);
  a.with_potential([c](const Point& x) { return 0.5 * c * x.vec().squaredNorm(); })
      .with_matrix(c * Eigen::MatrixXd::Identity(dim, dim))
      .with_resolvent([c](double lambda, const Point& x) { return x / (1.0 + lambda * c); })
      .with_lipschitz(c, std::numeric_limits<double>::infinity())
      .with_homogeneity(1.0);
  return a;
}

MonotoneOperator identity_operator(std::size_t n) { return scaled_identity(n, 1.0); }

MonotoneOperator make_linear_psd(const Eigen::MatrixXd& m, std::string label) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw std::invalid_argument("make_linear_psd: matrix must be square and non-empty");
  if (!m.allFinite()) throw std::invalid_argument("make_linear_psd: matrix has non-finite entries");

  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -kPsdSlack) {
    std::ostringstream msg;
    msg << "make_linear_psd: M + M^T is not positive semidefinite (min eigenvalue of the "
           "symmetric part is "
        << min_eig << ")";
    throw std::invalid_argument(msg.str());
  }

  const auto n = static_cast<std::size_t>(m.rows());
  MonotoneOperator a(std::move(label), n, [m](const Point& x) { return DualPoint(m * x.vec()); });
  a.with_matrix(m)
      .with_resolvent([m](double lambda, const Point& x) {
        const Eigen::MatrixXd system =
            Eigen::MatrixXd::Identity(m.rows(), m.cols()) + lambda * m;
        return Point(system.partialPivLu().solve(x.vec()));
      })
      .with_lipschitz(Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0),
                      std::numeric_limits<double>::infinity())
      .with_homogeneity(1.0);

  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym <= 1e-14 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    a.with_potential([sym](const Point& x) { return 0.5 * x.vec().dot(sym * x.vec()); });
  }
  return a;
}

MonotoneOperator make_gradient(std::size_t n, MonotoneOperator::Potential f,
                               MonotoneOperator::Map grad, std::string label, std::uint64_t seed) {
  if (!f) throw std::invalid_argument("make_gradient: empty potential");
  constexpr std::size_t kPairs = 1000;
  constexpr double kRadius = 10.0;
  for (std::size_t i = 0; i < kPairs; ++i) {
    SampleStream rng(seed, i, streams::kConvexity);
    const Point u = sample_cube(rng, n, kRadius);
    const Point v = sample_cube(rng, n, kRadius);
    const double fu = f(u);
    const double fv = f(v);
    const double fm = f(0.5 * (u + v));
    const double slack = 1e-10 * (1.0 + std::abs(fu) + std::abs(fv));
    if (fm > 0.5 * (fu + fv) + slack) {
      std::ostringstream msg;
      msg << "make_gradient: convexity check failed for '" << label << "' (midpoint value " << fm
          << " above chord " << 0.5 * (fu + fv) << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  MonotoneOperator a(std::move(label), n, std::move(grad));
  a.with_potential(std::move(f));
  return a;
}

MonotoneOperator quartic_operator(std::size_t n) {
  auto a = make_gradient(
      n, [](const Point& x) { return 0.25 * std::pow(x.vec().squaredNorm(), 2); },
      [](const Point& x) { return DualPoint(x.vec().squaredNorm() * x.vec()); }, "quartic");
  // On the Euclidean ball of radius rho the Jacobian norm is 3 rho^2.
  a.with_homogeneity(3.0).with_lipschitz(300.0, 10.0);
  return a;
}

MonotoneOperator softplus_operator(std::size_t n) {
  auto a = make_gradient(
      n,
      [](const Point& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += softplus(x[i]);
        return s;
      },
      [](const Point& x) { return DualPoint(x.vec().unaryExpr(&sigmoid)); }, "softplus");
  a.with_lipschitz(0.25, std::numeric_limits<double>::infinity());
  return a;
}

MonotoneOperator rotation_psd_operator(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
  for (Eigen::Index i = 0; i + 1 < dim; i += 2) {
    m(i, i + 1) = -1.0;
    m(i + 1, i) = 1.0;
  }
  return make_linear_psd(m, "rotation-psd");
}

MonotoneOperator combine(const MonotoneOperator& a, const MonotoneOperator& b, double alpha,
                         double beta) {
  if (a.dim() != b.dim()) throw std::invalid_argument("combine: dimension mismatch");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 0.0 || beta < 0.0)
    throw std::invalid_argument("combine: coefficients must be finite and >= 0");

  std::ostringstream label;
  label << alpha << "*" << a.label() << "+" << beta << "*" << b.label();
  MonotoneOperator c(label.str(), a.dim(), [a, b, alpha, beta](const Point& x) {
    return alpha * a.evaluate(x) + beta * b.evaluate(x);
  });

  if (a.potential() && b.potential()) {
    c.with_potential([fa = *a.potential(), fb = *b.potential(), alpha, beta](const Point& x) {
      return alpha * fa(x) + beta * fb(x);
    });
  }
  if (a.matrix() && b.matrix()) {
    const Eigen::MatrixXd m = alpha * *a.matrix() + beta * *b.matrix();
    c.with_matrix(m).with_resolvent([m](double lambda, const Point& x) {
      const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m.rows(), m.cols()) + lambda * m;
      return Point(system.partialPivLu().solve(x.vec()));
    });
  }
  if (a.lipschitz_bound() && b.lipschitz_bound()) {
    c.with_lipschitz(alpha * *a.lipschitz_bound() + beta * *b.lipschitz_bound(),
                     std::min(a.lipschitz_radius(), b.lipschitz_radius()));
  }
  const bool a_off = alpha == 0.0 || a.is_zero();
  const bool b_off = beta == 0.0 || b.is_zero();
  if (a_off && b_off) {
    c.mark_zero();
  } else {
    for (double degree : {1.0, 3.0}) {
      if ((a_off || a.is_homogeneous_of_degree(degree)) &&
          (b_off || b.is_homogeneous_of_degree(degree)))
        c.with_homogeneity(degree);
    }
  }
  return c;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_matrix_csv: cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw std::invalid_argument("read_matrix_csv: bad number '" + cell + "' in " + path.string());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_matrix_csv: empty matrix in " + path.string());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("read_matrix_csv: ragged rows in " + path.string());
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

MonotoneOperator operator_from_label(std::string_view label, std::size_t n) {
  if (label == "zero") return zero_operator(n);
  if (label == "identity") return identity_operator(n);
  if (label == "quartic") return quartic_operator(n);
  if (label == "softplus") return softplus_operator(n);
  if (label == "rotation-psd") return rotation_psd_operator(n);
  constexpr std::string_view prefix = "psd:";
  if (label.substr(0, prefix.size()) == prefix) {
    const Eigen::MatrixXd m = read_matrix_csv(std::string(label.substr(prefix.size())));
    if (static_cast<std::size_t>(m.rows()) != n)
      throw std::invalid_argument("operator '" + std::string(label) + "': matrix size does not match space dimension");
    return make_linear_psd(m, std::string(label));
  }
  throw std::invalid_argument("unknown operator label '" + std::string(label) + "'");
}

MonotonicityReport sample_monotonicity(const MonotoneOperator& a, std::size_t pairs, double radius,
                                       std::uint64_t seed, Execution exec) {
  std::vector<double> scores(pairs);
  detail::for_each_index(exec, pairs, [&](std::size_t i) {
    SampleStream rng(seed, i, streams::kMonotonicity);
    const Point u = sample_cube(rng, a.dim(), radius);
    const Point v = sample_cube(rng, a.dim(), radius);
    const DualPoint d = a.evaluate(u) - a.evaluate(v);
    const Point h = u - v;
    scores[i] = d.vec().dot(h.vec()) / (1.0 + d.vec().norm() * h.vec().norm());
  });

  MonotonicityReport report;
  report.pairs = pairs;
  report.worst = std::numeric_limits<double>::infinity();
  std::size_t worst_index = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    if (scores[i] < report.worst) {
      report.worst = scores[i];
      worst_index = i;
    }
  }
  if (pairs > 0) {
    SampleStream rng(seed, worst_index, streams::kMonotonicity);
    report.witness_u = sample_cube(rng, a.dim(), radius);
    report.witness_v = sample_cube(rng, a.dim(), radius);
  }
  report.ok = pairs == 0 || report.worst >= -kMonotoneSlack;
  return report;
}

}  // namespace yosida
