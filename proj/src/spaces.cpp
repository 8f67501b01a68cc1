#include "yosida/spaces.hpp"

#include <cmath>
#include <sstream>

namespace yosida {
namespace {

void require_dim(const PNormSpace& sp, std::size_t n, const char* where) {
  if (n != sp.dim()) {
    std::ostringstream msg;
    msg << where << ": dimension mismatch (space has " << sp.dim() << ", vector has " << n << ")";
    throw std::invalid_argument(msg.str());
  }
}

// sign(y_i) |y_i|^{e-1} for a unit vector y of the e-norm; the result has
// unit norm in the conjugate exponent.
Eigen::VectorXd unit_dual_direction(const Eigen::VectorXd& y, double e) {
  if (e == 2.0) return y;
  Eigen::VectorXd out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double a = std::abs(y[i]);
    out[i] = a == 0.0 ? 0.0 : std::copysign(std::pow(a, e - 1.0), y[i]);
  }
  return out;
}

}  // namespace

PNormSpace::PNormSpace(std::size_t dim, double p) : dim_(dim), p_(p), q_(0.0) {
  if (dim == 0) throw std::invalid_argument("PNormSpace: dimension n must be >= 1");
  if (!std::isfinite(p) || !(p > 1.0)) {
    std::ostringstream msg;
    msg << "PNormSpace: exponent p must lie in (1, inf); got " << p;
    throw std::invalid_argument(msg.str());
  }
  q_ = p / (p - 1.0);
}

double lp_norm(const Eigen::VectorXd& v, double e) {
  if (v.size() == 0) return 0.0;
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0 || !std::isfinite(m)) return m;
  double sum = 0.0;
  if (e == 2.0) {
    sum = (v / m).squaredNorm();
    return m * std::sqrt(sum);
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::pow(std::abs(v[i]) / m, e);
  return m * std::pow(sum, 1.0 / e);
}

double pnorm(const PNormSpace& sp, const Point& x) {
  require_dim(sp, x.size(), "pnorm");
  return lp_norm(x.vec(), sp.p());
}

double dual_norm(const PNormSpace& sp, const DualPoint& x_star) {
  require_dim(sp, x_star.size(), "dual_norm");
  return lp_norm(x_star.vec(), sp.q());
}

double dual_pairing(const DualPoint& x_star, const Point& x) {
  if (x_star.size() != x.size()) throw std::invalid_argument("dual_pairing: dimension mismatch");
  return x_star.vec().dot(x.vec());
}

DualPoint normalized_duality(const PNormSpace& sp, const Point& x) {
  require_dim(sp, x.size(), "normalized_duality");
  const double r = lp_norm(x.vec(), sp.p());
  if (r < kOriginCutoff) return DualPoint::zero(sp.dim());
  return DualPoint(r * unit_dual_direction(x.vec() / r, sp.p()));
}

DualPoint gauge_duality(const PNormSpace& sp, const Gauge& g, const Point& x) {
  require_dim(sp, x.size(), "gauge_duality");
  const double r = lp_norm(x.vec(), sp.p());
  if (r < kOriginCutoff) return DualPoint::zero(sp.dim());
  return DualPoint(g.eval(r) * unit_dual_direction(x.vec() / r, sp.p()));
}

Point inverse_gauge_duality(const PNormSpace& sp, const Gauge& g, const DualPoint& x_star,
                            double tol) {
  require_dim(sp, x_star.size(), "inverse_gauge_duality");
  const double s = lp_norm(x_star.vec(), sp.q());
  if (s < kOriginCutoff) return Point::zero(sp.dim());
  const double r = g.inverse(s, tol);
  return Point(r * unit_dual_direction(x_star.vec() / s, sp.q()));
}

}  // namespace yosida
