#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "yosida/gauges.hpp"

namespace yosida {

struct PrimalTag {};
struct DualTag {};

/// Coordinate vector tagged with the space it lives in. Arithmetic is only
/// defined between vectors of the same space; primal/dual interaction goes
/// through `dual_pairing`.
template <class Tag>
class Coords {
 public:
  Coords() = default;
  explicit Coords(Eigen::VectorXd v) : v_(std::move(v)) {}
  Coords(std::initializer_list<double> xs) : v_(static_cast<Eigen::Index>(xs.size())) {
    Eigen::Index i = 0;
    for (double x : xs) v_[i++] = x;
  }

  static Coords zero(std::size_t n) {
    return Coords(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)));
  }

  std::size_t size() const { return static_cast<std::size_t>(v_.size()); }
  double operator[](std::size_t i) const { return v_[static_cast<Eigen::Index>(i)]; }
  double& operator[](std::size_t i) { return v_[static_cast<Eigen::Index>(i)]; }

  const Eigen::VectorXd& vec() const { return v_; }
  Eigen::VectorXd& vec() { return v_; }

  bool all_finite() const { return v_.allFinite(); }

  Coords& operator+=(const Coords& o) {
    check_size(o);
    v_ += o.v_;
    return *this;
  }
  Coords& operator-=(const Coords& o) {
    check_size(o);
    v_ -= o.v_;
    return *this;
  }
  Coords& operator*=(double s) {
    v_ *= s;
    return *this;
  }

  friend Coords operator+(Coords a, const Coords& b) { return a += b; }
  friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
  friend Coords operator-(Coords a) {
    a.v_ = -a.v_;
    return a;
  }
  friend Coords operator*(double s, Coords a) { return a *= s; }
  friend Coords operator*(Coords a, double s) { return a *= s; }
  friend Coords operator/(Coords a, double s) { return a *= 1.0 / s; }
  friend bool operator==(const Coords& a, const Coords& b) {
    return a.v_.size() == b.v_.size() && a.v_ == b.v_;
  }

 private:
  void check_size(const Coords& o) const {
    if (o.v_.size() != v_.size()) throw std::invalid_argument("Coords: dimension mismatch");
  }

  Eigen::VectorXd v_;
};

/// Element of X = R^n.
using Point = Coords<PrimalTag>;
/// Element of X* = R^n, measured in the dual q-norm.
using DualPoint = Coords<DualTag>;

/// The finite-dimensional space l^p_n with 1 < p < inf. Smooth and locally
/// uniformly convex, so every gauge duality map on it is single-valued.
class PNormSpace {
 public:
  /// Throws std::invalid_argument unless dim >= 1 and 1 < p < inf.
  PNormSpace(std::size_t dim, double p);

  std::size_t dim() const { return dim_; }
  double p() const { return p_; }
  /// Dual exponent, 1/p + 1/q = 1.
  double q() const { return q_; }

  bool is_euclidean() const { return p_ == 2.0; }

 private:
  std::size_t dim_;
  double p_;
  double q_;
};

/// Below this norm a vector is treated as the origin by the duality maps.
inline constexpr double kOriginCutoff = 1e-300;

/// (sum |x_i|^e)^{1/e}, computed with max-abs scaling.
double lp_norm(const Eigen::VectorXd& v, double e);

double pnorm(const PNormSpace& sp, const Point& x);
/// Norm of X*, i.e. the q-norm.
double dual_norm(const PNormSpace& sp, const DualPoint& x_star);

double dual_pairing(const DualPoint& x_star, const Point& x);

/// J x with <Jx, x> = |x|^2 and |Jx|_q = |x|_p.
DualPoint normalized_duality(const PNormSpace& sp, const Point& x);

/// J_phi x = phi(|x|) / |x| * J x, and J_phi 0 = 0.
DualPoint gauge_duality(const PNormSpace& sp, const Gauge& g, const Point& x);

/// J_{phi^{-1}} on X* (exponent q, gauge phi^{-1}); the inverse of J_phi.
Point inverse_gauge_duality(const PNormSpace& sp, const Gauge& g, const DualPoint& x_star,
                            double tol = kDefaultInverseTol);

}  // namespace yosida
