#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace yosida::detail {

// Index and value of the largest entry; NaN counts as largest so that a
// non-finite deviation is never hidden behind a finite one.
struct Worst {
  std::size_t index = 0;
  double value = -INFINITY;
};

inline Worst worst_of(const std::vector<double>& v) {
  Worst w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) return {i, v[i]};
    if (v[i] > w.value) w = {i, v[i]};
  }
  return w;
}

inline std::size_t count_above(const std::vector<double>& v, double tol) {
  std::size_t n = 0;
  for (double d : v) n += !(d <= tol);
  return n;
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace yosida::detail
