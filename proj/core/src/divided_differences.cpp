#include "spdgeom/divided_differences.hpp"

#include <algorithm>
#include <cmath>

namespace spdgeom {

double divided_diff_1(const ScalarFunction& f, double x, double y) {
  if (std::abs(x - y) > kDdSwitch * std::max(std::abs(x), std::abs(y))) {
    return (f(x) - f(y)) / (x - y);
  }
  return f.d1(0.5 * (x + y));
}

double divided_diff_2(const ScalarFunction& f, double x, double y, double z) {
  // Sorting makes the result exactly permutation-symmetric and puts the
  // largest separation (a, c) in the divisor.
  double a = x, b = y, c = z;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  if (c - a <= kDdSwitch * std::max(std::abs(a), std::abs(c))) {
    return 0.5 * f.d2((a + b + c) / 3.0);
  }
  return (divided_diff_1(f, b, c) - divided_diff_1(f, b, a)) / (c - a);
}

}  // namespace spdgeom
