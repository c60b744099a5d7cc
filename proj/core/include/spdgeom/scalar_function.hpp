#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace spdgeom {

/// Open interval of the real line; endpoints may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x > lo && x < hi; }
  bool is_whole_line() const {
    return lo == -std::numeric_limits<double>::infinity() &&
           hi == std::numeric_limits<double>::infinity();
  }
};

/// A smooth real function on (0, inf) carrying explicit first and second
/// derivatives. Generates univariate matrix maps; explicit derivatives keep
/// the divided-difference calculus exact for the built-in generators.
class ScalarFunction {
 public:
  using Fn = std::function<double(double)>;

  ScalarFunction(std::string name, Fn value, Fn deriv1, Fn deriv2,
                 bool is_diffeomorphism, Fn inverse = nullptr,
                 std::optional<Interval> image = std::nullopt);

  double operator()(double x) const { return value_(x); }
  double d1(double x) const { return deriv1_(x); }
  double d2(double x) const { return deriv2_(x); }

  bool is_diffeomorphism() const { return is_diffeomorphism_; }
  const std::string& name() const { return name_; }

  /// Image of (0, inf) under the map. Exact for built-ins; estimated from
  /// extreme-point probes for custom functions constructed without one.
  const Interval& image() const { return image_; }

  /// Inverse on the image. Exact for built-ins, monotone bisection otherwise.
  /// Requires is_diffeomorphism.
  double invert(double w) const;

  static ScalarFunction identity();
  static ScalarFunction power(double p);  ///< pow_p, p != 0
  static ScalarFunction log();
  /// F_alpha: pow_alpha for alpha != 0, log at alpha = 0.
  static ScalarFunction power_or_log(double alpha);

 private:
  std::string name_;
  Fn value_;
  Fn deriv1_;
  Fn deriv2_;
  Fn inverse_;
  bool is_diffeomorphism_;
  Interval image_;
};

/// outer(inner(x)) with chain-rule derivatives. The inner map must send
/// (0, inf) into (0, inf), as univariate SPD automorphisms do.
ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner);

}  // namespace spdgeom
