#include "spdgeom/scalar_function.hpp"

#include <cmath>
#include <utility>

#include "spdgeom/errors.hpp"

namespace spdgeom {

namespace {

Interval estimate_image(const ScalarFunction::Fn& f) {
  // Probe toward both ends of (0, inf); good enough for custom monotone maps.
  const double lo_probe = f(1e-12);
  const double hi_probe = f(1e12);
  Interval im;
  im.lo = std::min(lo_probe, hi_probe);
  im.hi = std::max(lo_probe, hi_probe);
  if (!std::isfinite(im.lo)) im.lo = -std::numeric_limits<double>::infinity();
  if (!std::isfinite(im.hi)) im.hi = std::numeric_limits<double>::infinity();
  return im;
}

constexpr Interval kPositiveHalfLine{0.0, std::numeric_limits<double>::infinity()};

}  // namespace

ScalarFunction::ScalarFunction(std::string name, Fn value, Fn deriv1, Fn deriv2,
                               bool is_diffeomorphism, Fn inverse,
                               std::optional<Interval> image)
    : name_(std::move(name)),
      value_(std::move(value)),
      deriv1_(std::move(deriv1)),
      deriv2_(std::move(deriv2)),
      inverse_(std::move(inverse)),
      is_diffeomorphism_(is_diffeomorphism),
      image_(image ? *image : estimate_image(value_)) {}

double ScalarFunction::invert(double w) const {
  if (!is_diffeomorphism_) {
    throw NotDiffeomorphismError("invert: '" + name_ + "' is not a diffeomorphism");
  }
  if (inverse_) return inverse_(w);
  if (!image_.contains(w)) {
    throw DomainError("invert: value outside image of '" + name_ + "'");
  }
  // Monotone bisection on (0, inf) in log space.
  const bool increasing = value_(2.0) > value_(1.0);
  auto below = [&](double x) { return increasing ? value_(x) < w : value_(x) > w; };
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (!below(lo)) {
    lo *= 0.5;
    if (++guard > 1200) throw DomainError("invert: bracketing failed for '" + name_ + "'");
  }
  guard = 0;
  while (below(hi)) {
    hi *= 2.0;
    if (++guard > 1200) throw DomainError("invert: bracketing failed for '" + name_ + "'");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ScalarFunction ScalarFunction::identity() {
  return ScalarFunction(
      "id", [](double x) { return x; }, [](double) { return 1.0; },
      [](double) { return 0.0; }, true, [](double w) { return w; },
      kPositiveHalfLine);
}

ScalarFunction ScalarFunction::power(double p) {
  if (p == 0.0) {
    throw InvalidPowerError("pow_0 is constant, not a diffeomorphism; use log for F_0");
  }
  std::string name = "pow_" + std::to_string(p);
  const double inv_p = 1.0 / p;
  return ScalarFunction(
      std::move(name), [p](double x) { return std::pow(x, p); },
      [p](double x) { return p * std::pow(x, p - 1.0); },
      [p](double x) { return p * (p - 1.0) * std::pow(x, p - 2.0); }, true,
      [inv_p](double w) { return std::pow(w, inv_p); }, kPositiveHalfLine);
}

ScalarFunction ScalarFunction::log() {
  return ScalarFunction(
      "log", [](double x) { return std::log(x); },
      [](double x) { return 1.0 / x; },
      [](double x) { return -1.0 / (x * x); }, true,
      [](double w) { return std::exp(w); }, Interval{});
}

ScalarFunction ScalarFunction::power_or_log(double alpha) {
  return alpha == 0.0 ? log() : power(alpha);
}

ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner) {
  auto value = [outer, inner](double x) { return outer(inner(x)); };
  auto d1 = [outer, inner](double x) { return outer.d1(inner(x)) * inner.d1(x); };
  auto d2 = [outer, inner](double x) {
    const double y = inner(x);
    const double dy = inner.d1(x);
    return outer.d2(y) * dy * dy + outer.d1(y) * inner.d2(x);
  };
  ScalarFunction::Fn inverse = nullptr;
  if (outer.is_diffeomorphism() && inner.is_diffeomorphism()) {
    inverse = [outer, inner](double w) { return inner.invert(outer.invert(w)); };
  }
  std::optional<Interval> image;
  if (inner.image().lo <= 0.0 &&
      inner.image().hi == std::numeric_limits<double>::infinity()) {
    image = outer.image();  // inner is onto (0, inf)
  }
  return ScalarFunction(outer.name() + "∘" + inner.name(), std::move(value),
                        std::move(d1), std::move(d2),
                        outer.is_diffeomorphism() && inner.is_diffeomorphism(),
                        std::move(inverse), image);
}

}  // namespace spdgeom
