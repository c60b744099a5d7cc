#pragma once

#include "spdgeom/scalar_function.hpp"

namespace spdgeom {

/// Relative eigenvalue separation below which the quotient formulas switch to
/// their stabilized coincidence branches (the quotients lose all precision to
/// cancellation near coincidence).
inline constexpr double kDdSwitch = 1e-7;

/// First divided difference f^[1](x, y): (f(x) - f(y))/(x - y) away from
/// coincidence, f' at the midpoint below the switch. Symmetric in (x, y).
double divided_diff_1(const ScalarFunction& f, double x, double y);

/// Second divided difference f^[2](x, y, z), fully symmetric. Uses the branch
/// dividing by the largest pairwise separation; when all three arguments are
/// within the switch of each other, returns f''/2 at their mean.
double divided_diff_2(const ScalarFunction& f, double x, double y, double z);

}  // namespace spdgeom
