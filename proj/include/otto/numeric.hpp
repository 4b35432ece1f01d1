#pragma once

#include <limits>

namespace otto {

/// Inverse temperature of a zero-temperature reservoir.
inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// Hyperbolic cotangent with exact value 1 at +infinity and a Laurent
/// expansion below |x| = 1e-4.
double coth(double x);

/// coth(x) - 1 for x > 0 without cancellation.
double coth_minus_one(double x);

/// Inverse hyperbolic cotangent for y >= 1. Returns +infinity at y == 1 and
/// throws DomainError below 1.
double arcoth(double y);

/// kappa * coth(beta * kappa / 2), continuous at kappa = 0 (value 2 / beta)
/// and equal to kappa when beta is infinite.
double kappa_coth_half(double kappa, double beta);

}  // namespace otto
