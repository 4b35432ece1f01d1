#include "otto/numeric.hpp"

#include <cmath>

#include "otto/errors.hpp"

namespace otto {

double coth(double x) {
  if (x < 0.0) return -coth(-x);
  if (x < 1e-4) return 1.0 / x + x / 3.0 - x * x * x / 45.0;
  return 1.0 + coth_minus_one(x);
}

double coth_minus_one(double x) {
  if (std::isinf(x)) return 0.0;
  if (x < 1e-4) return coth(x) - 1.0;
  return 2.0 / std::expm1(2.0 * x);
}

double arcoth(double y) {
  if (!(y >= 1.0)) throw DomainError("arcoth needs an argument >= 1");
  if (y == 1.0) return std::numeric_limits<double>::infinity();
  return 0.5 * std::log1p(2.0 / (y - 1.0));
}

double kappa_coth_half(double kappa, double beta) {
  if (std::isinf(beta)) return kappa;
  if (kappa == 0.0) return 2.0 / beta;
  return kappa * coth(0.5 * beta * kappa);
}

}  // namespace otto
