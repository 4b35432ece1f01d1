#pragma once

#include <stdexcept>
#include <string>

namespace otto {

/// Input outside the mathematical domain of an operation (bad mass, frequency,
/// Heisenberg-violating state, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physically valid input that this library does not model (e.g. overdamped
/// baths).
class UnsupportedRegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Integrator or quadrature failed to reach the requested tolerance.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double last_good_time = 0.0)
      : std::runtime_error(what), last_good_time_(last_good_time) {}

  /// Last abscissa (time for ODEs, upper panel edge for quadrature) at which
  /// the computation was still within tolerance.
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace otto
