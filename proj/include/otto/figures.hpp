#pragma once

// Data behind the two figures: end-of-ramp squeezing versus ramp duration, and
// late-time covariances versus damping and bath temperature. Rows that fail
// numerically are kept, with NaN values and the error text in "status".

#include "otto/config.hpp"
#include "otto/report.hpp"

namespace otto::cli {

/// Columns (tau, eta_s, status). The ramp omega_l -> omega_h (linear in
/// omega^2) starts from the cold-bath steady state of the engine config and is
/// propagated through the Wigner-exponent equations.
Table r_driving_table(const RunConfig& cfg);

/// Columns (gamma, temp, sxx_scaled, spp_scaled, status) with
/// sxx_scaled = 2 m omega <x^2> and spp_scaled = 2 <p^2> / (m omega), for a
/// plain thermal bath (mass and cutoff from the engine's cold bath).
Table cov_table(const RunConfig& cfg);

/// Rotating-term-dropped HPZ coefficients and their stationary state over the
/// [hpz] grids.
Table hpz_dump_table(const RunConfig& cfg);

}  // namespace otto::cli
