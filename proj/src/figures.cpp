#include "otto/figures.hpp"

#include <cmath>
#include <limits>

#include "otto/hpz.hpp"
#include "otto/isentropic.hpp"
#include "otto/isothermal.hpp"

namespace otto::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

Table r_driving_table(const RunConfig& cfg) {
  const EngineConfig& g = cfg.engine;
  g.validate();
  const BathSpec cold{g.beta_l, SqueezeParams{}, g.gamma_l, g.cutoff_l, SpectralFamily::OhmicSharpCutoff};
  const GaussianState start = steady_state(cold, g.mass, g.omega_l, g.coupling_mode, g.quadrature).state;

  Table t;
  t.columns = {"tau", "eta_s", "status"};
  for (const double tau : cfg.figure.tau_grid.values()) {
    try {
      const GaussianState end = evolve_wigner(start, FrequencyRamp::linear(g.omega_l, g.omega_h, tau), g.integrator);
      t.add_row({tau, extract_squeeze(end).squeeze.eta, std::string("ok")});
    } catch (const std::exception& e) {
      t.add_row({tau, kNaN, std::string(e.what())});
    }
  }
  return t;
}

Table cov_table(const RunConfig& cfg) {
  const double m = cfg.engine.mass;
  const double w = cfg.figure.omega;
  Table t;
  t.columns = {"gamma", "temp", "sxx_scaled", "spp_scaled", "status"};
  for (const double gamma : cfg.figure.gamma_grid.values()) {
    for (const double temp : cfg.figure.temp_grid.values()) {
      try {
        const BathSpec bath{temp > 0.0 ? 1.0 / temp : kInfiniteBeta, SqueezeParams{}, gamma, cfg.engine.cutoff_l,
                            SpectralFamily::OhmicSharpCutoff};
        const SteadyCovariances c = steady_covariances(bath, m, w, cfg.engine.quadrature);
        t.add_row({gamma, temp, 2.0 * m * w * c.sxx, 2.0 * c.spp / (m * w), std::string("ok")});
      } catch (const std::exception& e) {
        t.add_row({gamma, temp, kNaN, kNaN, std::string(e.what())});
      }
    }
  }
  return t;
}

Table hpz_dump_table(const RunConfig& cfg) {
  const HpzSettings& h = cfg.hpz;
  return hpz_table(hpz_coefficient_grid(h.beta_grid.values(), h.eta_grid.values(), h.gamma_grid.values(),
                                        cfg.engine.mass, h.omega, h.cutoff, h.theta));
}

}  // namespace otto::cli
