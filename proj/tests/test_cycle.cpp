#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "otto/cycle.hpp"
#include "otto/errors.hpp"
#include "otto/nelder_mead.hpp"

using namespace otto;

namespace {

double coth_ref(double x) {
  if (std::isinf(x)) return 1.0;
  return static_cast<double>(oracle::coth_ld(static_cast<long double>(x)));
}

EngineConfig limits(RampProfile p, double eta = 0.0) {
  EngineConfig c;
  c.ramp_ab = {p, 0.0};
  c.ramp_cd = {p, 0.0};
  c.hot_squeeze = SqueezeParams::make(eta, 0.0);
  return c;
}

EngineConfig linear(double tau, double eta = 0.5) {
  EngineConfig c;
  c.ramp_ab = {RampProfile::LinearInOmegaSquared, tau};
  c.ramp_cd = {RampProfile::LinearInOmegaSquared, tau};
  c.hot_squeeze = SqueezeParams::make(eta, 0.0);
  return c;
}

// A random configuration in the adiabatic operational regime with
// beta_H omega_H < beta_L omega_L.
EngineConfig random_operational() {
  for (;;) {
    EngineConfig c;
    c.omega_l = oracle::log_uniform(0.2, 3.0);
    c.omega_h = c.omega_l * oracle::log_uniform(1.1, 10.0);
    c.beta_l = oracle::log_uniform(0.5, 50.0);
    c.beta_h = c.beta_l * oracle::log_uniform(1e-3, 0.9);
    c.hot_squeeze = SqueezeParams::make(oracle::uniform(0.0, 2.0), oracle::uniform(0.0, 6.28));
    c.cutoff_h = 1000.0 * c.omega_h;
    c.cutoff_l = 1000.0 * c.omega_h;
    if (c.beta_h * c.omega_h < c.beta_l * c.omega_l && efficiency_sudden(c).operational) return c;
  }
}

}  // namespace

TEST_SUITE("cycle") {
  TEST_CASE("adiabatic limits give 1 - omega_L / omega_H") {
    for (const double eta : {0.0, 0.5, 2.0}) {
      const auto r = run_cycle(limits(RampProfile::Adiabatic, eta));
      CHECK(r.operational);
      CHECK(r.efficiency == doctest::Approx(0.8).epsilon(1e-12));
      CHECK(r.eta_s_ab == doctest::Approx(0.0));
      CHECK(r.eta_s_cd == doctest::Approx(0.0));
    }
    CHECK(efficiency_adiabatic(limits(RampProfile::Adiabatic)).value == doctest::Approx(0.8).epsilon(1e-15));
  }

  TEST_CASE("extreme squeezing in the sudden limit") {
    const auto cfg = limits(RampProfile::SuddenQuench, 20.0);
    const auto r = run_cycle(cfg);
    CHECK(r.operational);
    CHECK(r.efficiency == doctest::Approx(0.48).epsilon(1e-3));
    CHECK(efficiency_sudden(cfg).value == doctest::Approx(0.48).epsilon(1e-3));
    CHECK(r.eta_s_ab == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-12));
  }

  TEST_CASE("sudden efficiency closed form against an independent evaluation") {
    EngineConfig cfg = limits(RampProfile::SuddenQuench, 0.5);
    cfg.beta_h = 0.1;
    cfg.beta_l = 10.0;
    const double ch = std::cosh(1.0) * coth_ref(0.25);  // coth(beta_sH omega_H / 2)
    const double cl = coth_ref(5.0);
    const double w_tot = -(25.0 - 1.0) / 4.0 * (ch / 5.0 - cl / 1.0);
    const double q_in = 2.5 * (ch - cl);
    const auto sc = efficiency_sudden(cfg);
    CHECK(sc.operational);
    CHECK(sc.value == doctest::Approx(-w_tot / q_in).epsilon(1e-12));
    CHECK(net_work(IsentropicLimit::Sudden, cfg).value == doctest::Approx(w_tot).epsilon(1e-12));
    // The cycle's own heat is E_C - E_B with the sudden E_B, so it differs from
    // the closed form's denominator; its work matches.
    const auto r = run_cycle(cfg);
    CHECK(r.w_tot == doctest::Approx(w_tot).epsilon(1e-12));
  }

  TEST_CASE("slow numerical ramps approach the adiabatic efficiency") {
    const auto r = run_cycle(linear(200.0));
    CHECK(r.operational);
    CHECK(r.efficiency == doctest::Approx(0.8).epsilon(1e-2));
    CHECK(r.eta_s_ab < 0.02);
    CHECK(r.eta_s_cd < 0.02);
  }

  TEST_CASE("energy bookkeeping telescopes and splits into works and heats") {
    for (const double tau : {0.05, 1.0, 20.0}) {
      for (const bool unsq : {false, true}) {
        EngineConfig cfg = linear(tau);
        cfg.unsqueeze_at_ramp_end = unsq;
        const auto r = run_cycle(cfg);
        const double loop = (r.e_b - r.e_a) + (r.e_c - r.e_b) + (r.e_d - r.e_c) + (r.e_a - r.e_d);
        CHECK(std::abs(loop) < 1e-10 * r.e_c);
        CHECK(r.w_tot == r.w_ab + r.w_cd);
        CHECK(r.w_tot + r.q_in + r.q_out == doctest::Approx(0.0).scale(r.e_c));
        CHECK(r.w_ab == doctest::Approx(r.w_ab_ramp + r.unsqueeze_ab).epsilon(1e-12));
        CHECK(r.w_cd == doctest::Approx(r.w_cd_ramp + r.unsqueeze_cd).epsilon(1e-12));
        if (!unsq) {
          CHECK(r.unsqueeze_ab == 0.0);
          CHECK(r.unsqueeze_cd == 0.0);
        } else {
          CHECK(r.unsqueeze_ab <= 0.0);
          CHECK(r.unsqueeze_cd <= 0.0);
        }
      }
    }
  }

  TEST_CASE("adiabatic efficiency is independent of squeezing and temperatures") {
    for (int i = 0; i < 50; ++i) {
      EngineConfig cfg = random_operational();
      cfg.ramp_ab = cfg.ramp_cd = {RampProfile::Adiabatic, 0.0};
      const auto r = run_cycle(cfg);
      CHECK(r.operational);
      CHECK(r.efficiency == doctest::Approx(1.0 - cfg.omega_l / cfg.omega_h).epsilon(1e-10));
    }
  }

  TEST_CASE("sudden efficiency and output work stay below their adiabatic counterparts") {
    for (int i = 0; i < 100; ++i) {
      const EngineConfig cfg = random_operational();
      const auto ad = efficiency_adiabatic(cfg);
      const auto sc = efficiency_sudden(cfg);
      REQUIRE(ad.operational);
      REQUIRE(sc.operational);
      CHECK(sc.value < ad.value);
      CHECK(std::abs(net_work(IsentropicLimit::Sudden, cfg).value) <=
            std::abs(net_work(IsentropicLimit::Adiabatic, cfg).value));
      CHECK(carnot_bound_check(cfg));
    }
  }

  TEST_CASE("Carnot comparison") {
    EngineConfig cfg;
    cfg.beta_h = 1.0;
    cfg.beta_l = 10.0;
    CHECK(carnot_bound_check(cfg));
    cfg.beta_h = 0.2 * 10.0 * (1.0 - 1e-9);
    CHECK(carnot_bound_check(cfg));
  }

  TEST_CASE("net work in the adiabatic limit") {
    EngineConfig cfg = limits(RampProfile::Adiabatic, 0.0);
    cfg.beta_h = cfg.beta_l = 1.0;
    const auto w = net_work(IsentropicLimit::Adiabatic, cfg);
    CHECK(w.value > 0.0);
    CHECK_FALSE(w.operational);

    cfg = limits(RampProfile::Adiabatic, 0.0);
    double prev = 0.0;
    for (double eta = 0.0; eta < 2.0; eta += 0.25) {
      cfg.hot_squeeze.eta = eta;
      const double mag = std::abs(net_work(IsentropicLimit::Adiabatic, cfg).value);
      CHECK(mag > prev);
      prev = mag;
      cfg.hot_squeeze.theta = 2.0;
      CHECK(std::abs(net_work(IsentropicLimit::Adiabatic, cfg).value) == mag);
      cfg.hot_squeeze.theta = 0.0;
    }
    const auto r = run_cycle(cfg);
    CHECK(r.w_tot == doctest::Approx(net_work(IsentropicLimit::Adiabatic, cfg).value).epsilon(1e-12));
  }

  TEST_CASE("non-operational configurations are flagged, not thrown") {
    EngineConfig cfg = limits(RampProfile::Adiabatic, 0.0);
    cfg.beta_h = 9.0;
    cfg.beta_l = 10.0;
    const auto r = run_cycle(cfg);
    CHECK_FALSE(r.operational);
    CHECK(std::isnan(r.efficiency));
    CHECK_FALSE(efficiency_adiabatic(cfg).operational);
    CHECK_FALSE(efficiency_sudden(cfg).operational);
    CHECK(std::isnan(efficiency_sudden(cfg).value));
  }

  TEST_CASE("weak closed form and quadrature coupling agree at small damping") {
    EngineConfig weak = linear(2.0);
    EngineConfig quad = weak;
    quad.coupling_mode = CouplingMode::Quadrature;
    const auto a = run_cycle(weak);
    const auto b = run_cycle(quad);
    for (const auto& [x, y] : {std::pair{a.e_a, b.e_a}, std::pair{a.e_b, b.e_b}, std::pair{a.e_c, b.e_c},
                               std::pair{a.e_d, b.e_d}}) {
      CHECK(y == doctest::Approx(x).epsilon(5e-3));
    }
  }

  TEST_CASE("unsqueezing at the ramp ends recovers the adiabatic efficiency") {
    for (const double tau : {0.01, 1.0, 100.0}) {
      EngineConfig cfg = linear(tau);
      cfg.unsqueeze_at_ramp_end = true;
      const auto r = run_cycle(cfg);
      CHECK(r.operational);
      CHECK(std::abs(r.efficiency - 0.8) < 1e-3);
      CHECK(extract_squeeze(r.b).squeeze.eta < 1e-8);
      CHECK(extract_squeeze(r.d).squeeze.eta < 1e-8);
    }
  }

  TEST_CASE("finite-time efficiency lies between the sudden and adiabatic limits") {
    const double ad = efficiency_adiabatic(linear(1.0)).value;
    const double sc = run_cycle(limits(RampProfile::SuddenQuench, 0.5)).efficiency;
    for (const double tau : {1e-3, 0.1, 0.5, 2.0, 10.0, 50.0}) {
      const auto r = run_cycle(linear(tau));
      CHECK(r.operational);
      CHECK(r.efficiency >= sc - 1e-3);
      CHECK(r.efficiency <= ad + 1e-3);
    }
  }

  TEST_CASE("configuration validation lists every violation") {
    EngineConfig cfg;
    cfg.omega_h = 0.5;
    cfg.beta_h = 20.0;
    cfg.hot_squeeze.eta = -1.0;
    cfg.ramp_ab = {RampProfile::LinearInOmegaSquared, 0.0};
    const auto v = cfg.violations();
    CHECK(v.size() >= 4);
    try {
      run_cycle(cfg);
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      const std::string msg = e.what();
      for (const char* key : {"omega_h", "beta_h", "eta", "ramp_ab"}) CHECK(msg.find(key) != std::string::npos);
    }
    EngineConfig over;
    over.gamma_l = 2.0;
    CHECK_THROWS_AS(run_cycle(over), DomainError);
  }

  TEST_CASE("parameter keys") {
    EngineConfig cfg;
    set_parameter(cfg, "temp_h", 4.0);
    CHECK(cfg.beta_h == 0.25);
    set_parameter(cfg, "temp_l", 0.0);
    CHECK(std::isinf(cfg.beta_l));
    set_parameter(cfg, "theta", -1.0);
    CHECK(cfg.hot_squeeze.theta == doctest::Approx(2 * std::numbers::pi - 1.0));
    set_parameter(cfg, "tau", 3.0);
    CHECK(cfg.ramp_ab.tau == 3.0);
    CHECK(cfg.ramp_cd.tau == 3.0);
    CHECK_THROWS_AS(set_parameter(cfg, "omega", 1.0), DomainError);
    CHECK_THROWS_AS(set_parameter(cfg, "temp_h", -1.0), DomainError);
  }

  TEST_CASE("sweeps run in grid order, deterministically, with per-row errors") {
    EngineConfig base = limits(RampProfile::Adiabatic);
    const std::vector<SweepAxis> axes{{"eta", {0.0, 0.5, 1.0}}, {"omega_h", {2.0, 0.5, 5.0, 8.0}}};
    const auto rows = sweep(base, axes);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].index == i);
      CHECK(rows[i].coordinates[0] == axes[0].values[i / 4]);
      CHECK(rows[i].coordinates[1] == axes[1].values[i % 4]);
      CHECK(rows[i].ok == (rows[i].coordinates[1] != 0.5));
    }
    CHECK(rows[1].error.find("omega_h") != std::string::npos);

    setenv("OTTO_WORKERS", "1", 1);
    const auto serial = sweep(base, axes);
    unsetenv("OTTO_WORKERS");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(serial[i].ok == rows[i].ok);
      if (rows[i].ok) CHECK(serial[i].report.w_tot == rows[i].report.w_tot);
    }
    CHECK_THROWS_AS(sweep(base, {{"bogus", {1.0}}}), DomainError);
  }

  TEST_CASE("worker count honours OTTO_WORKERS") {
    setenv("OTTO_WORKERS", "3", 1);
    CHECK(worker_count() == 3);
    setenv("OTTO_WORKERS", "zero", 1);
    CHECK_THROWS_AS(worker_count(), DomainError);
    unsetenv("OTTO_WORKERS");
    CHECK(worker_count() >= 1);
  }

  TEST_CASE("eta sweep in the adiabatic limit") {
    const auto rows = sweep(limits(RampProfile::Adiabatic), {{"eta", {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}}});
    double prev = 0.0;
    for (const auto& r : rows) {
      REQUIRE(r.ok);
      CHECK(r.report.efficiency == doctest::Approx(0.8).epsilon(1e-12));
      CHECK(-r.report.w_tot > prev);
      prev = -r.report.w_tot;
    }
  }

  TEST_CASE("tau sweep traces the ramp squeezing between its limits") {
    std::vector<double> taus;
    for (int i = 0; i <= 8; ++i) taus.push_back(std::pow(10.0, -4.0 + 7.0 * i / 8.0));
    EngineConfig base = linear(1.0);
    const auto rows = sweep(base, {{"tau", taus}});
    double prev = INFINITY;
    for (const auto& r : rows) {
      REQUIRE(r.ok);
      CHECK(r.report.eta_s_ab <= prev + 1e-9);
      prev = r.report.eta_s_ab;
    }
    CHECK(rows.front().report.eta_s_ab == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-3));
    CHECK(rows.back().report.eta_s_ab < 0.02);
  }

  TEST_CASE("Nelder-Mead on a box") {
    auto f = [](const std::vector<double>& x) { return (x[0] - 0.3) * (x[0] - 0.3) + 10 * (x[1] + 0.2) * (x[1] + 0.2); };
    const auto r = nelder_mead(f, {0.9, 0.9}, {-1.0, -1.0}, {1.0, 1.0});
    CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(-0.2).epsilon(1e-5));
    const auto edge = nelder_mead(f, {0.9, 0.9}, {0.5, 0.0}, {1.0, 1.0});
    CHECK(edge.x[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(edge.x[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    auto nan_f = [](const std::vector<double>& x) { return x[0] < 0.0 ? std::nan("") : x[0]; };
    CHECK(nelder_mead(nan_f, {0.5}, {-1.0}, {1.0}).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  }

  TEST_CASE("work maximization matches an exhaustive grid") {
    EngineConfig base = limits(RampProfile::Adiabatic, 0.3);
    base.beta_l = 2.0;
    base.beta_h = 0.2;
    const std::vector<SearchBound> bounds{{"omega_l", 0.5, 2.0}, {"omega_h", 2.5, 10.0}};
    const auto opt = maximize_output_work(base, bounds);
    REQUIRE(opt.feasible);
    double grid_best = 0.0;
    EngineConfig cfg = base;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        cfg.omega_l = 0.5 + 1.5 * i / 19.0;
        cfg.omega_h = 2.5 + 7.5 * j / 19.0;
        grid_best = std::min(grid_best, run_cycle(cfg).w_tot);
      }
    }
    CHECK(opt.report.w_tot <= grid_best + 1e-9 * std::abs(grid_best));
    CHECK(opt.report.w_tot == doctest::Approx(grid_best).epsilon(2e-2));
    CHECK(opt.config.omega_l >= 0.5);
    CHECK(opt.config.omega_h <= 10.0);
  }

  TEST_CASE("work maximization with no operational point") {
    EngineConfig base = limits(RampProfile::Adiabatic, 0.0);
    base.beta_l = 1.0;
    base.beta_h = 0.999;
    const auto opt = maximize_output_work(base, {{"omega_h", 5.0, 6.0}});
    CHECK_FALSE(opt.feasible);
    CHECK_THROWS_AS(maximize_output_work(base, {}), DomainError);
    CHECK_THROWS_AS(maximize_output_work(base, {{"omega_h", 6.0, 5.0}}), DomainError);
  }
}
