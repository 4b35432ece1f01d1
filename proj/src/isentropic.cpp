#include "otto/isentropic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "otto/errors.hpp"

namespace otto {

namespace {

namespace odeint = boost::numeric::odeint;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

// Adaptive Dormand-Prince 5(4) from 0 to t_end; throws NumericError carrying
// the last accepted time if the step budget is exhausted.
// Local errors of an explicit RK scheme on an oscillator accumulate with the
// number of periods, so the per-step tolerance is tol divided by the period
// count (floored at kTightestLocalTol) to keep the end-of-ramp error near tol.
constexpr double kTightestLocalTol = 1e-14;

template <std::size_t N, class System>
std::size_t integrate_to(System&& system, std::array<double, N>& x, double t_end, double omega_max,
                         const IntegratorTolerance& tol) {
  using State = std::array<double, N>;
  const double periods = std::max(1.0, omega_max * t_end / (2.0 * std::numbers::pi));
  const double rel = std::max(tol.rel / periods, std::min(tol.rel, kTightestLocalTol));
  const double abs = tol.abs * rel / tol.rel;
  auto stepper = odeint::make_controlled(abs, rel, odeint::runge_kutta_dopri5<State>());
  double t = 0.0;
  double dt = std::min(t_end, 0.05 / omega_max);
  std::size_t steps = 0;
  while (t < t_end) {
    if (steps >= tol.max_steps) {
      throw NumericError("ODE integration exceeded " + std::to_string(tol.max_steps) + " steps", t);
    }
    double trial = std::min(dt, t_end - t);
    const bool final_step = trial == t_end - t;
    const double t_before = t;
    if (stepper.try_step(system, x, t, trial) == odeint::success) {
      ++steps;
      if (final_step) t = t_end;
      // try_step already enlarged `trial`; keep it unless we clipped for the end.
      dt = final_step ? dt : trial;
    } else {
      dt = trial;
      if (!(dt > 1e-14 * std::max(1.0, t_before))) {
        throw NumericError("ODE step size underflow", t_before);
      }
    }
  }
  return steps;
}

double max_omega(const FrequencyRamp& r) {
  double w = std::max(r.omega_start, r.omega_end);
  if (r.profile == RampProfile::Custom) {
    for (int i = 0; i <= 16; ++i) w = std::max(w, std::sqrt(ramp_omega_squared(r, r.tau * i / 16.0)));
  }
  return w;
}

}  // namespace

FrequencyRamp FrequencyRamp::linear(double omega_start, double omega_end, double tau) {
  FrequencyRamp r{omega_start, omega_end, tau, RampProfile::LinearInOmegaSquared, {}};
  r.validate();
  return r;
}

FrequencyRamp FrequencyRamp::sudden(double omega_start, double omega_end) {
  FrequencyRamp r{omega_start, omega_end, 0.0, RampProfile::SuddenQuench, {}};
  r.validate();
  return r;
}

FrequencyRamp FrequencyRamp::adiabatic(double omega_start, double omega_end) {
  FrequencyRamp r{omega_start, omega_end, 0.0, RampProfile::Adiabatic, {}};
  r.validate();
  return r;
}

FrequencyRamp FrequencyRamp::custom(double omega_start, double omega_end, double tau,
                                    std::function<double(double)> omega_squared) {
  FrequencyRamp r{omega_start, omega_end, tau, RampProfile::Custom, std::move(omega_squared)};
  r.validate();
  return r;
}

void FrequencyRamp::validate() const {
  require_positive(omega_start, "ramp omega_start");
  require_positive(omega_end, "ramp omega_end");
  if (!is_analytic()) require_positive(tau, "ramp duration tau");
  if (profile == RampProfile::Custom && !omega_squared) {
    throw DomainError("custom ramp needs an omega^2(t) callable");
  }
}

double ramp_omega_squared(const FrequencyRamp& r, double t) {
  if (r.is_analytic()) throw DomainError("analytic ramp profiles have no omega^2(t)");
  if (!(t >= 0.0 && t <= r.tau)) {
    throw DomainError("ramp time " + std::to_string(t) + " outside [0, " + std::to_string(r.tau) + "]");
  }
  double w2 = 0.0;
  if (r.profile == RampProfile::Custom) {
    w2 = r.omega_squared(t);
  } else if (t == r.tau) {
    w2 = r.omega_end * r.omega_end;
  } else {
    const double ws2 = r.omega_start * r.omega_start;
    w2 = ws2 + (t / r.tau) * (r.omega_end * r.omega_end - ws2);
  }
  if (!(w2 > 0.0)) throw DomainError("omega^2(t) must stay positive along the ramp");
  return w2;
}

WignerPropagation propagate_wigner(const GaussianState& s0, const FrequencyRamp& r, IntegratorTolerance tol) {
  s0.validate();
  r.validate();
  const WignerCoeffs w0 = wigner_coeffs_from_state(s0);
  const double disc0 = 4.0 * w0.a * w0.b - w0.c * w0.c;

  if (r.profile == RampProfile::SuddenQuench) {
    GaussianState end = s0;
    end.omega = r.omega_end;
    return {end, disc0, disc0, 0};
  }
  if (r.profile == RampProfile::Adiabatic) {
    const ExtractedSqueeze ex = extract_squeeze(s0);
    const ThermalSpec th =
        std::isinf(ex.vartheta) ? ThermalSpec::zero_temperature() : ThermalSpec{ex.vartheta / r.omega_end};
    GaussianState end = apply_squeeze(thermal_state(th, s0.mass, r.omega_end), ex.squeeze);
    return {end, disc0, disc0, 0};
  }

  const double m = s0.mass;
  // y = (x^2 coeff, p^2 coeff, xp coeff) = (b, a, c).
  std::array<double, 3> y{w0.b, w0.a, w0.c};
  // Coefficients scale like (m w)^{+-1}; normalize the absolute tolerance.
  IntegratorTolerance scaled = tol;
  scaled.abs = tol.abs * std::min(std::abs(w0.a), std::abs(w0.b));
  // 4AB - C^2 cancels for squeezed inputs; tighten by its condition number so
  // the conserved discriminant keeps the requested relative accuracy.
  const double condition = (4.0 * w0.a * w0.b + w0.c * w0.c) / disc0;
  scaled.rel = std::max(tol.rel / condition, std::min(tol.rel, kTightestLocalTol));
  scaled.abs *= scaled.rel / tol.rel;
  auto rhs = [&](const std::array<double, 3>& v, std::array<double, 3>& dv, double t) {
    const double w2 = ramp_omega_squared(r, std::min(t, r.tau));
    dv[0] = m * w2 * v[2];
    dv[1] = -v[2] / m;
    dv[2] = 2.0 * (m * w2 * v[1] - v[0] / m);
  };
  const std::size_t steps = integrate_to(rhs, y, r.tau, max_omega(r), scaled);
  const WignerCoeffs w1{y[1], y[0], y[2], w0.norm};
  return {state_from_wigner_coeffs(w1, m, r.omega_end), disc0, 4.0 * y[0] * y[1] - y[2] * y[2], steps};
}

GaussianState evolve_wigner(const GaussianState& s0, const FrequencyRamp& r, IntegratorTolerance tol) {
  return propagate_wigner(s0, r, tol).end;
}

FundamentalSolutions evolve_fundamental(const FrequencyRamp& r, IntegratorTolerance tol) {
  r.validate();
  if (r.profile == RampProfile::SuddenQuench) return {};
  if (r.profile == RampProfile::Adiabatic) {
    throw DomainError("the adiabatic limit has no finite-time fundamental solutions");
  }
  // (d1, d1', d2, d2')
  std::array<double, 4> y{1.0, 0.0, 0.0, 1.0};
  auto rhs = [&](const std::array<double, 4>& v, std::array<double, 4>& dv, double t) {
    const double w2 = ramp_omega_squared(r, std::min(t, r.tau));
    dv[0] = v[1];
    dv[1] = -w2 * v[0];
    dv[2] = v[3];
    dv[3] = -w2 * v[2];
  };
  integrate_to(rhs, y, r.tau, max_omega(r), tol);
  return {y[0], y[1], y[2], y[3]};
}

FundamentalSolutions harmonic_fundamental(double omega, double t) {
  require_positive(omega, "omega");
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  return {c, -omega * s, s / omega, c};
}

double eta_s_from_fundamental(const FundamentalSolutions& f, double omega_start, double omega_end) {
  require_positive(omega_start, "omega_start");
  require_positive(omega_end, "omega_end");
  const double ws = omega_start;
  const double we = omega_end;
  const double arg = 0.5 * ((we / ws) * f.d1 * f.d1 + ws * we * f.d2 * f.d2 + f.d1dot * f.d1dot / (ws * we) +
                            (ws / we) * f.d2dot * f.d2dot);
  if (arg < 1.0 - 1e-9) {
    throw NumericError("cosh(2 eta_s) argument " + std::to_string(arg) + " below 1; check the Wronskian");
  }
  return 0.5 * std::acosh(std::max(arg, 1.0));
}

GaussianState end_state_from_fundamental(const FundamentalSolutions& f, double beta_s, double omega_start,
                                         double omega_end, double mass) {
  require_positive(omega_start, "omega_start");
  require_positive(omega_end, "omega_end");
  require_positive(mass, "mass");
  if (!(beta_s > 0.0)) throw DomainError("beta_s must be positive");
  const double c = ThermalSpec{beta_s}.coth_half(omega_start);
  const double ws = omega_start;
  GaussianState s{
      c * (f.d1 * f.d1 + ws * ws * f.d2 * f.d2) / (2.0 * mass * ws),
      0.5 * mass * ws * c * (f.d1dot * f.d1dot / (ws * ws) + f.d2dot * f.d2dot),
      0.5 * c * (f.d1 * f.d1dot / ws + ws * f.d2 * f.d2dot),
      mass,
      omega_end,
  };
  return s;
}

GaussianState end_state_from_fundamental(const FundamentalSolutions& f, const GaussianState& initial,
                                         double omega_end) {
  initial.validate();
  const double mw = initial.mass * initial.omega;
  const double scale = std::sqrt(initial.determinant());
  if (std::abs(initial.sxp) > 1e-9 * scale || std::abs(mw * initial.sxx - initial.spp / mw) > 1e-9 * scale) {
    throw DomainError("end_state_from_fundamental requires a stationary initial state");
  }
  const double vartheta = extract_squeeze(initial).vartheta;
  const double beta_s = std::isinf(vartheta) ? kInfiniteBeta : vartheta / initial.omega;
  return end_state_from_fundamental(f, beta_s, initial.omega, omega_end, initial.mass);
}

double work_isentropic(IsentropicLimit limit, IsentropicStage stage, const IsentropicWorkParams& p) {
  require_positive(p.omega_l, "omega_l");
  if (!(p.omega_h > p.omega_l)) throw DomainError("isentropic work needs omega_h > omega_l");
  if (!(p.eta >= 0.0)) throw DomainError("eta must be >= 0");
  const double wl = p.omega_l;
  const double wh = p.omega_h;
  if (stage == IsentropicStage::Compression) {
    const double c = ThermalSpec{p.beta}.coth_half(wl);
    return limit == IsentropicLimit::Adiabatic ? 0.5 * (wh - wl) * c : (wh * wh - wl * wl) / (4.0 * wl) * c;
  }
  const double c = std::cosh(2.0 * p.eta) * ThermalSpec{p.beta}.coth_half(wh);
  return limit == IsentropicLimit::Adiabatic ? 0.5 * (wl - wh) * c : (wl * wl - wh * wh) / (4.0 * wh) * c;
}

GaussianState unsqueeze_to_adiabatic(const GaussianState& s) {
  const ExtractedSqueeze ex = extract_squeeze(s);
  if (ex.squeeze.eta == 0.0) return s;
  return apply_squeeze(s, SqueezeParams::make(ex.squeeze.eta, ex.squeeze.theta + std::numbers::pi));
}

}  // namespace otto
