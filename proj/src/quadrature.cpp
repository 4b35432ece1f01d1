#include "otto/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace otto::quad {

namespace detail {

const Gk15& Gk15::get() {
  static const Gk15 rule = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    Gk15 r{};
    const auto& kx = gauss_kronrod<double, 15>::abscissa();
    const auto& kw = gauss_kronrod<double, 15>::weights();
    const auto& gx = gauss<double, 7>::abscissa();
    const auto& gw = gauss<double, 7>::weights();
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      r.nodes[i] = kx[i];
      r.kronrod[i] = kw[i];
    }
    // The embedded Gauss nodes sit at the even Kronrod positions.
    for (std::size_t i = 0; i < r.gauss.size(); ++i) {
      if (std::abs(gx[i] - kx[2 * i]) > 1e-15) throw std::logic_error("unexpected Gauss-Kronrod node layout");
      r.gauss[i] = gw[i];
    }
    return r;
  }();
  return rule;
}

}  // namespace detail

std::vector<double> normalize_breakpoints(std::vector<double> points, double lo, double hi) {
  points.push_back(lo);
  points.push_back(hi);
  std::erase_if(points, [&](double x) { return !(x >= lo && x <= hi) || !std::isfinite(x); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<double> peak_breakpoints(double lo, double hi, double center, double width) {
  std::vector<double> pts{center};
  if (width > 0.0) {
    for (double w = width; w < (hi - lo); w *= 4.0) {
      pts.push_back(center - w);
      pts.push_back(center + w);
    }
  }
  return normalize_breakpoints(std::move(pts), lo, hi);
}

std::vector<double> uniform_breakpoints(double lo, double hi, double max_width) {
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / max_width)));
  std::vector<double> pts;
  pts.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
  pts.back() = hi;
  return pts;
}

}  // namespace otto::quad
