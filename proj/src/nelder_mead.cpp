#include "otto/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otto/errors.hpp"

namespace otto {

namespace {

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const std::vector<double>& lower,
                             const std::vector<double>& upper, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0 || lower.size() != n || upper.size() != n) throw DomainError("nelder_mead: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i])) throw DomainError("nelder_mead: empty box");
  }

  std::size_t evaluations = 0;
  auto project = [&](std::vector<double> x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    return x;
  };
  auto eval = [&](std::vector<double> x) {
    x = project(std::move(x));
    ++evaluations;
    double v = f(x);
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    return Vertex{std::move(x), v};
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back(eval(x0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = simplex[0].x;
    const double step = opt.initial_step * (upper[i] - lower[i]);
    // Step inward when the start sits on the upper face.
    x[i] = x[i] + step <= upper[i] ? x[i] + step : x[i] - step;
    simplex.push_back(eval(std::move(x)));
  }

  auto combine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  bool converged = false;
  while (evaluations < opt.max_evaluations) {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const double side = std::max(upper[i] - lower[i], 1e-300);
        diameter = std::max(diameter, std::abs(simplex[k].x[i] - simplex[0].x[i]) / side);
      }
    }
    const double spread = std::abs(simplex[n].f - simplex[0].f);
    if (diameter < opt.x_tol || (std::isfinite(spread) && spread <= opt.f_tol * (1.0 + std::abs(simplex[0].f)))) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i] / static_cast<double>(n);
    }
    const Vertex& worst = simplex[n];
    Vertex reflected = eval(combine(centroid, worst.x, -1.0));
    if (reflected.f < simplex[0].f) {
      Vertex expanded = eval(combine(centroid, worst.x, -2.0));
      simplex[n] = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (reflected.f < simplex[n - 1].f) {
      simplex[n] = std::move(reflected);
      continue;
    }
    const bool outside = reflected.f < worst.f;
    Vertex contracted = eval(combine(centroid, worst.x, outside ? -0.5 : 0.5));
    if (contracted.f < std::min(reflected.f, worst.f)) {
      simplex[n] = std::move(contracted);
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) simplex[k] = eval(combine(simplex[0].x, simplex[k].x, 0.5));
  }

  const auto best = std::min_element(simplex.begin(), simplex.end(),
                                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return {best->x, best->f, evaluations, converged};
}

}  // namespace otto
