#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature over a set of breakpoint
// panels, for vector-valued integrands. Subdivision always bisects the panel
// with the largest scaled error estimate until every component satisfies
//   sum(error_k) <= max(abs_tol, rel_tol * integral |f_k|).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "otto/errors.hpp"

namespace otto::quad {

template <std::size_t N>
using Values = std::array<double, N>;

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_intervals = std::size_t{1} << 22;
};

template <std::size_t N>
struct Result {
  Values<N> value{};
  Values<N> error{};
  Values<N> l1{};
  std::size_t intervals = 0;
};

namespace detail {

struct Gk15 {
  std::array<double, 8> nodes;    // Kronrod abscissae, nodes[0] == 0
  std::array<double, 8> kronrod;  // Kronrod weights
  std::array<double, 4> gauss;    // Gauss weights on nodes[0], [2], [4], [6]
  static const Gk15& get();
};

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  Values<N> value{};
  Values<N> error{};
  Values<N> l1{};
  double priority = 0.0;
  bool operator<(const Panel& other) const { return priority < other.priority; }
};

template <std::size_t N, class F>
Panel<N> apply_rule(F& f, double a, double b) {
  const Gk15& rule = Gk15::get();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Values<N> k{}, g{}, l1{};
  auto accumulate = [&](const Values<N>& fx, std::size_t i) {
    for (std::size_t c = 0; c < N; ++c) {
      k[c] += rule.kronrod[i] * fx[c];
      l1[c] += rule.kronrod[i] * std::abs(fx[c]);
      if (i % 2 == 0) g[c] += rule.gauss[i / 2] * fx[c];
    }
  };
  accumulate(f(mid), 0);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
    const double dx = half * rule.nodes[i];
    accumulate(f(mid - dx), i);
    accumulate(f(mid + dx), i);
  }
  Panel<N> p;
  p.a = a;
  p.b = b;
  for (std::size_t c = 0; c < N; ++c) {
    p.value[c] = half * k[c];
    p.error[c] = std::abs(half * (k[c] - g[c]));
    p.l1[c] = std::abs(half) * l1[c];
  }
  return p;
}

}  // namespace detail

/// Sorted, deduplicated copy of `points` clipped to [lo, hi], always
/// containing both ends.
std::vector<double> normalize_breakpoints(std::vector<double> points, double lo, double hi);

/// Breakpoints clustering geometrically around a peak of the given width.
std::vector<double> peak_breakpoints(double lo, double hi, double center, double width);

/// Uniform panels of width at most `max_width`.
std::vector<double> uniform_breakpoints(double lo, double hi, double max_width);

template <std::size_t N, class F>
Result<N> integrate(F&& f, std::vector<double> breakpoints, const Options& opt = {}) {
  if (breakpoints.size() < 2) throw DomainError("quadrature needs at least one panel");
  std::priority_queue<detail::Panel<N>> heap;
  std::vector<detail::Panel<N>> initial;
  initial.reserve(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) {
      initial.push_back(detail::apply_rule<N>(f, breakpoints[i], breakpoints[i + 1]));
    }
  }

  Values<N> total{}, error{}, l1{};
  for (const auto& p : initial) {
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += p.value[c];
      error[c] += p.error[c];
      l1[c] += p.l1[c];
    }
  }
  Values<N> scale{};
  for (std::size_t c = 0; c < N; ++c) {
    scale[c] = std::max({l1[c], opt.abs_tol, std::numeric_limits<double>::min()});
  }
  auto prioritize = [&](detail::Panel<N>& p) {
    p.priority = 0.0;
    for (std::size_t c = 0; c < N; ++c) p.priority = std::max(p.priority, p.error[c] / scale[c]);
  };
  for (auto& p : initial) {
    prioritize(p);
    heap.push(std::move(p));
  }

  auto converged = [&] {
    for (std::size_t c = 0; c < N; ++c) {
      if (error[c] > std::max(opt.abs_tol, opt.rel_tol * l1[c])) return false;
    }
    return true;
  };

  while (!converged()) {
    if (heap.size() >= opt.max_intervals) {
      throw NumericError("quadrature did not converge within " + std::to_string(opt.max_intervals) +
                             " panels",
                         heap.top().a);
    }
    detail::Panel<N> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericError("quadrature panel cannot be subdivided further", worst.a);
    }
    auto left = detail::apply_rule<N>(f, worst.a, mid);
    auto right = detail::apply_rule<N>(f, mid, worst.b);
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += left.value[c] + right.value[c] - worst.value[c];
      error[c] += left.error[c] + right.error[c] - worst.error[c];
      l1[c] += left.l1[c] + right.l1[c] - worst.l1[c];
    }
    prioritize(left);
    prioritize(right);
    heap.push(std::move(left));
    heap.push(std::move(right));
  }

  // Re-sum from the final panel set to shed drift from incremental updates.
  Result<N> result;
  result.intervals = heap.size();
  while (!heap.empty()) {
    const auto& p = heap.top();
    for (std::size_t c = 0; c < N; ++c) {
      result.value[c] += p.value[c];
      result.error[c] += p.error[c];
      result.l1[c] += p.l1[c];
    }
    heap.pop();
  }
  return result;
}

/// Scalar convenience wrapper.
template <class F>
double integrate_scalar(F&& f, std::vector<double> breakpoints, const Options& opt = {}) {
  auto wrapped = [&](double x) { return Values<1>{f(x)}; };
  return integrate<1>(wrapped, std::move(breakpoints), opt).value[0];
}

}  // namespace otto::quad
