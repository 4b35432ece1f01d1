#pragma once

// Box-constrained Nelder-Mead direct search. Every trial vertex is projected
// onto the box before evaluation.

#include <cstddef>
#include <functional>
#include <vector>

namespace otto {

struct NelderMeadOptions {
  double initial_step = 0.1;  // fraction of each box side
  double x_tol = 1e-9;        // simplex diameter, relative to the box
  double f_tol = 1e-12;
  std::size_t max_evaluations = 4000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const std::vector<double>& lower,
                             const std::vector<double>& upper, const NelderMeadOptions& opt = {});

}  // namespace otto
