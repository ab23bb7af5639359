#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "saruma/errors.hpp"

namespace saruma {

struct NelderMeadOptions {
  std::size_t max_iter = 2000;
  double tol = 1e-8;
  // Edge length of the initial simplex around the start point.
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // best objective value per iteration
};

// Derivative-free simplex minimisation with the standard
// reflect/expand/contract/shrink moves. Converged means the simplex
// diameter dropped below tol in parameter space AND the objective spread
// dropped below tol * (1 + |f_best|). The best vertex is only ever
// replaced by a better one, so the trace is non-increasing.
template <class F>
NelderMeadResult nelder_mead(F&& objective, std::vector<double> start,
                             const NelderMeadOptions& opts = {}) {
  const std::size_t n = start.size();
  if (n == 0) throw Error("nelder_mead: empty start point");
  if (opts.max_iter == 0) throw Error("nelder_mead: max_iter must be >= 1");

  auto eval = [&objective](const std::vector<double>& x) {
    return objective(std::span<const double>(x));
  };

  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i)
    simplex[i + 1][i] += std::max(opts.initial_step, opts.initial_step * std::abs(start[i]));
  std::vector<double> fval(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fval[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  NelderMeadResult result;
  result.trace.reserve(opts.max_iter);

  for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&fval](std::size_t a, std::size_t b) { return fval[a] < fval[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    result.iterations = iter + 1;
    result.trace.push_back(fval[best]);

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
    const double spread = fval[worst] - fval[best];
    if (diameter < opts.tol && spread < opts.tol * (1.0 + std::abs(fval[best]))) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto along = [&centroid, &simplex, worst, n](double coef) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + coef * (centroid[k] - simplex[worst][k]);
      return x;
    };

    std::vector<double> reflected = along(1.0);
    const double f_reflected = eval(reflected);

    if (f_reflected < fval[best]) {
      std::vector<double> expanded = along(2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = std::move(expanded);
        fval[worst] = f_expanded;
      } else {
        simplex[worst] = std::move(reflected);
        fval[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fval[second_worst]) {
      simplex[worst] = std::move(reflected);
      fval[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < fval[worst];
    std::vector<double> contracted = along(outside ? 0.5 : -0.5);
    const double f_contracted = eval(contracted);
    if ((outside && f_contracted <= f_reflected) ||
        (!outside && f_contracted < fval[worst])) {
      simplex[worst] = std::move(contracted);
      fval[worst] = f_contracted;
      continue;
    }

    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k)
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      fval[i] = eval(simplex[i]);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(fval.begin(), fval.end()) - fval.begin());
  result.x = simplex[best];
  result.fx = fval[best];
  return result;
}

}  // namespace saruma
