#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "saruma/errors.hpp"
#include "saruma/pacf.hpp"
#include "saruma/poly.hpp"

namespace saruma {

// Zero-location summary computed from reflection coefficients. q_sequence
// stores q_n first, down to q_1, exactly as accumulated:
// q_k = prod_{i=n..k} (1 - beta_i^2). The number of negative entries is the
// number of roots strictly inside the unit circle.
struct RootLocationReport {
  std::size_t nu_inside = 0;
  std::size_t n_outside = 0;
  std::vector<double> q_sequence;
};

// The test consumes partial autocorrelations directly: reflection
// coefficients are their sign flips, and only squares enter. Values with
// |beta| > 1 are legal input; values within unit_eps of 1 are not, because
// the counting is undefined there.
inline RootLocationReport count_inside(std::span<const double> beta,
                                       double unit_eps = kUnitEps) {
  const std::size_t n = beta.size();
  if (n == 0) throw Error("count_inside: empty sequence");
  for (double x : beta) {
    if (!std::isfinite(x)) throw NonFinite("count_inside: non-finite value");
    if (std::abs(std::abs(x) - 1.0) <= unit_eps)
      throw IllDefinedRCs("count_inside: |beta| within unit_eps of 1");
  }
  RootLocationReport report;
  report.q_sequence.resize(n);
  double acc = 1.0;
  for (std::size_t i = n; i >= 1; --i) {
    acc *= 1.0 - beta[i - 1] * beta[i - 1];
    report.q_sequence[n - i] = acc;
    if (acc < 0.0) ++report.nu_inside;
  }
  report.n_outside = n - report.nu_inside;
  return report;
}

inline RootLocationReport count_inside(const PacfSeq& b, double unit_eps = kUnitEps) {
  return count_inside(std::span<const double>(b.values()), unit_eps);
}

struct StabilityReport {
  bool stable = false;
  // True when the instability is a root exactly on the unit circle,
  // detected through the inverse recursion hitting a unit value.
  bool on_circle = false;

  explicit operator bool() const { return stable; }
};

// Stable means every root lies outside the unit circle, equivalently every
// partial autocorrelation has magnitude strictly below 1.
inline StabilityReport is_stable(const FilterPoly& p, double unit_eps = kUnitEps) {
  if (p.degree() == 0) throw Error("is_stable: degree must be >= 1");
  try {
    const PacfSeq b = coeffs_to_pacf(p, unit_eps);
    for (double x : b.values())
      if (std::abs(x) >= 1.0) return {false, false};
    return {true, false};
  } catch (const UnitPacfEncountered&) {
    return {false, true};
  } catch (const NonFinite&) {
    return {false, false};
  }
}

}  // namespace saruma
