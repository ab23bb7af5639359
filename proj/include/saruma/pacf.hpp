#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "saruma/errors.hpp"
#include "saruma/poly.hpp"

namespace saruma {

// Values whose magnitude is within kUnitEps of 1 are treated as unit values
// by the inverse recursion and the zero-location test; 1 - beta^2 is too
// close to zero past this point for the division to mean anything.
inline constexpr double kUnitEps = 1e-10;

// Ordered partial autocorrelation sequence beta_1..beta_n with explicit
// unit pins. Pins are metadata declared by the caller, never inferred from
// float equality: estimation code must distinguish "pinned by model design"
// from "estimated near 1". Pinned positions must hold exactly +1 or -1;
// other positions may hold any finite value (the zero-location test
// deliberately accepts |beta| > 1).
class PacfSeq {
 public:
  PacfSeq() = default;

  explicit PacfSeq(std::vector<double> values, std::vector<std::size_t> unit_pins = {})
      : values_(std::move(values)), unit_pins_(std::move(unit_pins)) {
    for (double v : values_)
      if (!std::isfinite(v)) throw NonFinite("PacfSeq: non-finite value");
    std::sort(unit_pins_.begin(), unit_pins_.end());
    unit_pins_.erase(std::unique(unit_pins_.begin(), unit_pins_.end()),
                     unit_pins_.end());
    for (std::size_t pin : unit_pins_) {
      if (pin < 1 || pin > values_.size())
        throw Error("PacfSeq: pin index " + std::to_string(pin) + " out of range");
      const double v = values_[pin - 1];
      if (v != 1.0 && v != -1.0)
        throw Error("PacfSeq: pinned value at index " + std::to_string(pin) +
                    " must be exactly +1 or -1");
    }
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::vector<double>& values() const { return values_; }

  // 1-based positions, sorted ascending.
  const std::vector<std::size_t>& unit_pins() const { return unit_pins_; }

  bool pinned(std::size_t pos) const {
    return std::binary_search(unit_pins_.begin(), unit_pins_.end(), pos);
  }

  friend bool operator==(const PacfSeq& a, const PacfSeq& b) {
    return a.values_ == b.values_ && a.unit_pins_ == b.unit_pins_;
  }

 private:
  std::vector<double> values_;
  std::vector<std::size_t> unit_pins_;
};

// Forward Levinson-Durbin recursion: partial autocorrelations to the filter
// polynomial 1 - P_n(z). Defined for any value of beta, unit values
// included; no restrictions are needed. An empty sequence gives [1].
//
// Both recursions accumulate in extended precision: the inverse direction
// is badly conditioned near unit values and every extra digit carried here
// shows up in the round trip.
inline FilterPoly pacf_to_coeffs(std::span<const double> beta) {
  const std::size_t n = beta.size();
  std::vector<long double> phi(n, 0.0L), prev(n, 0.0L);
  for (std::size_t order = 1; order <= n; ++order) {
    const long double b = beta[order - 1];
    for (std::size_t k = 1; k < order; ++k)
      phi[k - 1] = prev[k - 1] - b * prev[order - k - 1];
    phi[order - 1] = b;
    std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(order),
              prev.begin());
  }
  std::vector<double> coeffs(n + 1);
  coeffs[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) coeffs[k] = static_cast<double>(-phi[k - 1]);
  return FilterPoly(std::move(coeffs));
}

inline FilterPoly pacf_to_coeffs(const PacfSeq& b) {
  return pacf_to_coeffs(std::span<const double>(b.values()));
}

// Inverse recursion: filter coefficients back to partial autocorrelations.
// Stops with UnitPacfEncountered the moment some intermediate |beta_k| is
// within unit_eps of 1; the exception carries the values extracted so far
// so the caller can resume factoring manually.
inline PacfSeq coeffs_to_pacf(const FilterPoly& p, double unit_eps = kUnitEps) {
  const std::size_t n = p.degree();
  if (n == 0) throw Error("coeffs_to_pacf: degree must be >= 1");
  std::vector<long double> phi(n);
  for (std::size_t k = 1; k <= n; ++k) phi[k - 1] = -p.coeffs()[k];

  std::vector<double> extracted;  // beta_n, beta_{n-1}, ...
  extracted.reserve(n);
  for (std::size_t order = n; order >= 1; --order) {
    const long double b = phi[order - 1];
    if (!std::isfinite(static_cast<double>(b)))
      throw NonFinite("coeffs_to_pacf: overflow in recursion");
    extracted.push_back(static_cast<double>(b));
    if (std::abs(std::abs(extracted.back()) - 1.0) <= unit_eps)
      throw UnitPacfEncountered(order, std::move(extracted));
    if (order == 1) break;
    const long double denom = 1.0L - b * b;
    std::vector<long double> next(order - 1);
    for (std::size_t k = 1; k < order; ++k) {
      next[k - 1] = (phi[k - 1] + b * phi[order - k - 1]) / denom;
      if (!std::isfinite(static_cast<double>(next[k - 1])))
        throw NonFinite("coeffs_to_pacf: overflow in recursion");
    }
    phi = std::move(next);
  }
  std::reverse(extracted.begin(), extracted.end());
  return PacfSeq(std::move(extracted));
}

struct SplitResult {
  FilterPoly unit_part;
  PacfSeq adjusted_tail;
  std::size_t d_plus;
};

// Splits the sequence after a unit value at position m: the prefix
// beta_1..beta_m generates the unit-root factor, and the tail continues the
// factorisation after every value is multiplied by (-1)^{d_plus}, where
// d_plus is the multiplicity of the root +1 in the unit factor. Pins past m
// shift down by m; the sign flip maps exact pins to exact pins.
//
// Guarantee (exercised by the test suite):
//   pacf_to_coeffs(b) == mul(unit_part, pacf_to_coeffs(adjusted_tail)).
inline SplitResult split_after_unit(const PacfSeq& b, std::size_t m,
                                    double tol = kDeflationTol) {
  const auto& v = b.values();
  if (m < 1 || m > v.size()) throw NotUnitAt(m, "index out of range");
  if (std::abs(v[m - 1]) != 1.0) throw NotUnitAt(m, "value is not +1 or -1");

  FilterPoly unit_part = pacf_to_coeffs(std::span<const double>(v).first(m));
  const std::size_t d_plus = unit_multiplicity(unit_part, +1, tol);
  const double sign = (d_plus % 2 == 0) ? 1.0 : -1.0;

  std::vector<double> tail(v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
  if (sign < 0.0)
    for (double& x : tail) x = -x;
  std::vector<std::size_t> pins;
  for (std::size_t pin : b.unit_pins())
    if (pin > m) pins.push_back(pin - m);

  return {std::move(unit_part), PacfSeq(std::move(tail), std::move(pins)),
          d_plus};
}

// Ordered unit-root factors plus the stationary remainder, with the
// per-split d_plus bookkeeping and the sequence it came from. The product
// of all factors reproduces the full polynomial.
struct UnitRootFactorization {
  std::vector<FilterPoly> unit_factors;
  FilterPoly stationary_factor;
  std::vector<std::size_t> d_plus_trace;
  PacfSeq source;

  FilterPoly product() const {
    FilterPoly acc;
    for (const auto& f : unit_factors) acc = mul(acc, f);
    return mul(acc, stationary_factor);
  }
};

// Splits at each pinned index left to right until no pins remain; sign
// adjustments compose cumulatively, each split's d_plus applying to
// everything after it. With no pins the result is a bare stationary factor.
inline UnitRootFactorization factor_pacf(const PacfSeq& b,
                                         double tol = kDeflationTol) {
  UnitRootFactorization out;
  out.source = b;
  PacfSeq current = b;
  while (!current.unit_pins().empty()) {
    SplitResult split = split_after_unit(current, current.unit_pins().front(), tol);
    out.unit_factors.push_back(std::move(split.unit_part));
    out.d_plus_trace.push_back(split.d_plus);
    current = std::move(split.adjusted_tail);
  }
  out.stationary_factor = pacf_to_coeffs(current);
  return out;
}

}  // namespace saruma
