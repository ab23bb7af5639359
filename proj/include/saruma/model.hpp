#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "saruma/errors.hpp"
#include "saruma/pacf.hpp"
#include "saruma/poly.hpp"
#include "saruma/rootloc.hpp"

namespace saruma {

namespace detail {

inline std::string format_complex(std::complex<double> z) {
  char buf[64];
  if (std::abs(z.imag()) < 1e-12) {
    std::snprintf(buf, sizeof(buf), "%.6g", z.real());
  } else {
    std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
  }
  return buf;
}

}  // namespace detail

// Multiplicative seasonal model with separated unit-root parts:
//
//   U_s(B^s) U(B) phi_s(B^s) phi(B) Y_t = theta_s(B^s) theta(B) eps_t
//
// U and U_s are kept as ordered factor lists (a factored form is often the
// meaningful one, e.g. (1-B)(1-B^12)); expansion flattens them. Seasonal
// polynomials are stored pre-embedding, in z rather than z^s.
struct SarumaSpec {
  int s = 1;
  std::vector<FilterPoly> u;    // unit-root factors, plain lag
  std::vector<FilterPoly> u_s;  // unit-root factors, seasonal lag (pre-embedding)
  FilterPoly phi;
  FilterPoly phi_s;
  FilterPoly theta;
  FilterPoly theta_s;
  double sigma2 = 1.0;

  std::size_t d() const {
    std::size_t total = 0;
    for (const auto& f : u) total += f.degree();
    return total;
  }
  std::size_t d_seasonal() const {
    std::size_t total = 0;
    for (const auto& f : u_s) total += f.degree();
    return total;
  }
};

// Flat form: one AR-side polynomial, one MA-side polynomial.
struct ExpandedModel {
  FilterPoly ar_full;
  FilterPoly ma_full;
  std::size_t nonstationary_degree = 0;
};

inline ExpandedModel expand_unchecked(const SarumaSpec& spec) {
  const std::size_t s = static_cast<std::size_t>(spec.s);
  FilterPoly ar;
  for (const auto& f : spec.u_s) ar = mul(ar, embed_season(f, s));
  for (const auto& f : spec.u) ar = mul(ar, f);
  ar = mul(ar, embed_season(spec.phi_s, s));
  ar = mul(ar, spec.phi);
  FilterPoly ma = mul(embed_season(spec.theta_s, s), spec.theta);
  return {std::move(ar), std::move(ma), spec.d() + s * spec.d_seasonal()};
}

// Checks the three invariant families: stationary/invertible polynomials
// have every root outside the unit circle, unit-root factors have every
// root on it (within root_tol), and the expanded AR and MA sides share no
// root within root_tol. Violations are data, not errors.
inline std::vector<Violation> validate(const SarumaSpec& spec, double root_tol = 1e-6) {
  std::vector<Violation> out;
  if (spec.s < 1) out.push_back({"s", "seasonal period must be >= 1"});
  if (!std::isfinite(spec.sigma2) || spec.sigma2 <= 0.0)
    out.push_back({"sigma2", "innovation variance must be positive"});

  auto check_outside = [&out](const FilterPoly& p, const std::string& name) {
    if (p.degree() == 0) return;
    const StabilityReport st = is_stable(p);
    if (st.stable) return;
    // Find the offending root for the message.
    std::complex<double> worst;
    double worst_mod = std::numeric_limits<double>::infinity();
    for (const auto& r : roots(p).roots) {
      const double m = std::abs(r);
      if (m < worst_mod) {
        worst_mod = m;
        worst = r;
      }
    }
    out.push_back({name, std::string("root ") +
                             (st.on_circle ? "on" : "on or inside") +
                             " the unit circle at z = " + detail::format_complex(worst)});
  };
  check_outside(spec.phi, "phi");
  check_outside(spec.phi_s, "phi_s");
  check_outside(spec.theta, "theta");
  check_outside(spec.theta_s, "theta_s");

  auto check_on_circle = [&out, root_tol](const std::vector<FilterPoly>& factors,
                                          const std::string& name) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() == 0) continue;
      for (const auto& r : roots(factors[i]).roots) {
        if (std::abs(std::abs(r) - 1.0) > root_tol) {
          out.push_back({name, "factor " + std::to_string(i + 1) +
                                   " has root off the unit circle at z = " +
                                   detail::format_complex(r)});
          break;
        }
      }
    }
  };
  check_on_circle(spec.u, "U");
  check_on_circle(spec.u_s, "U_s");

  if (spec.s >= 1) {
    const ExpandedModel em = expand_unchecked(spec);
    if (em.ar_full.degree() >= 1 && em.ma_full.degree() >= 1) {
      const auto ar_roots = roots(em.ar_full).roots;
      const auto ma_roots = roots(em.ma_full).roots;
      for (const auto& ra : ar_roots) {
        for (const auto& rm : ma_roots) {
          if (std::abs(ra - rm) <= root_tol) {
            out.push_back({"model", "common AR/MA root at z = " +
                                        detail::format_complex(ra)});
            break;
          }
        }
      }
    }
  }
  return out;
}

inline ExpandedModel expand(const SarumaSpec& spec) {
  auto violations = validate(spec);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return expand_unchecked(spec);
}

// Constructs a spec from one PACF sequence per component. The AR sides run
// through the unit-root factorisation, accumulating unit factors into U
// (resp. U_s) and the stationary remainder into phi (resp. phi_s); the MA
// sides map through the forward recursion directly. MA parameterisation by
// PACF is how the fitter keeps invertibility; pins make no sense there.
inline SarumaSpec build_from_pacf(const PacfSeq& ar_pacf, const PacfSeq& ma_pacf,
                                  const PacfSeq& seasonal_ar_pacf,
                                  const PacfSeq& seasonal_ma_pacf, int s,
                                  double sigma2) {
  if (!ma_pacf.unit_pins().empty() || !seasonal_ma_pacf.unit_pins().empty())
    throw PinnedMA("build_from_pacf: moving-average pacf must not contain pins");

  UnitRootFactorization ar_parts = factor_pacf(ar_pacf);
  UnitRootFactorization seasonal_parts = factor_pacf(seasonal_ar_pacf);

  SarumaSpec spec;
  spec.s = s;
  spec.sigma2 = sigma2;
  spec.u = std::move(ar_parts.unit_factors);
  spec.phi = std::move(ar_parts.stationary_factor);
  spec.u_s = std::move(seasonal_parts.unit_factors);
  spec.phi_s = std::move(seasonal_parts.stationary_factor);
  spec.theta = pacf_to_coeffs(ma_pacf);
  spec.theta_s = pacf_to_coeffs(seasonal_ma_pacf);

  auto violations = validate(spec);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return spec;
}

}  // namespace saruma
