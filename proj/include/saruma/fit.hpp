#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "saruma/errors.hpp"
#include "saruma/model.hpp"
#include "saruma/nelder_mead.hpp"
#include "saruma/pacf.hpp"
#include "saruma/series.hpp"

namespace saruma {

// Invalid parameter points report this instead of throwing, so the simplex
// retreats rather than crashing. Large but finite on purpose.
inline constexpr double kObjectiveSentinel = 1e100;

// Smooth strictly monotone bijection from the reals onto (-1, 1); lets an
// unconstrained optimiser search the open unit cube.
inline double squash(double u) { return std::tanh(u); }

inline double unsquash(double x) {
  if (!(std::abs(x) < 1.0)) throw Error("unsquash: |x| must be < 1");
  return std::atanh(x);
}

enum class SlotKind { pinned, free_value, fixed };

// One PACF position in a fit template: pinned to +-1 (structural unit
// root), free (estimated, starting at `value`), or fixed (held constant).
struct PacfSlot {
  SlotKind kind = SlotKind::fixed;
  double value = 0.0;

  static PacfSlot pinned(double sign) { return {SlotKind::pinned, sign}; }
  static PacfSlot free(double initial) { return {SlotKind::free_value, initial}; }
  static PacfSlot fixed(double v) { return {SlotKind::fixed, v}; }
};

struct FitTemplate {
  int s = 1;
  std::vector<PacfSlot> ar;
  std::vector<PacfSlot> ma;
  std::vector<PacfSlot> seasonal_ar;
  std::vector<PacfSlot> seasonal_ma;
  TimeSeries data;
};

namespace detail {

inline std::size_t count_free(const std::vector<PacfSlot>& slots) {
  std::size_t n = 0;
  for (const auto& s : slots)
    if (s.kind == SlotKind::free_value) ++n;
  return n;
}

inline std::size_t count_free(const FitTemplate& t) {
  return count_free(t.ar) + count_free(t.ma) + count_free(t.seasonal_ar) +
         count_free(t.seasonal_ma);
}

// Free slots are consumed from `params` in order: ar, ma, seasonal_ar,
// seasonal_ma, each left to right.
inline PacfSeq fill_slots(const std::vector<PacfSlot>& slots,
                          std::span<const double> params, std::size_t& next) {
  std::vector<double> values(slots.size());
  std::vector<std::size_t> pins;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    switch (slots[i].kind) {
      case SlotKind::pinned:
        values[i] = slots[i].value;
        pins.push_back(i + 1);
        break;
      case SlotKind::free_value:
        values[i] = squash(params[next++]);
        break;
      case SlotKind::fixed:
        values[i] = slots[i].value;
        break;
    }
  }
  return PacfSeq(std::move(values), std::move(pins));
}

struct AssembledPacf {
  PacfSeq ar, ma, seasonal_ar, seasonal_ma;
};

inline AssembledPacf assemble(const FitTemplate& t, std::span<const double> params) {
  std::size_t next = 0;
  AssembledPacf out;
  out.ar = fill_slots(t.ar, params, next);
  out.ma = fill_slots(t.ma, params, next);
  out.seasonal_ar = fill_slots(t.seasonal_ar, params, next);
  out.seasonal_ma = fill_slots(t.seasonal_ma, params, next);
  return out;
}

inline void check_template(const FitTemplate& t) {
  if (count_free(t) == 0)
    throw InvalidTemplate("fit template needs at least one free slot");
  if (t.data.size() == 0) throw InvalidTemplate("fit template has no data");
  auto check_side = [](const std::vector<PacfSlot>& slots, bool ar_side,
                       const std::string& name) {
    for (const auto& s : slots) {
      if (s.kind == SlotKind::pinned) {
        if (!ar_side)
          throw InvalidTemplate("pinned slot on MA side '" + name + "'");
        if (s.value != 1.0 && s.value != -1.0)
          throw InvalidTemplate("pinned slot in '" + name + "' must be exactly +1 or -1");
      }
      if (s.kind == SlotKind::free_value && !(std::abs(s.value) < 1.0))
        throw InvalidTemplate("free slot initial value in '" + name +
                              "' must lie in (-1, 1)");
      if (!std::isfinite(s.value))
        throw InvalidTemplate("non-finite slot value in '" + name + "'");
    }
  };
  check_side(t.ar, true, "ar");
  check_side(t.ma, false, "ma");
  check_side(t.seasonal_ar, true, "seasonal_ar");
  check_side(t.seasonal_ma, false, "seasonal_ma");
  if (t.s < 1) throw InvalidTemplate("seasonal period must be >= 1");
}

}  // namespace detail

// Conditional sum of squares at an unconstrained parameter point: params
// map through squash into the free PACF slots, the model spec is built and
// expanded, and the residual sum of squares over the data comes back.
// Any domain failure (validation, too-short series, ...) yields the
// sentinel instead of an exception.
inline double css_objective(std::span<const double> free_params,
                            const FitTemplate& t) {
  if (free_params.size() != detail::count_free(t))
    throw Error("css_objective: expected " +
                std::to_string(detail::count_free(t)) + " free parameters, got " +
                std::to_string(free_params.size()));
  try {
    const detail::AssembledPacf a = detail::assemble(t, free_params);
    const SarumaSpec spec =
        build_from_pacf(a.ar, a.ma, a.seasonal_ar, a.seasonal_ma, t.s, 1.0);
    const ExpandedModel em = expand_unchecked(spec);
    return residuals(em, t.data).sum_sq;
  } catch (const Error&) {
    return kObjectiveSentinel;
  }
}

struct FitOptions {
  std::size_t max_iter = 2000;
  double tol = 1e-8;
  std::size_t multistarts = 5;
  std::uint64_t seed = 0;
};

struct FitReport {
  PacfSeq ar_pacf, ma_pacf, seasonal_ar_pacf, seasonal_ma_pacf;
  SarumaSpec spec;
  double sum_sq = 0.0;
  double sigma2_hat = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
};

// Derivative-free minimisation of css_objective. The first start is the
// template's initial values; the remaining starts are seeded-random points
// in unconstrained parameter space. sigma2 is estimated afterwards as
// sum_sq / effective_n, not jointly.
inline FitReport fit(const FitTemplate& t, const FitOptions& opts = {}) {
  detail::check_template(t);
  if (opts.max_iter == 0) throw InvalidTemplate("fit: max_iter must be >= 1");
  if (opts.multistarts == 0) throw InvalidTemplate("fit: multistarts must be >= 1");

  const std::size_t k = detail::count_free(t);
  std::vector<double> initial;
  initial.reserve(k);
  for (const auto* side : {&t.ar, &t.ma, &t.seasonal_ar, &t.seasonal_ma})
    for (const auto& slot : *side)
      if (slot.kind == SlotKind::free_value) initial.push_back(unsquash(slot.value));

  std::mt19937_64 engine(opts.seed);
  auto random_param = [&engine]() {
    // uniform in [-2, 2), mapped from raw bits for cross-platform streams
    return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
  };

  auto objective = [&t](std::span<const double> u) { return css_objective(u, t); };

  NelderMeadResult best;
  bool have_best = false;
  for (std::size_t start = 0; start < opts.multistarts; ++start) {
    std::vector<double> x0 = initial;
    if (start > 0)
      for (double& u : x0) u = random_param();
    NelderMeadResult r =
        nelder_mead(objective, std::move(x0), {opts.max_iter, opts.tol});
    if (!have_best || r.fx < best.fx) {
      best = std::move(r);
      have_best = true;
    }
  }
  if (!have_best || best.fx >= kObjectiveSentinel)
    throw AllStartsFailed("fit: every start ended at an invalid parameter point");

  FitReport report;
  const detail::AssembledPacf a = detail::assemble(t, std::span<const double>(best.x));
  report.ar_pacf = a.ar;
  report.ma_pacf = a.ma;
  report.seasonal_ar_pacf = a.seasonal_ar;
  report.seasonal_ma_pacf = a.seasonal_ma;
  report.spec = build_from_pacf(a.ar, a.ma, a.seasonal_ar, a.seasonal_ma, t.s, 1.0);
  const ResidualSet res = residuals(expand_unchecked(report.spec), t.data);
  report.sum_sq = res.sum_sq;
  report.sigma2_hat = res.sum_sq / static_cast<double>(res.effective_n);
  report.spec.sigma2 = report.sigma2_hat;
  report.iterations = best.iterations;
  report.converged = best.converged;
  report.objective_trace = std::move(best.trace);
  return report;
}

}  // namespace saruma
