#pragma once

// JSON bindings for every type that crosses the CLI boundary. Formats:
//   FilterPoly        -> [c0, ..., cn], lowest degree first, c0 always 1
//   PacfSeq           -> {"values": [...], "unit_pins": [1-based indices]}
//   SarumaSpec        -> {"s", "sigma2", "U": [[...], ...], "U_s": [[...], ...],
//                         "phi", "phi_s", "theta", "theta_s"}
// U and U_s are arrays of factor-coefficient arrays; the factored form is
// preserved through a round trip.

#include <string>
#include <vector>

#include <json.hpp>

#include "saruma/errors.hpp"
#include "saruma/fit.hpp"
#include "saruma/model.hpp"
#include "saruma/pacf.hpp"
#include "saruma/poly.hpp"
#include "saruma/rootloc.hpp"
#include "saruma/series.hpp"

namespace saruma {

inline void to_json(nlohmann::json& j, const FilterPoly& p) { j = p.coeffs(); }

inline void from_json(const nlohmann::json& j, FilterPoly& p) {
  p = FilterPoly(j.get<std::vector<double>>());
}

inline void to_json(nlohmann::json& j, const PacfSeq& b) {
  j = nlohmann::json{{"values", b.values()}, {"unit_pins", b.unit_pins()}};
}

inline void from_json(const nlohmann::json& j, PacfSeq& b) {
  std::vector<std::size_t> pins;
  if (j.contains("unit_pins")) pins = j.at("unit_pins").get<std::vector<std::size_t>>();
  b = PacfSeq(j.at("values").get<std::vector<double>>(), std::move(pins));
}

inline void to_json(nlohmann::json& j, const UnitRootFactorization& f) {
  j = nlohmann::json{{"unit_factors", f.unit_factors},
                     {"stationary_factor", f.stationary_factor},
                     {"d_plus_trace", f.d_plus_trace},
                     {"source", f.source}};
}

inline void from_json(const nlohmann::json& j, UnitRootFactorization& f) {
  f.unit_factors = j.at("unit_factors").get<std::vector<FilterPoly>>();
  f.stationary_factor = j.at("stationary_factor").get<FilterPoly>();
  f.d_plus_trace = j.at("d_plus_trace").get<std::vector<std::size_t>>();
  f.source = j.at("source").get<PacfSeq>();
}

inline void to_json(nlohmann::json& j, const RootLocationReport& r) {
  j = nlohmann::json{{"nu_inside", r.nu_inside},
                     {"n_outside", r.n_outside},
                     {"q_sequence", r.q_sequence}};
}

inline void from_json(const nlohmann::json& j, RootLocationReport& r) {
  r.nu_inside = j.at("nu_inside").get<std::size_t>();
  r.n_outside = j.at("n_outside").get<std::size_t>();
  r.q_sequence = j.at("q_sequence").get<std::vector<double>>();
}

inline void to_json(nlohmann::json& j, const Violation& v) {
  j = nlohmann::json{{"component", v.component}, {"message", v.message}};
}

inline void from_json(const nlohmann::json& j, Violation& v) {
  v.component = j.at("component").get<std::string>();
  v.message = j.at("message").get<std::string>();
}

inline void to_json(nlohmann::json& j, const SarumaSpec& spec) {
  j = nlohmann::json{{"s", spec.s},         {"sigma2", spec.sigma2},
                     {"U", spec.u},         {"U_s", spec.u_s},
                     {"phi", spec.phi},     {"phi_s", spec.phi_s},
                     {"theta", spec.theta}, {"theta_s", spec.theta_s}};
}

inline void from_json(const nlohmann::json& j, SarumaSpec& spec) {
  spec.s = j.at("s").get<int>();
  spec.sigma2 = j.value("sigma2", 1.0);
  spec.u = j.value("U", std::vector<FilterPoly>{});
  spec.u_s = j.value("U_s", std::vector<FilterPoly>{});
  spec.phi = j.value("phi", FilterPoly{});
  spec.phi_s = j.value("phi_s", FilterPoly{});
  spec.theta = j.value("theta", FilterPoly{});
  spec.theta_s = j.value("theta_s", FilterPoly{});
}

inline void to_json(nlohmann::json& j, const ExpandedModel& m) {
  j = nlohmann::json{{"ar_full", m.ar_full},
                     {"ma_full", m.ma_full},
                     {"nonstationary_degree", m.nonstationary_degree}};
}

inline void from_json(const nlohmann::json& j, ExpandedModel& m) {
  m.ar_full = j.at("ar_full").get<FilterPoly>();
  m.ma_full = j.at("ma_full").get<FilterPoly>();
  m.nonstationary_degree = j.at("nonstationary_degree").get<std::size_t>();
}

inline void to_json(nlohmann::json& j, const ResidualSet& r) {
  j = nlohmann::json{{"residuals", r.residuals},
                     {"sum_sq", r.sum_sq},
                     {"effective_n", r.effective_n}};
}

inline void from_json(const nlohmann::json& j, ResidualSet& r) {
  r.residuals = j.at("residuals").get<std::vector<double>>();
  r.sum_sq = j.at("sum_sq").get<double>();
  r.effective_n = j.at("effective_n").get<std::size_t>();
}

inline void to_json(nlohmann::json& j, const PacfSlot& s) {
  const char* kind = s.kind == SlotKind::pinned  ? "pinned"
                     : s.kind == SlotKind::fixed ? "fixed"
                                                 : "free";
  j = nlohmann::json{{"kind", kind}, {"value", s.value}};
}

inline void from_json(const nlohmann::json& j, PacfSlot& s) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pinned")
    s.kind = SlotKind::pinned;
  else if (kind == "free")
    s.kind = SlotKind::free_value;
  else if (kind == "fixed")
    s.kind = SlotKind::fixed;
  else
    throw Error("PacfSlot: unknown kind '" + kind + "'");
  s.value = j.at("value").get<double>();
}

inline void to_json(nlohmann::json& j, const FitTemplate& t) {
  j = nlohmann::json{{"s", t.s},
                     {"ar", t.ar},
                     {"ma", t.ma},
                     {"seasonal_ar", t.seasonal_ar},
                     {"seasonal_ma", t.seasonal_ma}};
  if (t.data.size() > 0) j["data"] = t.data.values();
}

inline void from_json(const nlohmann::json& j, FitTemplate& t) {
  t.s = j.value("s", 1);
  t.ar = j.value("ar", std::vector<PacfSlot>{});
  t.ma = j.value("ma", std::vector<PacfSlot>{});
  t.seasonal_ar = j.value("seasonal_ar", std::vector<PacfSlot>{});
  t.seasonal_ma = j.value("seasonal_ma", std::vector<PacfSlot>{});
  if (j.contains("data")) t.data = TimeSeries(j.at("data").get<std::vector<double>>());
}

inline void to_json(nlohmann::json& j, const FitReport& r) {
  j = nlohmann::json{{"ar_pacf", r.ar_pacf},
                     {"ma_pacf", r.ma_pacf},
                     {"seasonal_ar_pacf", r.seasonal_ar_pacf},
                     {"seasonal_ma_pacf", r.seasonal_ma_pacf},
                     {"spec", r.spec},
                     {"sum_sq", r.sum_sq},
                     {"sigma2_hat", r.sigma2_hat},
                     {"iterations", r.iterations},
                     {"converged", r.converged},
                     {"objective_trace", r.objective_trace}};
}

inline void from_json(const nlohmann::json& j, FitReport& r) {
  r.ar_pacf = j.at("ar_pacf").get<PacfSeq>();
  r.ma_pacf = j.at("ma_pacf").get<PacfSeq>();
  r.seasonal_ar_pacf = j.at("seasonal_ar_pacf").get<PacfSeq>();
  r.seasonal_ma_pacf = j.at("seasonal_ma_pacf").get<PacfSeq>();
  r.spec = j.at("spec").get<SarumaSpec>();
  r.sum_sq = j.at("sum_sq").get<double>();
  r.sigma2_hat = j.at("sigma2_hat").get<double>();
  r.iterations = j.at("iterations").get<std::size_t>();
  r.converged = j.at("converged").get<bool>();
  r.objective_trace = j.at("objective_trace").get<std::vector<double>>();
}

}  // namespace saruma
