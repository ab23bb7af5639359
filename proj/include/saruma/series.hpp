#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "saruma/errors.hpp"
#include "saruma/model.hpp"
#include "saruma/rootloc.hpp"

namespace saruma {

// Values above this bound abort a simulation; unit-root models grow and the
// caller is expected to bound the horizon.
inline constexpr double kSimulationLimit = 1e150;

class TimeSeries {
 public:
  TimeSeries() = default;

  explicit TimeSeries(std::vector<double> values, std::vector<std::string> labels = {})
      : values_(std::move(values)), labels_(std::move(labels)) {
    if (values_.empty()) throw Error("TimeSeries: need at least one value");
    for (double v : values_)
      if (!std::isfinite(v)) throw NonFinite("TimeSeries: non-finite value");
    if (!labels_.empty() && labels_.size() != values_.size())
      throw Error("TimeSeries: label count must match value count");
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<double> values_;
  std::vector<std::string> labels_;  // optional; empty means unlabeled
};

struct ResidualSet {
  std::vector<double> residuals;  // eps_{k+1}..eps_T, k = degree(ar_full)
  double sum_sq = 0.0;
  std::size_t effective_n = 0;
};

// Standard normal draws by the basic Box-Muller transform over raw engine
// bits. Each pair consumes exactly two engine outputs, so streams are
// reproducible across platforms and standard libraries.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - unit_uniform();  // (0, 1]
    const double u2 = unit_uniform();        // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double unit_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

struct SimulationResult {
  TimeSeries series;
  std::vector<double> innovations;  // aligned with the emitted values
};

// Draws Gaussian innovations and runs the recursion
//   y_t = -sum_{k>=1} a_k y_{t-k} + sum_{j>=0} m_j eps_{t-j}
// with zero presample values on both sides, then discards burn_in points.
// Deterministic given the seed.
inline SimulationResult simulate_with_innovations(const ExpandedModel& model,
                                                  std::size_t length, double sigma,
                                                  std::uint64_t seed,
                                                  std::size_t burn_in = 0) {
  if (length == 0) throw Error("simulate: length must be >= 1");
  if (!std::isfinite(sigma) || sigma < 0.0)
    throw Error("simulate: sigma must be finite and non-negative");

  const auto& a = model.ar_full.coeffs();
  const auto& m = model.ma_full.coeffs();
  const std::size_t total = burn_in + length;

  GaussianSampler draw(seed);
  std::vector<double> eps(total);
  for (double& e : eps) e = sigma * draw();

  std::vector<double> y(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.size() && j <= t; ++j) acc += m[j] * eps[t - j];
    for (std::size_t k = 1; k < a.size() && k <= t; ++k) acc -= a[k] * y[t - k];
    if (!std::isfinite(acc) || std::abs(acc) > kSimulationLimit)
      throw SimulationOverflow("simulate: series exceeded " +
                               std::to_string(kSimulationLimit) + " at t = " +
                               std::to_string(t + 1));
    y[t] = acc;
  }

  std::vector<double> values(y.begin() + static_cast<std::ptrdiff_t>(burn_in), y.end());
  std::vector<double> kept(eps.begin() + static_cast<std::ptrdiff_t>(burn_in), eps.end());
  return {TimeSeries(std::move(values)), std::move(kept)};
}

inline TimeSeries simulate(const ExpandedModel& model, std::size_t length,
                           double sigma, std::uint64_t seed,
                           std::size_t burn_in = 0) {
  return simulate_with_innovations(model, length, sigma, seed, burn_in).series;
}

// Conditional residuals with zero presample: the AR side is applied exactly
// for t past degree(ar_full), then the MA side is inverted recursively.
// The MA polynomial must have all roots outside the unit circle or the
// inversion diverges.
inline ResidualSet residuals(const ExpandedModel& model, const TimeSeries& y) {
  const auto& a = model.ar_full.coeffs();
  const auto& m = model.ma_full.coeffs();
  const std::size_t p = model.ar_full.degree();
  const std::size_t q = model.ma_full.degree();
  const std::size_t n = y.size();
  if (n <= p + q)
    throw SeriesTooShort("residuals: need more than " + std::to_string(p + q) +
                         " observations, got " + std::to_string(n));
  if (q >= 1 && !is_stable(model.ma_full).stable)
    throw NonInvertibleMA("residuals: MA polynomial has roots on or inside the unit circle");

  const auto& v = y.values();
  ResidualSet out;
  out.effective_n = n - p;
  out.residuals.resize(out.effective_n);
  for (std::size_t i = 0; i < out.effective_n; ++i) {
    const std::size_t t = p + i;  // 0-based time of this residual
    double w = 0.0;
    for (std::size_t k = 0; k <= p; ++k) w += a[k] * v[t - k];
    double e = w;
    for (std::size_t j = 1; j <= q && j <= i; ++j) e -= m[j] * out.residuals[i - j];
    out.residuals[i] = e;
    out.sum_sq += e * e;
  }
  return out;
}

// CSV format: one value per line, optional "value" header, 17 significant
// digits on output so a round trip reproduces every double exactly.

inline TimeSeries read_csv(std::istream& in, const std::string& source = "<stream>") {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool maybe_header = true;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    std::string token = line.substr(start);
    if (maybe_header && token == "value") {
      maybe_header = false;
      continue;
    }
    maybe_header = false;
    double x = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, x);
    if (ec != std::errc{} || ptr != end)
      throw CsvParseError(source, lineno, "cannot parse '" + token + "' as a number");
    if (!std::isfinite(x))
      throw CsvParseError(source, lineno, "non-finite value '" + token + "'");
    values.push_back(x);
  }
  if (values.empty()) throw CsvParseError(source, lineno, "no data values found");
  return TimeSeries(std::move(values));
}

inline TimeSeries read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_csv: cannot open '" + path + "'");
  return read_csv(in, path);
}

inline void write_csv(const TimeSeries& ts, std::ostream& out) {
  out << "value\n";
  char buf[64];
  for (double v : ts.values()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << '\n';
  }
}

inline void write_csv(const TimeSeries& ts, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_csv: cannot open '" + path + "'");
  write_csv(ts, out);
  if (!out) throw Error("write_csv: write to '" + path + "' failed");
}

}  // namespace saruma
