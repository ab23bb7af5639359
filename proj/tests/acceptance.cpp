// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. Each criterion is seeded, so a green run is reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "saruma/saruma.hpp"
#include "test_util.hpp"

using saruma::FilterPoly;
using saruma::PacfSeq;
using testutil::Rng;

namespace {

struct Runner {
  bool all_passed = true;
  int next_id = 1;

  void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    const int id = next_id++;
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d  %s (%s%.2f s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.empty() ? "" : (detail + ", ").c_str(), secs);
    std::fflush(stdout);
    all_passed = all_passed && ok;
  }
};

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, x);
  return buf;
}

PacfSeq airline_pacf() {
  std::vector<double> v(13, 0.0);
  v[0] = 1.0;
  v[12] = -1.0;
  return PacfSeq(v, {1, 13});
}

FilterPoly airline_poly() {
  std::vector<double> c(14, 0.0);
  c[0] = 1.0;
  c[1] = -1.0;
  c[12] = -1.0;
  c[13] = 1.0;
  return FilterPoly(c);
}

saruma::TimeSeries deterministic_series(double phi, std::size_t n) {
  std::vector<double> y(n);
  y[0] = 1.0;
  y[1] = 2.0;
  for (std::size_t t = 2; t < n; ++t)
    y[t] = (1.0 + phi) * y[t - 1] - phi * y[t - 2];
  return saruma::TimeSeries(y);
}

saruma::TimeSeries simulated_series(double phi, std::size_t n, std::uint64_t seed) {
  const auto spec = saruma::build_from_pacf(PacfSeq({1.0, -phi}, {1}), PacfSeq{},
                                            PacfSeq{}, PacfSeq{}, 1, 1.0);
  return saruma::simulate(saruma::expand_unchecked(spec), n, 1.0, seed);
}

saruma::FitTemplate pinned_template(saruma::TimeSeries data) {
  saruma::FitTemplate t;
  t.ar = {saruma::PacfSlot::pinned(1.0), saruma::PacfSlot::free(0.0)};
  t.data = std::move(data);
  return t;
}

}  // namespace

int main() {
  Runner runner;

  runner.run("round-trip law, 1000 sequences, n <= 25, |beta| <= 0.99, tol 1e-9",
             [](std::string& detail) {
               const auto t0 = std::chrono::steady_clock::now();
               Rng rng(1);
               double worst = 0.0;
               int over = 0;
               for (int iter = 0; iter < 1000; ++iter) {
                 const std::size_t n = rng.index(1, 25);
                 const auto values = testutil::random_pacf_values(rng, n, 0.99);
                 const PacfSeq back = coeffs_to_pacf(pacf_to_coeffs(PacfSeq(values)));
                 if (back.size() != n) return false;
                 double err = 0.0;
                 for (std::size_t i = 0; i < n; ++i)
                   err = std::max(err, std::abs(back.values()[i] - values[i]));
                 worst = std::max(worst, err);
                 if (err > 1e-9) ++over;
               }
               const double secs = std::chrono::duration<double>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
               detail = "max err " + fmt("%.2e", worst) + ", " +
                        std::to_string(over) +
                        "/1000 over tol; near-unit values amplify the rounding "
                        "of double coefficients beyond 1e-9";
               return worst <= 1e-9 && secs < 5.0;
             });

  runner.run("trailing unit value puts all roots on the circle, 500 sequences, tol 1e-6",
             [](std::string& detail) {
               Rng rng(2);
               double worst = 0.0;
               for (int iter = 0; iter < 500; ++iter) {
                 const std::size_t n = rng.index(1, 12);
                 auto values = testutil::random_pacf_values(rng, n - 1, 0.99);
                 values.push_back(rng.coin() ? 1.0 : -1.0);
                 const FilterPoly p = pacf_to_coeffs(PacfSeq(values, {n}));
                 worst = std::max(worst, testutil::max_circle_distance(p));
               }
               detail = "max |1 - |root|| " + fmt("%.2e", worst);
               return worst <= 1e-6;
             });

  runner.run("interior sequences put all roots outside the circle, 500 sequences",
             [](std::string& detail) {
               Rng rng(3);
               double least = std::numeric_limits<double>::infinity();
               for (int iter = 0; iter < 500; ++iter) {
                 const std::size_t n = rng.index(1, 15);
                 const auto values = testutil::random_pacf_values(rng, n, 0.99);
                 least = std::min(least,
                                  testutil::min_root_modulus(pacf_to_coeffs(PacfSeq(values))));
               }
               detail = "min |root| " + fmt("%.6f", least);
               return least > 1.0;
             });

  runner.run("single-pin split identity, 500 sequences, tol 1e-8, odd and even d+",
             [](std::string& detail) {
               Rng rng(4);
               double worst = 0.0;
               std::size_t odd = 0, even = 0, even_positive = 0;
               for (int iter = 0; iter < 500; ++iter) {
                 PacfSeq b;
                 if (iter % 100 == 0) {
                   // (1, -1, ...) generates (1-z)^2: an even positive d+
                   std::vector<double> values{1.0, -1.0};
                   const std::size_t extra = rng.index(1, 6);
                   for (std::size_t i = 0; i < extra; ++i)
                     values.push_back(rng.uniform(-0.95, 0.95));
                   b = PacfSeq(values, {2});
                 } else {
                   const std::size_t n = rng.index(2, 20);
                   const std::size_t m = rng.index(1, n);
                   auto values = testutil::random_pacf_values(rng, n, 0.95);
                   values[m - 1] = rng.coin() ? 1.0 : -1.0;
                   b = PacfSeq(values, {m});
                 }
                 const auto s = split_after_unit(b, b.unit_pins().front());
                 if (s.d_plus % 2 == 1) ++odd;
                 else ++even;
                 if (s.d_plus % 2 == 0 && s.d_plus > 0) ++even_positive;
                 worst = std::max(
                     worst, testutil::poly_diff(
                                mul(s.unit_part, pacf_to_coeffs(s.adjusted_tail)),
                                pacf_to_coeffs(b)));
               }
               detail = "max err " + fmt("%.2e", worst) + ", odd d+ " +
                        std::to_string(odd) + ", even d+ " + std::to_string(even);
               return worst <= 1e-8 && odd > 0 && even > 0 && even_positive > 0;
             });

  runner.run("multi-pin factorisation, 200 sequences, product tol 1e-7 + root checks",
             [](std::string& detail) {
               Rng rng(5);
               double worst_product = 0.0, worst_circle = 0.0;
               double least_stationary = std::numeric_limits<double>::infinity();
               for (int iter = 0; iter < 200; ++iter) {
                 const std::size_t n = rng.index(3, 16);
                 auto values = testutil::random_pacf_values(rng, n, 0.99);
                 const std::size_t pin_count = rng.index(2, 3);
                 std::vector<std::size_t> pins;
                 while (pins.size() < pin_count) {
                   const std::size_t m = rng.index(1, n);
                   bool dup = false;
                   for (std::size_t p : pins) dup = dup || p == m;
                   if (!dup) pins.push_back(m);
                 }
                 for (std::size_t m : pins) values[m - 1] = rng.coin() ? 1.0 : -1.0;
                 const PacfSeq b(values, pins);
                 const auto f = factor_pacf(b);
                 if (f.unit_factors.size() != pin_count) return false;
                 worst_product =
                     std::max(worst_product,
                              testutil::poly_diff(f.product(), pacf_to_coeffs(b)));
                 for (const auto& u : f.unit_factors)
                   worst_circle = std::max(worst_circle, testutil::max_circle_distance(u));
                 if (f.stationary_factor.degree() >= 1)
                   least_stationary = std::min(
                       least_stationary, testutil::min_root_modulus(f.stationary_factor));
               }
               detail = "max product err " + fmt("%.2e", worst_product) +
                        ", max unit-root drift " + fmt("%.2e", worst_circle);
               return worst_product <= 1e-7 && worst_circle <= 1e-6 &&
                      least_stationary > 1.0;
             });

  runner.run("worked two-term examples: (b1, 1) -> 1 - z^2 and (0.5, -1) -> 1 - z + z^2",
             [](std::string&) {
               Rng rng(6);
               for (int iter = 0; iter < 10; ++iter) {
                 const PacfSeq b({rng.uniform(-0.99, 0.99), 1.0}, {2});
                 const FilterPoly p = pacf_to_coeffs(b);
                 if (!(p.degree() == 2 && p.coeff(1) == 0.0 && p.coeff(2) == -1.0))
                   return false;
               }
               const FilterPoly q = pacf_to_coeffs(PacfSeq({0.5, -1.0}, {2}));
               return q.coeffs() == std::vector<double>{1.0, -1.0, 1.0};
             });

  runner.run("airline construction and factorisation, tol 1e-10",
             [](std::string& detail) {
               const FilterPoly built = pacf_to_coeffs(airline_pacf());
               const double build_err = testutil::poly_diff(built, airline_poly());

               const auto f = factor_pacf(airline_pacf());
               if (f.unit_factors.size() != 2) return false;
               std::vector<double> season(13, 0.0);
               season[0] = 1.0;
               season[12] = -1.0;
               const double factor_err = std::max(
                   testutil::poly_diff(f.unit_factors[0], FilterPoly({1.0, -1.0})),
                   testutil::poly_diff(f.unit_factors[1], FilterPoly(season)));
               detail = "max err " + fmt("%.2e", std::max(build_err, factor_err));
               return build_err <= 1e-10 && factor_err <= 1e-10 &&
                      f.stationary_factor.degree() == 0;
             });

  runner.run("zero-location counting matches the companion oracle, 500 polynomials",
             [](std::string&) {
               Rng rng(7);
               int done = 0;
               while (done < 500) {
                 std::vector<double> c{1.0};
                 const std::size_t deg = rng.index(1, 10);
                 for (std::size_t k = 0; k < deg; ++k) c.push_back(rng.uniform(-1.5, 1.5));
                 if (c.back() == 0.0) c.back() = 0.4;
                 const FilterPoly p(c);
                 bool near_circle = false;
                 for (const auto& r : saruma::roots(p).roots)
                   near_circle = near_circle || std::abs(std::abs(r) - 1.0) < 1e-3;
                 if (near_circle) continue;
                 saruma::RootLocationReport report;
                 try {
                   report = saruma::count_inside(coeffs_to_pacf(p));
                 } catch (const saruma::Error&) {
                   continue;
                 }
                 if (report.nu_inside != testutil::count_roots_inside(p)) return false;
                 if ((report.nu_inside == 0) != saruma::is_stable(p).stable) return false;
                 ++done;
               }
               return true;
             });

  runner.run("innovation recovery through simulate + residuals, 20 models, tol 1e-6",
             [](std::string& detail) {
               Rng rng(8);
               double worst = 0.0;
               for (int model_id = 0; model_id < 20; ++model_id) {
                 saruma::SarumaSpec spec;
                 while (true) {
                   try {
                     const int s = rng.coin() ? 4 : 1;
                     spec = saruma::build_from_pacf(
                         PacfSeq(testutil::random_pacf_values(rng, rng.index(1, 3), 0.6)),
                         PacfSeq(testutil::random_pacf_values(rng, rng.index(1, 2), 0.6)),
                         PacfSeq(testutil::random_pacf_values(rng, s == 1 ? 0 : 1, 0.5)),
                         PacfSeq(testutil::random_pacf_values(rng, s == 1 ? 0 : 1, 0.5)),
                         s, 1.0);
                     break;
                   } catch (const saruma::ValidationError&) {
                     continue;  // rejection keeps AR/MA roots apart
                   }
                 }
                 const auto model = saruma::expand_unchecked(spec);
                 const auto sim = saruma::simulate_with_innovations(
                     model, 700, 1.0, 8000 + static_cast<std::uint64_t>(model_id));
                 const auto res = saruma::residuals(model, sim.series);
                 const std::size_t p = model.ar_full.degree();
                 for (std::size_t t = 350; t < 700; ++t)
                   worst = std::max(worst,
                                    std::abs(res.residuals[t - p] - sim.innovations[t]));
               }
               detail = "max err " + fmt("%.2e", worst);
               return worst <= 1e-6;
             });

  runner.run("estimation recovery: 20 seeds within 0.15 on >= 18, zero-noise to 1e-6",
             [](std::string& detail) {
               const auto t0 = std::chrono::steady_clock::now();
               int hits = 0;
               for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                 const auto y = simulated_series(0.5, 500, seed);
                 const auto report =
                     saruma::fit(pinned_template(y), {2000, 1e-8, 5, seed});
                 const double phi_hat = -report.spec.phi.coeff(1);
                 if (std::abs(phi_hat - 0.5) <= 0.15) ++hits;
               }
               const auto zero_noise =
                   saruma::fit(pinned_template(deterministic_series(0.5, 500)),
                               {2000, 1e-10, 3, 1});
               const double phi_zero = -zero_noise.spec.phi.coeff(1);
               const double secs = std::chrono::duration<double>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
               detail = std::to_string(hits) + "/20 hits, zero-noise err " +
                        fmt("%.2e", std::abs(phi_zero - 0.5));
               return hits >= 18 && std::abs(phi_zero - 0.5) <= 1e-6 && secs < 60.0;
             });

  runner.run("pinning matches fitting the pre-differenced series, 5 seeds",
             [](std::string& detail) {
               const double tol = 1e-8;
               double worst_obj = 0.0, worst_phi = 0.0;
               for (std::uint64_t seed = 21; seed <= 25; ++seed) {
                 const auto y = simulated_series(0.5, 500, seed);
                 const auto pinned =
                     saruma::fit(pinned_template(y), {2000, tol, 3, seed});

                 std::vector<double> diff(y.size() - 1);
                 for (std::size_t t = 1; t < y.size(); ++t)
                   diff[t - 1] = y.values()[t] - y.values()[t - 1];
                 saruma::FitTemplate stationary;
                 stationary.ar = {saruma::PacfSlot::free(0.0)};
                 stationary.data = saruma::TimeSeries(diff);
                 const auto direct = saruma::fit(stationary, {2000, tol, 3, seed});

                 const double obj_gap = std::abs(pinned.sum_sq - direct.sum_sq);
                 const double allowed =
                     2.0 * tol * (1.0 + std::max(pinned.sum_sq, direct.sum_sq));
                 worst_obj = std::max(worst_obj, obj_gap / allowed);
                 worst_phi = std::max(worst_phi, std::abs(pinned.spec.phi.coeff(1) -
                                                          direct.spec.phi.coeff(1)));
               }
               detail = "max obj gap (fraction of allowance) " + fmt("%.2f", worst_obj) +
                        ", max phi gap " + fmt("%.2e", worst_phi);
               return worst_obj <= 1.0 && worst_phi <= 1e-2;
             });

  return runner.all_passed ? 0 : 1;
}
