// Command-line front end: every library operation as a subcommand over
// JSON/CSV files. Inputs come from flags or stdin, outputs go to --out or
// stdout, so the subcommands compose in shell pipelines. Exit codes:
// 0 success, 1 domain error (structured JSON on stderr), 2 usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "saruma/saruma.hpp"

namespace {

using nlohmann::json;

std::string read_all_stdin() {
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  return buf.str();
}

// Inline JSON string if given, otherwise whatever is on stdin.
json parse_json_arg(const std::string& inline_text) {
  return json::parse(inline_text.empty() ? read_all_stdin() : inline_text);
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw saruma::Error("cannot open '" + out_path + "' for writing");
  out << j.dump(2) << '\n';
}

json error_json(const saruma::Error& e) {
  json j{{"message", e.what()}};
  if (const auto* u = dynamic_cast<const saruma::UnitPacfEncountered*>(&e)) {
    j["error"] = "UnitPacfEncountered";
    j["index"] = u->index();
    j["partial_values"] = u->partial();  // highest lag first
  } else if (const auto* v = dynamic_cast<const saruma::ValidationError*>(&e)) {
    j["error"] = "ValidationError";
    j["violations"] = v->violations();
  } else if (const auto* f = dynamic_cast<const saruma::NotAFactor*>(&e)) {
    j["error"] = "NotAFactor";
    j["max_remainder"] = f->max_remainder();
  } else if (const auto* nu = dynamic_cast<const saruma::NotUnitAt*>(&e)) {
    j["error"] = "NotUnitAt";
    j["index"] = nu->index();
  } else if (const auto* c = dynamic_cast<const saruma::CsvParseError*>(&e)) {
    j["error"] = "CsvParseError";
    j["line"] = c->line();
  } else if (dynamic_cast<const saruma::IllDefinedRCs*>(&e)) {
    j["error"] = "IllDefinedRCs";
  } else if (dynamic_cast<const saruma::PinnedMA*>(&e)) {
    j["error"] = "PinnedMA";
  } else if (dynamic_cast<const saruma::SeriesTooShort*>(&e)) {
    j["error"] = "SeriesTooShort";
  } else if (dynamic_cast<const saruma::NonInvertibleMA*>(&e)) {
    j["error"] = "NonInvertibleMA";
  } else if (dynamic_cast<const saruma::SimulationOverflow*>(&e)) {
    j["error"] = "SimulationOverflow";
  } else if (dynamic_cast<const saruma::InvalidTemplate*>(&e)) {
    j["error"] = "InvalidTemplate";
  } else if (dynamic_cast<const saruma::AllStartsFailed*>(&e)) {
    j["error"] = "AllStartsFailed";
  } else if (dynamic_cast<const saruma::RootSolveError*>(&e)) {
    j["error"] = "RootSolveError";
  } else if (dynamic_cast<const saruma::NonFinite*>(&e)) {
    j["error"] = "NonFinite";
  } else {
    j["error"] = "Error";
  }
  return j;
}

saruma::TimeSeries load_series(const std::string& path) {
  if (path.empty()) return saruma::read_csv(std::cin, "<stdin>");
  return saruma::read_csv(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-autocorrelation parameterisation of unit-root seasonal "
               "ARMA filters: transforms, factorisation, simulation, estimation"};
  app.require_subcommand(1);

  // pacf2ar ---------------------------------------------------------------
  {
    auto opt = std::make_shared<std::pair<std::string, std::string>>();
    auto* sub = app.add_subcommand("pacf2ar",
                                   "Partial autocorrelations to filter coefficients");
    sub->add_option("--pacf", opt->first, "PacfSeq JSON (stdin if omitted)");
    sub->add_option("--out", opt->second, "output path (stdout if omitted)");
    sub->callback([opt]() {
      const auto b = parse_json_arg(opt->first).get<saruma::PacfSeq>();
      emit(json(saruma::pacf_to_coeffs(b)), opt->second);
    });
  }

  // ar2pacf ---------------------------------------------------------------
  {
    auto opt = std::make_shared<std::pair<std::string, std::string>>();
    auto* sub = app.add_subcommand("ar2pacf",
                                   "Filter coefficients to partial autocorrelations");
    sub->add_option("--poly", opt->first, "coefficient array JSON (stdin if omitted)");
    sub->add_option("--out", opt->second, "output path (stdout if omitted)");
    sub->callback([opt]() {
      const auto p = parse_json_arg(opt->first).get<saruma::FilterPoly>();
      emit(json(saruma::coeffs_to_pacf(p)), opt->second);
    });
  }

  // factor ----------------------------------------------------------------
  {
    struct Opt {
      std::string pacf, out;
      double tol = saruma::kDeflationTol;
    };
    auto opt = std::make_shared<Opt>();
    auto* sub = app.add_subcommand("factor", "Unit-root factorisation of a pacf sequence");
    sub->add_option("--pacf", opt->pacf, "PacfSeq JSON (stdin if omitted)");
    sub->add_option("--out", opt->out, "output path (stdout if omitted)");
    sub->add_option("--tol", opt->tol, "deflation tolerance");
    sub->callback([opt]() {
      const auto b = parse_json_arg(opt->pacf).get<saruma::PacfSeq>();
      emit(json(saruma::factor_pacf(b, opt->tol)), opt->out);
    });
  }

  // count-roots -------------------------------------------------------------
  {
    auto opt = std::make_shared<std::pair<std::string, std::string>>();
    auto* sub = app.add_subcommand(
        "count-roots", "Count roots inside the unit circle from reflection coefficients");
    sub->add_option("--pacf", opt->first, "PacfSeq JSON (stdin if omitted)");
    sub->add_option("--out", opt->second, "output path (stdout if omitted)");
    sub->callback([opt]() {
      const auto b = parse_json_arg(opt->first).get<saruma::PacfSeq>();
      emit(json(saruma::count_inside(b)), opt->second);
    });
  }

  // expand ------------------------------------------------------------------
  {
    struct Opt {
      std::string spec, out;
      double tol = 1e-6;
    };
    auto opt = std::make_shared<Opt>();
    auto* sub = app.add_subcommand("expand", "Expand a model spec to flat AR/MA polynomials");
    sub->add_option("--spec", opt->spec, "SarumaSpec JSON (stdin if omitted)");
    sub->add_option("--out", opt->out, "output path (stdout if omitted)");
    sub->add_option("--tol", opt->tol, "root-matching tolerance for validation");
    sub->callback([opt]() {
      const auto spec = parse_json_arg(opt->spec).get<saruma::SarumaSpec>();
      auto violations = saruma::validate(spec, opt->tol);
      if (!violations.empty()) throw saruma::ValidationError(std::move(violations));
      emit(json(saruma::expand_unchecked(spec)), opt->out);
    });
  }

  // validate ----------------------------------------------------------------
  {
    struct Opt {
      std::string spec, out;
      double tol = 1e-6;
    };
    auto opt = std::make_shared<Opt>();
    auto* sub = app.add_subcommand("validate", "List constraint violations of a model spec");
    sub->add_option("--spec", opt->spec, "SarumaSpec JSON (stdin if omitted)");
    sub->add_option("--out", opt->out, "output path (stdout if omitted)");
    sub->add_option("--tol", opt->tol, "root-matching tolerance");
    sub->callback([opt]() {
      const auto spec = parse_json_arg(opt->spec).get<saruma::SarumaSpec>();
      emit(json{{"violations", saruma::validate(spec, opt->tol)}}, opt->out);
    });
  }

  // simulate ------------------------------------------------------------------
  {
    struct Opt {
      std::string spec, out, innovations_out;
      std::size_t length = 0;
      double sigma = 1.0;
      std::uint64_t seed = 0;
      std::size_t burn_in = 0;
    };
    auto opt = std::make_shared<Opt>();
    auto* sub = app.add_subcommand("simulate", "Simulate a series from a model spec");
    sub->add_option("--spec", opt->spec, "SarumaSpec JSON (stdin if omitted)");
    sub->add_option("--length", opt->length, "number of observations")->required();
    sub->add_option("--sigma", opt->sigma, "innovation standard deviation");
    sub->add_option("--seed", opt->seed, "random seed");
    sub->add_option("--burn-in", opt->burn_in, "observations to discard");
    sub->add_option("--out", opt->out, "series CSV path (stdout if omitted)");
    sub->add_option("--innovations-out", opt->innovations_out,
                    "also write the innovations as CSV");
    sub->callback([opt]() {
      const auto spec = parse_json_arg(opt->spec).get<saruma::SarumaSpec>();
      const auto model = saruma::expand(spec);
      const auto sim = saruma::simulate_with_innovations(model, opt->length, opt->sigma,
                                                         opt->seed, opt->burn_in);
      if (opt->out.empty())
        saruma::write_csv(sim.series, std::cout);
      else
        saruma::write_csv(sim.series, opt->out);
      if (!opt->innovations_out.empty())
        saruma::write_csv(saruma::TimeSeries(sim.innovations), opt->innovations_out);
    });
  }

  // residuals -------------------------------------------------------------------
  {
    struct Opt {
      std::string spec, series, out;
    };
    auto opt = std::make_shared<Opt>();
    auto* sub = app.add_subcommand("residuals",
                                   "Conditional residuals of a series under a model spec");
    sub->add_option("--spec", opt->spec, "SarumaSpec JSON")->required();
    sub->add_option("--series", opt->series, "series CSV path (stdin if omitted)");
    sub->add_option("--out", opt->out, "output path (stdout if omitted)");
    sub->callback([opt]() {
      const auto spec = json::parse(opt->spec).get<saruma::SarumaSpec>();
      const auto model = saruma::expand(spec);
      const auto y = load_series(opt->series);
      emit(json(saruma::residuals(model, y)), opt->out);
    });
  }

  // fit ---------------------------------------------------------------------------
  {
    struct Opt {
      std::string template_json, series, out;
      std::size_t max_iter = 2000;
      double tol = 1e-8;
      std::size_t multistarts = 5;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<Opt>();
    auto* sub = app.add_subcommand("fit",
                                   "Least-squares estimation of free pacf slots");
    sub->add_option("--template", opt->template_json,
                    "FitTemplate JSON (stdin if omitted)");
    sub->add_option("--series", opt->series,
                    "series CSV path (overrides the template's data)");
    sub->add_option("--max-iter", opt->max_iter, "iteration cap per start");
    sub->add_option("--tol", opt->tol, "convergence tolerance");
    sub->add_option("--multistarts", opt->multistarts, "number of starts");
    sub->add_option("--seed", opt->seed, "seed for the random starts");
    sub->add_option("--out", opt->out, "output path (stdout if omitted)");
    sub->callback([opt]() {
      auto t = parse_json_arg(opt->template_json).get<saruma::FitTemplate>();
      if (!opt->series.empty()) t.data = saruma::read_csv(opt->series);
      const saruma::FitOptions fit_opts{opt->max_iter, opt->tol, opt->multistarts,
                                        opt->seed};
      emit(json(saruma::fit(t, fit_opts)), opt->out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const saruma::Error& e) {
    std::cerr << error_json(e).dump(2) << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "JsonParseError"}, {"message", e.what()}}.dump(2) << '\n';
    return 1;
  }
  return 0;
}
