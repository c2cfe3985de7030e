/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Command-line front end. Talks to the library through the C API only.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irga/irga.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum class Verbosity { Quiet, Normal, Verbose };
Verbosity g_verbosity = Verbosity::Normal;

void log_info(const std::string& msg) {
  if (g_verbosity != Verbosity::Quiet) std::cerr << "irga: " << msg << '\n';
}

void log_debug(const std::string& msg) {
  if (g_verbosity == Verbosity::Verbose) std::cerr << "irga: " << msg << '\n';
}

struct Failure {
  irga_status status;
  std::string message;
};

void check(irga_status s) {
  if (s != IRGA_OK) throw Failure{s, irga_last_error()};
}

int exit_code(irga_status s) { return s == IRGA_ERR_NUMERICAL ? 2 : 1; }

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<irga_config, Deleter<irga_config, irga_config_destroy>>;
using DatasetPtr = std::unique_ptr<irga_dataset, Deleter<irga_dataset, irga_dataset_destroy>>;
using ModelPtr = std::unique_ptr<irga_var_model, Deleter<irga_var_model, irga_var_destroy>>;
using TablePtr = std::unique_ptr<irga_table, Deleter<irga_table, irga_table_destroy>>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  irga_string_free(s);
  return out;
}

json config_json(const irga_config* cfg) {
  char* text = nullptr;
  check(irga_config_to_json(cfg, &text));
  return json::parse(take_string(text));
}

json table_json(const irga_table* t) {
  char* text = nullptr;
  check(irga_table_to_json(t, &text));
  return json::parse(take_string(text));
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{IRGA_ERR_IO, "[cli] cannot write '" + path.string() + "'"};
  out << j.dump(2) << '\n';
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const std::set<std::string> kBooleanKeys{"sv",     "full_sample_scaling", "transform", "rolling",
                                         "future_tvps", "paper_scale", "per_coefficient_switch",
                                         "benchmark", "timing"};

std::string describe(const std::string& key) {
  static const std::map<std::string, std::string> help{
      {"prior", "TVP prior: ss (spike-and-slab) or sbl"},
      {"q", "spike-and-slab inclusion probability"},
      {"psi", "spike-and-slab slab variance"},
      {"a_psi", "SBL Gamma shape"},
      {"b_psi", "SBL Gamma rate"},
      {"sbl_initial_psi", "SBL starting variance"},
      {"vartheta", "Normal-Gamma local shape"},
      {"d0", "Normal-Gamma global shape"},
      {"d1", "Normal-Gamma global rate"},
      {"sigma_shape", "error variance prior shape"},
      {"sigma_rate", "error variance prior rate"},
      {"covariance", "nuisance covariance in the projected system: denoiser or lmmse"},
      {"sv", "stochastic volatility"},
      {"sv_smoothing", "log-volatility smoothing window"},
      {"tol", "VAMP relative tolerance"},
      {"max_iter", "VAMP iteration cap"},
      {"damping", "VAMP damping factor"},
      {"draws", "total MCMC draws"},
      {"burnin", "discarded MCMC draws"},
      {"seed", "master seed"},
      {"workers", "worker threads, 0 = all cores"},
      {"lags", "VAR lag order"},
      {"mode", "partition mode: tvps or tvps-lag"},
      {"vars", "variables in recursive order"},
      {"focus", "variables whose coefficients are sampled exactly"},
      {"full_sample_scaling", "scale by full-sample SDs in forecasting"},
      {"data", "FRED-MD style CSV"},
      {"range", "sample, e.g. 2000-01..2019-12"},
      {"transform", "apply the transformation codes"},
      {"origins", "forecast origins, e.g. 2005-01..end"},
      {"horizons", "forecast horizons, e.g. 1,12"},
      {"draws_per_forecast", "posterior draws simulated per origin"},
      {"rolling", "rolling instead of expanding window"},
      {"future_tvps", "draw future TVP innovations"},
      {"shock", "shocked variable for impulse responses"},
      {"irf_horizons", "impulse response horizon"},
      {"K", "simulation regressor counts, e.g. 5,25"},
      {"pbar", "simulation probabilities that a period carries TVPs"},
      {"reps", "replications per cell"},
      {"paper_scale", "100 replications per cell"},
      {"T", "simulated sample length"},
      {"per_coefficient_switch", "draw the TVP switch per coefficient"},
      {"benchmark", "also run the random-walk FFBS benchmark"},
      {"timing", "run the timing experiment instead of MAE"},
      {"benchmark_kappa", "benchmark initial-state variance"},
      {"out", "output directory (default $IRGA_OUT_DIR or irga_out)"},
      {"format", "draws format: bin, csv or both"}};
  const auto it = help.find(key);
  return it == help.end() ? std::string() : it->second;
}

struct Invocation {
  std::string subcommand;
  std::string config_file;
  std::map<std::string, std::string> values;
};

void register_keys(CLI::App* sub, Invocation& inv) {
  sub->add_option("--config", inv.config_file, "key = value config file; flags override it");
  for (std::size_t i = 0; i < irga_config_key_count(); ++i) {
    const std::string key = irga_config_key(i);
    std::string* slot = &inv.values[key];
    std::string names = "--" + key;
    if (key.find('_') != std::string::npos) {
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      names += ",--" + dashed;
    }
    if (kBooleanKeys.count(key)) {
      sub->add_flag(names, *slot, describe(key) + " (--" + key + "=false to disable)");
    } else {
      sub->add_option(names, *slot, describe(key));
    }
  }
}

struct Run {
  ConfigPtr cfg;
  json config;
  fs::path out;
  std::string started;
  std::chrono::steady_clock::time_point t0;
  json outputs = json::array();
};

Run start_run(const Invocation& inv, const CLI::App* sub) {
  irga_config* raw = nullptr;
  check(irga_config_create(&raw));
  Run run{ConfigPtr(raw), {}, {}, utc_now(), std::chrono::steady_clock::now()};
  if (const char* env = std::getenv("IRGA_OUT_DIR"); env && *env) check(irga_config_set(raw, "out", env));
  if (!inv.config_file.empty()) check(irga_config_load_file(raw, inv.config_file.c_str()));
  for (const auto& [key, value] : inv.values) {
    if (sub->get_option("--" + key)->count() > 0) check(irga_config_set(raw, key.c_str(), value.c_str()));
  }
  check(irga_config_validate(raw));
  run.config = config_json(raw);
  std::string out = run.config["out"].get<std::string>();
  if (out.empty()) out = "irga_out";
  run.out = out;
  fs::create_directories(run.out);
  log_debug("config " + run.config.dump());
  return run;
}

void finish_run(Run& run, const std::string& subcommand) {
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - run.t0).count();
  json m;
  m["subcommand"] = subcommand;
  m["seed"] = run.config["seed"];
  m["workers"] = run.config["workers"];
  m["versions"] = {{"irga", irga_version()}, {"manifest", 1}};
  m["config"] = run.config;
  m["outputs"] = run.outputs;
  m["wall_clock"] = {{"started_utc", run.started}, {"seconds", seconds}};
  write_json(run.out / "manifest.json", m);
  log_info(subcommand + " finished in " + std::to_string(seconds) + " s, outputs in " + run.out.string());
}

void save_table(Run& run, const irga_table* t, const std::string& name) {
  check(irga_table_write_csv(t, (run.out / name).string().c_str()));
  run.outputs.push_back(name);
}

DatasetPtr prepare(const Run& run) {
  irga_dataset* raw = nullptr;
  check(irga_dataset_prepare(run.cfg.get(), &raw));
  DatasetPtr ds(raw);
  std::size_t rows = 0, cols = 0;
  check(irga_dataset_dims(raw, &rows, &cols));
  log_info("data: " + std::to_string(rows) + " periods x " + std::to_string(cols) + " variables");
  return ds;
}

ModelPtr estimate_model(const Run& run, const irga_dataset* ds) {
  irga_var_model* raw = nullptr;
  check(irga_var_estimate(ds, run.cfg.get(), &raw));
  return ModelPtr(raw);
}

void cmd_simulate(Run& run) {
  irga_table* raw = nullptr;
  const bool timing = run.config["timing"].get<bool>();
  if (timing) {
    log_info("timing experiment");
    check(irga_timing(run.cfg.get(), &raw));
  } else {
    log_info("MAE experiment, " + std::to_string(run.config["reps"].get<int>()) + " replications per cell");
    check(irga_simulate(run.cfg.get(), &raw));
  }
  TablePtr t(raw);
  const std::string stem = timing ? "timing" : "mae";
  save_table(run, t.get(), stem + ".csv");
  write_json(run.out / "metrics.json", table_json(t.get()));
  run.outputs.push_back("metrics.json");
}

void cmd_estimate(Run& run) {
  DatasetPtr ds = prepare(run);
  ModelPtr model = estimate_model(run, ds.get());
  char* files = nullptr;
  check(irga_var_write_draws(model.get(), run.cfg.get(), run.out.string().c_str(), &files));
  const json listing = json::parse(take_string(files));
  for (const auto& f : listing) {
    if (f.contains("binary")) run.outputs.push_back(f["binary"]);
    if (f.contains("csv")) run.outputs.push_back(f["csv"]);
  }
  write_json(run.out / "draws.json", listing);
  run.outputs.push_back("draws.json");
  char* summary = nullptr;
  check(irga_var_summary_json(model.get(), &summary));
  write_json(run.out / "metrics.json", json::parse(take_string(summary)));
  run.outputs.push_back("metrics.json");
}

void cmd_forecast(Run& run) {
  DatasetPtr ds = prepare(run);
  irga_table* raw = nullptr;
  check(irga_forecast(ds.get(), run.cfg.get(), &raw));
  TablePtr records(raw);
  save_table(run, records.get(), "forecasts.csv");
  irga_table* ev = nullptr;
  check(irga_evaluate(records.get(), nullptr, &ev));
  TablePtr metrics(ev);
  save_table(run, metrics.get(), "metrics.csv");
  write_json(run.out / "metrics.json", table_json(metrics.get()));
  run.outputs.push_back("metrics.json");
}

void cmd_irf(Run& run) {
  const std::string shock = run.config["shock"].get<std::string>();
  if (shock.empty()) throw Failure{IRGA_ERR_CONFIG, "[cli] irf needs --shock"};
  DatasetPtr ds = prepare(run);
  ModelPtr model = estimate_model(run, ds.get());
  irga_table* raw = nullptr;
  check(irga_var_irf(model.get(), shock.c_str(), run.config["irf_horizons"].get<int>(), &raw));
  TablePtr t(raw);
  save_table(run, t.get(), "irf.csv");
  char* summary = nullptr;
  check(irga_var_summary_json(model.get(), &summary));
  write_json(run.out / "metrics.json", json::parse(take_string(summary)));
  run.outputs.push_back("metrics.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TVP regressions and TVP-VARs by integrated rotated Gaussian approximation"};
  app.set_version_flag("--version", irga_version());
  bool quiet = false;
  bool verbose = false;
  app.add_flag("-q,--quiet", quiet, "only report errors");
  app.add_flag("-v,--verbose", verbose, "also print the resolved config");
  app.require_subcommand(1);

  Invocation inv;
  std::map<std::string, CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "Monte Carlo MAE or timing experiment on synthetic TVP regressions"},
      {"estimate", "estimate a TVP-VAR and write posterior draws"},
      {"forecast", "recursive out-of-sample forecasts with RMSE and log predictive scores"},
      {"irf", "impulse responses under recursive identification"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    register_keys(sub, inv);
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }
  g_verbosity = quiet ? Verbosity::Quiet : (verbose ? Verbosity::Verbose : Verbosity::Normal);

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      Run run = start_run(inv, sub);
      if (name == "simulate") cmd_simulate(run);
      if (name == "estimate") cmd_estimate(run);
      if (name == "forecast") cmd_forecast(run);
      if (name == "irf") cmd_irf(run);
      finish_run(run, name);
      return 0;
    } catch (const Failure& f) {
      std::cerr << "irga: error: " << f.message << '\n';
      if (f.status == IRGA_ERR_CONFIG) std::cerr << "run 'irga " << name << " --help' for the options\n";
      return exit_code(f.status);
    } catch (const std::exception& e) {
      std::cerr << "irga: error: [cli] " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}
