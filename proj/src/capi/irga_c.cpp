/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "irga/irga.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "data_model.hpp"
#include "draws_io.hpp"
#include "error.hpp"
#include "sim.hpp"
#include "table.hpp"
#include "tvp_var.hpp"

struct irga_config {
  irga::RunConfig run;
};

struct irga_dataset {
  irga::Dataset data;
};

struct irga_var_model {
  irga::VarModel model;
};

struct irga_table {
  irga::Table table;
  std::optional<std::vector<irga::ForecastRecord>> records;
};

namespace {

thread_local std::string g_last_error;

irga_status status_for(irga::ErrorKind kind) {
  switch (kind) {
    case irga::ErrorKind::Config: return IRGA_ERR_CONFIG;
    case irga::ErrorKind::Numerical: return IRGA_ERR_NUMERICAL;
    case irga::ErrorKind::Io: return IRGA_ERR_IO;
  }
  return IRGA_ERR_CONFIG;
}

template <typename F>
irga_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return IRGA_OK;
  } catch (const irga::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "[capi] out of memory";
    return IRGA_ERR_NUMERICAL;
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = std::string("[io] ") + e.what();
    return IRGA_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = std::string("[capi] ") + e.what();
    return IRGA_ERR_NUMERICAL;
  }
}

irga_status invalid(const char* what) {
  g_last_error = std::string("[capi] invalid argument: ") + what;
  return IRGA_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string file_safe(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return out;
}

std::vector<std::string> column_labels(const irga::VarModel& m, const irga::EquationResult& eq) {
  std::vector<std::string> labels{"const"};
  for (irga::Index l = 1; l <= m.lags; ++l) {
    for (const auto& n : m.names) labels.push_back(n + ".L" + std::to_string(l));
  }
  for (irga::Index i = 0; i < eq.equation; ++i) labels.push_back(m.names[static_cast<std::size_t>(i)] + ".t");
  return labels;
}

}  // namespace

extern "C" {

const char* irga_version(void) { return "0.1.0"; }

const char* irga_last_error(void) { return g_last_error.c_str(); }

void irga_string_free(char* s) { std::free(s); }

irga_status irga_config_create(irga_config** out) {
  if (!out) return invalid("out is NULL");
  return guarded([&] { *out = new irga_config(); });
}

void irga_config_destroy(irga_config* cfg) { delete cfg; }

irga_status irga_config_set(irga_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return invalid("NULL config, key or value");
  return guarded([&] { cfg->run.set(key, value); });
}

irga_status irga_config_load_file(irga_config* cfg, const char* path) {
  if (!cfg || !path) return invalid("NULL config or path");
  return guarded([&] { irga::load_config_file(cfg->run, path); });
}

irga_status irga_config_validate(const irga_config* cfg) {
  if (!cfg) return invalid("config is NULL");
  return guarded([&] { cfg->run.validate(); });
}

irga_status irga_config_to_json(const irga_config* cfg, char** out_json) {
  if (!cfg || !out_json) return invalid("NULL config or out");
  return guarded([&] { *out_json = dup_string(cfg->run.to_json().dump(2)); });
}

size_t irga_config_key_count(void) { return irga::RunConfig::keys().size(); }

const char* irga_config_key(size_t index) {
  const auto& keys = irga::RunConfig::keys();
  return index < keys.size() ? keys[index].c_str() : nullptr;
}

irga_status irga_dataset_load_fred(const char* path, const char* range, irga_dataset** out) {
  if (!path || !out) return invalid("NULL path or out");
  return guarded([&] {
    const irga::PeriodRange r = (range && *range) ? irga::parse_period_range(range) : irga::PeriodRange{};
    *out = new irga_dataset{irga::load_fred_csv(path, r)};
  });
}

irga_status irga_dataset_select(const irga_dataset* ds, const char* const* names, size_t n, irga_dataset** out) {
  if (!ds || (!names && n > 0) || !out) return invalid("NULL dataset, names or out");
  return guarded([&] {
    std::vector<std::string> sel(names, names + n);
    *out = new irga_dataset{ds->data.select(sel)};
  });
}

irga_status irga_dataset_transform(const irga_dataset* ds, irga_dataset** out) {
  if (!ds || !out) return invalid("NULL dataset or out");
  return guarded([&] { *out = new irga_dataset{irga::apply_transforms(ds->data)}; });
}

irga_status irga_dataset_prepare(const irga_config* cfg, irga_dataset** out) {
  if (!cfg || !out) return invalid("NULL config or out");
  return guarded([&] {
    const irga::RunConfig& rc = cfg->run;
    if (rc.data.empty()) irga::throw_config("capi", "no data file configured (key 'data')");
    const irga::PeriodRange r = rc.range.empty() ? irga::PeriodRange{} : irga::parse_period_range(rc.range);
    irga::Dataset d = irga::load_fred_csv(rc.data, r);
    if (!rc.vars.empty()) d = d.select(rc.vars);
    if (rc.transform) d = irga::apply_transforms(d);
    *out = new irga_dataset{std::move(d)};
  });
}

irga_status irga_dataset_dims(const irga_dataset* ds, size_t* rows, size_t* cols) {
  if (!ds || !rows || !cols) return invalid("NULL dataset or out");
  *rows = static_cast<size_t>(ds->data.rows());
  *cols = static_cast<size_t>(ds->data.cols());
  return IRGA_OK;
}

irga_status irga_dataset_write_csv(const irga_dataset* ds, const char* path) {
  if (!ds || !path) return invalid("NULL dataset or path");
  return guarded([&] { irga::write_dataset_csv(ds->data, path); });
}

void irga_dataset_destroy(irga_dataset* ds) { delete ds; }

irga_status irga_var_estimate(const irga_dataset* ds, const irga_config* cfg, irga_var_model** out) {
  if (!ds || !cfg || !out) return invalid("NULL dataset, config or out");
  return guarded([&] {
    const irga::RunConfig& rc = cfg->run;
    rc.validate();
    *out = new irga_var_model{irga::estimate_var(ds->data, rc.var, rc.irga, rc.seed, rc.workers)};
  });
}

irga_status irga_var_equation_count(const irga_var_model* m, size_t* n) {
  if (!m || !n) return invalid("NULL model or out");
  *n = m->model.equations.size();
  return IRGA_OK;
}

irga_status irga_var_draw_dims(const irga_var_model* m, size_t equation, size_t* rows, size_t* cols) {
  if (!m || !rows || !cols) return invalid("NULL model or out");
  if (equation >= m->model.equations.size()) return invalid("equation index out of range");
  const auto& d = m->model.equations[equation].fit.draws.beta;
  *rows = static_cast<size_t>(d.rows());
  *cols = static_cast<size_t>(d.cols());
  return IRGA_OK;
}

irga_status irga_var_write_draws(const irga_var_model* m, const irga_config* cfg, const char* dir,
                                 char** out_json) {
  if (!m || !cfg || !dir) return invalid("NULL model, config or directory");
  return guarded([&] {
    const std::filesystem::path root(dir);
    const std::string& format = cfg->run.format;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& eq : m->model.equations) {
      const auto labels = column_labels(m->model, eq);
      std::vector<std::string> focus;
      for (irga::Index c : eq.fit.partition.focus) focus.push_back(labels[static_cast<std::size_t>(c)]);
      const std::string stem = "draws_eq" + std::to_string(eq.equation) + "_" + file_safe(eq.name);
      nlohmann::ordered_json entry;
      entry["equation"] = eq.equation;
      entry["name"] = eq.name;
      entry["rows"] = eq.fit.draws.beta.rows();
      entry["cols"] = eq.fit.draws.beta.cols();
      entry["columns"] = focus;
      if (format == "bin" || format == "both") {
        irga::write_draws_binary(eq.fit.draws.beta, root / (stem + ".bin"));
        entry["binary"] = stem + ".bin";
      }
      if (format == "csv" || format == "both") {
        irga::write_draws_csv(eq.fit.draws.beta, focus, root / (stem + ".csv"));
        entry["csv"] = stem + ".csv";
      }
      files.push_back(std::move(entry));
    }
    if (out_json) *out_json = dup_string(files.dump(2));
  });
}

irga_status irga_var_summary_json(const irga_var_model* m, char** out_json) {
  if (!m || !out_json) return invalid("NULL model or out");
  return guarded([&] {
    nlohmann::ordered_json eqs = nlohmann::ordered_json::array();
    for (const auto& eq : m->model.equations) {
      const auto& fit = eq.fit;
      const auto labels = column_labels(m->model, eq);
      const irga::VectorXd mean = fit.raw_posterior_mean();
      nlohmann::ordered_json coef;
      for (irga::Index c = 0; c < mean.size(); ++c) coef[labels[static_cast<std::size_t>(c)]] = mean(c);
      nlohmann::ordered_json e;
      e["equation"] = eq.equation;
      e["name"] = eq.name;
      e["focus_columns"] = fit.partition.focus.size();
      e["demoted_columns"] = fit.partition.nuisance.size();
      e["retained_draws"] = fit.draws.retained();
      e["sigma_eps_sq"] = fit.approx.sigma_eps_sq;
      e["vamp_iterations"] = fit.approx.iterations;
      e["vamp_converged"] = fit.approx.converged;
      e["vamp_damping"] = fit.approx.damping_used;
      e["omega_jitter"] = fit.omega_jitter;
      e["sv_zero_floors"] = fit.approx.eta_zero_floors;
      e["posterior_mean"] = coef;
      eqs.push_back(std::move(e));
    }
    nlohmann::ordered_json j;
    j["variables"] = m->model.names;
    j["lags"] = m->model.lags;
    j["mode"] = irga::to_string(m->model.mode);
    j["first_period"] = m->model.periods.front();
    j["last_period"] = m->model.periods.back();
    j["equations"] = eqs;
    *out_json = dup_string(j.dump(2));
  });
}

irga_status irga_var_irf(const irga_var_model* m, const char* shock, int horizons, irga_table** out) {
  if (!m || !shock || !out) return invalid("NULL model, shock or out");
  return guarded([&] {
    const irga::IrfResult r = irga::impulse_response(m->model, shock, horizons);
    *out = new irga_table{r.to_table(), std::nullopt};
  });
}

void irga_var_destroy(irga_var_model* m) { delete m; }

irga_status irga_forecast(const irga_dataset* ds, const irga_config* cfg, irga_table** out_records) {
  if (!ds || !cfg || !out_records) return invalid("NULL dataset, config or out");
  return guarded([&] {
    const irga::RunConfig& rc = cfg->run;
    rc.validate();
    irga::ForecastConfig fc = rc.forecast;
    fc.seed = rc.seed;
    fc.workers = rc.workers;
    const auto origins = irga::resolve_origins(ds->data, rc.origins);
    auto records = irga::forecast(ds->data, rc.var, rc.irga, origins, fc);
    auto* t = new irga_table{irga::forecast_table(records), std::move(records)};
    *out_records = t;
  });
}

irga_status irga_evaluate(const irga_table* records, const irga_table* baseline, irga_table** out) {
  if (!records || !out) return invalid("NULL records or out");
  if (!records->records || (baseline && !baseline->records)) return invalid("tables must come from irga_forecast");
  return guarded([&] {
    *out = new irga_table{irga::evaluate(*records->records, baseline ? &*baseline->records : nullptr), std::nullopt};
  });
}

irga_status irga_simulate(const irga_config* cfg, irga_table** out) {
  if (!cfg || !out) return invalid("NULL config or out");
  return guarded([&] {
    const irga::RunConfig& rc = cfg->run;
    rc.validate();
    irga::MaeExperimentConfig mc;
    mc.K_grid = rc.sim_K;
    mc.p_grid = rc.sim_pbar;
    mc.replications = rc.reps;
    mc.seed = rc.seed;
    mc.workers = rc.workers;
    mc.dgp.T = rc.sim_T;
    mc.dgp.per_coefficient_switch = rc.per_coefficient_switch;
    mc.panels = {{irga::to_string(rc.irga.prior), rc.irga}};
    mc.run_benchmark = rc.run_benchmark;
    mc.benchmark = rc.benchmark;
    *out = new irga_table{irga::mae_experiment(mc), std::nullopt};
  });
}

irga_status irga_timing(const irga_config* cfg, irga_table** out) {
  if (!cfg || !out) return invalid("NULL config or out");
  return guarded([&] {
    const irga::RunConfig& rc = cfg->run;
    rc.validate();
    irga::TimingConfig tc;
    tc.K_grid = rc.sim_K;
    tc.draws = rc.irga.mcmc.draws;
    tc.burn_in = rc.irga.mcmc.burn_in;
    tc.T = rc.sim_T;
    tc.seed = rc.seed;
    tc.irga = rc.irga;
    tc.benchmark = rc.benchmark;
    *out = new irga_table{irga::timing_experiment(tc), std::nullopt};
  });
}

irga_status irga_table_dims(const irga_table* t, size_t* rows, size_t* cols) {
  if (!t || !rows || !cols) return invalid("NULL table or out");
  *rows = t->table.rows.size();
  *cols = t->table.columns.size();
  return IRGA_OK;
}

const char* irga_table_column_name(const irga_table* t, size_t col) {
  if (!t || col >= t->table.columns.size()) return nullptr;
  return t->table.columns[col].c_str();
}

irga_status irga_table_number(const irga_table* t, size_t row, size_t col, double* out) {
  if (!t || !out) return invalid("NULL table or out");
  if (row >= t->table.rows.size() || col >= t->table.columns.size()) return invalid("cell out of range");
  return guarded([&] { *out = t->table.number(row, t->table.columns[col]); });
}

irga_status irga_table_text(const irga_table* t, size_t row, size_t col, char** out) {
  if (!t || !out) return invalid("NULL table or out");
  if (row >= t->table.rows.size() || col >= t->table.columns.size()) return invalid("cell out of range");
  return guarded([&] { *out = dup_string(t->table.text(row, col)); });
}

irga_status irga_table_write_csv(const irga_table* t, const char* path) {
  if (!t || !path) return invalid("NULL table or path");
  return guarded([&] { t->table.write_csv(path); });
}

irga_status irga_table_to_json(const irga_table* t, char** out_json) {
  if (!t || !out_json) return invalid("NULL table or out");
  return guarded([&] { *out_json = dup_string(t->table.to_json().dump(2)); });
}

void irga_table_destroy(irga_table* t) { delete t; }

}  // extern "C"
