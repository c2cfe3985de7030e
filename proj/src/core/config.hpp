/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "benchmark_ffbs.hpp"
#include "regression.hpp"
#include "tvp_var.hpp"

namespace irga {

/// Every user-settable option of a run. Keys are set as strings so that a
/// config file and command-line flags go through the same parser; flags are
/// applied after the file, so they win.
struct RunConfig {
  IrgaConfig irga;
  BenchmarkConfig benchmark;
  VarSpec var;
  ForecastConfig forecast;
  std::uint64_t seed = 1;
  int workers = 1;

  std::string data;
  std::string range;
  std::vector<std::string> vars;
  bool transform = true;

  std::string origins = "2005-01..end";
  std::string shock;
  Index irf_horizons = 36;

  std::vector<Index> sim_K{5, 10, 15, 20, 25};
  std::vector<double> sim_pbar{0.0, 0.25, 0.5, 0.75, 1.0};
  int reps = 20;
  Index sim_T = 500;
  bool per_coefficient_switch = false;
  bool run_benchmark = false;
  bool timing = false;

  std::string out;
  std::string format = "bin";  // draws: bin, csv or both

  void set(const std::string& key, const std::string& value);
  void validate() const;
  nlohmann::ordered_json to_json() const;

  static const std::vector<std::string>& keys();
};

/// key = value lines; '#' starts a comment, [section] headers are ignored,
/// values may be quoted and arrays are written [a, b, c].
void load_config_file(RunConfig& config, const std::filesystem::path& path);

std::vector<std::string> split_list(const std::string& text);

}  // namespace irga
