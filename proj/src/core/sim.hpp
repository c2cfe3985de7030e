/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "benchmark_ffbs.hpp"
#include "regression.hpp"
#include "rng.hpp"
#include "table.hpp"

namespace irga {

struct DgpConfig {
  Index K = 5;
  double p_bar = 0.0;
  Index T = 500;
  double sigma_eps = 0.1;
  double tvp_sd = 0.5;
  /// Draw the change indicator per (i, t) instead of once per period.
  bool per_coefficient_switch = false;
  void validate() const;
};

struct SimData {
  VectorXd y;
  MatrixXd X;       // T x K
  VectorXd beta;    // K
  MatrixXd gamma;   // T x K
  std::vector<int> active;  // s_t (or row-major s_it with per-coefficient switching)
};

/// beta ~ N(0, I), x_t ~ N(0, I), s_t ~ Bernoulli(p_bar),
/// gamma_it ~ N(0, s_t tvp_sd^2), y_t = x_t'(beta + gamma_t) + N(0, sigma_eps^2).
SimData generate(const DgpConfig& config, Rng& rng);

double mean_absolute_error(const VectorXd& estimate, const VectorXd& truth);

/// Mean over replications of MAE(a_r, truth_r) / MAE(b_r, truth_r).
double mae_ratio(const std::vector<VectorXd>& a, const std::vector<VectorXd>& b,
                 const std::vector<VectorXd>& truth);

struct MaePanel {
  std::string name;
  IrgaConfig irga;
};

struct MaeExperimentConfig {
  std::vector<Index> K_grid{5, 10, 15, 20, 25};
  std::vector<double> p_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  int replications = 20;
  std::uint64_t seed = 1;
  int workers = 1;
  DgpConfig dgp;  // K and p_bar are taken from the grids
  std::vector<MaePanel> panels;
  /// When false only the IRGA arm runs and the ratio columns are NaN.
  bool run_benchmark = true;
  BenchmarkConfig benchmark;
};

/// Columns: panel, K, p_bar, reps, mae_irga, mae_benchmark, ratio.
/// Every replication's dataset depends only on (seed, K, p_bar, replication),
/// so panels are compared on the same data and share one benchmark run.
Table mae_experiment(const MaeExperimentConfig& config);

struct TimingConfig {
  std::vector<Index> K_grid{5, 10, 15, 20, 25};
  int draws = 15000;
  int burn_in = 10000;
  double p_bar = 0.5;
  Index T = 500;
  std::uint64_t seed = 1;
  IrgaConfig irga;
  bool run_benchmark = true;
  BenchmarkConfig benchmark;
};

/// Wall-clock seconds per method and K, measured on one thread.
/// Columns: K, draws, irga_seconds, benchmark_seconds.
Table timing_experiment(const TimingConfig& config);

}  // namespace irga
