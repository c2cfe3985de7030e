/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "data_model.hpp"
#include "regression.hpp"
#include "rotation.hpp"
#include "table.hpp"

namespace irga {

struct VarSpec {
  Index lags = 2;
  PartitionMode mode = PartitionMode::TvpsOnly;
  /// Variable order used for the recursive (Cholesky) structure; empty keeps
  /// the dataset order.
  std::vector<std::string> ordering;
  /// Variables reported by forecasts; empty reports all of them.
  std::vector<std::string> focus_names;
  /// Scale every window by full-dataset standard deviations instead of the
  /// window's own.
  bool full_sample_scaling = false;
};

struct EquationResult {
  Index equation = 0;
  std::string name;
  VarLayout layout;
  RegressionResult fit;
};

struct VarModel {
  std::vector<std::string> names;  // model order
  Index lags = 1;
  PartitionMode mode = PartitionMode::TvpsOnly;
  MatrixXd history;  // T x N estimation window, model order
  std::vector<std::string> periods;
  std::vector<EquationResult> equations;

  Index n_vars() const { return static_cast<Index>(names.size()); }
  int retained() const;
  Index variable(const std::string& name) const;
};

/// Estimates each equation of the recursive TVP-VAR independently. Equation j
/// uses seed derive_seed(seed, j, origin_tag), so results do not depend on the
/// worker count or on scheduling.
VarModel estimate_var(const Dataset& ds, const VarSpec& spec, const IrgaConfig& config,
                      std::uint64_t seed, int workers = 1, std::uint64_t origin_tag = 0,
                      const std::optional<VectorXd>& fixed_scales = {});

enum class VolatilityChoice { LastPeriod, TimeAverage };

/// Constant-coefficient VAR implied by one draw, on the data scale:
/// y_t = c + B0 y_t + sum_l A_l y_{t-l} + diag(sigma) e_t, B0 strictly lower.
struct VarCoefficients {
  VectorXd intercept;
  MatrixXd B0;
  std::vector<MatrixXd> A;
  VectorXd sigma_sq;
};

VarCoefficients coefficients_for_draw(const VarModel& model, int draw, VolatilityChoice vol);

/// Optional random TVP deviations over the forecast horizon; sd per column on
/// the standardized scale, indexed [equation][column].
struct FutureTvps {
  std::vector<VectorXd> sd;
  std::vector<VectorXd> inclusion;
  std::vector<VectorXd> col_scale;  // scale_y / scale_x per column
};

struct ForecastEnsemble {
  MatrixXd mean;      // H x N
  MatrixXd variance;  // H x N
};

/// Simulates one path per coefficient set from the last P rows of history.
ForecastEnsemble simulate_forecast(const std::vector<VarCoefficients>& draws, const MatrixXd& history,
                                   Index max_horizon, Rng& rng, const FutureTvps* tvps = nullptr);

struct ForecastRecord {
  std::string origin;  // last period of the estimation window
  Index horizon = 1;
  std::string variable;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> realized;
};

struct ForecastConfig {
  std::vector<Index> horizons{1, 12};
  int draws_per_forecast = 500;  // evenly spaced retained draws
  bool rolling = false;          // fixed-length window instead of expanding
  bool draw_future_tvps = false;
  int workers = 1;
  std::uint64_t seed = 1;
};

/// Periods of ds falling in "a..b" ("start"/"end" allowed).
std::vector<std::string> resolve_origins(const Dataset& ds, const std::string& range);

/// Re-estimates at every origin and records predictive moments per
/// variable and horizon on the data scale.
std::vector<ForecastRecord> forecast(const Dataset& ds, const VarSpec& spec, const IrgaConfig& config,
                                     const std::vector<std::string>& origins, const ForecastConfig& fc);

Table forecast_table(const std::vector<ForecastRecord>& records);

/// log N(realized; mean, variance).
double gaussian_log_score(double realized, double mean, double variance);

/// Per variable and horizon: count, RMSE and average log score over records
/// with realized values, plus RMSE ratio and log-score difference against the
/// baseline (NaN without one).
Table evaluate(const std::vector<ForecastRecord>& records,
               const std::vector<ForecastRecord>* baseline = nullptr);

/// Responses (H+1) x N to a one standard deviation structural shock in
/// variable `shock` under the recursive identification.
MatrixXd irf_from_coefficients(const VarCoefficients& c, Index shock, Index horizons);

/// Largest modulus of the companion matrix eigenvalues.
double companion_spectral_radius(const VarCoefficients& c);

struct IrfResult {
  std::vector<std::string> variables;
  std::string shock;
  MatrixXd median, lower, upper;  // (H+1) x N; 16th and 84th percentiles
  int draws = 0;
  int explosive_draws = 0;  // kept in the summaries

  /// Long format: horizon, variable, median, p16, p84.
  Table to_table() const;
};

/// Residual scales use the time-averaged variance of each equation.
IrfResult impulse_response(const VarModel& model, const std::string& shock, Index horizons);

}  // namespace irga
