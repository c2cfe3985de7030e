/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "data_model.hpp"
#include "gibbs.hpp"
#include "rng.hpp"

namespace irga {

/// y_t = x_t' b_t + e_t, e_t ~ N(0, sigma^2); b_t = b_{t-1} + u_t, u_t ~ N(0, diag(w));
/// b_1 ~ N(0, kappa I).
struct StateSpaceModel {
  MatrixXd X;  // T x K, row t is x_t'
  VectorXd w;
  double sigma_sq = 1.0;
  double kappa = 10.0;

  Index T() const { return X.rows(); }
  Index K() const { return X.cols(); }
  void validate() const;
};

struct SmoothedStates {
  MatrixXd mean;             // T x K
  std::vector<MatrixXd> cov;  // T blocks of K x K
};

/// Forward Kalman filter followed by the Rauch-Tung-Striebel backward pass.
SmoothedStates kalman_smoother(const StateSpaceModel& m, const VectorXd& y);

/// Carter-Kohn joint draw of the state path (T x K).
MatrixXd ffbs_draw(const StateSpaceModel& m, const VectorXd& y, Rng& rng);

struct BenchmarkConfig {
  McmcConfig mcmc;
  double shape = 0.01;  // inverse-Gamma priors on w_j and sigma^2
  double rate = 0.01;
  double kappa = 10.0;
};

struct BenchmarkDraws {
  MatrixXd beta_bar;  // retained x K: time average of each state path
  MatrixXd w;         // retained x K
  VectorXd sigma_sq;  // retained
  MatrixXd state_mean;  // T x K posterior mean path

  VectorXd beta_mean() const { return beta_bar.colwise().mean().transpose(); }
};

/// Gibbs sampler alternating FFBS for the states and inverse-Gamma updates
/// of the variances, on the standardized scale.
BenchmarkDraws benchmark_estimate(const StandardizedRegression& sr, const BenchmarkConfig& config,
                                  Rng& rng);

/// Raw-scale posterior mean of the time-averaged coefficients.
VectorXd benchmark_constant_coefficients(const VectorXd& y, const MatrixXd& X,
                                         const BenchmarkConfig& config, std::uint64_t seed);

}  // namespace irga
