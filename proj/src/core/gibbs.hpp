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

#include "priors.hpp"
#include "rng.hpp"
#include "rotation.hpp"
#include "vamp.hpp"

namespace irga {

/// Which nuisance covariance enters Omega_Q1.
enum class NuisanceCovariance {
  Lmmse,     // the correlated LMMSE-stage covariance of the VAMP approximation
  Denoiser,  // diagonal of separable denoiser variances
};

NuisanceCovariance parse_nuisance_covariance(const std::string& text);
std::string to_string(NuisanceCovariance mode);

/// The whitened focus regression: y~ = P^-1 (y1 - W1 mu) on X~ = P^-1 A1,
/// where P is the lower Cholesky factor of Omega_Q1.
struct ProjectedSystem {
  MatrixXd omega;
  MatrixXd chol_lower;
  VectorXd y_tilde;
  MatrixXd X_tilde;
  MatrixXd xtx;  // X~' X~
  VectorXd xty;  // X~' y~
  double jitter = 0.0;

  Index dim() const { return X_tilde.cols(); }
};

ProjectedSystem build_projected_system(const RotatedSystem& rs, const GaussianApprox& ga,
                                       NuisanceCovariance mode = NuisanceCovariance::Lmmse);

struct BetaMoments {
  VectorXd mean;
  MatrixXd cov;
};

/// V = (X~'X~ + Lambda^-1)^-1, mu = V X~'y~ for a diagonal prior variance.
BetaMoments beta_conditional_moments(const ProjectedSystem& ps, const VectorXd& prior_var);

VectorXd draw_beta(const ProjectedSystem& ps, const VectorXd& prior_var, Rng& rng);

struct McmcConfig {
  int draws = 15000;
  int burn_in = 10000;
  /// When false, tau^2 and lambda stay at their initial values.
  bool update_shrinkage = true;
  void validate() const;
};

struct PosteriorDraws {
  MatrixXd beta;    // retained x K_f
  MatrixXd tau_sq;  // retained x K_f
  VectorXd lambda;  // retained
  std::uint64_t seed = 0;
  int total = 0;
  int burn_in = 0;

  int retained() const { return static_cast<int>(beta.rows()); }
  VectorXd beta_mean() const;
};

/// Steps 2-4 of the sampler, conditional on a completed nuisance approximation.
/// Initial state: lambda = 1, tau^2 = 1, beta at the ridge solution.
PosteriorDraws run_sampler(const ProjectedSystem& ps, const NormalGammaPrior& prior,
                           const McmcConfig& config, Rng& rng, std::uint64_t seed = 0);

}  // namespace irga
