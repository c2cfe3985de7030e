/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "linear_operator.hpp"
#include "priors.hpp"
#include "sv.hpp"

namespace irga {

struct VampConfig {
  double tol = 1e-6;
  int max_iter = 500;
  double damping = 0.8;
  int max_damping_halvings = 4;
  double divergence_norm = 1e6;
  /// Known measurement variance. When unset it is learned by EM inside the loop.
  std::optional<double> noise_var;
  /// Starting noise variance as a fraction of mean(y^2) when it is learned.
  double initial_noise_fraction = 0.5;
  bool sbl_update = true;
  double initial_precision = 1e-6;
  double min_precision = 1e-11;
  double max_precision = 1e11;
};

/// Prior assignment for the coefficient range [begin, end).
struct PriorBlock {
  Index begin = 0;
  Index end = 0;
  NuisancePrior prior;
};

/// Where the SV process sits in the nuisance vector, if it is modelled.
struct SvSpec {
  Index eta_begin = 0;
  Index eta_len = 0;
  SvOptions options;
};

/// Gaussian approximation N(mu, V) of the nuisance posterior. V is the
/// LMMSE-stage covariance (gamma_w W'W + gamma_2 I)^-1, represented through
/// the eigendecomposition W W' = U diag(lambda) U'; it is never formed.
struct GaussianApprox {
  VectorXd mu;
  VectorXd var_lmmse;     // diag(V)
  VectorXd var_denoiser;  // separable posterior variances
  VectorXd incl_prob;     // slab weights; 1 for conditionally Gaussian blocks
  double lmmse_precision = 0.0;
  double noise_precision = 0.0;
  MatrixXd gram_eigvecs;
  VectorXd gram_eigvals;
  bool zero_covariance = false;  // V = 0 (nuisance treated as known)

  double sigma_eps_sq = 0.0;
  VectorXd h_hat;      // empty unless SV is modelled
  VectorXd total_var;  // exp(h_t) + sigma_eps^2 when SV is modelled
  Index eta_zero_floors = 0;

  int iterations = 0;
  bool converged = false;
  double damping_used = 0.0;
  std::vector<double> trace;  // relative change per iteration

  Index size() const { return mu.size(); }
};

/// Plain Gaussian approximation with known mean and zero covariance.
GaussianApprox known_nuisance(const VectorXd& mu, double sigma_eps_sq);

/// Two-stage VAMP (separable denoiser / spectral LMMSE) with Onsager-corrected
/// extrinsic messages, damping of both messages and optional EM
/// learning of the noise precision.
class VampSolver {
 public:
  VampSolver(const LinearOperator& W, VectorXd y, std::vector<PriorBlock> blocks,
             VampConfig config);

  /// One iteration; returns ||theta^(n) - theta^(n-1)|| / max(1, ||theta^(n-1)||).
  double step();
  /// Iterates to tolerance, halving the damping and restarting on divergence.
  bool run();

  const VectorXd& estimate() const { return x1_; }
  double noise_precision() const { return gamma_w_; }
  GaussianApprox approximation() const;
  int iterations() const { return iter_; }
  double damping() const { return rho_; }
  const std::vector<double>& trace() const { return trace_; }

 private:
  void reset();
  void denoise();

  const LinearOperator& W_;
  VectorXd y_;
  std::vector<PriorBlock> blocks_;
  VampConfig config_;

  MatrixXd U_;
  VectorXd lambda_;
  Index n_ = 0;
  Index m_ = 0;

  VectorXd r1_, r2_, x1_, var1_, incl_, psi_;
  double gamma1_ = 0.0;
  double gamma2_ = 0.0;
  double gamma_w_ = 1.0;
  double rho_ = 1.0;
  int iter_ = 0;
  bool converged_ = false;
  std::vector<double> trace_;
};

/// Posterior-mean plug-in for sigma_eps^2 from the complement regression:
/// (rate + ||y2 - W2 theta||^2 / 2) / (shape + n/2 - 1).
double estimate_sigma_eps(const VectorXd& y2, const LinearOperator& W2, const VectorXd& theta,
                          const SigmaPrior& prior = {});

/// Runs VAMP, then the plug-in variance and, if requested, the SV estimator.
GaussianApprox vamp_run(const LinearOperator& W2, const VectorXd& y2,
                        const std::vector<PriorBlock>& blocks, const VampConfig& config,
                        const SigmaPrior& sigma_prior = {}, const std::optional<SvSpec>& sv = {});

}  // namespace irga
