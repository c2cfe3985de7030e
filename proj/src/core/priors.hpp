/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <variant>
#include <vector>

#include "rng.hpp"

namespace irga {

using Eigen::Index;
using Eigen::VectorXd;

/// Normal-Gamma global-local prior on the constant coefficients:
/// beta_j ~ N(0, tau_j^2), tau_j^2 ~ G(vartheta, vartheta*lambda/2), lambda ~ G(d0, d1).
struct NormalGammaPrior {
  double vartheta = 0.1;
  double d0 = 0.01;
  double d1 = 0.01;
  void validate() const;
};

/// q N(0, psi) + (1 - q) delta_0 on each nuisance coefficient.
struct SpikeSlabPrior {
  double q = 0.5;
  double psi = 0.001;
  void validate() const;
};

/// Sparse Bayesian learning: N(0, psi_j) with Gamma(a_psi, b_psi) on the precision.
struct SblPrior {
  double a_psi = 1.0;
  double b_psi = 1e-6;
  double initial_psi = 1.0;  // starting variance before the first update
  void validate() const;
};

/// Inverse-Gamma prior on the measurement error variance.
struct SigmaPrior {
  double shape = 0.01;
  double rate = 0.01;
};

using NuisancePrior = std::variant<SpikeSlabPrior, SblPrior>;

struct DenoiseResult {
  double mean = 0.0;
  double variance = 0.0;
  double inclusion = 1.0;
};

/// Posterior moments of theta under the spike-and-slab prior given a
/// pseudo-observation r ~ N(theta, s). The slab weight is formed in the log
/// domain so it stays accurate for large |r|.
DenoiseResult ss_denoise(double r, double s, const SpikeSlabPrior& prior);

/// Gaussian-Gaussian shrinkage with prior variance psi_j.
DenoiseResult sbl_denoise(double r, double s, double psi_j);

/// Precision update (2 a_psi - 1) / (gamma_hat^2 + 2 b_psi); the variance used
/// by the denoiser is its reciprocal.
double sbl_update_precision(double gamma_hat, const SblPrior& prior);

/// tau_j^2 | beta_j, lambda ~ GIG(vartheta - 1/2, beta_j^2, lambda * vartheta).
double sample_tau_sq(double beta_j, double lambda, const NormalGammaPrior& prior, Rng& rng);

/// lambda | tau^2 ~ G(d0 + K vartheta, d1 + vartheta * sum(tau^2) / 2).
double sample_lambda(const VectorXd& tau_sq, const NormalGammaPrior& prior, Rng& rng);

/// Slab variances examined in prior-sensitivity runs; the last entry is 1/K.
std::vector<double> spike_slab_psi_grid(Index K);

}  // namespace irga
