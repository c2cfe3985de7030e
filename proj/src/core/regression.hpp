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

#include "data_model.hpp"
#include "gibbs.hpp"
#include "priors.hpp"
#include "rotation.hpp"
#include "sv.hpp"
#include "vamp.hpp"

namespace irga {

enum class NuisancePriorKind { SpikeSlab, Sbl };

NuisancePriorKind parse_nuisance_prior(const std::string& text);
std::string to_string(NuisancePriorKind kind);

/// Everything that controls one IRGA estimation.
struct IrgaConfig {
  NuisancePriorKind prior = NuisancePriorKind::SpikeSlab;
  SpikeSlabPrior spike_slab;
  SblPrior sbl;
  NormalGammaPrior normal_gamma;
  SigmaPrior sigma;
  VampConfig vamp;
  McmcConfig mcmc;
  NuisanceCovariance covariance = NuisanceCovariance::Denoiser;
  bool sv = false;
  SvOptions sv_options;

  NuisancePrior nuisance_prior() const;
  void validate() const;
};

struct RegressionResult {
  StandardizedRegression data;
  Partition partition;
  std::vector<Index> tvp_columns;
  GaussianApprox approx;
  PosteriorDraws draws;  // focus coefficients, standardized scale, partition order
  double omega_jitter = 0.0;

  Index total_cols() const { return data.K(); }
  /// Constant coefficients (length K, standardized scale) for one retained
  /// draw; demoted columns take their VAMP mean.
  VectorXd coefficients(int draw) const;
  VectorXd posterior_mean() const;
  VectorXd raw_posterior_mean() const { return data.raw_coefficients(posterior_mean()); }
  /// T x |tvp_columns| matrix of approximate TVP deviations, standardized scale.
  MatrixXd tvp_paths() const;
  /// Per-period measurement variance on the standardized scale.
  VectorXd residual_variance() const;
};

/// Steps 1-4 on an already standardized regression. TVPs are attached to the
/// columns listed in tvp_columns; the SV block is added when config.sv is set.
RegressionResult fit_tvp_regression(const StandardizedRegression& sr, const Partition& partition,
                                    const std::vector<Index>& tvp_columns, const IrgaConfig& config,
                                    std::uint64_t seed);

/// Single TVP regression y_t = x_t'(beta + gamma_t) + e_t with every column in
/// focus and carrying a TVP. Returns the raw-scale posterior mean of beta.
VectorXd estimate_constant_coefficients(const VectorXd& y, const MatrixXd& X,
                                        const IrgaConfig& config, std::uint64_t seed);

}  // namespace irga
