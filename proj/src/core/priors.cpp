/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "priors.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "gig.hpp"

namespace irga {

namespace {
constexpr const char* kModule = "priors";
// Floors keep the GIG draw proper when a coefficient is numerically zero.
constexpr double kMinBetaSq = 1e-16;
constexpr double kMinTauSq = 1e-12;
}  // namespace

void NormalGammaPrior::validate() const {
  if (!(vartheta > 0.0) || !(d0 > 0.0) || !(d1 > 0.0)) {
    throw_config(kModule, "Normal-Gamma hyperparameters must be positive");
  }
}

void SpikeSlabPrior::validate() const {
  if (!(q >= 0.0 && q <= 1.0)) throw_config(kModule, "spike-and-slab q must lie in [0, 1]");
  if (!(psi > 0.0)) throw_config(kModule, "spike-and-slab psi must be positive");
}

void SblPrior::validate() const {
  if (!(a_psi > 0.5)) throw_config(kModule, "SBL a_psi must exceed 1/2");
  if (!(b_psi > 0.0)) throw_config(kModule, "SBL b_psi must be positive");
  if (!(initial_psi > 0.0)) throw_config(kModule, "SBL initial psi must be positive");
}

DenoiseResult ss_denoise(double r, double s, const SpikeSlabPrior& prior) {
  if (!std::isfinite(r)) throw_numerical(kModule, "non-finite pseudo-observation");
  if (!(s > 0.0)) throw_numerical(kModule, "pseudo-variance must be positive");
  const double psi = prior.psi;
  const double shrink = psi / (psi + s);
  const double slab_var = psi * s / (psi + s);

  double w = 0.0;
  if (prior.q >= 1.0) {
    w = 1.0;
  } else if (prior.q > 0.0) {
    // log q N(r; 0, psi + s) - log (1 - q) N(r; 0, s)
    const double logit = std::log(prior.q) - std::log1p(-prior.q) +
                         0.5 * std::log(s / (psi + s)) + 0.5 * r * r * (shrink / s);
    w = logit >= 0.0 ? 1.0 / (1.0 + std::exp(-logit)) : std::exp(logit) / (1.0 + std::exp(logit));
  }
  const double slab_mean = shrink * r;
  DenoiseResult out;
  out.inclusion = w;
  out.mean = w * slab_mean;
  out.variance = w * slab_var + w * (1.0 - w) * slab_mean * slab_mean;
  return out;
}

DenoiseResult sbl_denoise(double r, double s, double psi_j) {
  if (!std::isfinite(r)) throw_numerical(kModule, "non-finite pseudo-observation");
  if (!(s > 0.0) || !(psi_j > 0.0)) throw_numerical(kModule, "variances must be positive");
  DenoiseResult out;
  if (std::isinf(psi_j)) {
    out.mean = r;
    out.variance = s;
    return out;
  }
  out.mean = psi_j / (psi_j + s) * r;
  out.variance = psi_j * s / (psi_j + s);
  return out;
}

double sbl_update_precision(double gamma_hat, const SblPrior& prior) {
  return (2.0 * prior.a_psi - 1.0) / (gamma_hat * gamma_hat + 2.0 * prior.b_psi);
}

double sample_tau_sq(double beta_j, double lambda, const NormalGammaPrior& prior, Rng& rng) {
  if (!(lambda > 0.0)) throw_numerical(kModule, "global shrinkage lambda must be positive");
  const double chi = std::max(beta_j * beta_j, kMinBetaSq);
  return std::max(draw_gig(rng, prior.vartheta - 0.5, chi, lambda * prior.vartheta), kMinTauSq);
}

double sample_lambda(const VectorXd& tau_sq, const NormalGammaPrior& prior, Rng& rng) {
  const double K = static_cast<double>(tau_sq.size());
  const double shape = prior.d0 + K * prior.vartheta;
  const double rate = prior.d1 + prior.vartheta * tau_sq.sum() / 2.0;
  return draw_gamma(rng, shape, rate);
}

std::vector<double> spike_slab_psi_grid(Index K) {
  return {1e-6, 1e-4, 1e-3, 1e-2, 1.0 / static_cast<double>(K)};
}

}  // namespace irga
