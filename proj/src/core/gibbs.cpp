/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gibbs.hpp"

#include <Eigen/Cholesky>

#include <cmath>

#include "error.hpp"

namespace irga {

namespace {
constexpr const char* kModule = "gibbs";
}  // namespace

NuisanceCovariance parse_nuisance_covariance(const std::string& text) {
  if (text == "lmmse") return NuisanceCovariance::Lmmse;
  if (text == "denoiser") return NuisanceCovariance::Denoiser;
  throw_config(kModule, "unknown nuisance covariance '" + text + "' (expected lmmse or denoiser)");
}

std::string to_string(NuisanceCovariance mode) {
  return mode == NuisanceCovariance::Lmmse ? "lmmse" : "denoiser";
}

ProjectedSystem build_projected_system(const RotatedSystem& rs, const GaussianApprox& ga,
                                       NuisanceCovariance mode) {
  const Index K = rs.focus_dim();
  const MatrixXd& Q1 = rs.qr.Q1;
  if (ga.size() != rs.nuisance.cols()) {
    throw_config(kModule, "nuisance approximation does not match the rotated system");
  }

  MatrixXd omega(K, K);
  if (ga.total_var.size() > 0) {
    omega = Q1.transpose() * (ga.total_var.asDiagonal() * Q1);
  } else {
    if (!(ga.sigma_eps_sq > 0.0)) throw_numerical(kModule, "sigma_eps^2 must be positive");
    omega = ga.sigma_eps_sq * MatrixXd::Identity(K, K);
  }

  if (!ga.zero_covariance) {
    if (mode == NuisanceCovariance::Lmmse) {
      // (Q1'G) V (Q1'G)' = [Q1'HQ1 - Q1'HQ2 U D U' Q2'HQ1] / gamma_2,
      // D = diag(gamma_w / (gamma_2 + gamma_w lambda)), by Woodbury.
      const double g2 = ga.lmmse_precision;
      const double gw = ga.noise_precision;
      if (!(g2 > 0.0)) throw_numerical(kModule, "LMMSE precision must be positive");
      const MatrixXd cross = rs.cross_gram() * ga.gram_eigvecs;  // K x n
      const VectorXd d = (gw / (g2 + gw * ga.gram_eigvals.array())).matrix();
      omega += (rs.focus_gram() - cross * d.asDiagonal() * cross.transpose()) / g2;
    } else {
      omega += Q1.transpose() * rs.nuisance.weighted_gram_times(ga.var_denoiser, Q1);
    }
  }
  omega = 0.5 * (omega + omega.transpose()).eval();

  ProjectedSystem ps;
  Eigen::LLT<MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) {
    ps.jitter = 1e-10 * omega.trace() / static_cast<double>(K);
    omega.diagonal().array() += ps.jitter;
    llt.compute(omega);
    if (llt.info() != Eigen::Success) {
      throw_numerical(kModule, "Omega_Q1 is not positive definite after jitter");
    }
  }
  ps.omega = omega;
  ps.chol_lower = llt.matrixL();
  const auto L = ps.chol_lower.triangularView<Eigen::Lower>();
  const VectorXd centred = rs.y1 - Q1.transpose() * rs.nuisance.apply(ga.mu);
  ps.y_tilde = L.solve(centred);
  ps.X_tilde = L.solve(rs.A1);
  ps.xtx = ps.X_tilde.transpose() * ps.X_tilde;
  ps.xty = ps.X_tilde.transpose() * ps.y_tilde;
  return ps;
}

BetaMoments beta_conditional_moments(const ProjectedSystem& ps, const VectorXd& prior_var) {
  MatrixXd precision = ps.xtx;
  precision.diagonal() += prior_var.cwiseInverse();
  Eigen::LLT<MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) throw_numerical(kModule, "beta precision is not positive definite");
  BetaMoments m;
  m.cov = llt.solve(MatrixXd::Identity(ps.dim(), ps.dim()));
  m.mean = llt.solve(ps.xty);
  return m;
}

VectorXd draw_beta(const ProjectedSystem& ps, const VectorXd& prior_var, Rng& rng) {
  const Index K = ps.dim();
  MatrixXd precision = ps.xtx;
  precision.diagonal() += prior_var.cwiseInverse();
  Eigen::LLT<MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) throw_numerical(kModule, "beta precision is not positive definite");
  VectorXd z(K);
  for (Index k = 0; k < K; ++k) z(k) = draw_normal(rng);
  // precision = L L'; mean solves it, L' e = z gives cov(e) = precision^-1
  VectorXd beta = llt.solve(ps.xty);
  beta += llt.matrixU().solve(z);
  return beta;
}

void McmcConfig::validate() const {
  if (draws < 0 || burn_in < 0 || burn_in > draws) {
    throw_config(kModule, "need 0 <= burn-in <= draws");
  }
}

VectorXd PosteriorDraws::beta_mean() const {
  if (beta.rows() == 0) return VectorXd::Zero(beta.cols());
  return beta.colwise().mean().transpose();
}

PosteriorDraws run_sampler(const ProjectedSystem& ps, const NormalGammaPrior& prior,
                           const McmcConfig& config, Rng& rng, std::uint64_t seed) {
  config.validate();
  prior.validate();
  const Index K = ps.dim();
  const int retained = config.draws - config.burn_in;

  PosteriorDraws out;
  out.seed = seed;
  out.total = config.draws;
  out.burn_in = config.burn_in;
  out.beta.resize(retained, K);
  out.tau_sq.resize(retained, K);
  out.lambda.resize(retained);

  VectorXd tau_sq = VectorXd::Ones(K);
  double lambda = 1.0;
  for (int it = 0; it < config.draws; ++it) {
    const VectorXd beta = draw_beta(ps, tau_sq, rng);
    if (config.update_shrinkage) {
      for (Index j = 0; j < K; ++j) tau_sq(j) = sample_tau_sq(beta(j), lambda, prior, rng);
      lambda = sample_lambda(tau_sq, prior, rng);
    }
    if (it >= config.burn_in) {
      const Index row = it - config.burn_in;
      out.beta.row(row) = beta.transpose();
      out.tau_sq.row(row) = tau_sq.transpose();
      out.lambda(row) = lambda;
    }
  }
  return out;
}

}  // namespace irga
