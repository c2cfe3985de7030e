/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "vamp.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <type_traits>

#include "error.hpp"

namespace irga {

namespace {
constexpr const char* kModule = "vamp";

double clamp_precision(double g, const VampConfig& c) {
  if (!std::isfinite(g)) return c.max_precision;
  return std::clamp(g, c.min_precision, c.max_precision);
}

// Damping of a precision, done on the standard-deviation scale.
double damp_precision(double fresh, double old, double rho) {
  const double sd = rho / std::sqrt(fresh) + (1.0 - rho) / std::sqrt(old);
  return 1.0 / (sd * sd);
}
}  // namespace

GaussianApprox known_nuisance(const VectorXd& mu, double sigma_eps_sq) {
  GaussianApprox ga;
  ga.mu = mu;
  ga.var_lmmse = VectorXd::Zero(mu.size());
  ga.var_denoiser = VectorXd::Zero(mu.size());
  ga.incl_prob = VectorXd::Ones(mu.size());
  ga.zero_covariance = true;
  ga.sigma_eps_sq = sigma_eps_sq;
  ga.converged = true;
  return ga;
}

VampSolver::VampSolver(const LinearOperator& W, VectorXd y, std::vector<PriorBlock> blocks,
                       VampConfig config)
    : W_(W), y_(std::move(y)), blocks_(std::move(blocks)), config_(config) {
  n_ = W_.rows();
  m_ = W_.cols();
  if (n_ < 1) throw_config(kModule, "nuisance regression has no observations");
  if (y_.size() != n_) throw_config(kModule, "response length does not match operator rows");
  if (!(config_.damping > 0.0 && config_.damping <= 1.0)) {
    throw_config(kModule, "damping must lie in (0, 1]");
  }
  if (config_.noise_var && !(*config_.noise_var > 0.0)) {
    throw_config(kModule, "fixed noise variance must be positive");
  }
  Index covered = 0;
  for (const auto& b : blocks_) {
    if (b.begin != covered || b.end < b.begin || b.end > m_) {
      throw_config(kModule, "prior blocks must tile the coefficient vector in order");
    }
    std::visit([](const auto& p) { p.validate(); }, b.prior);
    covered = b.end;
  }
  if (covered != m_) throw_config(kModule, "prior blocks do not cover every coefficient");

  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(W_.row_gram());
  if (eig.info() != Eigen::Success) throw_numerical(kModule, "eigendecomposition of W W' failed");
  U_ = eig.eigenvectors();
  lambda_ = eig.eigenvalues().cwiseMax(0.0);
  rho_ = config_.damping;
  reset();
}

void VampSolver::reset() {
  r1_ = VectorXd::Zero(m_);
  x1_ = VectorXd::Zero(m_);
  var1_ = VectorXd::Zero(m_);
  incl_ = VectorXd::Ones(m_);
  psi_ = VectorXd::Zero(m_);
  for (const auto& b : blocks_) {
    if (const auto* sbl = std::get_if<SblPrior>(&b.prior)) {
      psi_.segment(b.begin, b.end - b.begin).setConstant(sbl->initial_psi);
    }
  }
  gamma1_ = config_.initial_precision;
  gamma2_ = 0.0;
  if (config_.noise_var) {
    gamma_w_ = 1.0 / *config_.noise_var;
  } else {
    const double ms = y_.squaredNorm() / static_cast<double>(n_);
    gamma_w_ = 1.0 / std::max(config_.initial_noise_fraction * ms, 1e-12);
  }
  r2_ = VectorXd::Zero(m_);
  iter_ = 0;
  converged_ = false;
  trace_.clear();
}

void VampSolver::denoise() {
  const double s = 1.0 / gamma1_;
  for (const auto& b : blocks_) {
    std::visit(
        [&](const auto& prior) {
          using P = std::decay_t<decltype(prior)>;
          for (Index j = b.begin; j < b.end; ++j) {
            DenoiseResult d;
            if constexpr (std::is_same_v<P, SpikeSlabPrior>) {
              d = ss_denoise(r1_(j), s, prior);
            } else {
              d = sbl_denoise(r1_(j), s, psi_(j));
            }
            x1_(j) = d.mean;
            var1_(j) = d.variance;
            incl_(j) = d.inclusion;
          }
        },
        b.prior);
  }
}

double VampSolver::step() {
  const VectorXd x_prev = x1_;

  // Denoiser stage.
  denoise();
  const double eta1 = 1.0 / std::max(var1_.mean(), 1.0 / config_.max_precision);
  const double gamma2_new = clamp_precision(eta1 - gamma1_, config_);
  const VectorXd r2_new = (eta1 * x1_ - gamma1_ * r1_) / gamma2_new;
  if (iter_ > 0) {
    r2_ = rho_ * r2_new + (1.0 - rho_) * r2_;
    gamma2_ = damp_precision(gamma2_new, gamma2_, rho_);
  } else {
    r2_ = r2_new;
    gamma2_ = gamma2_new;
  }
  const VectorXd& r2 = r2_;

  if (config_.sbl_update) {
    for (const auto& b : blocks_) {
      if (const auto* sbl = std::get_if<SblPrior>(&b.prior)) {
        for (Index j = b.begin; j < b.end; ++j) {
          psi_(j) = 1.0 / sbl_update_precision(x1_(j), *sbl);
        }
      }
    }
  }

  // LMMSE stage through W W' = U diag(lambda) U'.
  const VectorXd gain = (gamma_w_ / (gamma_w_ * lambda_.array() + gamma2_)).matrix();
  const VectorXd resid = y_ - W_.apply(r2);
  const VectorXd x2 = r2 + W_.apply_transpose(U_ * gain.cwiseProduct(U_.transpose() * resid));
  const double trace_inv = (1.0 / (gamma_w_ * lambda_.array() + gamma2_)).sum() +
                           static_cast<double>(m_ - n_) / gamma2_;
  const double mean_var2 = trace_inv / static_cast<double>(m_);
  const double eta2 = 1.0 / mean_var2;
  const double gamma1_new = clamp_precision(eta2 - gamma2_, config_);
  const VectorXd r1_new = (eta2 * x2 - gamma2_ * r2) / gamma1_new;
  if (iter_ > 0) {
    r1_ = rho_ * r1_new + (1.0 - rho_) * r1_;
    gamma1_ = damp_precision(gamma1_new, gamma1_, rho_);
  } else {
    r1_ = r1_new;
    gamma1_ = gamma1_new;
  }

  if (!config_.noise_var) {
    const double fit = (y_ - W_.apply(x2)).squaredNorm();
    const double tr = (lambda_.array() / (gamma_w_ * lambda_.array() + gamma2_)).sum();
    gamma_w_ = clamp_precision(static_cast<double>(n_) / std::max(fit + tr, 1e-300), config_);
  }

  ++iter_;
  const double change = (x1_ - x_prev).norm() / std::max(1.0, x_prev.norm());
  trace_.push_back(change);
  return change;
}

bool VampSolver::run() {
  for (int attempt = 0;; ++attempt) {
    bool diverged = false;
    while (iter_ < config_.max_iter) {
      const double change = step();
      if (!std::isfinite(change) || !x1_.allFinite() || !r1_.allFinite() ||
          x1_.norm() > config_.divergence_norm) {
        diverged = true;
        break;
      }
      // The first denoiser pass sees r1 = 0, so no change there means nothing.
      if (iter_ > 1 && change < config_.tol) {
        converged_ = true;
        return true;
      }
    }
    if (!diverged) return false;
    if (attempt >= config_.max_damping_halvings) {
      std::ostringstream msg;
      msg << "diverged after " << attempt + 1 << " attempts (damping " << rho_
          << "); last changes:";
      const std::size_t from = trace_.size() > 5 ? trace_.size() - 5 : 0;
      for (std::size_t i = from; i < trace_.size(); ++i) msg << ' ' << trace_[i];
      throw_numerical(kModule, msg.str());
    }
    rho_ *= 0.5;
    reset();
  }
}

GaussianApprox VampSolver::approximation() const {
  GaussianApprox ga;
  ga.mu = x1_;
  ga.var_denoiser = var1_;
  ga.incl_prob = incl_;
  ga.lmmse_precision = gamma2_;
  ga.noise_precision = gamma_w_;
  ga.gram_eigvecs = U_;
  ga.gram_eigvals = lambda_;
  // diag((gamma_w W'W + gamma_2 I)^-1) = (1 - ||L w_j||^2) / gamma_2 with
  // L = diag(sqrt(gamma_w / (gamma_w lambda + gamma_2))) U'.
  const VectorXd root = (gamma_w_ / (gamma_w_ * lambda_.array() + gamma2_)).sqrt().matrix();
  const MatrixXd L = root.asDiagonal() * U_.transpose();
  ga.var_lmmse = ((1.0 - W_.projected_column_norms(L).array()) / gamma2_).cwiseMax(0.0).matrix();
  ga.iterations = iter_;
  ga.converged = converged_;
  ga.damping_used = rho_;
  ga.trace = trace_;
  return ga;
}

double estimate_sigma_eps(const VectorXd& y2, const LinearOperator& W2, const VectorXd& theta,
                          const SigmaPrior& prior) {
  const double n = static_cast<double>(y2.size());
  const double dof = prior.shape + n / 2.0 - 1.0;
  if (!(dof > 0.0)) throw_numerical(kModule, "too few complement observations to estimate sigma");
  const double rss = (y2 - W2.apply(theta)).squaredNorm();
  return (prior.rate + 0.5 * rss) / dof;
}

GaussianApprox vamp_run(const LinearOperator& W2, const VectorXd& y2,
                        const std::vector<PriorBlock>& blocks, const VampConfig& config,
                        const SigmaPrior& sigma_prior, const std::optional<SvSpec>& sv) {
  VampSolver solver(W2, y2, blocks, config);
  solver.run();
  GaussianApprox ga = solver.approximation();
  ga.sigma_eps_sq = estimate_sigma_eps(y2, W2, ga.mu, sigma_prior);
  if (sv) {
    if (sv->eta_begin + sv->eta_len > ga.size()) throw_config(kModule, "SV block out of range");
    const VectorXd eta = ga.mu.segment(sv->eta_begin, sv->eta_len);
    ga.eta_zero_floors = (eta.array() == 0.0).count();
    ga.h_hat = estimate_h(eta, KscMixture::standard(), sv->options);
    ga.total_var = total_variance(ga.h_hat, ga.sigma_eps_sq, sv->options);
  }
  return ga;
}

}  // namespace irga
