/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "benchmark_ffbs.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

#include "error.hpp"

namespace irga {

namespace {

constexpr const char* kModule = "benchmark_ffbs";

struct FilterPass {
  std::vector<VectorXd> pred_mean;  // a_t
  std::vector<MatrixXd> pred_cov;   // P_t
  std::vector<VectorXd> filt_mean;  // m_t
  std::vector<MatrixXd> filt_cov;   // C_t
};

FilterPass run_filter(const StateSpaceModel& m, const VectorXd& y) {
  m.validate();
  if (y.size() != m.T()) throw_config(kModule, "response length does not match the design");
  const Index T = m.T();
  const Index K = m.K();
  FilterPass f;
  f.pred_mean.resize(T);
  f.pred_cov.resize(T);
  f.filt_mean.resize(T);
  f.filt_cov.resize(T);
  VectorXd a = VectorXd::Zero(K);
  MatrixXd P = m.kappa * MatrixXd::Identity(K, K);
  for (Index t = 0; t < T; ++t) {
    if (t > 0) {
      a = f.filt_mean[t - 1];
      P = f.filt_cov[t - 1];
      P.diagonal() += m.w;
    }
    const VectorXd x = m.X.row(t).transpose();
    const VectorXd Px = P * x;
    const double var = x.dot(Px) + m.sigma_sq;
    const VectorXd gain = Px / var;
    f.pred_mean[t] = a;
    f.pred_cov[t] = P;
    f.filt_mean[t] = a + gain * (y(t) - x.dot(a));
    MatrixXd C = P - gain * Px.transpose();
    f.filt_cov[t] = 0.5 * (C + C.transpose());
  }
  return f;
}

// C_t P_{t+1}^-1 for symmetric arguments.
MatrixXd smoother_gain(const MatrixXd& C, const MatrixXd& P_next) {
  Eigen::LLT<MatrixXd> llt(P_next);
  if (llt.info() != Eigen::Success) throw_numerical(kModule, "predicted state covariance is not positive definite");
  return llt.solve(C).transpose();
}

VectorXd draw_mvn(const VectorXd& mean, const MatrixXd& cov, Rng& rng) {
  const Index K = mean.size();
  VectorXd z(K);
  for (Index k = 0; k < K; ++k) z(k) = draw_normal(rng);
  Eigen::LLT<MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return mean + llt.matrixL() * z;
  // Degenerate conditionals arise when some w_j are numerically zero.
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(cov);
  const VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return mean + eig.eigenvectors() * root.cwiseProduct(z);
}

double draw_inverse_gamma(Rng& rng, double shape, double rate) {
  return 1.0 / draw_gamma(rng, shape, rate);
}

}  // namespace

void StateSpaceModel::validate() const {
  if (X.rows() < 1 || X.cols() < 1) throw_config(kModule, "empty state-space model");
  if (w.size() != X.cols()) throw_config(kModule, "innovation variances do not match the state dimension");
  if ((w.array() < 0.0).any() || !w.allFinite()) throw_numerical(kModule, "innovation variances must be nonnegative");
  if (!(sigma_sq > 0.0) || !(kappa > 0.0)) throw_numerical(kModule, "sigma^2 and kappa must be positive");
}

SmoothedStates kalman_smoother(const StateSpaceModel& m, const VectorXd& y) {
  const FilterPass f = run_filter(m, y);
  const Index T = m.T();
  SmoothedStates s;
  s.mean.resize(T, m.K());
  s.cov.resize(T);
  s.mean.row(T - 1) = f.filt_mean[T - 1].transpose();
  s.cov[T - 1] = f.filt_cov[T - 1];
  for (Index t = T - 2; t >= 0; --t) {
    const MatrixXd J = smoother_gain(f.filt_cov[t], f.pred_cov[t + 1]);
    const VectorXd next = s.mean.row(t + 1).transpose();
    s.mean.row(t) = (f.filt_mean[t] + J * (next - f.pred_mean[t + 1])).transpose();
    const MatrixXd C = f.filt_cov[t] + J * (s.cov[t + 1] - f.pred_cov[t + 1]) * J.transpose();
    s.cov[t] = 0.5 * (C + C.transpose());
  }
  return s;
}

MatrixXd ffbs_draw(const StateSpaceModel& m, const VectorXd& y, Rng& rng) {
  const FilterPass f = run_filter(m, y);
  const Index T = m.T();
  MatrixXd path(T, m.K());
  path.row(T - 1) = draw_mvn(f.filt_mean[T - 1], f.filt_cov[T - 1], rng).transpose();
  for (Index t = T - 2; t >= 0; --t) {
    const MatrixXd J = smoother_gain(f.filt_cov[t], f.pred_cov[t + 1]);
    const VectorXd next = path.row(t + 1).transpose();
    const VectorXd mean = f.filt_mean[t] + J * (next - f.pred_mean[t + 1]);
    MatrixXd cov = f.filt_cov[t] - J * f.filt_cov[t];
    cov = 0.5 * (cov + cov.transpose()).eval();
    path.row(t) = draw_mvn(mean, cov, rng).transpose();
  }
  return path;
}

BenchmarkDraws benchmark_estimate(const StandardizedRegression& sr, const BenchmarkConfig& config,
                                  Rng& rng) {
  config.mcmc.validate();
  const Index T = sr.T();
  const Index K = sr.K();
  if (T <= K) throw_config(kModule, "benchmark needs T > K");

  StateSpaceModel m;
  m.X = sr.X;
  m.w = VectorXd::Constant(K, 0.01);
  m.sigma_sq = 1.0;
  m.kappa = config.kappa;

  const int retained = config.mcmc.draws - config.mcmc.burn_in;
  BenchmarkDraws out;
  out.beta_bar.resize(retained, K);
  out.w.resize(retained, K);
  out.sigma_sq.resize(retained);
  out.state_mean = MatrixXd::Zero(T, K);

  for (int it = 0; it < config.mcmc.draws; ++it) {
    const MatrixXd path = ffbs_draw(m, sr.y, rng);
    for (Index j = 0; j < K; ++j) {
      const VectorXd d = path.col(j).tail(T - 1) - path.col(j).head(T - 1);
      m.w(j) = draw_inverse_gamma(rng, config.shape + 0.5 * static_cast<double>(T - 1),
                                  config.rate + 0.5 * d.squaredNorm());
    }
    const VectorXd resid = sr.y - (sr.X.cwiseProduct(path)).rowwise().sum();
    m.sigma_sq = draw_inverse_gamma(rng, config.shape + 0.5 * static_cast<double>(T),
                                    config.rate + 0.5 * resid.squaredNorm());
    if (it >= config.mcmc.burn_in) {
      const Index row = it - config.mcmc.burn_in;
      out.beta_bar.row(row) = path.colwise().mean();
      out.w.row(row) = m.w.transpose();
      out.sigma_sq(row) = m.sigma_sq;
      out.state_mean += path;
    }
  }
  if (retained > 0) out.state_mean /= static_cast<double>(retained);
  return out;
}

VectorXd benchmark_constant_coefficients(const VectorXd& y, const MatrixXd& X,
                                         const BenchmarkConfig& config, std::uint64_t seed) {
  const StandardizedRegression sr = standardize(y, X);
  Rng rng(seed);
  return sr.raw_coefficients(benchmark_estimate(sr, config, rng).beta_mean());
}

}  // namespace irga
