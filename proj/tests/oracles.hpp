/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Reference computations used only by the tests. Each one is written from
// the defining formula (dense algebra, enumeration or quadrature) and shares
// no code with the library.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Posterior of b in y = X b + e, e ~ N(0, noise_var I), b ~ N(0, diag(prior_var)).
struct Gaussian {
  VectorXd mean;
  MatrixXd cov;
};

inline Gaussian conjugate_posterior(const VectorXd& y, const MatrixXd& X, const VectorXd& prior_var,
                                    const MatrixXd& noise_cov) {
  // Covariance form, no precision inversion: mean = P X' (X P X' + S)^-1 y.
  const MatrixXd P = prior_var.asDiagonal();
  const MatrixXd S = X * P * X.transpose() + noise_cov;
  const MatrixXd gain = P * X.transpose() * S.inverse();
  return {gain * y, P - gain * X * P};
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Unnormalised GIG log-density x^(p-1) exp(-(chi/x + psi x)/2).
inline double gig_log_kernel(double x, double p, double chi, double psi) {
  return (p - 1.0) * std::log(x) - 0.5 * (chi / x + psi * x);
}

/// E[X^k] of GIG(p, chi, psi) by quadrature in u = log x around the mode.
inline double gig_moment(double p, double chi, double psi, int k) {
  const double mode = ((p - 1.0) + std::sqrt((p - 1.0) * (p - 1.0) + chi * psi)) / psi;
  const double c = gig_log_kernel(mode, p, chi, psi) + std::log(mode);
  auto w = [&](double u) {
    const double x = std::exp(u);
    return std::exp(gig_log_kernel(x, p, chi, psi) + u - c);
  };
  const double lo = std::log(mode) - 40.0, hi = std::log(mode + (2.0 * std::abs(p) + 80.0) / psi);
  const double z = simpson(w, lo, hi, 40000);
  const double m = simpson([&](double u) { return w(u) * std::pow(std::exp(u), k); }, lo, hi, 40000);
  return m / z;
}

/// Bessel-function form of E[X] for GIG(p, chi, psi).
inline double gig_mean_bessel(double p, double chi, double psi) {
  const double omega = std::sqrt(chi * psi);
  // K_{-v} = K_v; the library routine only accepts v >= 0.
  return std::sqrt(chi / psi) * std::cyl_bessel_k(std::abs(p + 1.0), omega) / std::cyl_bessel_k(std::abs(p), omega);
}

/// CDF of GIG(p, chi, psi) at the sorted points xs, by cumulative quadrature.
inline std::vector<double> gig_cdf(double p, double chi, double psi, const std::vector<double>& xs) {
  const double mode = ((p - 1.0) + std::sqrt((p - 1.0) * (p - 1.0) + chi * psi)) / psi;
  const double c = gig_log_kernel(mode, p, chi, psi) + std::log(mode);
  auto w = [&](double u) { return std::exp(gig_log_kernel(std::exp(u), p, chi, psi) + u - c); };
  const double lo = std::log(mode) - 40.0, hi = std::log(mode + (2.0 * std::abs(p) + 80.0) / psi);
  const double z = simpson(w, lo, hi, 40000);
  std::vector<double> out;
  double acc = 0.0, prev = lo;
  for (double x : xs) {
    const double u = std::log(x);
    if (u > prev) {
      acc += simpson(w, prev, u, 2000);
      prev = u;
    }
    out.push_back(acc / z);
  }
  return out;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Inverse Gaussian CDF with mean mu and shape lambda.
inline double inverse_gaussian_cdf(double x, double mu, double lambda) {
  const double a = std::sqrt(lambda / x);
  return normal_cdf(a * (x / mu - 1.0)) + std::exp(2.0 * lambda / mu) * normal_cdf(-a * (x / mu + 1.0));
}

inline double normal_pdf(double x, double mean, double var) {
  return std::exp(-0.5 * (x - mean) * (x - mean) / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

/// Exact spike-and-slab posterior for theta given r ~ N(theta, s), by quadrature over theta.
struct ScalarPosterior {
  double mean, var, slab_weight;
};
inline ScalarPosterior spike_slab_quadrature(double r, double s, double q, double psi) {
  // Slab part integrated numerically; spike contributes a point mass at 0.
  auto lik = [&](double th) { return normal_pdf(r, th, s); };
  const double sd = std::sqrt(psi);
  const double lo = -12.0 * sd, hi = 12.0 * sd;
  const double lo2 = std::min(lo, r - 12.0 * std::sqrt(s)), hi2 = std::max(hi, r + 12.0 * std::sqrt(s));
  auto slab = [&](double th) { return normal_pdf(th, 0.0, psi) * lik(th); };
  const double z_slab = q * simpson(slab, lo2, hi2, 200000);
  const double m1 = q * simpson([&](double th) { return th * slab(th); }, lo2, hi2, 200000);
  const double m2 = q * simpson([&](double th) { return th * th * slab(th); }, lo2, hi2, 200000);
  const double z_spike = (1.0 - q) * lik(0.0);
  const double z = z_slab + z_spike;
  const double mean = m1 / z;
  return {mean, m2 / z - mean * mean, z_slab / z};
}

/// Posterior inclusion probabilities of y = W theta + e under iid
/// q N(0, psi) + (1 - q) delta_0, by enumerating all 2^M supports. The
/// marginal likelihood of support S is N(y; 0, noise I + psi W_S W_S'),
/// evaluated in the |S|-dimensional form via the matrix determinant lemma
/// and the Woodbury identity.
inline VectorXd spike_slab_enumeration(const VectorXd& y, const MatrixXd& W, double q, double psi,
                                       double noise_var) {
  const int M = static_cast<int>(W.cols());
  const int n = static_cast<int>(W.rows());
  const MatrixXd gram = W.transpose() * W;
  const VectorXd wty = W.transpose() * y;
  const double yy = y.squaredNorm();
  std::vector<double> logw(std::size_t{1} << M);
  double top = -1e300;
  for (std::size_t mask = 0; mask < logw.size(); ++mask) {
    std::vector<int> idx;
    for (int j = 0; j < M; ++j) {
      if (mask & (std::size_t{1} << j)) idx.push_back(j);
    }
    const int k = static_cast<int>(idx.size());
    double logdet = n * std::log(noise_var);
    double quad = yy / noise_var;
    if (k > 0) {
      MatrixXd C(k, k);
      VectorXd b(k);
      for (int a = 0; a < k; ++a) {
        b(a) = wty(idx[a]);
        for (int c = 0; c < k; ++c) C(a, c) = gram(idx[a], idx[c]) / noise_var;
      }
      C.diagonal().array() += 1.0 / psi;
      Eigen::LLT<MatrixXd> llt(C);
      logdet += 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum() + k * std::log(psi);
      quad -= b.dot(llt.solve(b)) / (noise_var * noise_var);
    }
    logw[mask] = -0.5 * (logdet + quad) + k * std::log(q) + (M - k) * std::log(1.0 - q);
    top = std::max(top, logw[mask]);
  }
  VectorXd incl = VectorXd::Zero(M);
  double z = 0.0;
  for (std::size_t mask = 0; mask < logw.size(); ++mask) {
    const double w = std::exp(logw[mask] - top);
    z += w;
    for (int j = 0; j < M; ++j) {
      if (mask & (std::size_t{1} << j)) incl(j) += w;
    }
  }
  return incl / z;
}

/// Smoothed state moments of a random-walk TVP regression by conditioning
/// the stacked joint Gaussian directly. States are stacked (b_1, ..., b_T).
inline Gaussian dense_state_posterior(const MatrixXd& X, const VectorXd& y, const VectorXd& w,
                                      double sigma_sq, double kappa) {
  const int T = static_cast<int>(X.rows()), K = static_cast<int>(X.cols());
  MatrixXd P(T * K, T * K);
  for (int s = 0; s < T; ++s) {
    for (int t = 0; t < T; ++t) {
      const double shared = static_cast<double>(std::min(s, t));
      MatrixXd block = kappa * MatrixXd::Identity(K, K);
      block.diagonal() += shared * w;
      P.block(s * K, t * K, K, K) = block;
    }
  }
  MatrixXd H = MatrixXd::Zero(T, T * K);
  for (int t = 0; t < T; ++t) H.block(t, t * K, 1, K) = X.row(t);
  const MatrixXd S = H * P * H.transpose() + sigma_sq * MatrixXd::Identity(T, T);
  const MatrixXd gain = P * H.transpose() * S.inverse();
  return {gain * y, P - gain * H * P};
}

inline MatrixXd random_matrix(std::mt19937_64& g, int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  MatrixXd m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = n(g);
  return m;
}

inline VectorXd random_vector(std::mt19937_64& g, int n) { return random_matrix(g, n, 1).col(0); }

}  // namespace oracle
