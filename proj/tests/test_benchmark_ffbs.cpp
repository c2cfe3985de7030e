/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "benchmark_ffbs.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "sim.hpp"

using namespace irga;

namespace {

StateSpaceModel random_model(std::mt19937_64& g, int T, int K) {
  StateSpaceModel m;
  m.X = oracle::random_matrix(g, T, K);
  m.w = oracle::random_vector(g, K).cwiseAbs() * 0.3;
  m.sigma_sq = 0.5;
  m.kappa = 4.0;
  return m;
}

}  // namespace

TEST_CASE("static state with unit regressor is a constant-mean posterior") {
  std::mt19937_64 g(1);
  StateSpaceModel m;
  m.X = MatrixXd::Ones(8, 1);
  m.w = VectorXd::Zero(1);
  m.sigma_sq = 2.0;
  m.kappa = 10.0;
  const VectorXd y = oracle::random_vector(g, 8);
  const auto s = kalman_smoother(m, y);
  const double expected = y.sum() / (8.0 + m.sigma_sq / m.kappa);
  for (int t = 0; t < 8; ++t) CHECK(s.mean(t, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("smoother matches dense joint-Gaussian conditioning") {
  std::mt19937_64 g(2);
  for (int T : {1, 2, 5, 6}) {
    const auto m = random_model(g, T, 2);
    const VectorXd y = oracle::random_vector(g, T);
    const auto s = kalman_smoother(m, y);
    const auto ref = oracle::dense_state_posterior(m.X, y, m.w, m.sigma_sq, m.kappa);
    for (int t = 0; t < T; ++t) {
      CHECK((s.mean.row(t).transpose() - ref.mean.segment(2 * t, 2)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((s.cov[static_cast<std::size_t>(t)] - ref.cov.block(2 * t, 2 * t, 2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("FFBS marginals match the smoother") {
  std::mt19937_64 g(3);
  const auto m = random_model(g, 5, 2);
  const VectorXd y = oracle::random_vector(g, 5);
  const auto s = kalman_smoother(m, y);
  Rng rng(4);
  const int n = 100000;
  MatrixXd sum = MatrixXd::Zero(5, 2);
  for (int i = 0; i < n; ++i) sum += ffbs_draw(m, y, rng);
  const MatrixXd mean = sum / n;
  for (int t = 0; t < 5; ++t) {
    for (int k = 0; k < 2; ++k) {
      const double se = std::sqrt(s.cov[static_cast<std::size_t>(t)](k, k) / n);
      CHECK(std::abs(mean(t, k) - s.mean(t, k)) < 3.0 * se);
    }
  }
}

TEST_CASE("zero state variance keeps the path flat") {
  std::mt19937_64 g(5);
  auto m = random_model(g, 10, 3);
  m.w.setZero();
  Rng rng(6);
  const MatrixXd path = ffbs_draw(m, oracle::random_vector(g, 10), rng);
  for (int t = 1; t < 10; ++t) CHECK((path.row(t) - path.row(0)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("FFBS is reproducible from its seed") {
  std::mt19937_64 g(7);
  const auto m = random_model(g, 12, 2);
  const VectorXd y = oracle::random_vector(g, 12);
  Rng a(11), b(11);
  CHECK(ffbs_draw(m, y, a) == ffbs_draw(m, y, b));
}

TEST_CASE("large noise shrinks states to the prior mean") {
  std::mt19937_64 g(8);
  auto m = random_model(g, 20, 2);
  m.sigma_sq = 1e10;
  const auto s = kalman_smoother(m, oracle::random_vector(g, 20));
  CHECK(s.mean.cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("model validation") {
  StateSpaceModel m;
  m.X = MatrixXd::Ones(3, 2);
  m.w = VectorXd::Ones(1);
  CHECK_THROWS_AS(m.validate(), Error);
  m.w = -VectorXd::Ones(2);
  CHECK_THROWS_AS(m.validate(), Error);
}

TEST_CASE("constant-coefficient data: time-averaged states recover beta") {
  BenchmarkConfig cfg;
  cfg.mcmc.draws = 600;
  cfg.mcmc.burn_in = 200;
  int covered = 0, total = 0;
  for (int rep = 0; rep < 50; ++rep) {
    Rng data_rng(derive_seed(5, static_cast<std::uint64_t>(rep)));
    const SimData d = generate(DgpConfig{3, 0.0, 200, 0.1, 0.5, false}, data_rng);
    const auto sr = standardize(d.y, d.X);
    Rng rng(derive_seed(6, static_cast<std::uint64_t>(rep)));
    const auto b = benchmark_estimate(sr, cfg, rng);
    const MatrixXd raw = [&] {
      MatrixXd r(b.beta_bar.rows(), 3);
      for (int i = 0; i < r.rows(); ++i) r.row(i) = sr.raw_coefficients(b.beta_bar.row(i).transpose()).transpose();
      return r;
    }();
    const VectorXd mean = raw.colwise().mean().transpose();
    const VectorXd sd =
        ((raw.rowwise() - mean.transpose()).colwise().squaredNorm() / (raw.rows() - 1.0)).cwiseSqrt().transpose();
    for (int k = 0; k < 3; ++k) {
      ++total;
      if (std::abs(mean(k) - d.beta(k)) <= 3.0 * sd(k)) ++covered;
    }
  }
  CHECK(covered >= 0.9 * total);
}

TEST_CASE("random-walk coefficients are tracked better than by a constant fit") {
  Rng rng(12);
  const Index T = 300;
  MatrixXd X(T, 2), path(T, 2);
  VectorXd y(T);
  VectorXd b = VectorXd::Zero(2);
  for (Index t = 0; t < T; ++t) {
    b(0) += 0.1 * draw_normal(rng);
    b(1) += 0.1 * draw_normal(rng);
    path.row(t) = b.transpose();
    X(t, 0) = draw_normal(rng);
    X(t, 1) = draw_normal(rng);
    y(t) = X.row(t).dot(b) + 0.1 * draw_normal(rng);
  }
  const auto sr = standardize(y, X);
  BenchmarkConfig cfg;
  cfg.mcmc.draws = 800;
  cfg.mcmc.burn_in = 300;
  Rng mc(13);
  const auto est = benchmark_estimate(sr, cfg, mc);
  MatrixXd raw_path(T, 2);
  for (Index t = 0; t < T; ++t) raw_path.row(t) = sr.raw_coefficients(est.state_mean.row(t).transpose()).transpose();
  const VectorXd ols = X.colPivHouseholderQr().solve(y);
  const double mse_state = (raw_path - path).squaredNorm() / (2.0 * T);
  const double mse_const = (path.rowwise() - ols.transpose()).squaredNorm() / (2.0 * T);
  CHECK(mse_state < mse_const);
}

TEST_CASE("benchmark estimator is reproducible") {
  Rng data_rng(14);
  const SimData d = generate(DgpConfig{2, 0.5, 80, 0.1, 0.5, false}, data_rng);
  BenchmarkConfig cfg;
  cfg.mcmc.draws = 50;
  cfg.mcmc.burn_in = 10;
  CHECK(benchmark_constant_coefficients(d.y, d.X, cfg, 3) == benchmark_constant_coefficients(d.y, d.X, cfg, 3));
}
