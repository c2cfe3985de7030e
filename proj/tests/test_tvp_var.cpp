/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "rng.hpp"
#include "tvp_var.hpp"

using namespace irga;

namespace {

IrgaConfig quick_config(int draws = 300, int burn = 100) {
  IrgaConfig c;
  c.mcmc.draws = draws;
  c.mcmc.burn_in = burn;
  return c;
}

Dataset make_dataset(const MatrixXd& values) {
  Dataset d;
  for (Index j = 0; j < values.cols(); ++j) d.names.push_back("v" + std::to_string(j));
  d.values = values;
  for (Index t = 0; t < values.rows(); ++t) {
    d.time_index.push_back(std::to_string(2000 + t / 12) + "-" + (t % 12 < 9 ? "0" : "") + std::to_string(t % 12 + 1));
  }
  d.transform_codes.assign(static_cast<std::size_t>(values.cols()), 1);
  return d;
}

MatrixXd simulate_var1(const MatrixXd& A, Index T, std::uint64_t seed, double noise = 1.0) {
  Rng rng(seed);
  const Index N = A.rows();
  MatrixXd Y = MatrixXd::Zero(T, N);
  for (Index t = 1; t < T; ++t) {
    VectorXd e(N);
    for (Index j = 0; j < N; ++j) e(j) = noise * draw_normal(rng);
    Y.row(t) = (A * Y.row(t - 1).transpose() + e).transpose();
  }
  return Y;
}

VarCoefficients zero_system(Index N, Index P, const VectorXd& sigma_sq) {
  VarCoefficients c;
  c.intercept = VectorXd::Zero(N);
  c.B0 = MatrixXd::Zero(N, N);
  c.A.assign(static_cast<std::size_t>(P), MatrixXd::Zero(N, N));
  c.sigma_sq = sigma_sq;
  return c;
}

}  // namespace

TEST_CASE("single-variable VAR is the lagged TVP regression") {
  MatrixXd A(1, 1);
  A << 0.6;
  const Dataset ds = make_dataset(simulate_var1(A, 120, 1));
  VarSpec spec;
  spec.lags = 1;
  const IrgaConfig cfg = quick_config();
  const VarModel m = estimate_var(ds, spec, cfg, 5);
  REQUIRE(m.equations.size() == 1);

  const VectorXd y = ds.values.col(0).tail(119);
  const MatrixXd X = ds.values.col(0).head(119);
  const auto sr = with_intercept(standardize(y, X));
  const auto part = make_partition(VarLayout{1, 1, 0, true}, 119, spec.mode);
  const auto direct = fit_tvp_regression(sr, part, {0, 1}, cfg, derive_seed(5, 0, 0));
  CHECK(m.equations[0].fit.posterior_mean() == direct.posterior_mean());
}

TEST_CASE("equation designs grow by one contemporaneous column") {
  const MatrixXd A = 0.3 * MatrixXd::Identity(3, 3);
  const Dataset ds = make_dataset(simulate_var1(A, 80, 2));
  VarSpec spec;
  spec.lags = 2;
  const VarModel m = estimate_var(ds, spec, quick_config(20, 10), 3);
  for (Index j = 0; j < 3; ++j) {
    CHECK(m.equations[static_cast<std::size_t>(j)].fit.total_cols() == 1 + 3 * 2 + j);
    CHECK(m.equations[static_cast<std::size_t>(j)].fit.data.T() == 78);
  }
  CHECK(m.retained() == 10);
}

TEST_CASE("constant VAR(1) coefficients are recovered") {
  MatrixXd A(3, 3);
  A << 0.5, 0.2, 0.0,
       0.0, 0.4, -0.2,
       0.1, 0.0, 0.3;
  const Dataset ds = make_dataset(simulate_var1(A, 400, 3));
  VarSpec spec;
  spec.lags = 1;
  const VarModel m = estimate_var(ds, spec, quick_config(600, 200), 4);
  for (Index j = 0; j < 3; ++j) {
    const VectorXd b = m.equations[static_cast<std::size_t>(j)].fit.raw_posterior_mean();
    for (Index k = 0; k < 3; ++k) CHECK(std::abs(b(1 + k) - A(j, k)) < 0.12);
    for (Index k = 0; k < j; ++k) CHECK(std::abs(b(4 + k)) < 0.15);
  }
}

TEST_CASE("parallel equation estimation equals sequential") {
  const MatrixXd A = 0.4 * MatrixXd::Identity(4, 4);
  const Dataset ds = make_dataset(simulate_var1(A, 90, 4));
  VarSpec spec;
  spec.lags = 1;
  IrgaConfig cfg = quick_config(100, 50);
  cfg.sv = true;
  const VarModel a = estimate_var(ds, spec, cfg, 9, 1);
  const VarModel b = estimate_var(ds, spec, cfg, 9, 3);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(a.equations[j].fit.draws.beta == b.equations[j].fit.draws.beta);
    CHECK(a.equations[j].fit.residual_variance() == b.equations[j].fit.residual_variance());
  }
}

TEST_CASE("ordering permutes the model variables") {
  const MatrixXd A = 0.4 * MatrixXd::Identity(3, 3);
  const Dataset ds = make_dataset(simulate_var1(A, 80, 5));
  VarSpec spec;
  spec.lags = 1;
  spec.ordering = {"v2", "v0", "v1"};
  const VarModel m = estimate_var(ds, spec, quick_config(40, 20), 1);
  CHECK(m.names == std::vector<std::string>{"v2", "v0", "v1"});
  CHECK(m.history.col(0) == ds.values.col(2));
  CHECK(m.variable("v1") == 2);
  spec.ordering = {"v2", "nope", "v1"};
  CHECK_THROWS_AS(estimate_var(ds, spec, quick_config(40, 20), 1), Error);
}

TEST_CASE("zero system forecasts its intercept with zero variance") {
  auto c = zero_system(2, 1, VectorXd::Zero(2));
  c.intercept << 1.5, -2.0;
  Rng rng(1);
  const auto fe = simulate_forecast({c, c}, MatrixXd::Ones(5, 2), 4, rng);
  for (Index h = 0; h < 4; ++h) {
    CHECK(fe.mean(h, 0) == 1.5);
    CHECK(fe.mean(h, 1) == -2.0);
    CHECK(fe.variance.row(h).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("deterministic AR(1) forecasts decay geometrically") {
  auto c = zero_system(1, 1, VectorXd::Zero(1));
  c.A[0](0, 0) = 0.5;
  Rng rng(2);
  const auto fe = simulate_forecast({c}, MatrixXd::Constant(3, 1, 1.0), 6, rng);
  for (Index h = 0; h < 6; ++h) CHECK(fe.mean(h, 0) == doctest::Approx(std::pow(0.5, h + 1)).epsilon(1e-14));
}

TEST_CASE("forecast variance of a random walk grows linearly") {
  auto c = zero_system(1, 1, VectorXd::Constant(1, 1.0));
  c.A[0](0, 0) = 1.0;
  std::vector<VarCoefficients> draws(20000, c);
  Rng rng(3);
  const auto fe = simulate_forecast(draws, MatrixXd::Zero(2, 1), 4, rng);
  for (Index h = 0; h < 4; ++h) CHECK(fe.variance(h, 0) == doctest::Approx(h + 1.0).epsilon(0.05));
}

TEST_CASE("Gaussian log score") {
  CHECK(gaussian_log_score(0.0, 0.0, 1.0) == doctest::Approx(-0.9189385332046727).epsilon(1e-14));
  CHECK(gaussian_log_score(1.0, 0.0, 4.0) == doctest::Approx(-0.5 * std::log(8.0 * M_PI) - 0.125).epsilon(1e-14));
}

TEST_CASE("evaluation metrics") {
  std::vector<ForecastRecord> recs;
  for (int i = 0; i < 4; ++i) recs.push_back({"2001-0" + std::to_string(i + 1), 1, "a", 0.0, 1.0, (i % 2 ? 1.0 : -1.0)});
  recs.push_back({"2001-05", 1, "a", 0.0, 1.0, std::nullopt});
  const Table t = evaluate(recs, &recs);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.number(0, "count") == 4);
  CHECK(t.number(0, "rmse") == doctest::Approx(1.0));
  CHECK(t.number(0, "rmse_ratio") == 1.0);
  CHECK(t.number(0, "lps_diff") == 0.0);

  std::vector<ForecastRecord> perfect = recs;
  for (auto& r : perfect) r.mean = r.realized.value_or(0.0);
  CHECK(evaluate(perfect).number(0, "rmse") == 0.0);
  CHECK(std::isnan(evaluate(perfect).number(0, "rmse_ratio")));
}

TEST_CASE("forecast records cover origins, horizons and variables") {
  const MatrixXd A = 0.5 * MatrixXd::Identity(2, 2);
  const Dataset ds = make_dataset(simulate_var1(A, 60, 6));
  VarSpec spec;
  spec.lags = 1;
  const auto origins = resolve_origins(ds, "2004-08..end");
  REQUIRE(origins.size() == 5);
  ForecastConfig fc;
  fc.horizons = {1, 3};
  fc.draws_per_forecast = 50;
  const auto recs = forecast(ds, spec, quick_config(100, 50), origins, fc);
  CHECK(recs.size() == 5 * 2 * 2);
  int realized = 0;
  for (const auto& r : recs) {
    CHECK(r.variance > 0.0);
    if (r.realized) ++realized;
  }
  // origins t = 55..59 of 60 periods: four score at h = 1, two at h = 3
  CHECK(realized == 2 * (4 + 2));
  CHECK(forecast_table(recs).rows.size() == recs.size());

  fc.workers = 2;
  const auto again = forecast(ds, spec, quick_config(100, 50), origins, fc);
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(recs[i].mean == again[i].mean);
}

TEST_CASE("zero system IRF is the Cholesky impact with a zero tail") {
  VectorXd s2(3);
  s2 << 4.0, 1.0, 9.0;
  const auto c = zero_system(3, 2, s2);
  const MatrixXd r = irf_from_coefficients(c, 1, 5);
  REQUIRE(r.rows() == 6);
  CHECK(r(0, 0) == 0.0);
  CHECK(r(0, 1) == 1.0);
  CHECK(r(0, 2) == 0.0);
  CHECK(r.bottomRows(5).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two-variable IRF matches hand-derived responses") {
  const double a11 = 0.5, a12 = 0.1, a21 = -0.2, a22 = 0.3, b = 0.4, s1 = 1.5, s2 = 0.7;
  auto c = zero_system(2, 1, VectorXd::Zero(2));
  c.sigma_sq << s1 * s1, s2 * s2;
  c.B0(1, 0) = b;
  c.A[0] << a11, a12, a21, a22;
  // reduced form y_t = M y_{t-1} + u_t with M = (I - B0)^-1 A
  const double m11 = a11, m12 = a12, m21 = b * a11 + a21, m22 = b * a12 + a22;
  const MatrixXd r = irf_from_coefficients(c, 0, 4);
  double x = s1, y = b * s1;
  for (int h = 0; h <= 4; ++h) {
    CHECK(std::abs(r(h, 0) - x) < 1e-8);
    CHECK(std::abs(r(h, 1) - y) < 1e-8);
    const double nx = m11 * x + m12 * y;
    y = m21 * x + m22 * y;
    x = nx;
  }
  const MatrixXd r2 = irf_from_coefficients(c, 1, 4);
  CHECK(r2(0, 0) == 0.0);
  CHECK(std::abs(r2(0, 1) - s2) < 1e-12);
  CHECK(std::abs(r2(1, 0) - a12 * s2) < 1e-12);
}

TEST_CASE("companion spectral radius") {
  auto c = zero_system(1, 2, VectorXd::Ones(1));
  c.A[0](0, 0) = 0.5;
  c.A[1](0, 0) = 0.3;
  // roots of z^2 - 0.5 z - 0.3
  CHECK(companion_spectral_radius(c) == doctest::Approx((0.5 + std::sqrt(0.25 + 1.2)) / 2.0));
}

TEST_CASE("estimated IRFs have ordered bands and respect recursion") {
  const MatrixXd A = 0.4 * MatrixXd::Identity(3, 3);
  const Dataset ds = make_dataset(simulate_var1(A, 100, 7));
  VarSpec spec;
  spec.lags = 1;
  const VarModel m = estimate_var(ds, spec, quick_config(200, 100), 2);
  const IrfResult irf = impulse_response(m, "v2", 8);
  CHECK(irf.median.rows() == 9);
  CHECK(irf.draws == 100);
  CHECK(((irf.lower.array() <= irf.median.array()) && (irf.median.array() <= irf.upper.array())).all());
  CHECK(irf.median(0, 0) == 0.0);
  CHECK(irf.median(0, 1) == 0.0);
  CHECK(irf.median(0, 2) > 0.0);
  CHECK(irf.to_table().rows.size() == 9 * 3);
  CHECK_THROWS_AS(impulse_response(m, "zz", 8), Error);
}
