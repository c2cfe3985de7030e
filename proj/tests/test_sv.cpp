/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "sv.hpp"

using namespace irga;

namespace {

// Seven-component log chi-square(1) mixture, transcribed separately from the
// library: weights, component means before the -1.2704 shift, variances.
constexpr double kPi[7] = {0.00730, 0.10556, 0.00002, 0.04395, 0.34001, 0.24566, 0.25750};
constexpr double kM[7] = {-10.12999, -3.97281, -8.56686, 2.77786, 0.61942, 1.79518, -1.08819};
constexpr double kV[7] = {5.79596, 2.61369, 5.17950, 0.16735, 0.64009, 0.34023, 1.26261};

double reference_h_at_one() {
  double s = 0.0;
  for (int i = 0; i < 7; ++i) s += kPi[i] * (kM[i] - 1.2704);
  return -s;  // 1.2703991528
}

}  // namespace

TEST_CASE("mixture constants") {
  const auto& mix = KscMixture::standard();
  double total = 0.0;
  for (int i = 0; i < 7; ++i) {
    total += mix.pi[i];
    CHECK(mix.pi[i] == kPi[i]);
    CHECK(mix.mu_v[i] == doctest::Approx(kM[i] - 1.2704).epsilon(1e-15));
    CHECK(mix.sigma_v_sq[i] == kV[i]);
  }
  CHECK(std::abs(total - 1.0) < 1e-10);
  // Mixture mean of log chi^2_1 is close to the exact value -1.2704.
  CHECK(mix.mean_offset() == doctest::Approx(-1.2704).epsilon(1e-5));
}

TEST_CASE("unit eta gives minus the mixture mean") {
  VectorXd eta(1);
  eta << 1.0;
  CHECK(estimate_h(eta)(0) == doctest::Approx(reference_h_at_one()).epsilon(1e-14));
  CHECK(reference_h_at_one() == doctest::Approx(1.2703991528).epsilon(1e-10));
}

TEST_CASE("shift equivariance is exact") {
  std::mt19937_64 g(1);
  const VectorXd eta = oracle::random_vector(g, 200);
  const VectorXd h = estimate_h(eta);
  for (double k : {-6.0, -1.0, 0.5, 3.0, 10.0}) {
    const double c = std::exp(k / 2.0);
    const VectorXd hs = estimate_h(c * eta);
    const double shift = 2.0 * std::log(c);
    CHECK((hs.array() - h.array() - shift).abs().maxCoeff() < 1e-13);
  }
  // Sign does not matter.
  CHECK((estimate_h(-eta) - h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("estimator depends on the mixture only through its mean") {
  std::mt19937_64 g(2);
  const VectorXd eta = oracle::random_vector(g, 50);
  const VectorXd h = estimate_h(eta);
  const double offset = KscMixture::standard().mean_offset();
  for (Index t = 0; t < eta.size(); ++t) {
    CHECK(h(t) == doctest::Approx(std::log(eta(t) * eta(t)) - offset).epsilon(1e-14));
  }
  // Altering the component variances leaves the estimate unchanged.
  KscMixture alt = KscMixture::standard();
  for (double& v : alt.sigma_v_sq) v *= 3.0;
  CHECK((estimate_h(eta, alt) - h).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constant eta path gives a constant h path") {
  const VectorXd h = estimate_h(VectorXd::Constant(30, 0.37));
  CHECK((h.array() - h(0)).abs().maxCoeff() == 0.0);
}

TEST_CASE("exact zeros use the floor") {
  VectorXd eta(2);
  eta << 0.0, 1e-300;
  const VectorXd h = estimate_h(eta);
  CHECK(h(0) == doctest::Approx(std::log(1e-8) - KscMixture::standard().mean_offset()));
  CHECK(std::isfinite(h(1)));
}

TEST_CASE("total variance") {
  VectorXd h(3);
  h << 0.0, -800.0, 2.0;
  const VectorXd v = total_variance(h, 1.0);
  CHECK(v(0) == 2.0);
  CHECK(v(1) == 1.0);
  CHECK(v(2) == doctest::Approx(std::exp(2.0) + 1.0));
  VectorXd huge(1);
  huge << 1e6;
  CHECK(std::isfinite(total_variance(huge, 1.0)(0)));
}

TEST_CASE("moving average smoothing") {
  VectorXd x(5);
  x << 1, 2, 3, 4, 5;
  CHECK(moving_average(x, 1) == x);
  CHECK(moving_average(x, 0) == x);
  const VectorXd m = moving_average(x, 3);
  CHECK(m(2) == doctest::Approx(3.0));
  CHECK(m(0) == doctest::Approx(1.5));  // truncated window at the edges
  CHECK(m(4) == doctest::Approx(4.5));
  SvOptions opt;
  opt.smoothing_window = 3;
  const VectorXd eta = VectorXd::Constant(10, 2.0);
  CHECK((estimate_h(eta, KscMixture::standard(), opt) - estimate_h(eta)).cwiseAbs().maxCoeff() < 1e-14);
}
