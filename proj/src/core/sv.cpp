/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sv.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace irga {

namespace {
constexpr const char* kModule = "sv";
}  // namespace

const KscMixture& KscMixture::standard() {
  constexpr double kOffset = 1.2704;
  static const KscMixture mix{
      {0.00730, 0.10556, 0.00002, 0.04395, 0.34001, 0.24566, 0.25750},
      {-10.12999 - kOffset, -3.97281 - kOffset, -8.56686 - kOffset, 2.77786 - kOffset,
       0.61942 - kOffset, 1.79518 - kOffset, -1.08819 - kOffset},
      {5.79596, 2.61369, 5.17950, 0.16735, 0.64009, 0.34023, 1.26261}};
  return mix;
}

double KscMixture::mean_offset() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) acc += pi[i] * mu_v[i];
  return acc;
}

VectorXd estimate_h(const VectorXd& eta_hat, const KscMixture& mix, const SvOptions& options) {
  double weight = 0.0;
  for (double p : mix.pi) weight += p;
  const double offset = mix.mean_offset();
  VectorXd h(eta_hat.size());
  for (Index t = 0; t < eta_hat.size(); ++t) {
    const double e = eta_hat(t);
    if (!std::isfinite(e)) throw_numerical(kModule, "non-finite eta estimate");
    const double log_sq = e == 0.0 ? std::log(options.zero_floor) : 2.0 * std::log(std::abs(e));
    h(t) = weight * log_sq - offset;
  }
  if (options.smoothing_window > 1) h = moving_average(h, options.smoothing_window);
  return h;
}

VectorXd total_variance(const VectorXd& h_hat, double sigma_eps_sq, const SvOptions& options) {
  if (!(sigma_eps_sq > 0.0)) throw_numerical(kModule, "sigma_eps^2 must be positive");
  VectorXd out(h_hat.size());
  for (Index t = 0; t < h_hat.size(); ++t) {
    out(t) = std::exp(std::min(h_hat(t), options.max_log_variance)) + sigma_eps_sq;
  }
  return out;
}

VectorXd moving_average(const VectorXd& x, int window) {
  if (window <= 1) return x;
  const Index n = x.size();
  const Index half = window / 2;
  VectorXd out(n);
  for (Index t = 0; t < n; ++t) {
    const Index lo = std::max<Index>(0, t - half);
    const Index hi = std::min<Index>(n - 1, t + half);
    out(t) = x.segment(lo, hi - lo + 1).mean();
  }
  return out;
}

}  // namespace irga
