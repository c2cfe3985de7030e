/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <array>

namespace irga {

using Eigen::Index;
using Eigen::VectorXd;

/// Seven-component Gaussian mixture approximating the log chi-square(1)
/// distribution. Constants from Kim, Shephard & Chib (1998), Table 4; the
/// means include the -1.2704 offset so they describe log chi^2_1 directly.
struct KscMixture {
  std::array<double, 7> pi;
  std::array<double, 7> mu_v;
  std::array<double, 7> sigma_v_sq;

  static const KscMixture& standard();
  /// sum_i pi_i mu_{v,i}
  double mean_offset() const;
};

struct SvOptions {
  double zero_floor = 1e-8;  // c in log(eta^2 + c) when an eta estimate is exactly zero
  int smoothing_window = 0;  // centred moving average over h; 0 or 1 disables
  double max_log_variance = 700.0;
};

/// h_t = sum_i pi_i (log eta_t^2 - mu_{v,i}).
VectorXd estimate_h(const VectorXd& eta_hat, const KscMixture& mix = KscMixture::standard(),
                    const SvOptions& options = {});

/// sigma_t^2 = exp(h_t) + sigma_eps^2 with h capped to keep exp finite.
VectorXd total_variance(const VectorXd& h_hat, double sigma_eps_sq, const SvOptions& options = {});

VectorXd moving_average(const VectorXd& x, int window);

}  // namespace irga
