/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "regression.hpp"

#include <numeric>

#include "error.hpp"

namespace irga {

namespace {
constexpr const char* kModule = "regression";
}  // namespace

NuisancePriorKind parse_nuisance_prior(const std::string& text) {
  if (text == "ss") return NuisancePriorKind::SpikeSlab;
  if (text == "sbl") return NuisancePriorKind::Sbl;
  throw_config(kModule, "unknown prior '" + text + "' (expected ss or sbl)");
}

std::string to_string(NuisancePriorKind kind) {
  return kind == NuisancePriorKind::SpikeSlab ? "ss" : "sbl";
}

NuisancePrior IrgaConfig::nuisance_prior() const {
  if (prior == NuisancePriorKind::SpikeSlab) return spike_slab;
  return sbl;
}

void IrgaConfig::validate() const {
  spike_slab.validate();
  sbl.validate();
  normal_gamma.validate();
  mcmc.validate();
  if (!(sigma.shape > 0.0) || !(sigma.rate > 0.0)) {
    throw_config(kModule, "sigma prior shape and rate must be positive");
  }
  if (!(vamp.tol > 0.0) || vamp.max_iter < 1 || !(vamp.damping > 0.0) || vamp.damping > 1.0) {
    throw_config(kModule, "need tol > 0, max_iter >= 1 and damping in (0, 1]");
  }
  if (sv_options.smoothing_window < 0) throw_config(kModule, "smoothing window must be >= 0");
}

VectorXd RegressionResult::coefficients(int draw) const {
  VectorXd coef(total_cols());
  const auto& focus = partition.focus;
  const auto& demoted = partition.nuisance;
  for (std::size_t i = 0; i < focus.size(); ++i) {
    coef(focus[i]) = draws.beta(draw, static_cast<Index>(i));
  }
  for (std::size_t i = 0; i < demoted.size(); ++i) {
    coef(demoted[i]) = approx.mu(static_cast<Index>(i));
  }
  return coef;
}

VectorXd RegressionResult::posterior_mean() const {
  VectorXd coef(total_cols());
  const VectorXd focus_mean = draws.beta_mean();
  for (std::size_t i = 0; i < partition.focus.size(); ++i) {
    coef(partition.focus[i]) = focus_mean(static_cast<Index>(i));
  }
  for (std::size_t i = 0; i < partition.nuisance.size(); ++i) {
    coef(partition.nuisance[i]) = approx.mu(static_cast<Index>(i));
  }
  return coef;
}

MatrixXd RegressionResult::tvp_paths() const {
  const Index T = data.T();
  const Index k = static_cast<Index>(tvp_columns.size());
  const Index offset = static_cast<Index>(partition.nuisance.size());
  MatrixXd paths(T, k);
  for (Index t = 0; t < T; ++t) paths.row(t) = approx.mu.segment(offset + t * k, k).transpose();
  return paths;
}

VectorXd RegressionResult::residual_variance() const {
  if (approx.total_var.size() > 0) return approx.total_var;
  return VectorXd::Constant(data.T(), approx.sigma_eps_sq);
}

RegressionResult fit_tvp_regression(const StandardizedRegression& sr, const Partition& partition,
                                    const std::vector<Index>& tvp_columns, const IrgaConfig& config,
                                    std::uint64_t seed) {
  config.validate();
  const Index T = sr.T();
  MatrixXd tvp_regressors(T, static_cast<Index>(tvp_columns.size()));
  for (std::size_t i = 0; i < tvp_columns.size(); ++i) {
    const Index c = tvp_columns[i];
    if (c < 0 || c >= sr.K()) throw_config(kModule, "TVP column out of range");
    tvp_regressors.col(static_cast<Index>(i)) = sr.X.col(c);
  }

  RegressionResult res;
  res.data = sr;
  res.partition = partition;
  res.tvp_columns = tvp_columns;

  const TvpDesign td(std::move(tvp_regressors), config.sv);
  const RotatedSystem rs = rotate_system(sr, td, partition);
  if (rs.complement_dim() < 3) {
    throw_config(kModule, "need at least 3 observations beyond the focus columns");
  }
  const RotatedNuisanceOperator W2(rs);

  // Demoted constants and TVPs share the configured prior; the SV process
  // always gets per-period SBL variances.
  std::vector<PriorBlock> blocks;
  const Index tvp_end = rs.nuisance.tvp_end();
  if (tvp_end > 0) blocks.push_back({0, tvp_end, config.nuisance_prior()});
  std::optional<SvSpec> sv;
  if (config.sv) {
    blocks.push_back({rs.nuisance.eta_begin(), rs.nuisance.cols(), config.sbl});
    sv = SvSpec{rs.nuisance.eta_begin(), T, config.sv_options};
  }

  if (blocks.empty()) {
    // Nothing to approximate: the nuisance block is empty.
    const double rss = rs.y2.squaredNorm();
    const double df = config.sigma.shape + 0.5 * static_cast<double>(rs.complement_dim()) - 1.0;
    res.approx = known_nuisance(VectorXd(), (config.sigma.rate + 0.5 * rss) / df);
  } else {
    res.approx = vamp_run(W2, rs.y2, blocks, config.vamp, config.sigma, sv);
  }

  const ProjectedSystem ps = build_projected_system(rs, res.approx, config.covariance);
  res.omega_jitter = ps.jitter;
  Rng rng(seed);
  res.draws = run_sampler(ps, config.normal_gamma, config.mcmc, rng, seed);
  return res;
}

VectorXd estimate_constant_coefficients(const VectorXd& y, const MatrixXd& X,
                                        const IrgaConfig& config, std::uint64_t seed) {
  const StandardizedRegression sr = standardize(y, X);
  const Partition part = make_regression_partition(sr.K(), sr.T());
  std::vector<Index> tvp(static_cast<std::size_t>(sr.K()));
  std::iota(tvp.begin(), tvp.end(), Index{0});
  return fit_tvp_regression(sr, part, tvp, config, seed).raw_posterior_mean();
}

}  // namespace irga
