/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sim.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "worker_pool.hpp"

namespace irga {

namespace {

constexpr const char* kModule = "sim";

std::uint64_t dataset_seed(std::uint64_t base, Index K, double p_bar, int rep) {
  const auto p_key = static_cast<std::uint64_t>(std::llround(p_bar * 1e6));
  return derive_seed(derive_seed(base, static_cast<std::uint64_t>(K), p_key),
                     static_cast<std::uint64_t>(rep));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void DgpConfig::validate() const {
  if (K < 1 || T < 2) throw_config(kModule, "need K >= 1 and T >= 2");
  if (!(p_bar >= 0.0 && p_bar <= 1.0)) throw_config(kModule, "p_bar must lie in [0, 1]");
  if (!(sigma_eps >= 0.0) || !(tvp_sd >= 0.0)) throw_config(kModule, "scales must be nonnegative");
}

SimData generate(const DgpConfig& config, Rng& rng) {
  config.validate();
  const Index T = config.T;
  const Index K = config.K;
  SimData d;
  d.beta.resize(K);
  for (Index k = 0; k < K; ++k) d.beta(k) = draw_normal(rng);
  d.X.resize(T, K);
  d.gamma = MatrixXd::Zero(T, K);
  d.y.resize(T);
  d.active.reserve(static_cast<std::size_t>(config.per_coefficient_switch ? T * K : T));
  auto bernoulli = [&] { return draw_uniform(rng) < config.p_bar ? 1 : 0; };
  for (Index t = 0; t < T; ++t) {
    const int s_t = config.per_coefficient_switch ? 0 : bernoulli();
    if (!config.per_coefficient_switch) d.active.push_back(s_t);
    for (Index k = 0; k < K; ++k) {
      const int s = config.per_coefficient_switch ? bernoulli() : s_t;
      if (config.per_coefficient_switch) d.active.push_back(s);
      if (s) d.gamma(t, k) = config.tvp_sd * draw_normal(rng);
    }
    for (Index k = 0; k < K; ++k) d.X(t, k) = draw_normal(rng);
    d.y(t) = d.X.row(t).dot(d.beta + d.gamma.row(t).transpose()) + config.sigma_eps * draw_normal(rng);
  }
  return d;
}

double mean_absolute_error(const VectorXd& estimate, const VectorXd& truth) {
  if (estimate.size() != truth.size() || truth.size() == 0) {
    throw_config(kModule, "MAE needs equal, nonempty vectors");
  }
  return (estimate - truth).cwiseAbs().mean();
}

double mae_ratio(const std::vector<VectorXd>& a, const std::vector<VectorXd>& b,
                 const std::vector<VectorXd>& truth) {
  if (a.size() != truth.size() || b.size() != truth.size() || truth.empty()) {
    throw_config(kModule, "MAE ratio needs one estimate per replication on both arms");
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < truth.size(); ++r) {
    sum += mean_absolute_error(a[r], truth[r]) / mean_absolute_error(b[r], truth[r]);
  }
  return sum / static_cast<double>(truth.size());
}

Table mae_experiment(const MaeExperimentConfig& config) {
  if (config.replications < 1) throw_config(kModule, "need at least one replication");
  if (config.panels.empty()) throw_config(kModule, "no prior panels configured");
  for (const auto& p : config.panels) p.irga.validate();

  struct Job {
    Index K;
    double p_bar;
    int rep;
  };
  std::vector<Job> jobs;
  for (Index K : config.K_grid) {
    for (double p : config.p_grid) {
      for (int r = 0; r < config.replications; ++r) jobs.push_back({K, p, r});
    }
  }
  const std::size_t n_panels = config.panels.size();
  std::vector<VectorXd> truth(jobs.size()), bench(jobs.size());
  std::vector<std::vector<VectorXd>> irga(n_panels, std::vector<VectorXd>(jobs.size()));

  parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
    const Job& job = jobs[i];
    DgpConfig dgp = config.dgp;
    dgp.K = job.K;
    dgp.p_bar = job.p_bar;
    const std::uint64_t seed = dataset_seed(config.seed, job.K, job.p_bar, job.rep);
    Rng rng(seed);
    const SimData data = generate(dgp, rng);
    truth[i] = data.beta;
    for (std::size_t p = 0; p < n_panels; ++p) {
      irga[p][i] = estimate_constant_coefficients(data.y, data.X, config.panels[p].irga,
                                                  derive_seed(seed, 1, p));
    }
    if (config.run_benchmark) {
      bench[i] = benchmark_constant_coefficients(data.y, data.X, config.benchmark, derive_seed(seed, 2));
    }
  });

  Table table;
  table.columns = {"panel", "K", "p_bar", "reps", "mae_irga", "mae_benchmark", "ratio"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t p = 0; p < n_panels; ++p) {
    for (std::size_t start = 0; start < jobs.size(); start += static_cast<std::size_t>(config.replications)) {
      const auto end = start + static_cast<std::size_t>(config.replications);
      std::vector<VectorXd> a(irga[p].begin() + start, irga[p].begin() + end);
      std::vector<VectorXd> t(truth.begin() + start, truth.begin() + end);
      double mae_a = 0.0, mae_b = nan, ratio = nan;
      for (std::size_t r = 0; r < a.size(); ++r) mae_a += mean_absolute_error(a[r], t[r]);
      mae_a /= static_cast<double>(a.size());
      if (config.run_benchmark) {
        std::vector<VectorXd> b(bench.begin() + start, bench.begin() + end);
        mae_b = 0.0;
        for (std::size_t r = 0; r < b.size(); ++r) mae_b += mean_absolute_error(b[r], t[r]);
        mae_b /= static_cast<double>(b.size());
        ratio = mae_ratio(a, b, t);
      }
      table.add_row({config.panels[p].name, static_cast<std::int64_t>(jobs[start].K), jobs[start].p_bar,
                     static_cast<std::int64_t>(config.replications), mae_a, mae_b, ratio});
    }
  }
  return table;
}

Table timing_experiment(const TimingConfig& config) {
  Table table;
  table.columns = {"K", "draws", "irga_seconds", "benchmark_seconds"};
  for (Index K : config.K_grid) {
    DgpConfig dgp;
    dgp.K = K;
    dgp.T = config.T;
    dgp.p_bar = config.p_bar;
    const std::uint64_t seed = dataset_seed(config.seed, K, config.p_bar, 0);
    Rng rng(seed);
    const SimData data = generate(dgp, rng);

    IrgaConfig irga = config.irga;
    irga.mcmc.draws = config.draws;
    irga.mcmc.burn_in = config.burn_in;
    auto start = std::chrono::steady_clock::now();
    (void)estimate_constant_coefficients(data.y, data.X, irga, derive_seed(seed, 1));
    const double irga_seconds = seconds_since(start);

    double bench_seconds = std::numeric_limits<double>::quiet_NaN();
    if (config.run_benchmark) {
      BenchmarkConfig bench = config.benchmark;
      bench.mcmc.draws = config.draws;
      bench.mcmc.burn_in = config.burn_in;
      start = std::chrono::steady_clock::now();
      (void)benchmark_constant_coefficients(data.y, data.X, bench, derive_seed(seed, 2));
      bench_seconds = seconds_since(start);
    }
    table.add_row({static_cast<std::int64_t>(K), static_cast<std::int64_t>(config.draws), irga_seconds,
                   bench_seconds});
  }
  return table;
}

}  // namespace irga
