/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "error.hpp"
#include "sim.hpp"

using namespace irga;

TEST_CASE("p_bar = 0 gives constant coefficients") {
  Rng rng(1);
  const SimData d = generate(DgpConfig{4, 0.0, 300, 0.1, 0.5, false}, rng);
  CHECK(d.gamma.cwiseAbs().maxCoeff() == 0.0);
  for (int s : d.active) CHECK(s == 0);
  const VectorXd fit = d.X * d.beta;
  CHECK((d.y - fit).array().square().mean() == doctest::Approx(0.01).epsilon(0.2));
}

TEST_CASE("p_bar = 1 gives TVP deviations with variance tvp_sd^2") {
  Rng rng(2);
  const SimData d = generate(DgpConfig{10, 1.0, 2000, 0.1, 0.5, false}, rng);
  const double var = d.gamma.array().square().mean();
  CHECK(var == doctest::Approx(0.25).epsilon(0.03));
  for (int s : d.active) CHECK(s == 1);
}

TEST_CASE("DGP moments") {
  Rng rng(3);
  const SimData d = generate(DgpConfig{20, 0.5, 4000, 0.1, 0.5, false}, rng);
  CHECK(d.X.mean() == doctest::Approx(0.0).epsilon(0.01));
  CHECK(d.X.array().square().mean() == doctest::Approx(1.0).epsilon(0.02));
  double share = 0.0;
  for (int s : d.active) share += s;
  CHECK(share / static_cast<double>(d.active.size()) == doctest::Approx(0.5).epsilon(0.05));
  // gamma rows are all zero or all nonzero when the switch is per period
  for (Index t = 0; t < d.gamma.rows(); ++t) {
    const bool any = d.gamma.row(t).cwiseAbs().maxCoeff() > 0.0;
    CHECK(any == (d.active[static_cast<std::size_t>(t)] == 1));
  }
}

TEST_CASE("per-coefficient switching draws one indicator per entry") {
  Rng rng(4);
  const SimData d = generate(DgpConfig{3, 0.3, 100, 0.1, 0.5, true}, rng);
  CHECK(d.active.size() == 300);
}

TEST_CASE("generation is a function of the seed") {
  Rng a(9), b(9), c(10);
  const DgpConfig cfg{5, 0.5, 50, 0.1, 0.5, false};
  const SimData x = generate(cfg, a), y = generate(cfg, b), z = generate(cfg, c);
  CHECK(x.y == y.y);
  CHECK(x.X == y.X);
  CHECK(x.y != z.y);
}

TEST_CASE("DGP validation") {
  CHECK_THROWS_AS((DgpConfig{0, 0.5, 50, 0.1, 0.5, false}.validate()), Error);
  CHECK_THROWS_AS((DgpConfig{5, 1.5, 50, 0.1, 0.5, false}.validate()), Error);
  CHECK_THROWS_AS((DgpConfig{5, 0.5, 50, -0.1, 0.5, false}.validate()), Error);
}

TEST_CASE("MAE and MAE ratio") {
  VectorXd truth(2), e(2);
  truth << 1.0, -1.0;
  e << 1.5, -2.0;
  CHECK(mean_absolute_error(e, truth) == doctest::Approx(0.75));
  std::vector<VectorXd> a{e, e}, t{truth, truth};
  CHECK(mae_ratio(a, a, t) == 1.0);
  std::vector<VectorXd> b{truth + VectorXd::Constant(2, 0.375), truth + VectorXd::Constant(2, 0.375)};
  CHECK(mae_ratio(a, b, t) == doctest::Approx(2.0));
  CHECK_THROWS_AS(mae_ratio(a, {e}, t), Error);
}

TEST_CASE("small MAE experiment is deterministic and well formed") {
  MaeExperimentConfig cfg;
  cfg.K_grid = {3};
  cfg.p_grid = {0.0, 1.0};
  cfg.replications = 2;
  cfg.dgp.T = 80;
  cfg.seed = 7;
  MaePanel ss{"ss", {}};
  ss.irga.mcmc.draws = 200;
  ss.irga.mcmc.burn_in = 100;
  MaePanel sbl = ss;
  sbl.name = "sbl";
  sbl.irga.prior = NuisancePriorKind::Sbl;
  cfg.panels = {ss, sbl};
  cfg.benchmark.mcmc.draws = 200;
  cfg.benchmark.mcmc.burn_in = 100;
  const Table t1 = mae_experiment(cfg);
  REQUIRE(t1.rows.size() == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(t1.number(r, "mae_irga") > 0.0);
    CHECK(std::isfinite(t1.number(r, "ratio")));
  }
  // both panels share the benchmark run on the same data
  CHECK(t1.number(0, "mae_benchmark") == t1.number(2, "mae_benchmark"));
  CHECK(t1.to_csv() == mae_experiment(cfg).to_csv());

  cfg.workers = 2;
  CHECK(t1.to_csv() == mae_experiment(cfg).to_csv());

  cfg.run_benchmark = false;
  const Table t2 = mae_experiment(cfg);
  CHECK(std::isnan(t2.number(0, "ratio")));
  CHECK(t2.number(0, "mae_irga") == t1.number(0, "mae_irga"));
}

TEST_CASE("timing experiment reports positive wall-clock") {
  TimingConfig cfg;
  cfg.K_grid = {3};
  cfg.draws = 100;
  cfg.burn_in = 50;
  cfg.T = 60;
  const Table t = timing_experiment(cfg);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.number(0, "irga_seconds") > 0.0);
  CHECK(t.number(0, "benchmark_seconds") > 0.0);
}
