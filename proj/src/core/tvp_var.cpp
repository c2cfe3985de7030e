/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "tvp_var.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "error.hpp"
#include "worker_pool.hpp"

namespace irga {

namespace {

constexpr const char* kModule = "tvp_var";

Dataset ordered(const Dataset& ds, const VarSpec& spec) {
  if (spec.lags < 1) throw_config(kModule, "lags must be >= 1");
  if (spec.ordering.empty()) return ds;
  if (spec.ordering.size() != ds.names.size()) {
    throw_config(kModule, "ordering must list every variable exactly once");
  }
  auto sorted = spec.ordering;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw_config(kModule, "ordering lists a variable twice");
  }
  return ds.select(spec.ordering);
}

// Equation j regressors without the intercept: lags 1..P of all variables,
// then the contemporaneous values of variables 0..j-1.
void equation_design(const MatrixXd& Y, Index lags, Index j, VectorXd& y, MatrixXd& X) {
  const Index T = Y.rows() - lags;
  const Index N = Y.cols();
  y = Y.col(j).tail(T);
  X.resize(T, N * lags + j);
  for (Index l = 1; l <= lags; ++l) X.middleCols((l - 1) * N, N) = Y.middleRows(lags - l, T);
  if (j > 0) X.rightCols(j) = Y.block(lags, 0, T, j);
}

double quantile(std::vector<double>& v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

int VarModel::retained() const {
  return equations.empty() ? 0 : equations.front().fit.draws.retained();
}

Index VarModel::variable(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Index>(i);
  }
  throw_config(kModule, "unknown variable '" + name + "'");
}

VarModel estimate_var(const Dataset& ds, const VarSpec& spec, const IrgaConfig& config,
                      std::uint64_t seed, int workers, std::uint64_t origin_tag,
                      const std::optional<VectorXd>& fixed_scales) {
  const Dataset data = ordered(ds, spec);
  data.validate();
  const Index N = data.cols();
  const Index P = spec.lags;
  const Index T = data.rows() - P;
  if (T < 3) throw_config(kModule, "estimation window is shorter than the lag order");
  if (fixed_scales && fixed_scales->size() != N) throw_config(kModule, "fixed scales do not match the variables");

  VarModel model;
  model.names = data.names;
  model.lags = P;
  model.mode = spec.mode;
  model.history = data.values;
  model.periods = data.time_index;
  model.equations.resize(static_cast<std::size_t>(N));

  // Partition feasibility is checked up front so the error is not raised
  // from a worker thread in arbitrary order.
  for (Index j = 0; j < N; ++j) make_partition(VarLayout{N, P, j, true}, T, spec.mode);

  parallel_for(static_cast<std::size_t>(N), workers, [&](std::size_t jj) {
    const auto j = static_cast<Index>(jj);
    VectorXd y;
    MatrixXd X;
    equation_design(data.values, P, j, y, X);
    StandardizedRegression sr;
    if (fixed_scales) {
      VectorXd sx(X.cols());
      for (Index l = 0; l < P; ++l) sx.segment(l * N, N) = *fixed_scales;
      sx.tail(j) = fixed_scales->head(j);
      sr = with_intercept(rescale(y, X, (*fixed_scales)(j), sx));
    } else {
      sr = with_intercept(standardize(y, X));
    }
    EquationResult& eq = model.equations[jj];
    eq.equation = j;
    eq.name = data.names[jj];
    eq.layout = VarLayout{N, P, j, true};
    const Partition part = make_partition(eq.layout, T, spec.mode);
    std::vector<Index> tvp;
    for (Index c = config.sv ? 1 : 0; c < sr.K(); ++c) tvp.push_back(c);
    eq.fit = fit_tvp_regression(sr, part, tvp, config, derive_seed(seed, static_cast<std::uint64_t>(j), origin_tag));
  });
  return model;
}

VarCoefficients coefficients_for_draw(const VarModel& model, int draw, VolatilityChoice vol) {
  const Index N = model.n_vars();
  const Index P = model.lags;
  VarCoefficients c;
  c.intercept.resize(N);
  c.B0 = MatrixXd::Zero(N, N);
  c.A.assign(static_cast<std::size_t>(P), MatrixXd::Zero(N, N));
  c.sigma_sq.resize(N);
  for (Index j = 0; j < N; ++j) {
    const EquationResult& eq = model.equations[static_cast<std::size_t>(j)];
    const RegressionResult& fit = eq.fit;
    const VectorXd raw = fit.data.raw_coefficients(fit.coefficients(draw));
    c.intercept(j) = raw(0);
    for (Index l = 1; l <= P; ++l) {
      for (Index i = 0; i < N; ++i) c.A[static_cast<std::size_t>(l - 1)](j, i) = raw(eq.layout.lag_col(l, i));
    }
    for (Index i = 0; i < j; ++i) c.B0(j, i) = raw(eq.layout.contemporaneous_col(i));
    const VectorXd rv = fit.residual_variance();
    const double v = vol == VolatilityChoice::LastPeriod ? rv(rv.size() - 1) : rv.mean();
    c.sigma_sq(j) = v * fit.data.scale_y * fit.data.scale_y;
  }
  return c;
}

ForecastEnsemble simulate_forecast(const std::vector<VarCoefficients>& draws, const MatrixXd& history,
                                   Index max_horizon, Rng& rng, const FutureTvps* tvps) {
  if (draws.empty()) throw_config(kModule, "no coefficient draws to simulate from");
  const Index N = draws.front().intercept.size();
  const Index P = static_cast<Index>(draws.front().A.size());
  if (history.rows() < P || history.cols() != N) throw_config(kModule, "history is shorter than the lag order");
  const Index S = static_cast<Index>(draws.size());

  std::vector<MatrixXd> paths(static_cast<std::size_t>(max_horizon), MatrixXd(S, N));
  for (Index s = 0; s < S; ++s) {
    const VarCoefficients& c = draws[static_cast<std::size_t>(s)];
    // window row P-1 holds the latest value
    MatrixXd window = history.bottomRows(P);
    for (Index h = 0; h < max_horizon; ++h) {
      VectorXd next(N);
      for (Index j = 0; j < N; ++j) {
        double v = c.intercept(j);
        for (Index l = 1; l <= P; ++l) v += c.A[static_cast<std::size_t>(l - 1)].row(j).dot(window.row(P - l));
        for (Index i = 0; i < j; ++i) v += c.B0(j, i) * next(i);
        if (tvps) {
          // regressor layout: intercept, lags, contemporaneous
          const VectorXd& sd = tvps->sd[static_cast<std::size_t>(j)];
          const VectorXd& incl = tvps->inclusion[static_cast<std::size_t>(j)];
          const VectorXd& scale = tvps->col_scale[static_cast<std::size_t>(j)];
          for (Index k = 0; k < sd.size(); ++k) {
            if (sd(k) <= 0.0 || draw_uniform(rng) >= incl(k)) continue;
            double x = 1.0;
            if (k > 0 && k <= N * P) x = window(P - 1 - (k - 1) / N, (k - 1) % N);
            else if (k > N * P) x = next(k - 1 - N * P);
            v += scale(k) * sd(k) * draw_normal(rng) * x;
          }
        }
        v += std::sqrt(c.sigma_sq(j)) * draw_normal(rng);
        next(j) = v;
      }
      paths[static_cast<std::size_t>(h)].row(s) = next.transpose();
      if (P > 1) window.topRows(P - 1) = window.bottomRows(P - 1).eval();
      window.row(P - 1) = next.transpose();
    }
  }
  ForecastEnsemble e;
  e.mean.resize(max_horizon, N);
  e.variance.resize(max_horizon, N);
  for (Index h = 0; h < max_horizon; ++h) {
    const MatrixXd& m = paths[static_cast<std::size_t>(h)];
    e.mean.row(h) = m.colwise().mean();
    const MatrixXd centred = m.rowwise() - e.mean.row(h);
    e.variance.row(h) = S > 1 ? (centred.colwise().squaredNorm() / static_cast<double>(S - 1)).eval()
                              : Eigen::RowVectorXd::Zero(N).eval();
  }
  return e;
}

std::vector<std::string> resolve_origins(const Dataset& ds, const std::string& range) {
  const PeriodRange r = parse_period_range(range);
  std::vector<std::string> out;
  for (const auto& p : ds.time_index) {
    if (r.first && p < *r.first) continue;
    if (r.last && p > *r.last) continue;
    out.push_back(p);
  }
  if (out.empty()) throw_config(kModule, "no forecast origins in range '" + range + "'");
  return out;
}

std::vector<ForecastRecord> forecast(const Dataset& ds_in, const VarSpec& spec, const IrgaConfig& config,
                                     const std::vector<std::string>& origins, const ForecastConfig& fc) {
  const Dataset ds = ordered(ds_in, spec);
  if (fc.horizons.empty()) throw_config(kModule, "no forecast horizons");
  for (Index h : fc.horizons) {
    if (h < 1) throw_config(kModule, "horizons must be >= 1");
  }
  if (fc.draws_per_forecast < 2) throw_config(kModule, "need at least 2 draws per forecast");
  const Index max_h = *std::max_element(fc.horizons.begin(), fc.horizons.end());

  std::vector<Index> targets;
  if (spec.focus_names.empty()) {
    for (Index i = 0; i < ds.cols(); ++i) targets.push_back(i);
  } else {
    for (const auto& n : spec.focus_names) targets.push_back(ds.column(n));
  }

  std::optional<VectorXd> scales;
  if (spec.full_sample_scaling) {
    scales = VectorXd(ds.cols());
    for (Index i = 0; i < ds.cols(); ++i) (*scales)(i) = sample_sd(ds.values.col(i));
  }

  Index window = -1;
  std::vector<ForecastRecord> records;
  for (std::size_t o = 0; o < origins.size(); ++o) {
    const Index end = ds.period(origins[o]) + 1;  // exclusive
    if (end < spec.lags + 2) throw_config(kModule, "origin " + origins[o] + " has too little history");
    if (window < 0) window = end;
    const Index begin = fc.rolling ? std::max<Index>(0, end - window) : 0;
    const Dataset train = ds.slice_rows(begin, end);
    VarSpec sub = spec;
    sub.ordering.clear();
    const VarModel model = estimate_var(train, sub, config, fc.seed, fc.workers, o + 1, scales);

    const int R = model.retained();
    if (R < 1) throw_config(kModule, "no retained draws to forecast from");
    const int n = std::min(fc.draws_per_forecast, R);
    std::vector<VarCoefficients> draws;
    draws.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const int d = static_cast<int>((static_cast<long long>(i) * R) / n);
      draws.push_back(coefficients_for_draw(model, d, VolatilityChoice::LastPeriod));
    }

    FutureTvps tvps;
    if (fc.draw_future_tvps) {
      for (const auto& eq : model.equations) {
        const RegressionResult& fit = eq.fit;
        VectorXd sd = VectorXd::Zero(fit.total_cols());
        VectorXd incl = VectorXd::Ones(fit.total_cols());
        const MatrixXd paths = fit.tvp_paths();
        for (std::size_t k = 0; k < fit.tvp_columns.size(); ++k) {
          const Index c = fit.tvp_columns[k];
          if (config.prior == NuisancePriorKind::SpikeSlab) {
            sd(c) = std::sqrt(config.spike_slab.psi);
            incl(c) = config.spike_slab.q;
          } else {
            sd(c) = std::sqrt(paths.col(static_cast<Index>(k)).squaredNorm() / static_cast<double>(paths.rows()));
          }
        }
        tvps.sd.push_back(sd);
        tvps.inclusion.push_back(incl);
        tvps.col_scale.push_back((fit.data.scale_y / fit.data.scale_x.array()).matrix());
      }
    }

    Rng rng(derive_seed(fc.seed, 0x5eed, o + 1));
    const ForecastEnsemble e =
        simulate_forecast(draws, model.history, max_h, rng, fc.draw_future_tvps ? &tvps : nullptr);
    for (Index h : fc.horizons) {
      for (Index j : targets) {
        ForecastRecord r;
        r.origin = origins[o];
        r.horizon = h;
        r.variable = ds.names[static_cast<std::size_t>(j)];
        r.mean = e.mean(h - 1, j);
        r.variance = e.variance(h - 1, j);
        const Index t = end - 1 + h;
        if (t < ds.rows()) r.realized = ds.values(t, j);
        records.push_back(std::move(r));
      }
    }
  }
  return records;
}

Table forecast_table(const std::vector<ForecastRecord>& records) {
  Table t;
  t.columns = {"origin", "horizon", "variable", "mean", "variance", "realized"};
  for (const auto& r : records) {
    t.add_row({r.origin, static_cast<std::int64_t>(r.horizon), r.variable, r.mean, r.variance,
               r.realized ? *r.realized : std::numeric_limits<double>::quiet_NaN()});
  }
  return t;
}

double gaussian_log_score(double realized, double mean, double variance) {
  if (!(variance > 0.0)) throw_numerical(kModule, "predictive variance must be positive");
  const double z = realized - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * variance) + z * z / variance);
}

Table evaluate(const std::vector<ForecastRecord>& records, const std::vector<ForecastRecord>* baseline) {
  struct Acc {
    std::int64_t n = 0;
    double sse = 0.0;
    double lps = 0.0;
  };
  auto accumulate = [](const std::vector<ForecastRecord>& recs) {
    std::map<std::pair<std::string, Index>, Acc> acc;
    for (const auto& r : recs) {
      if (!r.realized) continue;
      Acc& a = acc[{r.variable, r.horizon}];
      ++a.n;
      a.sse += (*r.realized - r.mean) * (*r.realized - r.mean);
      a.lps += gaussian_log_score(*r.realized, r.mean, r.variance);
    }
    return acc;
  };
  const auto acc = accumulate(records);
  if (acc.empty()) throw_config(kModule, "no forecast records with realized values");
  std::map<std::pair<std::string, Index>, Acc> base;
  if (baseline) base = accumulate(*baseline);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  Table t;
  t.columns = {"variable", "horizon", "count", "rmse", "avg_lps", "rmse_ratio", "lps_diff"};
  for (const auto& [key, a] : acc) {
    const double rmse = std::sqrt(a.sse / static_cast<double>(a.n));
    const double lps = a.lps / static_cast<double>(a.n);
    double ratio = nan, diff = nan;
    if (auto it = base.find(key); it != base.end()) {
      const Acc& b = it->second;
      ratio = rmse / std::sqrt(b.sse / static_cast<double>(b.n));
      diff = lps - b.lps / static_cast<double>(b.n);
    }
    t.add_row({key.first, static_cast<std::int64_t>(key.second), a.n, rmse, lps, ratio, diff});
  }
  return t;
}

MatrixXd irf_from_coefficients(const VarCoefficients& c, Index shock, Index horizons) {
  const Index N = c.intercept.size();
  const Index P = static_cast<Index>(c.A.size());
  if (shock < 0 || shock >= N) throw_config(kModule, "shock index out of range");
  if (horizons < 0) throw_config(kModule, "horizons must be >= 0");
  const MatrixXd I = MatrixXd::Identity(N, N);
  const MatrixXd B0inv = (I - c.B0).triangularView<Eigen::Lower>().solve(I);
  std::vector<MatrixXd> phi;
  for (const auto& A : c.A) phi.push_back(B0inv * A);
  const VectorXd impact = B0inv.col(shock) * std::sqrt(c.sigma_sq(shock));

  MatrixXd resp(horizons + 1, N);
  std::vector<VectorXd> r(static_cast<std::size_t>(horizons + 1));
  r[0] = impact;
  for (Index h = 1; h <= horizons; ++h) {
    VectorXd v = VectorXd::Zero(N);
    for (Index l = 1; l <= std::min(h, P); ++l) v += phi[static_cast<std::size_t>(l - 1)] * r[static_cast<std::size_t>(h - l)];
    r[static_cast<std::size_t>(h)] = v;
  }
  for (Index h = 0; h <= horizons; ++h) resp.row(h) = r[static_cast<std::size_t>(h)].transpose();
  return resp;
}

double companion_spectral_radius(const VarCoefficients& c) {
  const Index N = c.intercept.size();
  const Index P = static_cast<Index>(c.A.size());
  const MatrixXd I = MatrixXd::Identity(N, N);
  const MatrixXd B0inv = (I - c.B0).triangularView<Eigen::Lower>().solve(I);
  MatrixXd F = MatrixXd::Zero(N * P, N * P);
  for (Index l = 0; l < P; ++l) F.block(0, l * N, N, N) = B0inv * c.A[static_cast<std::size_t>(l)];
  if (P > 1) F.bottomLeftCorner(N * (P - 1), N * (P - 1)).setIdentity();
  Eigen::EigenSolver<MatrixXd> es(F, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

IrfResult impulse_response(const VarModel& model, const std::string& shock, Index horizons) {
  const Index s = model.variable(shock);
  const int R = model.retained();
  if (R < 1) throw_config(kModule, "no retained draws for impulse responses");
  const Index N = model.n_vars();
  std::vector<MatrixXd> all;
  all.reserve(static_cast<std::size_t>(R));
  IrfResult res;
  res.variables = model.names;
  res.shock = shock;
  res.draws = R;
  for (int d = 0; d < R; ++d) {
    const VarCoefficients c = coefficients_for_draw(model, d, VolatilityChoice::TimeAverage);
    if (companion_spectral_radius(c) >= 1.0) ++res.explosive_draws;
    all.push_back(irf_from_coefficients(c, s, horizons));
  }
  res.median.resize(horizons + 1, N);
  res.lower.resize(horizons + 1, N);
  res.upper.resize(horizons + 1, N);
  std::vector<double> cell(static_cast<std::size_t>(R));
  for (Index h = 0; h <= horizons; ++h) {
    for (Index i = 0; i < N; ++i) {
      for (int d = 0; d < R; ++d) cell[static_cast<std::size_t>(d)] = all[static_cast<std::size_t>(d)](h, i);
      res.median(h, i) = quantile(cell, 0.5);
      res.lower(h, i) = quantile(cell, 0.16);
      res.upper(h, i) = quantile(cell, 0.84);
    }
  }
  return res;
}

Table IrfResult::to_table() const {
  Table t;
  t.columns = {"horizon", "variable", "median", "p16", "p84"};
  for (Index h = 0; h < median.rows(); ++h) {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      const auto c = static_cast<Index>(i);
      t.add_row({static_cast<std::int64_t>(h), variables[i], median(h, c), lower(h, c), upper(h, c)});
    }
  }
  return t;
}

}  // namespace irga
