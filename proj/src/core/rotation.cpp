/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rotation.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace irga {

namespace {
constexpr const char* kModule = "rotation";
constexpr double kRankTolerance = 1e-10;
constexpr double kOrthogonalityTolerance = 1e-8;
}  // namespace

QrFactors qr_partition(const MatrixXd& Xf) {
  const Index T = Xf.rows();
  const Index K = Xf.cols();
  if (K == 0) throw_config(kModule, "focus design has no columns");
  if (T < K) {
    throw_config(kModule, "QR rotation needs T >= K_f (T=" + std::to_string(T) +
                              ", K_f=" + std::to_string(K) + ")");
  }
  if (!Xf.allFinite()) throw_numerical(kModule, "focus design contains non-finite values");

  Eigen::HouseholderQR<MatrixXd> qr(Xf);
  const MatrixXd Q = qr.householderQ();
  MatrixXd R = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>();

  const double scale = Xf.norm();
  std::vector<Index> dependent;
  for (Index k = 0; k < K; ++k) {
    if (std::abs(R(k, k)) <= kRankTolerance * scale) dependent.push_back(k);
  }
  if (!dependent.empty()) {
    std::ostringstream msg;
    msg << "focus design is rank deficient; dependent columns:";
    for (Index k : dependent) msg << ' ' << k;
    throw_numerical(kModule, msg.str());
  }

  QrFactors out{Q.leftCols(K), Q.rightCols(T - K), std::move(R)};
  if (T > K) {
    const double leak = (out.Q2.transpose() * Xf).cwiseAbs().maxCoeff();
    if (leak > kOrthogonalityTolerance * std::max(1.0, scale)) {
      throw_numerical(kModule, "Q2' X_f is not numerically zero");
    }
  }
  return out;
}

PartitionMode parse_partition_mode(const std::string& text) {
  if (text == "tvps" || text == "tvps-only" || text == "TVPS_ONLY") return PartitionMode::TvpsOnly;
  if (text == "tvps-lag" || text == "tvps-and-lag" || text == "TVPS_AND_LAG") {
    return PartitionMode::TvpsAndLag;
  }
  throw_config(kModule, "unknown partition mode '" + text + "' (expected tvps or tvps-lag)");
}

std::string to_string(PartitionMode mode) {
  return mode == PartitionMode::TvpsOnly ? "tvps" : "tvps-lag";
}

Partition make_partition(const VarLayout& layout, Index T, PartitionMode mode) {
  if (layout.n_vars < 1 || layout.lags < 1) throw_config(kModule, "VAR needs N >= 1 and P >= 1");
  if (layout.equation < 0 || layout.equation >= layout.n_vars) {
    throw_config(kModule, "equation index out of range");
  }
  Partition part;
  part.mode = mode;
  const Index K = layout.total_cols();
  std::vector<bool> demote(static_cast<std::size_t>(K), false);
  if (mode == PartitionMode::TvpsAndLag) {
    for (Index lag = 2; lag <= layout.lags; ++lag) {
      for (Index v = 0; v < layout.n_vars; ++v) {
        if (v != layout.equation) demote[static_cast<std::size_t>(layout.lag_col(lag, v))] = true;
      }
    }
  }
  for (Index c = 0; c < K; ++c) {
    (demote[static_cast<std::size_t>(c)] ? part.nuisance : part.focus).push_back(c);
  }
  const Index kf = static_cast<Index>(part.focus.size());
  if (kf > T) {
    std::ostringstream msg;
    msg << "equation " << layout.equation << ": focus set has " << kf
        << " coefficients but only T=" << T << " observations; reduce lags or variables";
    if (mode == PartitionMode::TvpsOnly) msg << ", or use the tvps-lag mode";
    throw_config(kModule, msg.str());
  }
  return part;
}

Partition make_regression_partition(Index K, Index T) {
  if (K > T) {
    throw_config(kModule, "focus set has " + std::to_string(K) + " coefficients but only T=" +
                              std::to_string(T) + " observations");
  }
  Partition part;
  for (Index c = 0; c < K; ++c) part.focus.push_back(c);
  return part;
}

NuisanceDesign::NuisanceDesign(MatrixXd demoted, TvpDesign tvp)
    : demoted_(std::move(demoted)), tvp_(std::move(tvp)) {
  if (demoted_.cols() == 0) demoted_.resize(tvp_.rows(), 0);
  if (demoted_.rows() != tvp_.rows()) throw_config(kModule, "nuisance blocks differ in length");
  row_sq_ = tvp_.regressors().rowwise().squaredNorm();
  if (tvp_.with_eta()) row_sq_.array() += 1.0;
}

VectorXd NuisanceDesign::apply(const VectorXd& theta) const {
  const Index D = demoted_.cols();
  VectorXd out = tvp_.apply(theta.tail(tvp_.cols()));
  if (D > 0) out.noalias() += demoted_ * theta.head(D);
  return out;
}

VectorXd NuisanceDesign::apply_transpose(const VectorXd& v) const {
  const Index D = demoted_.cols();
  VectorXd out(cols());
  if (D > 0) out.head(D) = demoted_.transpose() * v;
  out.tail(tvp_.cols()) = tvp_.apply_transpose(v);
  return out;
}

MatrixXd NuisanceDesign::gram_times(const MatrixXd& M) const {
  MatrixXd out = row_sq_.asDiagonal() * M;
  if (demoted_.cols() > 0) out.noalias() += demoted_ * (demoted_.transpose() * M);
  return out;
}

MatrixXd NuisanceDesign::weighted_gram_times(const VectorXd& w, const MatrixXd& M) const {
  const Index T = rows();
  const Index K = tvp_.block_width();
  const Index D = demoted_.cols();
  VectorXd diag = VectorXd::Zero(T);
  const MatrixXd& X = tvp_.regressors();
  for (Index t = 0; t < T; ++t) {
    diag(t) = X.row(t).array().square().matrix().dot(w.segment(D + t * K, K));
  }
  if (tvp_.with_eta()) diag += w.segment(eta_begin(), T);
  MatrixXd out = diag.asDiagonal() * M;
  if (D > 0) {
    out.noalias() += demoted_ * (w.head(D).asDiagonal() * (demoted_.transpose() * M));
  }
  return out;
}

VectorXd NuisanceDesign::column_sq_norms(const MatrixXd& P) const {
  const Index T = rows();
  const Index K = tvp_.block_width();
  const Index D = demoted_.cols();
  VectorXd out(cols());
  if (D > 0) out.head(D) = (P.transpose() * demoted_).colwise().squaredNorm().transpose();
  const VectorXd row_norms = P.rowwise().squaredNorm();
  const MatrixXd& X = tvp_.regressors();
  for (Index t = 0; t < T; ++t) {
    out.segment(D + t * K, K) = X.row(t).transpose().array().square() * row_norms(t);
  }
  if (tvp_.with_eta()) out.segment(eta_begin(), T) = row_norms;
  return out;
}

MatrixXd NuisanceDesign::dense() const {
  MatrixXd G(rows(), cols());
  G.leftCols(demoted_.cols()) = demoted_;
  G.rightCols(tvp_.cols()) = tvp_.dense();
  return G;
}

MatrixXd RotatedSystem::W1_dense() const { return qr.Q1.transpose() * nuisance.dense(); }

MatrixXd RotatedSystem::W2_dense() const { return qr.Q2.transpose() * nuisance.dense(); }

MatrixXd RotatedSystem::focus_gram() const {
  return qr.Q1.transpose() * nuisance.gram_times(qr.Q1);
}

MatrixXd RotatedSystem::cross_gram() const {
  return (qr.Q2.transpose() * nuisance.gram_times(qr.Q1)).transpose();
}

RotatedSystem rotate_system(const StandardizedRegression& sr, const TvpDesign& td,
                            const Partition& part) {
  const Index T = sr.T();
  if (td.rows() != T) throw_config(kModule, "TVP design and regression differ in length");
  MatrixXd Xf(T, static_cast<Index>(part.focus.size()));
  for (std::size_t i = 0; i < part.focus.size(); ++i) {
    Xf.col(static_cast<Index>(i)) = sr.X.col(part.focus[i]);
  }
  MatrixXd Xd(T, static_cast<Index>(part.nuisance.size()));
  for (std::size_t i = 0; i < part.nuisance.size(); ++i) {
    Xd.col(static_cast<Index>(i)) = sr.X.col(part.nuisance[i]);
  }

  RotatedSystem rs;
  rs.qr = qr_partition(Xf);
  rs.y1 = rs.qr.Q1.transpose() * sr.y;
  rs.y2 = rs.qr.Q2.transpose() * sr.y;
  rs.A1 = rs.qr.Q1.transpose() * Xf;
  rs.nuisance = NuisanceDesign(std::move(Xd), td);
  return rs;
}

VectorXd RotatedNuisanceOperator::apply(const VectorXd& x) const {
  return rs_.qr.Q2.transpose() * rs_.nuisance.apply(x);
}

VectorXd RotatedNuisanceOperator::apply_transpose(const VectorXd& v) const {
  return rs_.nuisance.apply_transpose(rs_.qr.Q2 * v);
}

MatrixXd RotatedNuisanceOperator::row_gram() const {
  MatrixXd gram = rs_.qr.Q2.transpose() * rs_.nuisance.gram_times(rs_.qr.Q2);
  return 0.5 * (gram + gram.transpose());
}

VectorXd RotatedNuisanceOperator::projected_column_norms(const MatrixXd& L) const {
  return rs_.nuisance.column_sq_norms(rs_.qr.Q2 * L.transpose());
}

}  // namespace irga
