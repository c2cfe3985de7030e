/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "data_model.hpp"
#include "linear_operator.hpp"

namespace irga {

struct QrFactors {
  MatrixXd Q1;  // T x K_f
  MatrixXd Q2;  // T x (T - K_f)
  MatrixXd R;   // K_f x K_f, upper triangular
};

/// Full Householder QR of the focus design, split into the column space
/// basis Q1 and its orthogonal complement Q2 (so that Q2' X_f = 0).
QrFactors qr_partition(const MatrixXd& Xf);

enum class PartitionMode { TvpsOnly, TvpsAndLag };

PartitionMode parse_partition_mode(const std::string& text);
std::string to_string(PartitionMode mode);

/// Column layout of one equation of an equation-by-equation VAR:
/// [intercept] [lag 1: y_1..y_N] ... [lag P: y_1..y_N] [y_1,t .. y_{j-1},t].
struct VarLayout {
  Index n_vars = 1;
  Index lags = 1;
  Index equation = 0;  // zero-based position in the ordering
  bool intercept = true;

  Index intercept_cols() const { return intercept ? 1 : 0; }
  Index total_cols() const { return intercept_cols() + n_vars * lags + equation; }
  Index lag_col(Index lag, Index var) const {  // lag is 1-based
    return intercept_cols() + (lag - 1) * n_vars + var;
  }
  Index contemporaneous_col(Index var) const {
    return intercept_cols() + n_vars * lags + var;
  }
};

struct Partition {
  std::vector<Index> focus;
  std::vector<Index> nuisance;  // constant coefficients demoted to the VAMP block
  PartitionMode mode = PartitionMode::TvpsOnly;
};

/// Focus/nuisance split for one VAR equation. Under TvpsAndLag the cross
/// lags of order > 1 are demoted; everything else stays in focus.
Partition make_partition(const VarLayout& layout, Index T, PartitionMode mode);

/// All K columns in focus (single TVP regression).
Partition make_regression_partition(Index K, Index T);

/// Unrotated nuisance design G = [X_d | Z | I_T]: demoted constant-coefficient
/// columns, the block-diagonal TVP design and the optional SV block.
class NuisanceDesign {
 public:
  NuisanceDesign() = default;
  NuisanceDesign(MatrixXd demoted, TvpDesign tvp);

  Index rows() const { return tvp_.rows(); }
  Index cols() const { return demoted_.cols() + tvp_.cols(); }
  Index demoted_cols() const { return demoted_.cols(); }
  Index tvp_begin() const { return demoted_.cols(); }
  Index tvp_end() const { return demoted_.cols() + tvp_.tvp_cols(); }
  bool with_eta() const { return tvp_.with_eta(); }
  Index eta_begin() const { return tvp_end(); }
  const MatrixXd& demoted() const { return demoted_; }
  const TvpDesign& tvp() const { return tvp_; }

  VectorXd apply(const VectorXd& theta) const;
  VectorXd apply_transpose(const VectorXd& v) const;
  /// H = G G' applied to the columns of M (T x m).
  MatrixXd gram_times(const MatrixXd& M) const;
  /// G diag(w) G' applied to the columns of M.
  MatrixXd weighted_gram_times(const VectorXd& w, const MatrixXd& M) const;
  /// ||P' g_j||^2 for each column g_j of G, with P of shape T x r.
  VectorXd column_sq_norms(const MatrixXd& P) const;
  MatrixXd dense() const;

 private:
  MatrixXd demoted_;
  TvpDesign tvp_;
  VectorXd row_sq_;  // ||x_t||^2 of the TVP regressors (+1 with the eta block)
};

/// The two rotated likelihood systems: y1 = A1 beta + W1 theta + e1 and
/// y2 = W2 theta + e2, with W1 = Q1' G and W2 = Q2' G.
struct RotatedSystem {
  QrFactors qr;
  VectorXd y1;
  VectorXd y2;
  MatrixXd A1;
  NuisanceDesign nuisance;

  Index focus_dim() const { return qr.Q1.cols(); }
  Index complement_dim() const { return qr.Q2.cols(); }

  MatrixXd W1_dense() const;
  MatrixXd W2_dense() const;
  /// Q1' H Q1 and Q1' H Q2 with H = G G'.
  MatrixXd focus_gram() const;
  MatrixXd cross_gram() const;
};

RotatedSystem rotate_system(const StandardizedRegression& sr, const TvpDesign& td,
                            const Partition& part);

/// W2 = Q2' G as an operator; holds references, so the system must outlive it.
class RotatedNuisanceOperator final : public LinearOperator {
 public:
  explicit RotatedNuisanceOperator(const RotatedSystem& rs) : rs_(rs) {}

  Index rows() const override { return rs_.complement_dim(); }
  Index cols() const override { return rs_.nuisance.cols(); }
  VectorXd apply(const VectorXd& x) const override;
  VectorXd apply_transpose(const VectorXd& v) const override;
  MatrixXd row_gram() const override;
  VectorXd projected_column_norms(const MatrixXd& L) const override;

 private:
  const RotatedSystem& rs_;
};

}  // namespace irga
