/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

namespace irga {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Design matrix W seen only through products. VAMP needs W, W', the
/// row Gram W W' (for its spectral LMMSE stage) and column norms of L W.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;
  virtual VectorXd apply(const VectorXd& x) const = 0;
  virtual VectorXd apply_transpose(const VectorXd& v) const = 0;
  virtual MatrixXd row_gram() const = 0;
  /// Returns ||L w_j||^2 for every column w_j, with L of shape r x rows().
  virtual VectorXd projected_column_norms(const MatrixXd& L) const = 0;
};

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(MatrixXd W) : W_(std::move(W)) {}

  Index rows() const override { return W_.rows(); }
  Index cols() const override { return W_.cols(); }
  VectorXd apply(const VectorXd& x) const override { return W_ * x; }
  VectorXd apply_transpose(const VectorXd& v) const override { return W_.transpose() * v; }
  MatrixXd row_gram() const override { return W_ * W_.transpose(); }
  VectorXd projected_column_norms(const MatrixXd& L) const override {
    return (L * W_).colwise().squaredNorm().transpose();
  }
  const MatrixXd& matrix() const { return W_; }

 private:
  MatrixXd W_;
};

}  // namespace irga
