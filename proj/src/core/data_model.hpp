/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace irga {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Monthly panel of named series. Periods are labelled "YYYY-MM".
struct Dataset {
  std::vector<std::string> names;
  MatrixXd values;  // T x N
  std::vector<std::string> time_index;
  std::vector<int> transform_codes;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }

  Index column(const std::string& name) const;
  Index period(const std::string& label) const;
  Dataset select(const std::vector<std::string>& series) const;
  Dataset slice_rows(Index begin, Index end) const;  // [begin, end)
  void validate() const;
};

/// Inclusive period window; unset ends are open.
struct PeriodRange {
  std::optional<std::string> first;
  std::optional<std::string> last;
};

/// Normalises "YYYY-MM", "YYYY-MM-DD", "YYYY:MM" or "M/D/YYYY" to "YYYY-MM".
std::string normalize_period(const std::string& text);
PeriodRange parse_period_range(const std::string& text);  // "2005-01..2019-08", "2005-01..end"

Dataset load_fred_csv(const std::filesystem::path& path, const PeriodRange& range = {});
Dataset apply_transforms(const Dataset& data);
void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);

/// Differencing order implied by a FRED-MD transformation code.
int differencing_order(int code);

/// Regression data rescaled to unit sample variance (no centring).
struct StandardizedRegression {
  VectorXd y;
  MatrixXd X;
  double scale_y = 1.0;
  VectorXd scale_x;  // 1.0 for an unscaled intercept column

  Index T() const { return y.size(); }
  Index K() const { return X.cols(); }

  VectorXd raw_y() const;
  MatrixXd raw_X() const;
  /// Maps coefficients on the standardized scale back to the raw scale.
  VectorXd raw_coefficients(const VectorXd& standardized) const;
};

StandardizedRegression standardize(const VectorXd& y, const MatrixXd& X,
                                   std::span<const std::string> column_names = {});

/// Divides by externally fixed scales instead of the sample ones.
StandardizedRegression rescale(const VectorXd& y, const MatrixXd& X, double scale_y,
                               const VectorXd& scale_x);

/// Prepends a column of ones (scale 1) to an already standardized regression.
StandardizedRegression with_intercept(const StandardizedRegression& sr);

double sample_sd(const VectorXd& v);

/// The block-diagonal TVP design Z, row t holding x_t' in column block t.
/// Optionally augmented with a T x T identity block for the SV process.
class TvpDesign {
 public:
  TvpDesign() = default;
  TvpDesign(MatrixXd regressors, bool with_eta);

  Index rows() const { return x_.rows(); }
  Index block_width() const { return x_.cols(); }
  Index tvp_cols() const { return x_.rows() * x_.cols(); }
  Index cols() const { return tvp_cols() + (with_eta_ ? rows() : 0); }
  bool with_eta() const { return with_eta_; }
  const MatrixXd& regressors() const { return x_; }

  VectorXd apply(const VectorXd& coef) const;
  VectorXd apply_transpose(const VectorXd& v) const;
  MatrixXd dense() const;

 private:
  MatrixXd x_;
  bool with_eta_ = false;
};

}  // namespace irga
