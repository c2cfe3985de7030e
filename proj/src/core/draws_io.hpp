/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <vector>

namespace irga {

using Eigen::MatrixXd;

/// Binary draws layout: 8-byte magic "IRGADRW1", uint64 rows, uint64 cols,
/// then rows*cols float64 values in row-major order. All little-endian.
inline constexpr char kDrawsMagic[8] = {'I', 'R', 'G', 'A', 'D', 'R', 'W', '1'};

void write_draws_binary(const MatrixXd& draws, const std::filesystem::path& path);
MatrixXd read_draws_binary(const std::filesystem::path& path);

void write_draws_csv(const MatrixXd& draws, const std::vector<std::string>& header,
                     const std::filesystem::path& path);

}  // namespace irga
