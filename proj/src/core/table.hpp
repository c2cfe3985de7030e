/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace irga {

using Cell = std::variant<std::string, double, std::int64_t>;

/// Shortest round-trip decimal form; non-finite values print as NaN/Inf/-Inf.
std::string format_double(double value);

/// Small column-oriented result table with deterministic CSV/JSON rendering.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const;
  void add_row(std::vector<Cell> row);
  double number(std::size_t row, const std::string& name) const;
  std::string text(std::size_t row, std::size_t col) const;

  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
  void write_csv(const std::filesystem::path& path) const;
};

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace irga
