/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "error.hpp"

namespace irga {

namespace {
constexpr const char* kModule = "io";

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return j;
  }
  throw_config(kModule, "no column '" + name + "'");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw_config(kModule, "row width does not match the header");
  rows.push_back(std::move(row));
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw_config(kModule, "column '" + name + "' is not numeric");
}

std::string Table::text(std::size_t row, std::size_t col) const {
  const Cell& c = rows.at(row).at(col);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::to_string(std::get<std::int64_t>(c));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) out += ',';
    out += csv_escape(columns[j]);
  }
  out += '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out += ',';
      out += csv_escape(text(i, j));
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json Table::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v)) obj[columns[j]] = v;
              else obj[columns[j]] = nullptr;
            } else {
              obj[columns[j]] = v;
            }
          },
          row[j]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

void Table::write_csv(const std::filesystem::path& path) const { write_text_file(path, to_csv()); }

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io(kModule, "cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw_io(kModule, "write failed for '" + path.string() + "'");
}

}  // namespace irga
