/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "data_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace irga {

namespace {

constexpr const char* kModule = "data_model";

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "." ||
         cell == "#N/A";
}

std::optional<double> parse_double(const std::string& cell) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

int parse_int_field(std::string_view s, const std::string& context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw_config(kModule, "cannot parse period '" + context + "'");
  }
  return value;
}

std::string format_period(int year, int month, const std::string& context) {
  if (month < 1 || month > 12 || year < 1000 || year > 9999) {
    throw_config(kModule, "invalid period '" + context + "'");
  }
  std::ostringstream out;
  out << year << '-' << std::setw(2) << std::setfill('0') << month;
  return out.str();
}

}  // namespace

std::string normalize_period(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.find('/') != std::string::npos) {
    // M/D/YYYY
    const auto p1 = text.find('/');
    const auto p2 = text.find('/', p1 + 1);
    if (p2 == std::string::npos) throw_config(kModule, "cannot parse period '" + text + "'");
    const int month = parse_int_field(std::string_view(text).substr(0, p1), text);
    const int year = parse_int_field(std::string_view(text).substr(p2 + 1), text);
    return format_period(year, month, text);
  }
  const auto sep = text.find_first_of("-:");
  if (sep == std::string::npos) throw_config(kModule, "cannot parse period '" + text + "'");
  const int year = parse_int_field(std::string_view(text).substr(0, sep), text);
  auto rest = std::string_view(text).substr(sep + 1);
  const auto sep2 = rest.find('-');
  if (sep2 != std::string_view::npos) rest = rest.substr(0, sep2);
  const int month = parse_int_field(rest, text);
  return format_period(year, month, text);
}

PeriodRange parse_period_range(const std::string& text) {
  PeriodRange range;
  const auto dots = text.find("..");
  const std::string lo = trim(dots == std::string::npos ? text : text.substr(0, dots));
  const std::string hi = dots == std::string::npos ? lo : trim(text.substr(dots + 2));
  if (!lo.empty() && lo != "start") range.first = normalize_period(lo);
  if (!hi.empty() && hi != "end") range.last = normalize_period(hi);
  return range;
}

int differencing_order(int code) {
  switch (code) {
    case 1:
    case 4:
      return 0;
    case 2:
    case 5:
      return 1;
    case 6:
      return 2;
    default:
      throw_config(kModule, "unknown transformation code " + std::to_string(code));
  }
}

Index Dataset::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw_config(kModule, "unknown series '" + name + "'");
  return static_cast<Index>(it - names.begin());
}

Index Dataset::period(const std::string& label) const {
  const std::string key = normalize_period(label);
  const auto it = std::find(time_index.begin(), time_index.end(), key);
  if (it == time_index.end()) throw_config(kModule, "period " + key + " not in sample");
  return static_cast<Index>(it - time_index.begin());
}

Dataset Dataset::select(const std::vector<std::string>& series) const {
  Dataset out;
  out.time_index = time_index;
  out.values.resize(rows(), static_cast<Index>(series.size()));
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Index c = column(series[i]);
    out.names.push_back(names[c]);
    out.transform_codes.push_back(transform_codes[c]);
    out.values.col(static_cast<Index>(i)) = values.col(c);
  }
  return out;
}

Dataset Dataset::slice_rows(Index begin, Index end) const {
  if (begin < 0 || end > rows() || begin > end) throw_config(kModule, "row slice out of range");
  Dataset out;
  out.names = names;
  out.transform_codes = transform_codes;
  out.values = values.middleRows(begin, end - begin);
  out.time_index.assign(time_index.begin() + begin, time_index.begin() + end);
  return out;
}

void Dataset::validate() const {
  if (rows() < 2) throw_config(kModule, "dataset needs at least two periods");
  if (static_cast<Index>(names.size()) != cols() ||
      static_cast<Index>(transform_codes.size()) != cols() ||
      static_cast<Index>(time_index.size()) != rows()) {
    throw_config(kModule, "dataset metadata does not match its value matrix");
  }
  if (!values.allFinite()) throw_config(kModule, "dataset contains non-finite values");
}

Dataset load_fred_csv(const std::filesystem::path& path, const PeriodRange& range) {
  std::ifstream in(path);
  if (!in) throw_io(kModule, "cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw_config(kModule, path.string() + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 2) throw_config(kModule, path.string() + ": header has no series");

  Dataset data;
  data.names.assign(header.begin() + 1, header.end());
  const std::size_t n = data.names.size();

  if (!std::getline(in, line)) throw_config(kModule, path.string() + ": missing transform row");
  {
    const auto cells = split_csv_line(line);
    std::string tag = cells.empty() ? std::string() : cells[0];
    std::transform(tag.begin(), tag.end(), tag.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (tag.rfind("transform", 0) != 0) {
      throw_config(kModule, path.string() + ": second row must hold transformation codes");
    }
    if (cells.size() != n + 1) throw_config(kModule, "transform row has wrong number of cells");
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = parse_double(cells[i + 1]);
      if (!v || *v != std::floor(*v)) {
        throw_config(kModule, "unparseable transformation code for " + data.names[i]);
      }
      data.transform_codes.push_back(static_cast<int>(*v));
    }
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() < n + 1) cells.resize(n + 1);
    if (cells.size() != n + 1) {
      throw_config(kModule, path.string() + ":" + std::to_string(line_no) + ": wrong cell count");
    }
    const std::string period = normalize_period(cells[0]);
    if (range.first && period < *range.first) continue;
    if (range.last && period > *range.last) continue;
    std::vector<double> row(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
      if (is_missing(cells[i + 1])) continue;
      const auto v = parse_double(cells[i + 1]);
      if (!v) {
        throw_config(kModule, path.string() + ":" + std::to_string(line_no) +
                                  ": unparseable cell '" + cells[i + 1] + "'");
      }
      row[i] = *v;
    }
    data.time_index.push_back(period);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw_config(kModule, "no rows in range");

  for (std::size_t i = 0; i < n; ++i) {
    const bool any = std::any_of(rows.begin(), rows.end(),
                                 [i](const auto& r) { return !std::isnan(r[i]); });
    if (!any) throw_config(kModule, "series " + data.names[i] + " is entirely missing in range");
  }

  auto complete = [&](std::size_t r) {
    return std::none_of(rows[r].begin(), rows[r].end(), [](double v) { return std::isnan(v); });
  };
  std::size_t first = 0;
  while (first < rows.size() && !complete(first)) ++first;
  std::size_t last = rows.size();
  while (last > first && !complete(last - 1)) --last;
  if (first == last) throw_config(kModule, "no complete rows in range");
  for (std::size_t r = first; r < last; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isnan(rows[r][i])) {
        throw_config(kModule, "interior missing value for " + data.names[i] + " at " +
                                  data.time_index[r]);
      }
    }
  }

  data.values.resize(static_cast<Index>(last - first), static_cast<Index>(n));
  for (std::size_t r = first; r < last; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      data.values(static_cast<Index>(r - first), static_cast<Index>(i)) = rows[r][i];
    }
  }
  data.time_index = std::vector<std::string>(data.time_index.begin() + first,
                                             data.time_index.begin() + last);
  return data;
}

Dataset apply_transforms(const Dataset& data) {
  int max_order = 0;
  for (int code : data.transform_codes) max_order = std::max(max_order, differencing_order(code));
  const Index T = data.rows();
  if (T <= max_order) throw_config(kModule, "too few periods for the requested differencing");

  Dataset out;
  out.names = data.names;
  out.transform_codes = data.transform_codes;
  out.values.resize(T - max_order, data.cols());
  out.time_index.assign(data.time_index.begin() + max_order, data.time_index.end());

  for (Index c = 0; c < data.cols(); ++c) {
    const int code = data.transform_codes[static_cast<std::size_t>(c)];
    VectorXd x = data.values.col(c);
    if (code >= 4) {
      for (Index t = 0; t < T; ++t) {
        if (!(x(t) > 0.0)) {
          throw_config(kModule, "nonpositive value for log transform of " +
                                    data.names[static_cast<std::size_t>(c)] + " at " +
                                    data.time_index[static_cast<std::size_t>(t)]);
        }
        x(t) = std::log(x(t));
      }
    }
    const int order = differencing_order(code);
    for (int d = 0; d < order; ++d) {
      for (Index t = T - 1; t > d; --t) x(t) -= x(t - 1);
    }
    out.values.col(c) = x.tail(T - max_order);
  }
  return out;
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw_io(kModule, "cannot write " + path.string());
  out << std::setprecision(17);
  out << "sasdate";
  for (const auto& name : data.names) out << ',' << name;
  out << "\nTransform:";
  for (int code : data.transform_codes) out << ',' << code;
  out << '\n';
  for (Index t = 0; t < data.rows(); ++t) {
    out << data.time_index[static_cast<std::size_t>(t)];
    for (Index c = 0; c < data.cols(); ++c) out << ',' << data.values(t, c);
    out << '\n';
  }
}

double sample_sd(const VectorXd& v) {
  const Index n = v.size();
  if (n < 2) return 0.0;
  const double mean = v.mean();
  return std::sqrt((v.array() - mean).square().sum() / static_cast<double>(n - 1));
}

VectorXd StandardizedRegression::raw_y() const { return y * scale_y; }

MatrixXd StandardizedRegression::raw_X() const { return X * scale_x.asDiagonal(); }

VectorXd StandardizedRegression::raw_coefficients(const VectorXd& standardized) const {
  return (standardized.array() * scale_y / scale_x.array()).matrix();
}

StandardizedRegression standardize(const VectorXd& y, const MatrixXd& X,
                                   std::span<const std::string> column_names) {
  if (y.size() != X.rows()) throw_config(kModule, "y and X have different lengths");
  auto label = [&](Index c) {
    if (static_cast<std::size_t>(c) < column_names.size()) {
      return column_names[static_cast<std::size_t>(c)];
    }
    return "column " + std::to_string(c);
  };
  StandardizedRegression sr;
  sr.scale_y = sample_sd(y);
  if (!(sr.scale_y > 0.0) || !std::isfinite(sr.scale_y)) {
    throw_config(kModule, "constant response cannot be standardized");
  }
  sr.y = y / sr.scale_y;
  sr.scale_x.resize(X.cols());
  sr.X.resize(X.rows(), X.cols());
  for (Index c = 0; c < X.cols(); ++c) {
    const double sd = sample_sd(X.col(c));
    if (!(sd > 0.0) || !std::isfinite(sd)) {
      throw_config(kModule, "constant column cannot be standardized: " + label(c));
    }
    sr.scale_x(c) = sd;
    sr.X.col(c) = X.col(c) / sd;
  }
  return sr;
}

StandardizedRegression rescale(const VectorXd& y, const MatrixXd& X, double scale_y,
                               const VectorXd& scale_x) {
  if (y.size() != X.rows() || scale_x.size() != X.cols()) {
    throw_config(kModule, "scales do not match the regression dimensions");
  }
  if (!(scale_y > 0.0) || !(scale_x.array() > 0.0).all()) throw_config(kModule, "scales must be positive");
  StandardizedRegression sr;
  sr.scale_y = scale_y;
  sr.scale_x = scale_x;
  sr.y = y / scale_y;
  sr.X = X * scale_x.cwiseInverse().asDiagonal();
  return sr;
}

StandardizedRegression with_intercept(const StandardizedRegression& sr) {
  StandardizedRegression out;
  out.y = sr.y;
  out.scale_y = sr.scale_y;
  out.X.resize(sr.X.rows(), sr.X.cols() + 1);
  out.X.col(0).setOnes();
  out.X.rightCols(sr.X.cols()) = sr.X;
  out.scale_x.resize(sr.X.cols() + 1);
  out.scale_x(0) = 1.0;
  out.scale_x.tail(sr.X.cols()) = sr.scale_x;
  return out;
}

TvpDesign::TvpDesign(MatrixXd regressors, bool with_eta)
    : x_(std::move(regressors)), with_eta_(with_eta) {}

VectorXd TvpDesign::apply(const VectorXd& coef) const {
  const Index T = rows();
  const Index K = block_width();
  VectorXd out(T);
  for (Index t = 0; t < T; ++t) out(t) = x_.row(t).dot(coef.segment(t * K, K));
  if (with_eta_) out += coef.tail(T);
  return out;
}

VectorXd TvpDesign::apply_transpose(const VectorXd& v) const {
  const Index T = rows();
  const Index K = block_width();
  VectorXd out(cols());
  for (Index t = 0; t < T; ++t) out.segment(t * K, K) = x_.row(t).transpose() * v(t);
  if (with_eta_) out.tail(T) = v;
  return out;
}

MatrixXd TvpDesign::dense() const {
  const Index T = rows();
  const Index K = block_width();
  MatrixXd Z = MatrixXd::Zero(T, cols());
  for (Index t = 0; t < T; ++t) Z.block(t, t * K, 1, K) = x_.row(t);
  if (with_eta_) Z.rightCols(T).setIdentity();
  return Z;
}

}  // namespace irga
