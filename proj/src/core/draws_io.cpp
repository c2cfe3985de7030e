/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "draws_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "error.hpp"
#include "table.hpp"

namespace irga {

namespace {

constexpr const char* kModule = "io";

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <typename T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw_io(kModule, "truncated draws file '" + path.string() + "'");
  return to_little(v);
}

}  // namespace

void write_draws_binary(const MatrixXd& draws, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io(kModule, "cannot open '" + path.string() + "' for writing");
  out.write(kDrawsMagic, sizeof(kDrawsMagic));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(draws.rows()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(draws.cols()));
  for (Eigen::Index i = 0; i < draws.rows(); ++i) {
    for (Eigen::Index j = 0; j < draws.cols(); ++j) put<double>(out, draws(i, j));
  }
  if (!out) throw_io(kModule, "write failed for '" + path.string() + "'");
}

MatrixXd read_draws_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io(kModule, "cannot open '" + path.string() + "'");
  char magic[sizeof(kDrawsMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kDrawsMagic, sizeof(magic)) != 0) {
    throw_io(kModule, "'" + path.string() + "' is not a draws file");
  }
  const auto rows = get<std::uint64_t>(in, path);
  const auto cols = get<std::uint64_t>(in, path);
  MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = get<double>(in, path);
  }
  return m;
}

void write_draws_csv(const MatrixXd& draws, const std::vector<std::string>& header,
                     const std::filesystem::path& path) {
  if (static_cast<Eigen::Index>(header.size()) != draws.cols()) {
    throw_config(kModule, "draws header does not match the column count");
  }
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
  out += '\n';
  for (Eigen::Index i = 0; i < draws.rows(); ++i) {
    for (Eigen::Index j = 0; j < draws.cols(); ++j) {
      if (j) out += ',';
      out += format_double(draws(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace irga
