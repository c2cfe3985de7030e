/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "error.hpp"

namespace irga {

namespace {
std::string tagged(std::string_view module, const std::string& message) {
  std::string out;
  out.reserve(module.size() + message.size() + 3);
  out += '[';
  out += module;
  out += "] ";
  out += message;
  return out;
}
}  // namespace

Error::Error(ErrorKind kind, std::string_view module, const std::string& message)
    : std::runtime_error(tagged(module, message)), kind_(kind), module_(module) {}

void throw_config(std::string_view module, const std::string& message) {
  throw Error(ErrorKind::Config, module, message);
}

void throw_numerical(std::string_view module, const std::string& message) {
  throw Error(ErrorKind::Numerical, module, message);
}

void throw_io(std::string_view module, const std::string& message) {
  throw Error(ErrorKind::Io, module, message);
}

}  // namespace irga
