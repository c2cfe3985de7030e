/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irga {

/// Broad failure classes; the C API and CLI map them onto status and exit codes.
enum class ErrorKind { Config, Numerical, Io };

/// Exception carrying the originating module tag, e.g. "[vamp] diverged ...".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string_view module, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

[[noreturn]] void throw_config(std::string_view module, const std::string& message);
[[noreturn]] void throw_numerical(std::string_view module, const std::string& message);
[[noreturn]] void throw_io(std::string_view module, const std::string& message);

}  // namespace irga
