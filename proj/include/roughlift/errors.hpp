// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace roughlift {

enum class ErrorKind { structural, parameter, convergence, parse };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct StructuralError : Error {
  explicit StructuralError(const std::string& w) : Error(ErrorKind::structural, w) {}
};
struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error(ErrorKind::parameter, w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorKind::convergence, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::parse, w) {}
};

}  // namespace roughlift
