// Copyright 2026 The phi-lstm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phi {

/// Bad input: malformed files, shape mismatches, invalid configuration.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input with the 1-based line it was found on.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : ValidationError("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Non-finite loss or gradient, failed gradient check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phi
