// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_ERROR_HPP_
#define RECIPENET_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace recipenet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (corpus record, rule file, model file, config).
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// A value violates a documented invariant or precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A statistic or quantity is mathematically undefined for the given input
/// (zero variance, empty intersection, ...).
class Undefined : public Error {
 public:
  using Error::Error;
};

/// Raised by the pipeline; names the stage that failed.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace recipenet

#endif  // RECIPENET_ERROR_HPP_
