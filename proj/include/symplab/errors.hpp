/*
 * Copyright 2026 The symplab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symplab {

enum class ErrorCode {
  SphereDomain,
  UnsupportedWindow,
  Parse,
  Bind,
  Periodicity,
  ManifoldMismatch,
  OpenManifold,
  NotNormalized,
  NonConvergence,
  NonExactField,
  DegenerateIdentity,
  IncompatibleCapping,
  GridMismatch,
  MissingContraction,
  ShiftNotConstant,
  BasepointDependent,
  EndpointMismatch,
  NotALoop,
  Config,
  Io,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the expression parser; `offset` is a byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& what);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class BindError : public Error {
 public:
  BindError(std::string symbol, std::size_t offset, const std::string& what)
      : Error(ErrorCode::Bind, what), symbol_(std::move(symbol)), offset_(offset) {}
  const std::string& symbol() const noexcept { return symbol_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string symbol_;
  std::size_t offset_;
};

class PeriodicityError : public Error {
 public:
  PeriodicityError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Periodicity, what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Scenario file problems carry a 1-based line/column.
class ConfigError : public Error {
 public:
  ConfigError(int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace symplab
