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
#include "symplab/errors.hpp"

namespace symplab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SphereDomain: return "SphereDomainError";
    case ErrorCode::UnsupportedWindow: return "UnsupportedWindow";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Bind: return "BindError";
    case ErrorCode::Periodicity: return "PeriodicityError";
    case ErrorCode::ManifoldMismatch: return "ManifoldMismatch";
    case ErrorCode::OpenManifold: return "OpenManifold";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonExactField: return "NonExactField";
    case ErrorCode::DegenerateIdentity: return "DegenerateIdentity";
    case ErrorCode::IncompatibleCapping: return "IncompatibleCapping";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::MissingContraction: return "MissingContraction";
    case ErrorCode::ShiftNotConstant: return "ShiftNotConstant";
    case ErrorCode::BasepointDependent: return "BasepointDependent";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::NotALoop: return "NotALoop";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& what)
    : Error(ErrorCode::Parse, what), offset_(offset), expected_(std::move(expected)) {}

ConfigError::ConfigError(int line, int column, const std::string& message)
    : Error(ErrorCode::Config, std::to_string(line) + ":" + std::to_string(column) +
                                   ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace symplab
