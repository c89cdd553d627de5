// Copyright 2026 The mbsr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mbsr {

enum class ErrorCode {
  // model store
  DuplicateId,
  InvalidId,
  InvalidName,
  InvalidAttributeToken,
  UnknownAttributeKey,
  UnknownId,
  UnknownMember,
  MembershipCycle,
  UnknownElement,
  CopyReadOnly,
  // catalog
  CatalogParseError,
  InvariantViolation,
  // glossary
  DuplicateTerm,
  SynonymCollision,
  // parser
  MissingMandatorySlot,
  // trace graph
  UnknownEndpoint,
  KindConstraintViolation,
  CycleDetected,
  TraceDiscouraged,
  UnknownRoot,
  UnknownScope,
  // metrics
  NoInstances,
  // interchange
  SyntaxError,
  ValidationError,
  MappingMissing,
  UnknownColumn,
};

std::string_view to_string(ErrorCode code);

/// Every fallible operation in the library throws this. `cause` is set when
/// an error is forwarded through another layer (a corpus ValidationError
/// wrapping the model's DuplicateId, for instance).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<ErrorCode> cause = std::nullopt)
      : std::runtime_error(message), code_(code), cause_(cause) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<ErrorCode> cause() const noexcept { return cause_; }

  /// True when either the code or the forwarded cause equals `c`.
  bool is(ErrorCode c) const noexcept { return code_ == c || cause_ == c; }

 private:
  ErrorCode code_;
  std::optional<ErrorCode> cause_;
};

}  // namespace mbsr
