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

#include "mbsr/error.hpp"

namespace mbsr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::InvalidAttributeToken: return "InvalidAttributeToken";
    case ErrorCode::UnknownAttributeKey: return "UnknownAttributeKey";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::UnknownMember: return "UnknownMember";
    case ErrorCode::MembershipCycle: return "MembershipCycle";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::CopyReadOnly: return "CopyReadOnly";
    case ErrorCode::CatalogParseError: return "CatalogParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DuplicateTerm: return "DuplicateTerm";
    case ErrorCode::SynonymCollision: return "SynonymCollision";
    case ErrorCode::MissingMandatorySlot: return "MissingMandatorySlot";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::KindConstraintViolation: return "KindConstraintViolation";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::TraceDiscouraged: return "TraceDiscouraged";
    case ErrorCode::UnknownRoot: return "UnknownRoot";
    case ErrorCode::UnknownScope: return "UnknownScope";
    case ErrorCode::NoInstances: return "NoInstances";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::MappingMissing: return "MappingMissing";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
  }
  return "Unknown";
}

}  // namespace mbsr
