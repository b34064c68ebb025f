// Copyright 2026 The beliefcore Authors
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

#include "beliefcore/error.hpp"

namespace beliefcore {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::RowSumViolation: return "RowSumViolation";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::BadIdentifier: return "BadIdentifier";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadEvidence: return "BadEvidence";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::NotBeliefNet: return "NotBeliefNet";
    case ErrorCode::HasChildren: return "HasChildren";
    case ErrorCode::ArcExists: return "ArcExists";
    case ErrorCode::NoSuchArc: return "NoSuchArc";
    case ErrorCode::DuplicateState: return "DuplicateState";
    case ErrorCode::LastState: return "LastState";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::WouldCreateCycle: return "WouldCreateCycle";
    case ErrorCode::NotChance: return "NotChance";
    case ErrorCode::NotBarren: return "NotBarren";
    case ErrorCode::NotDeterministic: return "NotDeterministic";
    case ErrorCode::NoValueNode: return "NoValueNode";
    case ErrorCode::MultipleValueNodes: return "MultipleValueNodes";
    case ErrorCode::NotNoForgetting: return "NotNoForgetting";
    case ErrorCode::DecisionsUnordered: return "DecisionsUnordered";
    case ErrorCode::NotPolytree: return "NotPolytree";
    case ErrorCode::ImpossibleEvidence: return "ImpossibleEvidence";
    case ErrorCode::NotStrictlyPositive: return "NotStrictlyPositive";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& reason)
    : Error(ErrorCode::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason),
      line_(line),
      column_(column) {}

ImpossibleEvidenceError::ImpossibleEvidenceError(const std::string& detail,
                                                 std::optional<CutsetCaseLog> log)
    : Error(ErrorCode::ImpossibleEvidence, detail), log_(log) {}

void fail(ErrorCode code, const std::string& detail) {
  if (code == ErrorCode::ImpossibleEvidence) throw ImpossibleEvidenceError(detail);
  throw Error(code, detail);
}

}  // namespace beliefcore
