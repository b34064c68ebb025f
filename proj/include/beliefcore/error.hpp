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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace beliefcore {

enum class ErrorCode {
  // model / build
  CycleDetected,
  RowSumViolation,
  UnknownParent,
  DuplicateId,
  UnknownNode,
  BadIdentifier,
  ShapeMismatch,
  Inconsistent,
  BadEpsilon,
  BadParams,
  BadEvidence,
  TooLarge,
  UnknownFixture,
  NotBeliefNet,
  // editing
  HasChildren,
  ArcExists,
  NoSuchArc,
  DuplicateState,
  LastState,
  UnknownState,
  // io
  ParseError,
  VersionUnsupported,
  // transforms
  WouldCreateCycle,
  NotChance,
  NotBarren,
  NotDeterministic,
  // reduction
  NoValueNode,
  MultipleValueNodes,
  NotNoForgetting,
  DecisionsUnordered,
  // inference
  NotPolytree,
  ImpossibleEvidence,
  NotStrictlyPositive,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Counts of cutset cases seen by a conditioning run.
struct CutsetCaseLog {
  std::size_t total_cases = 0;
  std::size_t skipped_cases = 0;
  std::size_t evaluated_cases = 0;

  bool operator==(const CutsetCaseLog&) const = default;
};

// Raised when P(evidence) = 0. Conditioning attaches its case log.
class ImpossibleEvidenceError : public Error {
 public:
  explicit ImpossibleEvidenceError(const std::string& detail,
                                   std::optional<CutsetCaseLog> log = std::nullopt);

  const std::optional<CutsetCaseLog>& case_log() const noexcept { return log_; }

 private:
  std::optional<CutsetCaseLog> log_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace beliefcore
