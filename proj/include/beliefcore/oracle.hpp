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
#include <string>
#include <vector>

#include "beliefcore/model.hpp"
#include "beliefcore/policy.hpp"

namespace beliefcore {

// Largest joint state space the enumeration routines will visit.
inline constexpr double kOracleStateLimit = 1e7;

// Exact posteriors by enumerating every joint state of a belief network.
// Throws ImpossibleEvidenceError when P(evidence) = 0 and TooLarge past the
// state-space guard.
Beliefs joint_enumeration_oracle(const Diagram& d, const Evidence& evidence);

// P(nodes = x, evidence) for every x, row-major over `nodes` (first slowest).
std::vector<double> joint_marginal(const Diagram& d, const std::vector<std::string>& nodes,
                                   const Evidence& evidence = {});

// Expected utility of following `policy` in an influence diagram with one
// value node, by enumeration of chance and decision states.
double oracle_expected_utility(const Diagram& d, const Policy& policy);

}  // namespace beliefcore
