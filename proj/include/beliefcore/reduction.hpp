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

#include <string_view>

#include "beliefcore/model.hpp"
#include "beliefcore/policy.hpp"

namespace beliefcore {

// Solves an influence diagram by successive transformations: barren removal,
// chance-node absorption into the value node (after any needed reversals),
// and maximization over decisions in reverse order. Ties go to the lowest
// alternative index. Works on a private copy of `d`.
SolveResult evaluate_influence_diagram(const Diagram& d);

// Adds the arcs that make a diagram satisfy no-forgetting, taking the
// decisions in graph order.
Diagram add_no_forgetting_arcs(const Diagram& d);

// P(target | evidence) by barren removal, absorption of every node outside
// {target} and the evidence, and reversal of the target's remaining arcs.
// Throws ImpossibleEvidenceError when the evidence has probability zero.
Beliefs reduction_query(const Diagram& d, std::string_view target, const Evidence& evidence);

}  // namespace beliefcore
