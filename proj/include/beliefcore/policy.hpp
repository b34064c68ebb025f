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
#include <map>
#include <string>
#include <vector>

namespace beliefcore {

// Chosen alternative per configuration of a decision's information parents,
// row-major like a conditional table.
struct DecisionRule {
  std::vector<std::string> parents;
  std::vector<std::size_t> choice;

  bool operator==(const DecisionRule&) const = default;
};

using Policy = std::map<std::string, DecisionRule>;

struct SolveResult {
  Policy policy;
  double expected_utility = 0.0;
};

}  // namespace beliefcore
