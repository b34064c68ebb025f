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
#include <span>
#include <string>
#include <vector>

#include "beliefcore/indexed_net.hpp"
#include "beliefcore/model.hpp"
#include "beliefcore/step_counter.hpp"

namespace beliefcore {

// Loop cutset in graph order. Clamping every member (cutting its outgoing
// arcs) leaves a singly connected network.
struct Cutset {
  std::vector<std::string> nodes;
  std::vector<std::size_t> cards;

  std::size_t case_count() const;
};

// Greedy heuristic: strip nodes of skeleton degree <= 1, then clamp the
// highest-degree remaining node with at most one incoming arc inside that
// cyclic core (ties by id); repeat until no core remains.
Cutset find_loop_cutset(const Diagram& d);
std::vector<std::size_t> find_loop_cutset(const IndexedNet& net);

// Copy of `net` with the given nodes fixed to `states`: each clamped node
// loses its outgoing arcs and its children's tables are sliced at the state.
IndexedNet clamp(const IndexedNet& net, std::span<const std::size_t> nodes, std::span<const std::size_t> states);

struct ConditioningOptions {
  // Debug mode: evaluate the cases that pruning would skip and report the
  // largest weight found among them.
  bool evaluate_skipped = false;
};

struct ConditioningResult {
  Beliefs beliefs;
  CutsetCaseLog log;
  Cutset cutset;
  // P(S = s | e) for each evaluated case, in case order (weighted variant).
  std::vector<double> mixing_weights;
  // Largest P(S = s | e) among skipped cases; only set in debug mode.
  double max_skipped_weight = 0.0;
};

// Mixes per-case conditionals P(x | s, e) with weights P(s | e). Cases whose
// prefix probability is zero are skipped together with all their
// extensions. Throws ImpossibleEvidenceError (carrying the case log) when
// every case is skipped.
ConditioningResult conditioning_infer_weighted(const Diagram& d, const Evidence& evidence,
                                               const ConditioningOptions& options = {},
                                               StepCounter* counter = nullptr);

// Accumulates joint-scale beliefs P(x, s, e) over the cases and normalizes
// once at the end.
ConditioningResult conditioning_infer_joint(const Diagram& d, const Evidence& evidence,
                                            const ConditioningOptions& options = {},
                                            StepCounter* counter = nullptr);

}  // namespace beliefcore
