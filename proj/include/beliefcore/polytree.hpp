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

#include <span>
#include <vector>

#include "beliefcore/indexed_net.hpp"
#include "beliefcore/model.hpp"
#include "beliefcore/step_counter.hpp"

namespace beliefcore {

bool is_polytree(const Diagram& d);

// Unnormalized per-node beliefs P(x, e) from one propagation. Every vector
// sums to evidence_probability; nothing is divided during propagation.
struct JointBeliefs {
  std::vector<std::vector<double>> joint;
  double evidence_probability = 0.0;
};

// Two-sweep lambda/pi propagation over each connected component: collect
// toward the component's first node in graph order, then distribute.
// `evidence` holds one observed state (or kUnobserved) per node. Throws
// NotPolytree when the skeleton has a cycle.
JointBeliefs propagate_polytree(const IndexedNet& net, std::span<const std::size_t> evidence,
                                StepCounter* counter = nullptr);

// Normalized beliefs for every node. Throws ImpossibleEvidenceError when
// P(evidence) = 0.
Beliefs polytree_infer(const Diagram& d, const Evidence& evidence, StepCounter* counter = nullptr);

}  // namespace beliefcore
