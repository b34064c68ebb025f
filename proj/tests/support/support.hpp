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

#include <cstdint>
#include <string>
#include <vector>

#include "beliefcore/model.hpp"
#include "beliefcore/policy.hpp"
#include "beliefcore/random_network.hpp"

namespace beliefcore::testing {

// Largest absolute difference between matching posteriors; infinity when
// the node sets or vector widths differ.
double linf(const Beliefs& a, const Beliefs& b);
bool all_finite(const Beliefs& b);

// Random belief net with 2..12 nodes and 2..3 states per node. About half
// are restricted to polytrees.
Diagram random_belief_net(std::uint64_t seed);
// Random net that is guaranteed to be multiply connected.
Diagram random_loopy_net(std::uint64_t seed);
// Observes up to `max_count` nodes, drawing each state from its marginal so
// the evidence is usually possible.
Evidence random_evidence(const Diagram& d, Rng& rng, std::size_t max_count);

// Small influence diagram with one or two binary decisions obeying
// no-forgetting, a few chance nodes and one value node.
Diagram random_influence_diagram(std::uint64_t seed);
// Best expected utility over every deterministic policy.
double brute_force_expected_utility(const Diagram& d);

// Three diamonds rooted at A, B and C; P(A=t) = 0.
Diagram three_cutset_fixture();

struct ImpossibleCase {
  Diagram net;
  Evidence evidence;
};
// Net plus an evidence set of probability zero.
ImpossibleCase impossible_case(std::uint64_t seed);

}  // namespace beliefcore::testing
