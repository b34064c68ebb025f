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
#include <cstdint>
#include <span>
#include <vector>

#include "beliefcore/indexed_net.hpp"
#include "beliefcore/model.hpp"

namespace beliefcore {

struct SimParams {
  std::size_t sweeps = 20000;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 1;
};

// P(x_i | Markov blanket) under `state`: the node's own row times the rows
// of each child, normalized.
std::vector<double> markov_blanket_conditional(const IndexedNet& net, std::size_t i,
                                               std::span<const std::size_t> state);

// Gibbs sampling. Unobserved nodes start uniformly at random and are
// resampled in graph order once per sweep; beliefs are the state
// frequencies after burn-in. Requires a strictly positive network
// (NotStrictlyPositive) and sweeps > burn_in (BadParams).
Beliefs gibbs_infer(const Diagram& d, const Evidence& evidence, const SimParams& params = {});

}  // namespace beliefcore
