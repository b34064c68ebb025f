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
#include <string_view>
#include <vector>

#include "beliefcore/model.hpp"

namespace beliefcore {

// Sentinel for "no evidence on this node".
inline constexpr std::size_t kUnobserved = static_cast<std::size_t>(-1);

// Index-based view of a belief network, nodes in graph order. Every parent
// index is smaller than its child's. cpt[i] is laid out row-major over the
// parents (first parent slowest) followed by the node's own state.
struct IndexedNet {
  std::vector<std::string> ids;
  std::vector<std::size_t> card;
  std::vector<std::vector<std::size_t>> parents;
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::vector<double>> cpt;

  // Throws NotBeliefNet if any node is a decision or value node.
  static IndexedNet from(const Diagram& d);

  std::size_t size() const { return ids.size(); }
  std::size_t index_of(std::string_view id) const;

  // Row of node i's table selected by a full assignment.
  std::size_t row_of(std::size_t i, std::span<const std::size_t> assignment) const;
  double prob(std::size_t i, std::span<const std::size_t> assignment) const {
    return cpt[i][row_of(i, assignment) * card[i] + assignment[i]];
  }

  // Per-node observed state or kUnobserved.
  std::vector<std::size_t> evidence_vector(const Evidence& evidence) const;

  // Skeleton is a forest.
  bool is_polytree() const;
};

// Normalizes per-node vectors into Beliefs; throws ImpossibleEvidence when a
// normalizer is zero.
Beliefs make_beliefs(const IndexedNet& net, std::vector<std::vector<double>> unnormalized,
                     std::optional<double> evidence_probability);

}  // namespace beliefcore
