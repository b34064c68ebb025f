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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "beliefcore/indexed_net.hpp"
#include "beliefcore/model.hpp"
#include "beliefcore/step_counter.hpp"

namespace beliefcore {

// Simple undirected graph; each node carries its state count so that
// triangulation heuristics can weigh clique sizes.
class UndirectedGraph {
 public:
  using Edge = std::pair<std::string, std::string>;  // first < second

  void add_node(const std::string& id, std::size_t card = 2);
  // Self-loops are ignored; duplicates are harmless.
  void add_edge(const std::string& a, const std::string& b);
  bool has_edge(const std::string& a, const std::string& b) const;

  const std::map<std::string, std::size_t, std::less<>>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::set<std::string> neighbors(const std::string& id) const;

 private:
  std::map<std::string, std::size_t, std::less<>> nodes_;
  std::set<Edge> edges_;
};

UndirectedGraph moralize(const Diagram& d);

enum class TriangulationMethod { mcs, min_fill };

struct Triangulation {
  std::vector<UndirectedGraph::Edge> fill;
  std::vector<std::string> elimination_order;
};

Triangulation triangulate(const UndirectedGraph& g, TriangulationMethod method);
UndirectedGraph with_fill(const UndirectedGraph& g, const Triangulation& t);
bool is_chordal(const UndirectedGraph& g);

// Largest clique state space the join tree would have, computed without
// building any potential. Returned as a double since it may overflow.
double max_clique_states(const Diagram& d, TriangulationMethod method = TriangulationMethod::mcs);

// Number of potential tables allocated so far by join-tree code. Lets tests
// assert that estimation never builds one.
std::uint64_t potential_allocations();

struct Universe {
  std::vector<std::size_t> members;  // net indices, ascending
  std::size_t size = 1;              // S(U)
  std::size_t parent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> children;
  std::vector<std::size_t> sepset;  // shared with parent, ascending

  std::size_t neighbor_count() const { return children.size() + (parent == static_cast<std::size_t>(-1) ? 0 : 1); }
};

class JoinTree {
 public:
  const IndexedNet& net() const { return net_; }
  const std::vector<Universe>& universes() const { return universes_; }
  // Tree edges as (parent, child) universe pairs.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  // Smallest universe containing net node i (ties by universe index).
  std::size_t member_home(std::size_t i) const { return member_home_[i]; }
  // Universe whose potential received node i's table.
  std::size_t family_home(std::size_t i) const { return family_home_[i]; }
  std::uint64_t instrumented_init() const { return instrumented_init_; }
  // Calibrated potentials without evidence; potential u is P(U).
  const std::vector<std::vector<double>>& potentials() const { return potentials_; }
  const std::vector<std::vector<double>>& sepset_potentials() const { return sepsets_; }
  std::size_t max_universe_size() const;
  // Sepset index of each cell of universe c (up) and of its parent (down).
  const std::vector<std::uint32_t>& up_map(std::size_t c) const { return up_maps_[c]; }
  const std::vector<std::uint32_t>& down_map(std::size_t c) const { return down_maps_[c]; }
  // Universes with every parent before its children.
  const std::vector<std::size_t>& order() const { return order_; }

 private:
  friend JoinTree build_join_tree(const Diagram& d, TriangulationMethod method, StepCounter* counter);

  IndexedNet net_;
  std::vector<Universe> universes_;
  std::vector<std::size_t> member_home_;
  std::vector<std::size_t> family_home_;
  std::vector<std::vector<std::uint32_t>> up_maps_;
  std::vector<std::vector<std::uint32_t>> down_maps_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<double>> potentials_;
  std::vector<std::vector<double>> sepsets_;  // indexed by child universe
  std::uint64_t instrumented_init_ = 0;
};

// Cliques past this many states make build_join_tree throw TooLarge.
inline constexpr double kMaxUniverseStates = 1 << 24;

// Moralizes, triangulates, connects the maximal cliques by a maximum-weight
// spanning tree rooted at universe 0 and calibrates the potentials: one
// setup pass, two collect passes and N(U) distribute passes per universe.
JoinTree build_join_tree(const Diagram& d, TriangulationMethod method = TriangulationMethod::mcs,
                         StepCounter* counter = nullptr);

// HUGIN-style propagation on private copies of the compiled potentials.
// Evidence declaration is also added to `counter`; its share is reported in
// `evidence_cost` when given.
Beliefs jt_infer_jensen(const JoinTree& jt, const Evidence& evidence, StepCounter* counter = nullptr,
                        std::uint64_t* evidence_cost = nullptr);

// Treats the join tree as a belief network over universes with tables
// P(U | parent universe); rows whose sepset marginal is zero are all zero.
Beliefs jt_infer_meta(const JoinTree& jt, const Evidence& evidence, StepCounter* counter = nullptr);

}  // namespace beliefcore
