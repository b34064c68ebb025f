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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beliefcore/error.hpp"

namespace beliefcore {

// Validation tolerance for chance-row sums.
inline constexpr double kRowSumTolerance = 1e-9;

enum class NodeKind { chance, deterministic, decision, value };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

// Chance and deterministic nodes behave identically in inference; the kind
// flag only records that every row is a unit vector.
inline bool is_chance_like(NodeKind kind) {
  return kind == NodeKind::chance || kind == NodeKind::deterministic;
}

// A node and its conditional table. `rows` is indexed row-major by parent
// state (first parent varies slowest). Chance rows have one entry per state,
// value rows hold a single utility, decision nodes carry no rows.
struct Node {
  std::string id;
  NodeKind kind = NodeKind::chance;
  std::vector<std::string> states;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> rows;

  bool operator==(const Node&) const = default;
};

// Scope used by ExtRecord for records attached to the whole diagram.
inline constexpr std::string_view kDiagramScope = "*";

struct ExtRecord {
  std::string scope;
  std::string key;
  std::string value;

  bool operator==(const ExtRecord&) const = default;
};

using NodeMap = std::map<std::string, Node, std::less<>>;

// A diagram is a value. Mutators perform no validation; use build_diagram or
// is_consistent to check the result.
class Diagram {
 public:
  Diagram() = default;
  explicit Diagram(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const NodeMap& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool has(std::string_view id) const;
  const Node& node(std::string_view id) const;
  Node& node_mut(std::string_view id);

  void insert(Node node);
  void erase(std::string_view id);

  // Children in ascending id order.
  std::vector<std::string> children(std::string_view id) const;
  bool has_arc(std::string_view parent, std::string_view child) const;

  std::size_t card(std::string_view id) const { return node(id).states.size(); }
  std::size_t state_index(std::string_view id, std::string_view label) const;
  // Number of rows the node's table must have.
  std::size_t row_count(const Node& n) const;

  const std::vector<ExtRecord>& ext() const { return ext_; }
  // Inserts or replaces the record for (scope, key).
  void set_ext(std::string scope, std::string key, std::string value);
  void erase_ext_scope(std::string_view scope);

  bool operator==(const Diagram&) const = default;

 private:
  std::string name_ = "untitled";
  NodeMap nodes_;
  std::vector<ExtRecord> ext_;
};

// Hard evidence: node id -> observed state index.
using Evidence = std::map<std::string, std::size_t>;

struct Beliefs {
  std::map<std::string, std::vector<double>> posteriors;
  std::optional<double> evidence_probability;

  const std::vector<double>& at(std::string_view id) const;
};

struct Violation {
  std::string node;
  std::string rule;
  std::string detail;
};

struct ConsistencyReport {
  bool ok = true;
  std::vector<Violation> violations;
};

bool is_identifier(std::string_view text);

// Validates and returns the diagram; throws Error naming the first violation.
Diagram build_diagram(std::vector<Node> nodes, std::string name = "untitled");

ConsistencyReport is_consistent(const Diagram& d);
// Throws Error(Inconsistent or the first violation's code) unless consistent.
void require_consistent(const Diagram& d);

bool is_acyclic(const Diagram& d);
bool is_strictly_positive(const Diagram& d);
bool is_belief_net(const Diagram& d);

// Topological order, ties broken by ascending id.
std::vector<std::string> graph_order(const Diagram& d);

// Mixes every chance row with the uniform distribution: (1-eps) p + eps/k.
Diagram make_strictly_positive(const Diagram& d, double eps);

std::optional<std::string> value_node(const Diagram& d);
std::vector<std::string> nodes_of_kind(const Diagram& d, NodeKind kind);

// Row index of a node's table for the given parent states (one per parent).
std::size_t row_index(const Diagram& d, const Node& n, std::span<const std::size_t> parent_states);

// Throws BadEvidence / UnknownNode when evidence does not fit the diagram.
void validate_evidence(const Diagram& d, const Evidence& evidence);
// Parses "A=t,B=f" using state labels.
Evidence parse_evidence(const Diagram& d, std::string_view text);

bool is_unit_row(std::span<const double> row);

}  // namespace beliefcore
