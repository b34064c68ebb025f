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

#include "beliefcore/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace beliefcore {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::chance: return "chance";
    case NodeKind::deterministic: return "deterministic";
    case NodeKind::decision: return "decision";
    case NodeKind::value: return "value";
  }
  return "chance";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "chance") return NodeKind::chance;
  if (text == "deterministic") return NodeKind::deterministic;
  if (text == "decision") return NodeKind::decision;
  if (text == "value") return NodeKind::value;
  return std::nullopt;
}

bool Diagram::has(std::string_view id) const { return nodes_.find(id) != nodes_.end(); }

const Node& Diagram::node(std::string_view id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) fail(ErrorCode::UnknownNode, "no node '" + std::string(id) + "'");
  return it->second;
}

Node& Diagram::node_mut(std::string_view id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) fail(ErrorCode::UnknownNode, "no node '" + std::string(id) + "'");
  return it->second;
}

void Diagram::insert(Node node) {
  if (has(node.id)) fail(ErrorCode::DuplicateId, "node '" + node.id + "' already exists");
  std::string key = node.id;
  nodes_.emplace(std::move(key), std::move(node));
}

void Diagram::erase(std::string_view id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) fail(ErrorCode::UnknownNode, "no node '" + std::string(id) + "'");
  nodes_.erase(it);
  erase_ext_scope(id);
}

std::vector<std::string> Diagram::children(std::string_view id) const {
  std::vector<std::string> out;
  for (const auto& [nid, n] : nodes_) {
    if (std::find(n.parents.begin(), n.parents.end(), id) != n.parents.end()) out.push_back(nid);
  }
  return out;
}

bool Diagram::has_arc(std::string_view parent, std::string_view child) const {
  auto it = nodes_.find(child);
  if (it == nodes_.end()) return false;
  const auto& ps = it->second.parents;
  return std::find(ps.begin(), ps.end(), parent) != ps.end();
}

std::size_t Diagram::state_index(std::string_view id, std::string_view label) const {
  const Node& n = node(id);
  auto it = std::find(n.states.begin(), n.states.end(), label);
  if (it == n.states.end()) {
    fail(ErrorCode::UnknownState, "node '" + n.id + "' has no state '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - n.states.begin());
}

std::size_t Diagram::row_count(const Node& n) const {
  std::size_t rows = 1;
  for (const auto& p : n.parents) {
    auto it = nodes_.find(p);
    if (it == nodes_.end()) return 0;
    rows *= it->second.states.size();
  }
  return rows;
}

void Diagram::set_ext(std::string scope, std::string key, std::string value) {
  for (auto& r : ext_) {
    if (r.scope == scope && r.key == key) {
      r.value = std::move(value);
      return;
    }
  }
  ext_.push_back({std::move(scope), std::move(key), std::move(value)});
}

void Diagram::erase_ext_scope(std::string_view scope) {
  std::erase_if(ext_, [&](const ExtRecord& r) { return r.scope == scope; });
}

const std::vector<double>& Beliefs::at(std::string_view id) const {
  auto it = posteriors.find(std::string(id));
  if (it == posteriors.end()) fail(ErrorCode::UnknownNode, "no belief for '" + std::string(id) + "'");
  return it->second;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f) return false;
    if (c == ',' || c == '=' || c == '|' || c == ':' || c == '#' || c == '*') return false;
  }
  return text != "->";
}

bool is_unit_row(std::span<const double> row) {
  std::size_t ones = 0;
  for (double v : row) {
    if (v == 1.0) {
      ++ones;
    } else if (v != 0.0) {
      return false;
    }
  }
  return ones == 1;
}

namespace {

ErrorCode code_for_rule(std::string_view rule) {
  if (rule == "Acyclic") return ErrorCode::CycleDetected;
  if (rule == "UnknownParent") return ErrorCode::UnknownParent;
  if (rule == "RowSum") return ErrorCode::RowSumViolation;
  if (rule == "RowCount" || rule == "RowShape") return ErrorCode::ShapeMismatch;
  if (rule == "BadIdentifier") return ErrorCode::BadIdentifier;
  if (rule == "DuplicateState") return ErrorCode::DuplicateState;
  return ErrorCode::Inconsistent;
}

// Kahn's algorithm with an ordered ready set; returns a partial order when
// the graph has a cycle.
std::vector<std::string> kahn(const Diagram& d) {
  std::map<std::string, std::size_t, std::less<>> indegree;
  for (const auto& [id, n] : d.nodes()) {
    std::size_t deg = 0;
    for (const auto& p : n.parents) deg += d.has(p) ? 1 : 0;
    indegree[id] = deg;
  }
  std::map<std::string, std::vector<std::string>, std::less<>> kids;
  for (const auto& [id, n] : d.nodes()) {
    for (const auto& p : n.parents) {
      if (d.has(p)) kids[p].push_back(id);
    }
  }
  std::set<std::string, std::less<>> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.insert(id);
  }
  std::vector<std::string> order;
  order.reserve(d.size());
  while (!ready.empty()) {
    std::string id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    for (const auto& c : kids[id]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }
  return order;
}

}  // namespace

bool is_acyclic(const Diagram& d) { return kahn(d).size() == d.size(); }

std::vector<std::string> graph_order(const Diagram& d) {
  auto order = kahn(d);
  if (order.size() != d.size()) fail(ErrorCode::CycleDetected, "diagram '" + d.name() + "' has a cycle");
  return order;
}

ConsistencyReport is_consistent(const Diagram& d) {
  ConsistencyReport report;
  auto add = [&](const std::string& node, std::string rule, std::string detail) {
    report.violations.push_back({node, std::move(rule), std::move(detail)});
  };

  for (const auto& [id, n] : d.nodes()) {
    if (!is_identifier(id)) add(id, "BadIdentifier", "'" + id + "' is not a valid identifier");

    if (n.kind == NodeKind::value) {
      if (!n.states.empty()) add(id, "ValueStates", "value nodes carry no states");
    } else if (n.states.empty()) {
      add(id, "NoStates", "node needs at least one state");
    }
    std::set<std::string, std::less<>> seen_states;
    for (const auto& s : n.states) {
      if (!is_identifier(s)) add(id, "BadIdentifier", "state '" + s + "' is not a valid identifier");
      if (!seen_states.insert(s).second) add(id, "DuplicateState", "state '" + s + "' repeated");
    }

    bool parents_ok = true;
    std::set<std::string, std::less<>> seen_parents;
    for (const auto& p : n.parents) {
      if (!seen_parents.insert(p).second) {
        add(id, "DuplicateParent", "parent '" + p + "' repeated");
        parents_ok = false;
      }
      if (!d.has(p)) {
        add(id, "UnknownParent", "parent '" + p + "' does not exist");
        parents_ok = false;
      } else if (d.node(p).kind == NodeKind::value) {
        add(p, "ValueHasChildren", "value node has child '" + id + "'");
      }
    }

    if (n.kind == NodeKind::decision) {
      if (!n.rows.empty()) add(id, "DecisionTable", "decision nodes carry no distribution");
      continue;
    }
    if (!parents_ok) continue;
    const std::size_t expected_rows = d.row_count(n);
    if (n.rows.size() != expected_rows) {
      add(id, "RowCount",
          "expected " + std::to_string(expected_rows) + " rows, found " + std::to_string(n.rows.size()));
      continue;
    }
    const std::size_t width = n.kind == NodeKind::value ? 1 : n.states.size();
    for (std::size_t r = 0; r < n.rows.size(); ++r) {
      const auto& row = n.rows[r];
      const std::string where = "row " + std::to_string(r);
      if (row.size() != width) {
        add(id, "RowShape", where + " has " + std::to_string(row.size()) + " entries, expected " +
                                std::to_string(width));
        continue;
      }
      bool finite = std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); });
      if (!finite) {
        add(id, "NonFinite", where + " has a non-finite entry");
        continue;
      }
      if (n.kind == NodeKind::value) continue;
      if (std::any_of(row.begin(), row.end(), [](double v) { return v < 0.0; })) {
        add(id, "NegativeEntry", where + " has a negative entry");
      }
      double sum = 0.0;
      for (double v : row) sum += v;
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        add(id, "RowSum", where + " sums to " + std::to_string(sum));
      }
      if (n.kind == NodeKind::deterministic && !is_unit_row(row)) {
        add(id, "DeterministicRow", where + " is not a unit vector");
      }
    }
  }

  if (!is_acyclic(d)) add("", "Acyclic", "the arc relation has a cycle");
  report.ok = report.violations.empty();
  return report;
}

void require_consistent(const Diagram& d) {
  auto report = is_consistent(d);
  if (report.ok) return;
  const auto& v = report.violations.front();
  std::string where = v.node.empty() ? "" : "node '" + v.node + "': ";
  fail(code_for_rule(v.rule), where + v.detail);
}

Diagram build_diagram(std::vector<Node> nodes, std::string name) {
  Diagram d(std::move(name));
  for (auto& n : nodes) {
    if (!is_identifier(n.id)) fail(ErrorCode::BadIdentifier, "'" + n.id + "' is not a valid identifier");
    if (d.has(n.id)) fail(ErrorCode::DuplicateId, "node '" + n.id + "' defined twice");
    d.insert(std::move(n));
  }
  require_consistent(d);
  return d;
}

bool is_strictly_positive(const Diagram& d) {
  for (const auto& [id, n] : d.nodes()) {
    if (!is_chance_like(n.kind)) continue;
    for (const auto& row : n.rows) {
      for (double v : row) {
        if (!(v > 0.0)) return false;
      }
    }
  }
  return true;
}

bool is_belief_net(const Diagram& d) {
  return std::all_of(d.nodes().begin(), d.nodes().end(),
                     [](const auto& kv) { return is_chance_like(kv.second.kind); });
}

Diagram make_strictly_positive(const Diagram& d, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) fail(ErrorCode::BadEpsilon, "eps must lie in [0, 1)");
  Diagram out = d;
  if (eps == 0.0) return out;
  for (const auto& [id, n] : d.nodes()) {
    if (!is_chance_like(n.kind)) continue;
    Node& m = out.node_mut(id);
    m.kind = NodeKind::chance;
    const double share = eps / static_cast<double>(m.states.size());
    for (auto& row : m.rows) {
      for (double& v : row) v = (1.0 - eps) * v + share;
    }
  }
  return out;
}

std::optional<std::string> value_node(const Diagram& d) {
  for (const auto& [id, n] : d.nodes()) {
    if (n.kind == NodeKind::value) return id;
  }
  return std::nullopt;
}

std::vector<std::string> nodes_of_kind(const Diagram& d, NodeKind kind) {
  std::vector<std::string> out;
  for (const auto& [id, n] : d.nodes()) {
    if (n.kind == kind) out.push_back(id);
  }
  return out;
}

std::size_t row_index(const Diagram& d, const Node& n, std::span<const std::size_t> parent_states) {
  if (parent_states.size() != n.parents.size()) {
    fail(ErrorCode::ShapeMismatch, "node '" + n.id + "' expects one state per parent");
  }
  std::size_t row = 0;
  for (std::size_t i = 0; i < n.parents.size(); ++i) {
    row = row * d.card(n.parents[i]) + parent_states[i];
  }
  return row;
}

void validate_evidence(const Diagram& d, const Evidence& evidence) {
  for (const auto& [id, state] : evidence) {
    const Node& n = d.node(id);
    if (!is_chance_like(n.kind)) {
      fail(ErrorCode::BadEvidence, "evidence on non-chance node '" + id + "'");
    }
    if (state >= n.states.size()) {
      fail(ErrorCode::BadEvidence, "state index " + std::to_string(state) + " out of range for '" + id + "'");
    }
  }
}

Evidence parse_evidence(const Diagram& d, std::string_view text) {
  Evidence ev;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::BadEvidence, "evidence item '" + std::string(item) + "' is not NODE=STATE");
    }
    std::string id(item.substr(0, eq));
    std::string label(item.substr(eq + 1));
    std::size_t idx = d.state_index(id, label);
    if (!ev.emplace(id, idx).second) fail(ErrorCode::BadEvidence, "node '" + id + "' observed twice");
  }
  validate_evidence(d, ev);
  return ev;
}

}  // namespace beliefcore
