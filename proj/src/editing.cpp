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

#include "beliefcore/editing.hpp"

#include <algorithm>

#include "table_util.hpp"

namespace beliefcore {

using detail::cards_of;
using detail::decode;
using detail::encode;
using detail::product;

namespace {

std::vector<double> uniform_row(std::size_t k) { return std::vector<double>(k, 1.0 / static_cast<double>(k)); }

}  // namespace

Diagram add_node(const Diagram& d, Node node) {
  if (d.has(node.id)) fail(ErrorCode::DuplicateId, "node '" + node.id + "' already exists");
  if (!is_identifier(node.id)) fail(ErrorCode::BadIdentifier, "'" + node.id + "' is not a valid identifier");
  for (const auto& p : node.parents) {
    if (p == node.id) fail(ErrorCode::CycleDetected, "node '" + node.id + "' cannot be its own parent");
    if (!d.has(p)) fail(ErrorCode::UnknownParent, "parent '" + p + "' does not exist");
  }
  Diagram out = d;
  out.insert(std::move(node));
  require_consistent(out);
  return out;
}

Diagram add_arc(const Diagram& d, std::string_view parent_id, std::string_view child_id) {
  const std::string parent(parent_id), child(child_id);
  const Node& c = d.node(child);
  const Node& p = d.node(parent);
  if (p.kind == NodeKind::value) fail(ErrorCode::Inconsistent, "value node '" + parent + "' cannot have children");
  if (d.has_arc(parent, child)) fail(ErrorCode::ArcExists, "arc " + parent + " -> " + child + " exists");
  if (parent == child || detail::reachable(d, child, parent)) {
    fail(ErrorCode::CycleDetected, "arc " + parent + " -> " + child + " would close a cycle");
  }

  Diagram out = d;
  Node& n = out.node_mut(child);
  n.parents.push_back(parent);
  if (c.kind != NodeKind::decision) {
    const std::size_t k = p.states.size();
    std::vector<std::vector<double>> rows;
    rows.reserve(c.rows.size() * k);
    for (const auto& row : c.rows) {
      for (std::size_t s = 0; s < k; ++s) rows.push_back(row);
    }
    n.rows = std::move(rows);
  }
  return out;
}

Diagram delete_arc(const Diagram& d, std::string_view parent_id, std::string_view child_id) {
  const std::string parent(parent_id), child(child_id);
  if (!d.has(child) || !d.has_arc(parent, child)) {
    fail(ErrorCode::NoSuchArc, "no arc " + parent + " -> " + child);
  }
  const Node& c = d.node(child);
  const std::size_t j = detail::position_of(c.parents, parent);

  Diagram out = d;
  Node& n = out.node_mut(child);
  n.parents.erase(n.parents.begin() + static_cast<std::ptrdiff_t>(j));
  if (c.kind == NodeKind::decision) return out;

  const auto old_cards = cards_of(d, c.parents);
  const auto new_cards = cards_of(d, n.parents);
  const std::size_t k = old_cards[j];
  const std::size_t width = c.rows.empty() ? 0 : c.rows.front().size();
  std::vector<std::vector<double>> rows(product(new_cards), std::vector<double>(width, 0.0));
  std::vector<std::size_t> cfg(new_cards.size()), old_cfg(old_cards.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    decode(r, new_cards, cfg);
    std::copy(cfg.begin(), cfg.begin() + static_cast<std::ptrdiff_t>(j), old_cfg.begin());
    std::copy(cfg.begin() + static_cast<std::ptrdiff_t>(j), cfg.end(), old_cfg.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    for (std::size_t s = 0; s < k; ++s) {
      old_cfg[j] = s;
      const auto& src = c.rows[encode(old_cfg, old_cards)];
      for (std::size_t x = 0; x < width; ++x) rows[r][x] += src[x];
    }
    for (double& v : rows[r]) v /= static_cast<double>(k);
  }
  // Averaging unit rows need not give a unit row.
  if (n.kind == NodeKind::deterministic &&
      !std::all_of(rows.begin(), rows.end(), [](const auto& row) { return is_unit_row(row); })) {
    n.kind = NodeKind::chance;
  }
  n.rows = std::move(rows);
  return out;
}

Diagram delete_node(const Diagram& d, std::string_view id, bool cascade) {
  d.node(id);
  auto kids = d.children(id);
  if (!kids.empty() && !cascade) {
    fail(ErrorCode::HasChildren, "node '" + std::string(id) + "' has children; use cascade");
  }
  Diagram out = d;
  for (const auto& c : kids) out = delete_arc(out, id, c);
  out.erase(id);
  return out;
}

Diagram add_state(const Diagram& d, std::string_view id, std::string label) {
  const Node& n = d.node(id);
  if (n.kind == NodeKind::value) fail(ErrorCode::Inconsistent, "value nodes have no states");
  if (!is_identifier(label)) fail(ErrorCode::BadIdentifier, "'" + label + "' is not a valid state label");
  if (std::find(n.states.begin(), n.states.end(), label) != n.states.end()) {
    fail(ErrorCode::DuplicateState, "node '" + n.id + "' already has state '" + label + "'");
  }

  Diagram out = d;
  Node& m = out.node_mut(id);
  m.states.push_back(std::move(label));
  for (auto& row : m.rows) row.push_back(0.0);
  const std::size_t added = m.states.size() - 1;

  for (const auto& child : d.children(id)) {
    const Node& c = d.node(child);
    if (c.kind == NodeKind::decision) continue;
    const std::size_t j = detail::position_of(c.parents, std::string(id));
    const auto old_cards = cards_of(d, c.parents);
    const auto new_cards = cards_of(out, c.parents);
    Node& cm = out.node_mut(child);
    std::vector<std::vector<double>> rows(product(new_cards));
    std::vector<std::size_t> cfg(new_cards.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      decode(r, new_cards, cfg);
      if (cfg[j] == added) {
        rows[r] = c.kind == NodeKind::value ? std::vector<double>{0.0} : uniform_row(c.states.size());
      } else {
        rows[r] = c.rows[encode(cfg, old_cards)];
      }
    }
    if (cm.kind == NodeKind::deterministic && c.states.size() > 1) cm.kind = NodeKind::chance;
    cm.rows = std::move(rows);
  }
  return out;
}

Diagram delete_state(const Diagram& d, std::string_view id, std::string_view label) {
  const Node& n = d.node(id);
  auto it = std::find(n.states.begin(), n.states.end(), label);
  if (it == n.states.end()) {
    fail(ErrorCode::UnknownState, "node '" + n.id + "' has no state '" + std::string(label) + "'");
  }
  if (n.states.size() < 2) fail(ErrorCode::LastState, "cannot delete the last state of '" + n.id + "'");
  const std::size_t removed = static_cast<std::size_t>(it - n.states.begin());

  Diagram out = d;
  Node& m = out.node_mut(id);
  m.states.erase(m.states.begin() + static_cast<std::ptrdiff_t>(removed));
  for (auto& row : m.rows) {
    const double dropped = row[removed];
    row.erase(row.begin() + static_cast<std::ptrdiff_t>(removed));
    if (dropped == 0.0) continue;
    double sum = 0.0;
    for (double v : row) sum += v;
    if (sum > 0.0) {
      for (double& v : row) v /= sum;
    } else {
      row = uniform_row(row.size());
    }
  }
  if (m.kind == NodeKind::deterministic &&
      !std::all_of(m.rows.begin(), m.rows.end(), [](const auto& row) { return is_unit_row(row); })) {
    m.kind = NodeKind::chance;
  }

  for (const auto& child : d.children(id)) {
    const Node& c = d.node(child);
    if (c.kind == NodeKind::decision) continue;
    const std::size_t j = detail::position_of(c.parents, std::string(id));
    const auto old_cards = cards_of(d, c.parents);
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> cfg(old_cards.size());
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
      decode(r, old_cards, cfg);
      if (cfg[j] != removed) rows.push_back(c.rows[r]);
    }
    out.node_mut(child).rows = std::move(rows);
  }
  return out;
}

Diagram edit_distribution(const Diagram& d, std::string_view id, std::vector<std::vector<double>> rows) {
  const Node& n = d.node(id);
  if (n.kind == NodeKind::decision) {
    if (!rows.empty()) fail(ErrorCode::ShapeMismatch, "decision nodes carry no distribution");
    return d;
  }
  const std::size_t width = n.kind == NodeKind::value ? 1 : n.states.size();
  if (rows.size() != d.row_count(n)) {
    fail(ErrorCode::ShapeMismatch, "expected " + std::to_string(d.row_count(n)) + " rows for '" + n.id + "'");
  }
  for (const auto& row : rows) {
    if (row.size() != width) fail(ErrorCode::ShapeMismatch, "row width must be " + std::to_string(width));
  }
  Diagram out = d;
  out.node_mut(id).rows = std::move(rows);
  require_consistent(out);
  return out;
}

Diagram copy_diagram(const Diagram& d) { return d; }

}  // namespace beliefcore
