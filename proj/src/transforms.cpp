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

#include "beliefcore/transforms.hpp"

#include <algorithm>

#include "table_util.hpp"

namespace beliefcore {

using detail::cards_of;
using detail::decode;
using detail::encode;
using detail::position_of;
using detail::product;

namespace {

// Maps each name in `sub` to its position in `full`.
std::vector<std::size_t> positions(const std::vector<std::string>& sub, const std::vector<std::string>& full) {
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  for (const auto& s : sub) out.push_back(position_of(full, s));
  return out;
}

std::size_t project(std::span<const std::size_t> assignment, std::span<const std::size_t> where,
                    std::span<const std::size_t> cards) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < where.size(); ++k) index = index * cards[k] + assignment[where[k]];
  return index;
}

void require_chance(const Node& n) {
  if (!is_chance_like(n.kind)) fail(ErrorCode::NotChance, "node '" + n.id + "' is not a chance node");
}

// First child of `id` in graph order, if any.
std::optional<std::string> first_child_in_order(const Diagram& d, std::string_view id) {
  auto kids = d.children(id);
  if (kids.empty()) return std::nullopt;
  for (const auto& n : graph_order(d)) {
    if (std::find(kids.begin(), kids.end(), n) != kids.end()) return n;
  }
  return std::nullopt;
}

}  // namespace

void reverse_arc_in_place(Diagram& d, std::string_view from_id, std::string_view to_id) {
  const std::string from(from_id), to(to_id);
  const Node from_node = d.node(from);
  const Node to_node = d.node(to);
  if (!d.has_arc(from, to)) fail(ErrorCode::NoSuchArc, "no arc " + from + " -> " + to);
  require_chance(from_node);
  require_chance(to_node);

  // Another directed path from -> to would become a cycle once reversed.
  if (detail::reachable(d, from, to, /*skip_direct=*/true)) {
    fail(ErrorCode::WouldCreateCycle, "reversing " + from + " -> " + to + " would create a cycle");
  }

  std::vector<std::string> to_parents;
  for (const auto& p : to_node.parents) {
    if (p != from) to_parents.push_back(p);
  }
  for (const auto& p : from_node.parents) {
    if (position_of(to_parents, p) == to_parents.size()) to_parents.push_back(p);
  }
  std::vector<std::string> from_parents = from_node.parents;
  for (const auto& p : to_node.parents) {
    if (p != from && position_of(from_parents, p) == from_parents.size()) from_parents.push_back(p);
  }
  from_parents.push_back(to);

  // Joint workspace over (to_parents..., from, to).
  std::vector<std::string> scope = to_parents;
  scope.push_back(from);
  scope.push_back(to);
  const std::size_t ka = from_node.states.size();
  const std::size_t kb = to_node.states.size();
  const std::size_t a_pos = scope.size() - 2;

  const auto union_cards = cards_of(d, to_parents);
  const auto from_old_where = positions(from_node.parents, scope);
  const auto from_old_cards = cards_of(d, from_node.parents);
  const auto to_old_where = positions(to_node.parents, scope);
  const auto to_old_cards = cards_of(d, to_node.parents);

  std::vector<std::vector<double>> new_to_rows(product(union_cards), std::vector<double>(kb, 0.0));
  // Conditional P(from | union, to), indexed [union row][to state][from state].
  std::vector<std::vector<std::vector<double>>> cond(new_to_rows.size(),
                                                     std::vector<std::vector<double>>(kb, std::vector<double>(ka)));
  std::vector<std::size_t> x(scope.size());
  for (std::size_t u = 0; u < new_to_rows.size(); ++u) {
    decode(u, union_cards, std::span<std::size_t>(x.data(), to_parents.size()));
    std::vector<std::vector<double>> joint(ka, std::vector<double>(kb));
    for (std::size_t a = 0; a < ka; ++a) {
      x[a_pos] = a;
      const double pa = from_node.rows[project(x, from_old_where, from_old_cards)][a];
      const auto& to_row = to_node.rows[project(x, to_old_where, to_old_cards)];
      for (std::size_t b = 0; b < kb; ++b) joint[a][b] = pa * to_row[b];
    }
    for (std::size_t b = 0; b < kb; ++b) {
      double marginal = 0.0;
      for (std::size_t a = 0; a < ka; ++a) marginal += joint[a][b];
      new_to_rows[u][b] = marginal;
      for (std::size_t a = 0; a < ka; ++a) {
        cond[u][b][a] = marginal > 0.0 ? joint[a][b] / marginal : 1.0 / static_cast<double>(ka);
      }
    }
  }

  const auto from_new_cards = cards_of(d, from_parents);
  const auto union_in_from = positions(to_parents, from_parents);
  std::vector<std::vector<double>> new_from_rows(product(from_new_cards));
  std::vector<std::size_t> cfg(from_parents.size());
  for (std::size_t r = 0; r < new_from_rows.size(); ++r) {
    decode(r, from_new_cards, cfg);
    const std::size_t u = project(cfg, union_in_from, union_cards);
    new_from_rows[r] = cond[u][cfg.back()];
  }

  Node& nf = d.node_mut(from);
  nf.parents = std::move(from_parents);
  nf.rows = std::move(new_from_rows);
  nf.kind = NodeKind::chance;
  Node& nt = d.node_mut(to);
  nt.parents = std::move(to_parents);
  nt.rows = std::move(new_to_rows);
  nt.kind = NodeKind::chance;
}

Diagram reverse_arc(const Diagram& d, std::string_view from, std::string_view to) {
  Diagram out = d;
  reverse_arc_in_place(out, from, to);
  return out;
}

void remove_barren_node_in_place(Diagram& d, std::string_view id) {
  const Node& n = d.node(id);
  require_chance(n);
  if (!d.children(id).empty()) fail(ErrorCode::NotBarren, "node '" + n.id + "' has children");
  d.erase(id);
}

Diagram remove_barren_node(const Diagram& d, std::string_view id) {
  Diagram out = d;
  remove_barren_node_in_place(out, id);
  return out;
}

void remove_all_barren_in_place(Diagram& d, const std::set<std::string, std::less<>>& keep) {
  for (const auto& k : keep) d.node(k);
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::string, std::less<>> has_children;
    for (const auto& [id, n] : d.nodes()) {
      for (const auto& p : n.parents) has_children.insert(p);
    }
    std::vector<std::string> doomed;
    for (const auto& [id, n] : d.nodes()) {
      if (is_chance_like(n.kind) && !has_children.count(id) && !keep.count(id)) doomed.push_back(id);
    }
    for (const auto& id : doomed) d.erase(id);
    changed = !doomed.empty();
  }
}

Diagram remove_all_barren(const Diagram& d, const std::set<std::string, std::less<>>& keep) {
  Diagram out = d;
  remove_all_barren_in_place(out, keep);
  return out;
}

void absorb_chance_node_in_place(Diagram& d, std::string_view id) {
  require_chance(d.node(id));
  for (const auto& c : d.children(id)) require_chance(d.node(c));
  while (auto child = first_child_in_order(d, id)) reverse_arc_in_place(d, id, *child);
  d.erase(id);
}

Diagram absorb_chance_node(const Diagram& d, std::string_view id) {
  Diagram out = d;
  absorb_chance_node_in_place(out, id);
  return out;
}

void reduce_deterministic_node_in_place(Diagram& d, std::string_view id_view) {
  const std::string id(id_view);
  const Node det = d.node(id);
  if (!is_chance_like(det.kind) || det.rows.empty() ||
      !std::all_of(det.rows.begin(), det.rows.end(), [](const auto& r) { return is_unit_row(r); })) {
    fail(ErrorCode::NotDeterministic, "node '" + id + "' is not deterministic");
  }
  const auto kids = d.children(id);
  for (const auto& c : kids) {
    if (d.node(c).kind == NodeKind::decision) fail(ErrorCode::NotChance, "child '" + c + "' is a decision node");
  }
  std::vector<std::size_t> function(det.rows.size());
  for (std::size_t r = 0; r < det.rows.size(); ++r) {
    function[r] = static_cast<std::size_t>(std::find(det.rows[r].begin(), det.rows[r].end(), 1.0) - det.rows[r].begin());
  }
  const auto det_cards = cards_of(d, det.parents);

  for (const auto& c : kids) {
    const Node child = d.node(c);
    std::vector<std::string> parents;
    for (const auto& p : child.parents) {
      if (p != id) {
        parents.push_back(p);
        continue;
      }
      for (const auto& q : det.parents) {
        if (position_of(child.parents, q) == child.parents.size() && position_of(parents, q) == parents.size()) {
          parents.push_back(q);
        }
      }
    }
    const auto new_cards = cards_of(d, parents);
    const auto old_cards = cards_of(d, child.parents);
    const auto det_where = positions(det.parents, parents);
    const std::size_t det_slot = position_of(child.parents, id);
    std::vector<std::size_t> old_from_new(child.parents.size());
    for (std::size_t k = 0; k < child.parents.size(); ++k) old_from_new[k] = position_of(parents, child.parents[k]);

    std::vector<std::vector<double>> rows(product(new_cards));
    std::vector<std::size_t> cfg(parents.size()), old_cfg(child.parents.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      decode(r, new_cards, cfg);
      for (std::size_t k = 0; k < child.parents.size(); ++k) {
        old_cfg[k] = k == det_slot ? function[project(cfg, det_where, det_cards)] : cfg[old_from_new[k]];
      }
      rows[r] = child.rows[encode(old_cfg, old_cards)];
    }
    Node& m = d.node_mut(c);
    m.parents = std::move(parents);
    m.rows = std::move(rows);
  }
  d.erase(id);
}

Diagram reduce_deterministic_node(const Diagram& d, std::string_view id) {
  Diagram out = d;
  reduce_deterministic_node_in_place(out, id);
  return out;
}

}  // namespace beliefcore
