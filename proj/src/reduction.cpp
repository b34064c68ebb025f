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

#include "beliefcore/reduction.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "beliefcore/transforms.hpp"
#include "table_util.hpp"

namespace beliefcore {

using detail::cards_of;
using detail::decode;
using detail::encode;
using detail::position_of;
using detail::product;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::optional<std::string> first_child_in_order(const Diagram& d, const std::string& id) {
  auto kids = d.children(id);
  if (kids.empty()) return std::nullopt;
  for (const auto& n : graph_order(d)) {
    if (contains(kids, n)) return n;
  }
  return std::nullopt;
}

// Product of state counts over the family X would leave behind once absorbed.
double absorption_cost(const Diagram& d, const std::string& x) {
  std::set<std::string> scope;
  const Node& n = d.node(x);
  scope.insert(n.parents.begin(), n.parents.end());
  for (const auto& c : d.children(x)) {
    scope.insert(c);
    const Node& cn = d.node(c);
    scope.insert(cn.parents.begin(), cn.parents.end());
  }
  scope.erase(x);
  double size = 1.0;
  for (const auto& s : scope) {
    const Node& m = d.node(s);
    size *= static_cast<double>(std::max<std::size_t>(m.states.size(), 1));
  }
  return size;
}

// Replaces V's table: new_parents configs are mapped to a utility by `fn`,
// which receives the configuration as a name -> state lookup.
template <typename Fn>
void rebuild_value(Diagram& d, const std::string& v, std::vector<std::string> new_parents, Fn&& fn) {
  const auto cards = cards_of(d, new_parents);
  std::vector<std::vector<double>> rows(product(cards));
  std::vector<std::size_t> cfg(cards.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    decode(r, cards, cfg);
    rows[r] = {fn(new_parents, cfg)};
  }
  Node& vn = d.node_mut(v);
  vn.parents = std::move(new_parents);
  vn.rows = std::move(rows);
}

// Index of V's old row given values for the listed names.
struct ValueLookup {
  std::vector<std::string> parents;
  std::vector<std::size_t> cards;
  const std::vector<std::vector<double>>* rows;

  double at(const std::vector<std::string>& names, const std::vector<std::size_t>& states,
            const std::string& extra, std::size_t extra_state) const {
    std::size_t r = 0;
    for (std::size_t k = 0; k < parents.size(); ++k) {
      std::size_t s;
      if (parents[k] == extra) {
        s = extra_state;
      } else {
        s = states[position_of(names, parents[k])];
      }
      r = r * cards[k] + s;
    }
    return (*rows)[r][0];
  }
};

// Expectation of V over chance node X, whose only child must be V.
void absorb_into_value(Diagram& d, const std::string& x, const std::string& v) {
  const Node xn = d.node(x);
  const Node vn = d.node(v);
  std::vector<std::string> new_parents;
  for (const auto& p : vn.parents) {
    if (p != x) new_parents.push_back(p);
  }
  for (const auto& p : xn.parents) {
    if (!contains(new_parents, p)) new_parents.push_back(p);
  }
  ValueLookup old{vn.parents, cards_of(d, vn.parents), &vn.rows};
  const auto x_cards = cards_of(d, xn.parents);
  rebuild_value(d, v, new_parents, [&](const auto& names, const auto& cfg) {
    std::size_t xr = 0;
    for (std::size_t k = 0; k < xn.parents.size(); ++k) xr = xr * x_cards[k] + cfg[position_of(names, xn.parents[k])];
    double sum = 0.0;
    for (std::size_t s = 0; s < xn.states.size(); ++s) {
      const double p = xn.rows[xr][s];
      if (p != 0.0) sum += p * old.at(names, cfg, x, s);
    }
    return sum;
  });
  d.erase(x);
}

// Maximizes V over decision D, recording the choice per information state.
DecisionRule maximize_decision(Diagram& d, const std::string& dec, const std::string& v) {
  const Node dn = d.node(dec);
  const Node vn = d.node(v);
  ValueLookup old{vn.parents, cards_of(d, vn.parents), &vn.rows};

  DecisionRule rule;
  rule.parents = dn.parents;
  const auto info_cards = cards_of(d, dn.parents);
  rule.choice.resize(product(info_cards));
  std::vector<std::size_t> cfg(info_cards.size());
  for (std::size_t r = 0; r < rule.choice.size(); ++r) {
    decode(r, info_cards, cfg);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t a = 0; a < dn.states.size(); ++a) {
      const double u = old.at(dn.parents, cfg, dec, a);
      if (u > best) {
        best = u;
        arg = a;
      }
    }
    rule.choice[r] = arg;
  }

  std::vector<std::string> new_parents;
  for (const auto& p : vn.parents) {
    if (p != dec) new_parents.push_back(p);
  }
  rebuild_value(d, v, new_parents, [&](const auto& names, const auto& c) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < dn.states.size(); ++a) best = std::max(best, old.at(names, c, dec, a));
    return best;
  });
  d.erase(dec);
  return rule;
}

DecisionRule default_rule(const Diagram& d, const Node& dec) {
  DecisionRule rule;
  rule.parents = dec.parents;
  rule.choice.assign(product(cards_of(d, dec.parents)), 0);
  return rule;
}

void check_decision_structure(const Diagram& d) {
  std::vector<std::string> decisions;
  for (const auto& id : graph_order(d)) {
    if (d.node(id).kind == NodeKind::decision) decisions.push_back(id);
  }
  for (std::size_t i = 0; i + 1 < decisions.size(); ++i) {
    if (!detail::reachable(d, decisions[i], decisions[i + 1])) {
      fail(ErrorCode::DecisionsUnordered,
           "no directed path from decision '" + decisions[i] + "' to '" + decisions[i + 1] + "'");
    }
  }
  for (std::size_t j = 0; j < decisions.size(); ++j) {
    const Node& later = d.node(decisions[j]);
    for (std::size_t i = 0; i < j; ++i) {
      const Node& earlier = d.node(decisions[i]);
      if (!contains(later.parents, earlier.id)) {
        fail(ErrorCode::NotNoForgetting, "decision '" + later.id + "' does not observe '" + earlier.id + "'");
      }
      for (const auto& p : earlier.parents) {
        if (!contains(later.parents, p)) {
          fail(ErrorCode::NotNoForgetting, "decision '" + later.id + "' forgets '" + p + "'");
        }
      }
    }
  }
}

}  // namespace

Diagram add_no_forgetting_arcs(const Diagram& d) {
  Diagram out = d;
  std::vector<std::string> decisions;
  for (const auto& id : graph_order(d)) {
    if (d.node(id).kind == NodeKind::decision) decisions.push_back(id);
  }
  for (std::size_t j = 0; j < decisions.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      std::vector<std::string> wanted = out.node(decisions[i]).parents;
      wanted.insert(wanted.begin(), decisions[i]);
      for (const auto& p : wanted) {
        auto& ps = out.node_mut(decisions[j]).parents;
        if (!contains(ps, p)) ps.push_back(p);
      }
    }
  }
  require_consistent(out);
  return out;
}

SolveResult evaluate_influence_diagram(const Diagram& input) {
  const auto values = nodes_of_kind(input, NodeKind::value);
  if (values.empty()) fail(ErrorCode::NoValueNode, "influence diagram has no value node");
  if (values.size() > 1) fail(ErrorCode::MultipleValueNodes, "exactly one value node is supported");
  require_consistent(input);
  check_decision_structure(input);

  const std::string v = values.front();
  Diagram d = input;
  SolveResult result;

  while (true) {
    // Barren chance and decision nodes.
    bool removed = true;
    while (removed) {
      removed = false;
      for (const auto& [id, n] : d.nodes()) {
        if (id == v || !d.children(id).empty()) continue;
        if (n.kind == NodeKind::decision) result.policy[id] = default_rule(d, n);
        const std::string doomed = id;
        d.erase(doomed);
        removed = true;
        break;
      }
    }
    const Node& vn = d.node(v);
    if (vn.parents.empty()) break;

    // Chance parents of V that no decision observes.
    std::optional<std::string> pick;
    double pick_cost = 0.0;
    for (const auto& p : vn.parents) {
      const Node& pn = d.node(p);
      if (!is_chance_like(pn.kind)) continue;
      bool observed = false;
      for (const auto& c : d.children(p)) observed = observed || d.node(c).kind == NodeKind::decision;
      if (observed) continue;
      const double cost = absorption_cost(d, p);
      if (!pick || cost < pick_cost || (cost == pick_cost && p < *pick)) {
        pick = p;
        pick_cost = cost;
      }
    }
    if (pick) {
      while (true) {
        auto kids = d.children(*pick);
        kids.erase(std::remove(kids.begin(), kids.end(), v), kids.end());
        if (kids.empty()) break;
        std::optional<std::string> first;
        for (const auto& n : graph_order(d)) {
          if (contains(kids, n)) {
            first = n;
            break;
          }
        }
        reverse_arc_in_place(d, *pick, *first);
      }
      absorb_into_value(d, *pick, v);
      continue;
    }

    std::optional<std::string> dec;
    for (const auto& p : vn.parents) {
      const Node& pn = d.node(p);
      if (pn.kind != NodeKind::decision) continue;
      auto kids = d.children(p);
      if (kids.size() != 1) continue;
      bool informed = std::all_of(vn.parents.begin(), vn.parents.end(),
                                  [&](const std::string& q) { return q == p || contains(pn.parents, q); });
      if (informed) {
        dec = p;
        break;
      }
    }
    if (!dec) fail(ErrorCode::DecisionsUnordered, "no removable node; the decision structure is not regular");
    result.policy[*dec] = maximize_decision(d, *dec, v);
  }

  result.expected_utility = d.node(v).rows.at(0).at(0);
  return result;
}

Beliefs reduction_query(const Diagram& input, std::string_view target_view, const Evidence& evidence) {
  const std::string target(target_view);
  Diagram d = input;
  // Restrict to the chance part: drop value nodes and decisions that no
  // chance node depends on.
  for (const auto& v : nodes_of_kind(d, NodeKind::value)) d.erase(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& dec : nodes_of_kind(d, NodeKind::decision)) {
      if (d.children(dec).empty()) {
        d.erase(dec);
        changed = true;
      }
    }
  }
  if (!is_belief_net(d)) fail(ErrorCode::NotBeliefNet, "chance nodes depend on decisions");
  if (!is_chance_like(d.node(target).kind)) fail(ErrorCode::NotChance, "target '" + target + "' is not a chance node");
  validate_evidence(d, evidence);

  std::set<std::string, std::less<>> keep{target};
  for (const auto& [id, s] : evidence) keep.insert(id);
  remove_all_barren_in_place(d, keep);

  while (true) {
    std::optional<std::string> pick;
    double pick_cost = 0.0;
    for (const auto& [id, n] : d.nodes()) {
      if (keep.count(id)) continue;
      const double cost = absorption_cost(d, id);
      if (!pick || cost < pick_cost) {
        pick = id;
        pick_cost = cost;
      }
    }
    if (!pick) break;
    absorb_chance_node_in_place(d, *pick);
  }

  while (auto child = first_child_in_order(d, target)) reverse_arc_in_place(d, target, *child);

  // The evidence nodes now form a closed sub-network: P(e) is the product of
  // their table entries at the observed configuration.
  double p_evidence = 1.0;
  auto state_of = [&](const std::string& id) { return evidence.at(id); };
  for (const auto& [id, s] : evidence) {
    const Node& n = d.node(id);
    std::vector<std::size_t> cfg;
    for (const auto& p : n.parents) cfg.push_back(state_of(p));
    p_evidence *= n.rows[row_index(d, n, cfg)][s];
  }
  if (!(p_evidence > 0.0)) throw ImpossibleEvidenceError("impossible evidence: P(evidence) = 0");

  Beliefs out;
  out.evidence_probability = p_evidence;
  const Node& t = d.node(target);
  if (auto it = evidence.find(target); it != evidence.end()) {
    std::vector<double> unit(t.states.size(), 0.0);
    unit[it->second] = 1.0;
    out.posteriors.emplace(target, std::move(unit));
  } else {
    std::vector<std::size_t> cfg;
    for (const auto& p : t.parents) cfg.push_back(state_of(p));
    out.posteriors.emplace(target, t.rows[row_index(d, t, cfg)]);
  }
  return out;
}

}  // namespace beliefcore
