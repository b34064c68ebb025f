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

#include "beliefcore/oracle.hpp"

#include <unordered_map>

namespace beliefcore {

namespace {

// Flat view over every non-value node; decisions are weighted by the policy.
struct JointSpace {
  std::vector<std::string> ids;
  std::vector<std::size_t> card;
  std::vector<std::vector<std::size_t>> parents;
  std::vector<const Node*> nodes;
  std::unordered_map<std::string, std::size_t> pos;

  explicit JointSpace(const Diagram& d) {
    double states = 1.0;
    for (const auto& id : graph_order(d)) {
      const Node& n = d.node(id);
      if (n.kind == NodeKind::value) continue;
      pos[id] = ids.size();
      ids.push_back(id);
      card.push_back(n.states.size());
      nodes.push_back(&n);
      states *= static_cast<double>(n.states.size());
    }
    if (states > kOracleStateLimit) {
      fail(ErrorCode::TooLarge, "joint state space of " + std::to_string(states) + " exceeds the oracle limit");
    }
    for (const Node* n : nodes) {
      auto& ps = parents.emplace_back();
      for (const auto& p : n->parents) ps.push_back(pos.at(p));
    }
  }

  std::size_t row(std::size_t i, const std::vector<std::size_t>& x) const {
    std::size_t r = 0;
    for (std::size_t p : parents[i]) r = r * card[p] + x[p];
    return r;
  }

  // Calls fn(x, weight) for every joint state x.
  template <typename Fn>
  void for_each(const Policy* policy, Fn&& fn) const {
    std::vector<std::size_t> x(ids.size(), 0);
    std::vector<const DecisionRule*> rules(ids.size(), nullptr);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (nodes[i]->kind != NodeKind::decision) continue;
      if (policy == nullptr) fail(ErrorCode::NotBeliefNet, "decision node '" + ids[i] + "' needs a policy");
      auto it = policy->find(ids[i]);
      if (it == policy->end()) fail(ErrorCode::BadParams, "policy has no rule for '" + ids[i] + "'");
      if (it->second.parents != nodes[i]->parents) {
        fail(ErrorCode::BadParams, "policy rule for '" + ids[i] + "' has the wrong information parents");
      }
      rules[i] = &it->second;
    }
    while (true) {
      double w = 1.0;
      for (std::size_t i = 0; i < ids.size() && w != 0.0; ++i) {
        const std::size_t r = row(i, x);
        if (rules[i] != nullptr) {
          w = rules[i]->choice.at(r) == x[i] ? w : 0.0;
        } else {
          w *= nodes[i]->rows[r][x[i]];
        }
      }
      fn(x, w);
      std::size_t k = ids.size();
      while (k > 0) {
        --k;
        if (++x[k] < card[k]) break;
        x[k] = 0;
        if (k == 0) return;
      }
      if (ids.empty()) return;
    }
  }
};

bool matches(const std::vector<std::size_t>& x,
             const std::vector<std::pair<std::size_t, std::size_t>>& ev) {
  for (const auto& [i, s] : ev) {
    if (x[i] != s) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> evidence_positions(const JointSpace& js,
                                                                   const Evidence& evidence) {
  std::vector<std::pair<std::size_t, std::size_t>> ev;
  for (const auto& [id, s] : evidence) {
    auto it = js.pos.find(id);
    if (it == js.pos.end()) fail(ErrorCode::UnknownNode, "no node '" + id + "'");
    ev.emplace_back(it->second, s);
  }
  return ev;
}

}  // namespace

Beliefs joint_enumeration_oracle(const Diagram& d, const Evidence& evidence) {
  if (!is_belief_net(d)) fail(ErrorCode::NotBeliefNet, "oracle needs a belief network");
  validate_evidence(d, evidence);
  JointSpace js(d);
  const auto ev = evidence_positions(js, evidence);

  std::vector<std::vector<double>> acc(js.ids.size());
  for (std::size_t i = 0; i < js.ids.size(); ++i) acc[i].assign(js.card[i], 0.0);
  double total = 0.0;
  js.for_each(nullptr, [&](const std::vector<std::size_t>& x, double w) {
    if (w == 0.0 || !matches(x, ev)) return;
    total += w;
    for (std::size_t i = 0; i < x.size(); ++i) acc[i][x[i]] += w;
  });
  if (!(total > 0.0)) throw ImpossibleEvidenceError("impossible evidence: P(evidence) = 0");

  Beliefs out;
  out.evidence_probability = total;
  for (std::size_t i = 0; i < js.ids.size(); ++i) {
    for (double& v : acc[i]) v /= total;
    out.posteriors.emplace(js.ids[i], std::move(acc[i]));
  }
  return out;
}

std::vector<double> joint_marginal(const Diagram& d, const std::vector<std::string>& nodes,
                                   const Evidence& evidence) {
  if (!is_belief_net(d)) fail(ErrorCode::NotBeliefNet, "oracle needs a belief network");
  JointSpace js(d);
  const auto ev = evidence_positions(js, evidence);
  std::vector<std::size_t> idx;
  std::size_t size = 1;
  for (const auto& id : nodes) {
    auto it = js.pos.find(id);
    if (it == js.pos.end()) fail(ErrorCode::UnknownNode, "no node '" + id + "'");
    idx.push_back(it->second);
    size *= js.card[it->second];
  }
  std::vector<double> out(size, 0.0);
  js.for_each(nullptr, [&](const std::vector<std::size_t>& x, double w) {
    if (w == 0.0 || !matches(x, ev)) return;
    std::size_t k = 0;
    for (std::size_t i : idx) k = k * js.card[i] + x[i];
    out[k] += w;
  });
  return out;
}

double oracle_expected_utility(const Diagram& d, const Policy& policy) {
  auto v = value_node(d);
  if (!v) fail(ErrorCode::NoValueNode, "diagram has no value node");
  if (nodes_of_kind(d, NodeKind::value).size() > 1) {
    fail(ErrorCode::MultipleValueNodes, "diagram has more than one value node");
  }
  const Node& value = d.node(*v);
  JointSpace js(d);
  std::vector<std::size_t> vparents;
  for (const auto& p : value.parents) vparents.push_back(js.pos.at(p));

  double eu = 0.0;
  js.for_each(&policy, [&](const std::vector<std::size_t>& x, double w) {
    if (w == 0.0) return;
    std::size_t r = 0;
    for (std::size_t p : vparents) r = r * js.card[p] + x[p];
    eu += w * value.rows[r][0];
  });
  return eu;
}

}  // namespace beliefcore
