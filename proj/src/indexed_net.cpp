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

#include "beliefcore/indexed_net.hpp"

#include <numeric>
#include <unordered_map>

namespace beliefcore {

IndexedNet IndexedNet::from(const Diagram& d) {
  if (!is_belief_net(d)) fail(ErrorCode::NotBeliefNet, "diagram '" + d.name() + "' is not a belief network");
  IndexedNet net;
  net.ids = graph_order(d);
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < net.ids.size(); ++i) pos[net.ids[i]] = i;

  const std::size_t n = net.ids.size();
  net.card.resize(n);
  net.parents.resize(n);
  net.children.resize(n);
  net.cpt.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Node& node = d.node(net.ids[i]);
    net.card[i] = node.states.size();
    for (const auto& p : node.parents) {
      net.parents[i].push_back(pos.at(p));
      net.children[pos.at(p)].push_back(i);
    }
    auto& flat = net.cpt[i];
    flat.reserve(node.rows.size() * net.card[i]);
    for (const auto& row : node.rows) flat.insert(flat.end(), row.begin(), row.end());
  }
  return net;
}

std::size_t IndexedNet::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return i;
  }
  fail(ErrorCode::UnknownNode, "no node '" + std::string(id) + "'");
}

std::size_t IndexedNet::row_of(std::size_t i, std::span<const std::size_t> assignment) const {
  std::size_t row = 0;
  for (std::size_t p : parents[i]) row = row * card[p] + assignment[p];
  return row;
}

std::vector<std::size_t> IndexedNet::evidence_vector(const Evidence& evidence) const {
  std::vector<std::size_t> ev(size(), kUnobserved);
  for (const auto& [id, state] : evidence) {
    std::size_t i = index_of(id);
    if (state >= card[i]) {
      fail(ErrorCode::BadEvidence, "state index " + std::to_string(state) + " out of range for '" + id + "'");
    }
    ev[i] = state;
  }
  return ev;
}

bool IndexedNet::is_polytree() const {
  std::vector<std::size_t> root(size());
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t c = 0; c < size(); ++c) {
    for (std::size_t p : parents[c]) {
      std::size_t a = find(p), b = find(c);
      if (a == b) return false;
      root[a] = b;
    }
  }
  return true;
}

Beliefs make_beliefs(const IndexedNet& net, std::vector<std::vector<double>> unnormalized,
                     std::optional<double> evidence_probability) {
  Beliefs out;
  out.evidence_probability = evidence_probability;
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto& v = unnormalized[i];
    double z = 0.0;
    for (double x : v) z += x;
    if (!(z > 0.0)) {
      throw ImpossibleEvidenceError("impossible evidence: zero normalizer at node '" + net.ids[i] + "'");
    }
    for (double& x : v) x /= z;
    out.posteriors.emplace(net.ids[i], std::move(v));
  }
  return out;
}

}  // namespace beliefcore
