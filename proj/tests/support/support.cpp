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

#include "support/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beliefcore/oracle.hpp"

namespace beliefcore::testing {

double linf(const Beliefs& a, const Beliefs& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.posteriors.size() != b.posteriors.size()) return kInf;
  double worst = 0.0;
  for (const auto& [id, va] : a.posteriors) {
    auto it = b.posteriors.find(id);
    if (it == b.posteriors.end() || it->second.size() != va.size()) return kInf;
    for (std::size_t s = 0; s < va.size(); ++s) {
      const double diff = std::abs(va[s] - it->second[s]);
      if (!(diff <= worst)) worst = std::isnan(diff) ? kInf : diff;
    }
  }
  return worst;
}

bool all_finite(const Beliefs& b) {
  for (const auto& [id, v] : b.posteriors) {
    for (double x : v) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

Diagram random_belief_net(std::uint64_t seed) {
  Rng rng(seed * 7919 + 11);
  RandomNetworkParams p;
  p.node_count = 2 + rng.below(11);
  p.max_parents = 1 + rng.below(3);
  p.min_states = 2;
  p.max_states = 2 + rng.below(2);
  p.arc_density = 0.3 + 0.4 * rng.uniform();
  p.polytree_only = rng.bernoulli(0.5);
  p.seed = seed;
  return random_network(p);
}

Diagram random_loopy_net(std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(seed * 104729 + attempt);
    RandomNetworkParams p;
    p.node_count = 5 + rng.below(8);
    p.max_parents = 2 + rng.below(2);
    p.max_states = 2 + rng.below(2);
    p.arc_density = 0.5 + 0.3 * rng.uniform();
    p.seed = seed * 1000 + attempt;
    Diagram d = random_network(p);
    std::size_t arcs = 0;
    for (const auto& [id, n] : d.nodes()) arcs += n.parents.size();
    // A forest on n nodes has at most n - 1 arcs; more means a loop. Fewer
    // can still hide one, so test the skeleton properly.
    std::vector<std::size_t> root(d.size());
    std::vector<std::string> ids;
    for (const auto& [id, n] : d.nodes()) ids.push_back(id);
    for (std::size_t i = 0; i < root.size(); ++i) root[i] = i;
    auto index = [&](const std::string& id) {
      return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    bool loopy = false;
    for (const auto& [id, n] : d.nodes()) {
      for (const auto& q : n.parents) {
        const std::size_t a = find(index(q)), b = find(index(id));
        if (a == b) loopy = true;
        root[a] = b;
      }
    }
    if (loopy) return d;
  }
}

Evidence random_evidence(const Diagram& d, Rng& rng, std::size_t max_count) {
  Evidence ev;
  const auto order = graph_order(d);
  const std::size_t k = rng.below(max_count + 1);
  for (std::size_t j = 0; j < k; ++j) {
    const std::string& id = order[rng.below(order.size())];
    if (ev.count(id)) continue;
    // Drawn from the prior marginal: usually, not always, possible.
    const auto m = joint_marginal(d, {id});
    double u = rng.uniform();
    std::size_t s = 0;
    while (s + 1 < m.size() && u >= m[s]) u -= m[s++];
    ev[id] = s;
  }
  return ev;
}

namespace {

Node chance(std::string id, std::vector<std::string> parents, const Diagram& so_far, Rng& rng) {
  Node n{std::move(id), NodeKind::chance, {"t", "f"}, std::move(parents), {}};
  std::size_t rows = 1;
  for (const auto& p : n.parents) rows *= so_far.card(p);
  for (std::size_t r = 0; r < rows; ++r) n.rows.push_back(rng.simplex(2));
  return n;
}

std::vector<std::string> some_of(const std::vector<std::string>& pool, Rng& rng, double p, std::size_t cap) {
  std::vector<std::string> out;
  for (const auto& id : pool) {
    if (out.size() < cap && rng.bernoulli(p)) out.push_back(id);
  }
  return out;
}

}  // namespace

Diagram random_influence_diagram(std::uint64_t seed) {
  Rng rng(seed * 31337 + 5);
  Diagram d;
  d.set_name("id-" + std::to_string(seed));
  std::vector<std::string> pool;
  auto add = [&](Node n) {
    pool.push_back(n.id);
    d.insert(std::move(n));
  };
  add(chance("X0", {}, d, rng));
  add(chance("X1", some_of(pool, rng, 0.6, 1), d, rng));

  std::vector<std::string> d0_parents = some_of(pool, rng, 0.5, 1);
  add(Node{"D0", NodeKind::decision, {"a", "b"}, d0_parents, {}});
  add(chance("X2", some_of(pool, rng, 0.5, 2), d, rng));

  std::vector<std::string> decisions{"D0"};
  if (rng.bernoulli(0.5)) {
    std::vector<std::string> ps{"D0"};
    ps.insert(ps.end(), d0_parents.begin(), d0_parents.end());
    if (rng.bernoulli(0.6)) ps.push_back("X2");
    add(Node{"D1", NodeKind::decision, {"a", "b"}, ps, {}});
    decisions.push_back("D1");
  }
  add(chance("X3", some_of(pool, rng, 0.4, 2), d, rng));

  std::vector<std::string> vp = some_of(pool, rng, 0.5, 3);
  for (const auto& dec : decisions) {
    if (std::find(vp.begin(), vp.end(), dec) == vp.end() && rng.bernoulli(0.7)) vp.push_back(dec);
  }
  if (vp.empty()) vp.push_back(decisions.back());
  Node v{"V", NodeKind::value, {}, vp, {}};
  std::size_t rows = 1;
  for (const auto& p : vp) rows *= d.card(p);
  for (std::size_t r = 0; r < rows; ++r) v.rows.push_back({std::floor(rng.uniform() * 100.0)});
  d.insert(std::move(v));
  require_consistent(d);
  return d;
}

double brute_force_expected_utility(const Diagram& d) {
  const auto decisions = nodes_of_kind(d, NodeKind::decision);
  std::vector<std::size_t> rows, cards;
  for (const auto& id : decisions) {
    rows.push_back(d.row_count(d.node(id)));
    cards.push_back(d.card(id));
  }
  // Enumerate every deterministic rule for every decision jointly.
  std::vector<std::vector<std::size_t>> choice(decisions.size());
  for (std::size_t k = 0; k < decisions.size(); ++k) choice[k].assign(rows[k], 0);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    Policy policy;
    for (std::size_t k = 0; k < decisions.size(); ++k) {
      policy[decisions[k]] = DecisionRule{d.node(decisions[k]).parents, choice[k]};
    }
    best = std::max(best, oracle_expected_utility(d, policy));
    std::size_t k = 0;
    std::size_t r = 0;
    for (; k < decisions.size(); ++k) {
      for (r = 0; r < rows[k]; ++r) {
        if (++choice[k][r] < cards[k]) break;
        choice[k][r] = 0;
      }
      if (r < rows[k]) break;
    }
    if (k == decisions.size()) break;
  }
  return best;
}

Diagram three_cutset_fixture() {
  std::vector<Node> nodes;
  auto binary = [&](std::string id, std::vector<std::string> parents, std::vector<double> p_true) {
    Node n{std::move(id), NodeKind::chance, {"t", "f"}, std::move(parents), {}};
    for (double p : p_true) n.rows.push_back({p, 1.0 - p});
    nodes.push_back(std::move(n));
  };
  binary("A", {}, {0.0});
  binary("B", {}, {0.4});
  binary("C", {}, {0.7});
  const char* roots[] = {"A", "B", "C"};
  for (int k = 0; k < 3; ++k) {
    const std::string r = roots[k], s = std::to_string(k + 1);
    binary("P" + s, {r}, {0.8, 0.3});
    binary("Q" + s, {r}, {0.6, 0.1});
    binary("R" + s, {"P" + s, "Q" + s}, {0.9, 0.5, 0.4, 0.2});
  }
  return build_diagram(std::move(nodes), "three-cutset");
}

ImpossibleCase impossible_case(std::uint64_t seed) {
  Rng rng(seed * 6151 + 3);
  Diagram d = seed % 2 == 0 ? random_loopy_net(seed) : random_belief_net(seed);
  const auto order = graph_order(d);
  Evidence ev;
  if (seed % 3 == 0) {
    // A state that no row allows.
    const std::string id = order[rng.below(order.size())];
    Node& n = d.node_mut(id);
    for (auto& row : n.rows) {
      row[0] = 0.0;
      double s = 0.0;
      for (double v : row) s += v;
      if (s == 0.0) row[1] = 1.0;
      s = 0.0;
      for (double v : row) s += v;
      for (double& v : row) v /= s;
    }
    if (n.kind == NodeKind::deterministic) n.kind = NodeKind::chance;
    ev[id] = 0;
  } else {
    // A child state ruled out by one parent state, with both observed.
    std::vector<std::string> with_parents;
    for (const auto& id : order) {
      if (!d.node(id).parents.empty()) with_parents.push_back(id);
    }
    if (with_parents.empty()) {
      Node& n = d.node_mut(order.front());
      n.rows[0] = std::vector<double>(n.rows[0].size(), 0.0);
      n.rows[0][1] = 1.0;
      ev[n.id] = 0;
    } else {
      const std::string child = with_parents[rng.below(with_parents.size())];
      Node& n = d.node_mut(child);
      const std::string parent = n.parents[rng.below(n.parents.size())];
      const std::size_t j = static_cast<std::size_t>(std::find(n.parents.begin(), n.parents.end(), parent) -
                                                     n.parents.begin());
      std::size_t stride = 1;
      for (std::size_t q = j + 1; q < n.parents.size(); ++q) stride *= d.card(n.parents[q]);
      for (std::size_t r = 0; r < n.rows.size(); ++r) {
        if ((r / stride) % d.card(parent) != 0) continue;
        auto& row = n.rows[r];
        row.assign(row.size(), 0.0);
        row[1] = 1.0;
      }
      ev[parent] = 0;
      ev[child] = 0;
    }
  }
  require_consistent(d);
  return {std::move(d), std::move(ev)};
}

}  // namespace beliefcore::testing
