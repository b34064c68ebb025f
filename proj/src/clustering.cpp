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

#include "beliefcore/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>

#include "beliefcore/polytree.hpp"

namespace beliefcore {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::atomic<std::uint64_t> g_potential_allocations{0};

std::vector<double> new_potential(std::size_t size, double fill) {
  g_potential_allocations.fetch_add(1, std::memory_order_relaxed);
  return std::vector<double>(size, fill);
}

std::vector<double> copy_potential(const std::vector<double>& p) {
  g_potential_allocations.fetch_add(1, std::memory_order_relaxed);
  return p;
}

UndirectedGraph::Edge make_edge(const std::string& a, const std::string& b) {
  return a < b ? UndirectedGraph::Edge{a, b} : UndirectedGraph::Edge{b, a};
}

// Maps every cell of a table over `members` (row-major) to its index in a
// table over `subset`, which may list the members in any order.
std::vector<std::uint32_t> project_map(const std::vector<std::size_t>& members, const std::vector<std::size_t>& cards,
                                       const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> weight(members.size(), 0);
  std::size_t stride = 1;
  for (std::size_t j = subset.size(); j > 0; --j) {
    const std::size_t k =
        static_cast<std::size_t>(std::find(members.begin(), members.end(), subset[j - 1]) - members.begin());
    weight[k] = stride;
    stride *= cards[k];
  }
  std::size_t total = 1;
  for (std::size_t c : cards) total *= c;
  std::vector<std::uint32_t> out(total);
  std::vector<std::size_t> digit(members.size(), 0);
  std::size_t index = 0;
  for (std::size_t cell = 0; cell < total; ++cell) {
    out[cell] = static_cast<std::uint32_t>(index);
    for (std::size_t k = members.size(); k > 0; --k) {
      if (++digit[k - 1] < cards[k - 1]) {
        index += weight[k - 1];
        break;
      }
      digit[k - 1] = 0;
      index -= (cards[k - 1] - 1) * weight[k - 1];
    }
  }
  return out;
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

std::vector<std::size_t> cards_of(const IndexedNet& net, const std::vector<std::size_t>& nodes) {
  std::vector<std::size_t> out;
  out.reserve(nodes.size());
  for (std::size_t i : nodes) out.push_back(net.card[i]);
  return out;
}

// Stride and card of net node i inside universe u.
std::pair<std::size_t, std::size_t> locate(const IndexedNet& net, const Universe& u, std::size_t i) {
  std::size_t stride = 1;
  for (std::size_t k = u.members.size(); k > 0; --k) {
    if (u.members[k - 1] == i) return {stride, net.card[i]};
    stride *= net.card[u.members[k - 1]];
  }
  return {0, 0};
}

}  // namespace

void UndirectedGraph::add_node(const std::string& id, std::size_t card) { nodes_.emplace(id, card); }

void UndirectedGraph::add_edge(const std::string& a, const std::string& b) {
  if (a == b) return;
  nodes_.emplace(a, 2);
  nodes_.emplace(b, 2);
  edges_.insert(make_edge(a, b));
}

bool UndirectedGraph::has_edge(const std::string& a, const std::string& b) const {
  return edges_.count(make_edge(a, b)) > 0;
}

std::set<std::string> UndirectedGraph::neighbors(const std::string& id) const {
  std::set<std::string> out;
  for (const auto& [a, b] : edges_) {
    if (a == id) out.insert(b);
    if (b == id) out.insert(a);
  }
  return out;
}

UndirectedGraph moralize(const Diagram& d) {
  if (!is_belief_net(d)) fail(ErrorCode::NotBeliefNet, "diagram '" + d.name() + "' is not a belief network");
  UndirectedGraph g;
  for (const auto& [id, n] : d.nodes()) g.add_node(id, n.states.size());
  for (const auto& [id, n] : d.nodes()) {
    for (std::size_t a = 0; a < n.parents.size(); ++a) {
      g.add_edge(n.parents[a], id);
      for (std::size_t b = a + 1; b < n.parents.size(); ++b) g.add_edge(n.parents[a], n.parents[b]);
    }
  }
  return g;
}

namespace {

using Adjacency = std::map<std::string, std::set<std::string>, std::less<>>;

Adjacency adjacency(const UndirectedGraph& g) {
  Adjacency adj;
  for (const auto& [id, card] : g.nodes()) adj[id];
  for (const auto& [a, b] : g.edges()) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  return adj;
}

// Eliminates along `order`, recording fill edges.
std::vector<UndirectedGraph::Edge> eliminate(Adjacency adj, const std::vector<std::string>& order) {
  std::vector<UndirectedGraph::Edge> fill;
  for (const auto& v : order) {
    const std::vector<std::string> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i]].insert(nb[j]).second) {
          adj[nb[j]].insert(nb[i]);
          fill.push_back(make_edge(nb[i], nb[j]));
        }
      }
    }
    for (const auto& u : nb) adj[u].erase(v);
    adj.erase(v);
  }
  return fill;
}

std::vector<std::string> mcs_order(const Adjacency& adj) {
  std::map<std::string, std::size_t, std::less<>> weight;
  for (const auto& [id, nb] : adj) weight[id] = 0;
  std::vector<std::string> visit;
  while (!weight.empty()) {
    auto best = weight.begin();
    for (auto it = weight.begin(); it != weight.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const std::string v = best->first;
    weight.erase(best);
    visit.push_back(v);
    for (const auto& u : adj.at(v)) {
      if (auto it = weight.find(u); it != weight.end()) ++it->second;
    }
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

std::vector<std::string> min_fill_order(const UndirectedGraph& g, Adjacency adj) {
  std::vector<std::string> order;
  while (!adj.empty()) {
    const std::string* best = nullptr;
    std::size_t best_fill = 0;
    double best_space = 0.0;
    for (const auto& [v, nb] : adj) {
      std::size_t fill = 0;
      for (auto i = nb.begin(); i != nb.end(); ++i) {
        for (auto j = std::next(i); j != nb.end(); ++j) {
          if (!adj.at(*i).count(*j)) ++fill;
        }
      }
      double space = static_cast<double>(g.nodes().at(v));
      for (const auto& u : nb) space *= static_cast<double>(g.nodes().at(u));
      if (best == nullptr || fill < best_fill || (fill == best_fill && space < best_space)) {
        best = &v;
        best_fill = fill;
        best_space = space;
      }
    }
    const std::string v = *best;
    order.push_back(v);
    const std::vector<std::string> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    }
    for (const auto& u : nb) adj[u].erase(v);
    adj.erase(v);
  }
  return order;
}

}  // namespace

Triangulation triangulate(const UndirectedGraph& g, TriangulationMethod method) {
  const Adjacency adj = adjacency(g);
  Triangulation t;
  t.elimination_order = method == TriangulationMethod::mcs ? mcs_order(adj) : min_fill_order(g, adj);
  t.fill = eliminate(adj, t.elimination_order);
  return t;
}

UndirectedGraph with_fill(const UndirectedGraph& g, const Triangulation& t) {
  UndirectedGraph out = g;
  for (const auto& [a, b] : t.fill) out.add_edge(a, b);
  return out;
}

bool is_chordal(const UndirectedGraph& g) {
  // A graph is chordal iff the reverse of an MCS visit order is a perfect
  // elimination order.
  const Adjacency adj = adjacency(g);
  return eliminate(adj, mcs_order(adj)).empty();
}

double max_clique_states(const Diagram& d, TriangulationMethod method) {
  const UndirectedGraph moral = moralize(d);
  const Triangulation t = triangulate(moral, method);
  const UndirectedGraph filled = with_fill(moral, t);
  std::map<std::string, std::size_t, std::less<>> position;
  for (std::size_t k = 0; k < t.elimination_order.size(); ++k) position[t.elimination_order[k]] = k;
  // Each node and its later neighbors form the clique created by its elimination.
  double best = 0.0;
  for (const auto& v : t.elimination_order) {
    double states = static_cast<double>(filled.nodes().at(v));
    for (const auto& w : filled.neighbors(v)) {
      if (position.at(w) > position.at(v)) states *= static_cast<double>(filled.nodes().at(w));
    }
    best = std::max(best, states);
  }
  return best;
}

std::uint64_t potential_allocations() { return g_potential_allocations.load(std::memory_order_relaxed); }

std::vector<std::pair<std::size_t, std::size_t>> JoinTree::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < universes_.size(); ++c) {
    if (universes_[c].parent != kNone) out.emplace_back(universes_[c].parent, c);
  }
  return out;
}

std::size_t JoinTree::max_universe_size() const {
  std::size_t m = 0;
  for (const auto& u : universes_) m = std::max(m, u.size);
  return m;
}

namespace {

// Collect and distribute over `pots`/`seps`; each pass over a universe adds
// S(U). Returns the total mass seen at the root (product over components).
double propagate(const JoinTree& jt, std::vector<std::vector<double>>& pots, std::vector<std::vector<double>>& seps,
                 StepCounter* counter) {
  const auto& us = jt.universes();
  std::vector<std::vector<double>> pending(us.size());
  double mass = 1.0;

  const auto& order = jt.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t u = *it;
    auto& pot = pots[u];
    const Universe& U = us[u];
    // Absorb the children's fresh sepset marginals.
    for (std::size_t cell = 0; cell < pot.size(); ++cell) {
      double f = 1.0;
      for (std::size_t c : U.children) {
        const std::uint32_t s = jt.down_map(c)[cell];
        f *= ratio(pending[c][s], seps[c][s]);
      }
      pot[cell] *= f;
    }
    count(counter, U.size);
    for (std::size_t c : U.children) seps[c] = std::move(pending[c]);

    if (U.parent != kNone) {
      auto msg = std::vector<double>(seps[u].size(), 0.0);
      const auto& up = jt.up_map(u);
      for (std::size_t cell = 0; cell < pot.size(); ++cell) msg[up[cell]] += pot[cell];
      pending[u] = std::move(msg);
    } else {
      double m = 0.0;
      for (double v : pot) m += v;
      mass *= m;
    }
    count(counter, U.size);
  }

  for (std::size_t u : order) {
    auto& pot = pots[u];
    const Universe& U = us[u];
    if (U.parent != kNone) {
      const auto& up = jt.up_map(u);
      for (std::size_t cell = 0; cell < pot.size(); ++cell) pot[cell] *= ratio(pending[u][up[cell]], seps[u][up[cell]]);
      seps[u] = std::move(pending[u]);
      count(counter, U.size);
    }
    for (std::size_t c : U.children) {
      auto msg = std::vector<double>(seps[c].size(), 0.0);
      const auto& down = jt.down_map(c);
      for (std::size_t cell = 0; cell < pot.size(); ++cell) msg[down[cell]] += pot[cell];
      pending[c] = std::move(msg);
      count(counter, U.size);
    }
  }
  return mass;
}

// Marginal of node i from its home universe: one fused sum pass over the
// universe, then a divide pass over the node's states.
std::vector<double> home_marginal(const JoinTree& jt, const std::vector<std::vector<double>>& pots, std::size_t i,
                                  StepCounter* counter) {
  const std::size_t h = jt.member_home(i);
  const Universe& U = jt.universes()[h];
  const auto [stride, card] = locate(jt.net(), U, i);
  std::vector<double> out(card, 0.0);
  double total = 0.0;
  const auto& pot = pots[h];
  for (std::size_t cell = 0; cell < pot.size(); ++cell) {
    out[(cell / stride) % card] += pot[cell];
    total += pot[cell];
  }
  count(counter, U.size);
  if (!(total > 0.0)) {
    throw ImpossibleEvidenceError("impossible evidence: zero normalizer at node '" + jt.net().ids[i] + "'");
  }
  for (double& v : out) v /= total;
  count(counter, card);
  return out;
}

}  // namespace

JoinTree build_join_tree(const Diagram& d, TriangulationMethod method, StepCounter* counter) {
  JoinTree jt;
  jt.net_ = IndexedNet::from(d);
  const IndexedNet& net = jt.net_;
  const std::size_t n = net.size();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i) index[net.ids[i]] = i;

  const UndirectedGraph g = moralize(d);
  const Triangulation t = triangulate(g, method);
  Adjacency adj = adjacency(with_fill(g, t));

  // Cliques along the elimination order; keep the maximal ones.
  std::vector<std::vector<std::size_t>> cliques;
  for (const auto& v : t.elimination_order) {
    std::vector<std::size_t> c{index.at(v)};
    for (const auto& u : adj[v]) c.push_back(index.at(u));
    std::sort(c.begin(), c.end());
    cliques.push_back(std::move(c));
    for (const auto& u : adj[v]) adj[u].erase(v);
    adj.erase(v);
  }
  std::vector<std::vector<std::size_t>> maximal;
  for (std::size_t a = 0; a < cliques.size(); ++a) {
    bool contained = false;
    for (std::size_t b = 0; b < cliques.size() && !contained; ++b) {
      if (a == b || cliques[b].size() < cliques[a].size()) continue;
      if (cliques[b].size() == cliques[a].size() && (cliques[a] != cliques[b] || b > a)) continue;
      contained = std::includes(cliques[b].begin(), cliques[b].end(), cliques[a].begin(), cliques[a].end());
    }
    if (!contained) maximal.push_back(cliques[a]);
  }
  std::sort(maximal.begin(), maximal.end());
  const std::size_t m = maximal.size();
  for (const auto& c : maximal) {
    double states = 1.0;
    for (std::size_t i : c) states *= static_cast<double>(net.card[i]);
    if (states > kMaxUniverseStates) {
      fail(ErrorCode::TooLarge, "a clique of " + std::to_string(static_cast<long double>(states)) +
                                    " states exceeds the join tree limit");
    }
  }

  // Maximum-weight spanning tree; zero-weight edges join separate components.
  struct Candidate {
    std::size_t weight, a, b;
  };
  std::vector<Candidate> candidates;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(maximal[a].begin(), maximal[a].end(), maximal[b].begin(), maximal[b].end(),
                            std::back_inserter(common));
      candidates.push_back({common.size(), a, b});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.weight > y.weight; });
  std::vector<std::size_t> root(m);
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<std::set<std::size_t>> tree(m);
  for (const auto& c : candidates) {
    const std::size_t ra = find(c.a), rb = find(c.b);
    if (ra == rb) continue;
    root[ra] = rb;
    tree[c.a].insert(c.b);
    tree[c.b].insert(c.a);
  }

  jt.universes_.resize(m);
  for (std::size_t u = 0; u < m; ++u) {
    jt.universes_[u].members = maximal[u];
    for (std::size_t i : maximal[u]) jt.universes_[u].size *= net.card[i];
  }
  if (m > 0) {
    std::vector<bool> seen(m, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      jt.order_.push_back(u);
      for (std::size_t v : tree[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        jt.universes_[v].parent = u;
        jt.universes_[u].children.push_back(v);
        queue.push_back(v);
      }
    }
  }
  jt.up_maps_.resize(m);
  jt.down_maps_.resize(m);
  jt.sepsets_.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    Universe& U = jt.universes_[c];
    if (U.parent == kNone) continue;
    const Universe& P = jt.universes_[U.parent];
    std::set_intersection(U.members.begin(), U.members.end(), P.members.begin(), P.members.end(),
                          std::back_inserter(U.sepset));
    jt.up_maps_[c] = project_map(U.members, cards_of(net, U.members), U.sepset);
    jt.down_maps_[c] = project_map(P.members, cards_of(net, P.members), U.sepset);
    std::size_t s = 1;
    for (std::size_t i : U.sepset) s *= net.card[i];
    jt.sepsets_[c] = std::vector<double>(s, 1.0);
  }

  // Homes: smallest universe holding the node, or its whole family.
  jt.member_home_.assign(n, kNone);
  jt.family_home_.assign(n, kNone);
  std::vector<std::vector<std::size_t>> assigned(m);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> family = net.parents[i];
    family.push_back(i);
    std::sort(family.begin(), family.end());
    for (std::size_t u = 0; u < m; ++u) {
      const auto& mem = jt.universes_[u].members;
      const std::size_t s = jt.universes_[u].size;
      if (std::binary_search(mem.begin(), mem.end(), i) &&
          (jt.member_home_[i] == kNone || s < jt.universes_[jt.member_home_[i]].size)) {
        jt.member_home_[i] = u;
      }
      if (std::includes(mem.begin(), mem.end(), family.begin(), family.end()) &&
          (jt.family_home_[i] == kNone || s < jt.universes_[jt.family_home_[i]].size)) {
        jt.family_home_[i] = u;
      }
    }
    assigned[jt.family_home_[i]].push_back(i);
  }

  // Setup: one pass per universe multiplying in its assigned tables.
  StepCounter init;
  jt.potentials_.resize(m);
  for (std::size_t u = 0; u < m; ++u) {
    const Universe& U = jt.universes_[u];
    const auto cards = cards_of(net, U.members);
    std::vector<std::vector<std::uint32_t>> maps;
    for (std::size_t i : assigned[u]) {
      std::vector<std::size_t> family = net.parents[i];
      family.push_back(i);
      maps.push_back(project_map(U.members, cards, family));
    }
    auto pot = new_potential(U.size, 1.0);
    for (std::size_t cell = 0; cell < U.size; ++cell) {
      for (std::size_t k = 0; k < assigned[u].size(); ++k) pot[cell] *= net.cpt[assigned[u][k]][maps[k][cell]];
    }
    init.add(U.size);
    jt.potentials_[u] = std::move(pot);
  }
  propagate(jt, jt.potentials_, jt.sepsets_, &init);
  jt.instrumented_init_ = init.total();
  count(counter, init.total());
  return jt;
}

Beliefs jt_infer_jensen(const JoinTree& jt, const Evidence& evidence, StepCounter* counter,
                        std::uint64_t* evidence_cost) {
  const IndexedNet& net = jt.net();
  const auto ev = net.evidence_vector(evidence);
  std::vector<std::vector<double>> pots;
  pots.reserve(jt.potentials().size());
  for (const auto& p : jt.potentials()) pots.push_back(copy_potential(p));
  auto seps = jt.sepset_potentials();

  std::uint64_t declared = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (ev[i] == kUnobserved) continue;
    const std::size_t h = jt.member_home(i);
    const auto [stride, card] = locate(net, jt.universes()[h], i);
    auto& pot = pots[h];
    for (std::size_t cell = 0; cell < pot.size(); ++cell) {
      if ((cell / stride) % card != ev[i]) pot[cell] = 0.0;
    }
    declared += pot.size();
  }
  count(counter, declared);
  if (evidence_cost != nullptr) *evidence_cost = declared;

  const double mass = propagate(jt, pots, seps, counter);
  Beliefs out;
  for (std::size_t i = 0; i < net.size(); ++i) out.posteriors.emplace(net.ids[i], home_marginal(jt, pots, i, counter));
  out.evidence_probability = mass;
  return out;
}

Beliefs jt_infer_meta(const JoinTree& jt, const Evidence& evidence, StepCounter* counter) {
  const IndexedNet& net = jt.net();
  const auto ev = net.evidence_vector(evidence);
  const auto& us = jt.universes();
  const auto& order = jt.order();
  std::vector<std::size_t> pos(us.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;

  IndexedNet meta;
  const std::size_t m = us.size();
  meta.ids.resize(m);
  meta.card.resize(m);
  meta.parents.resize(m);
  meta.children.resize(m);
  meta.cpt.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t u = order[k];
    const Universe& U = us[u];
    meta.ids[k] = "U" + std::to_string(u);
    meta.card[k] = U.size;
    const auto& pot = jt.potentials()[u];

    // Evidence on nodes homed here multiplies the matching columns.
    std::vector<double> mask(U.size, 1.0);
    for (std::size_t i = 0; i < net.size(); ++i) {
      if (ev[i] == kUnobserved || jt.member_home(i) != u) continue;
      const auto [stride, card] = locate(net, U, i);
      for (std::size_t cell = 0; cell < U.size; ++cell) {
        if ((cell / stride) % card != ev[i]) mask[cell] = 0.0;
      }
    }

    if (U.parent == kNone) {
      auto table = new_potential(U.size, 0.0);
      for (std::size_t cell = 0; cell < U.size; ++cell) table[cell] = pot[cell] * mask[cell];
      count(counter, U.size);
      meta.cpt[k] = std::move(table);
      continue;
    }
    const std::size_t p = pos[U.parent];
    meta.parents[k].push_back(p);
    meta.children[p].push_back(k);
    const auto& down = jt.down_map(u);
    const auto& up = jt.up_map(u);
    const auto& sep = jt.sepset_potentials()[u];
    const std::size_t rows = us[U.parent].size;
    auto table = new_potential(rows * U.size, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::uint32_t s = down[r];
      if (sep[s] == 0.0) continue;  // zero parent marginal: the row stays all zero
      double* row = table.data() + r * U.size;
      for (std::size_t cell = 0; cell < U.size; ++cell) {
        if (up[cell] == s) row[cell] = pot[cell] / sep[s] * mask[cell];
      }
    }
    count(counter, rows * U.size);
    meta.cpt[k] = std::move(table);
  }

  const std::vector<std::size_t> none(m, kUnobserved);
  JointBeliefs jb = propagate_polytree(meta, none, counter);
  std::vector<std::vector<double>> pots(m);
  for (std::size_t k = 0; k < m; ++k) pots[order[k]] = std::move(jb.joint[k]);

  Beliefs out;
  for (std::size_t i = 0; i < net.size(); ++i) out.posteriors.emplace(net.ids[i], home_marginal(jt, pots, i, counter));
  out.evidence_probability = jb.evidence_probability;
  return out;
}

}  // namespace beliefcore
