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

#include "beliefcore/polytree.hpp"

#include <algorithm>
#include <deque>

namespace beliefcore {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

class Propagator {
 public:
  Propagator(const IndexedNet& net, std::span<const std::size_t> evidence, StepCounter* counter)
      : net_(net), evidence_(evidence), counter_(counter), pi_in_(net.size()), lambda_in_(net.size()) {
    for (std::size_t x = 0; x < net.size(); ++x) {
      pi_in_[x].assign(net.parents[x].size(), std::vector<double>());
      lambda_in_[x].assign(net.children[x].size(), std::vector<double>());
    }
  }

  // Message from a to its skeleton neighbour b.
  void send(std::size_t a, std::size_t b) {
    const auto& kids = net_.children[a];
    if (auto it = std::find(kids.begin(), kids.end(), b); it != kids.end()) {
      send_pi(a, static_cast<std::size_t>(it - kids.begin()));
    } else {
      send_lambda(a, position(net_.parents[a], b));
    }
  }

  // lambda_x(x): evidence indicator times every child's message, optionally
  // leaving one child out.
  std::vector<double> lambda(std::size_t x, std::size_t skip_child = kNone) const {
    std::vector<double> out(net_.card[x], 1.0);
    if (evidence_[x] != kUnobserved) {
      for (std::size_t s = 0; s < out.size(); ++s) out[s] = s == evidence_[x] ? 1.0 : 0.0;
    }
    for (std::size_t j = 0; j < lambda_in_[x].size(); ++j) {
      if (j == skip_child) continue;
      const auto& m = lambda_in_[x][j];
      for (std::size_t s = 0; s < out.size(); ++s) out[s] *= m[s];
    }
    return out;
  }

  // pi_x(x) = sum over parent configurations of P(x | u) times incoming pi.
  std::vector<double> pi(std::size_t x) const {
    const std::size_t k = net_.card[x];
    const auto& ps = net_.parents[x];
    const auto& table = net_.cpt[x];
    const std::size_t rows = table.size() / k;
    count(counter_, table.size());
    std::vector<double> out(k, 0.0);
    std::vector<std::size_t> cfg(ps.size());
    for (std::size_t r = 0; r < rows; ++r) {
      decode(x, r, cfg);
      double w = 1.0;
      for (std::size_t j = 0; j < ps.size() && w != 0.0; ++j) w *= pi_in_[x][j][cfg[j]];
      if (w == 0.0) continue;
      for (std::size_t s = 0; s < k; ++s) out[s] += w * table[r * k + s];
    }
    return out;
  }

 private:
  static std::size_t position(const std::vector<std::size_t>& v, std::size_t x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
  }

  void decode(std::size_t x, std::size_t row, std::vector<std::size_t>& cfg) const {
    const auto& ps = net_.parents[x];
    for (std::size_t j = ps.size(); j > 0; --j) {
      cfg[j - 1] = row % net_.card[ps[j - 1]];
      row /= net_.card[ps[j - 1]];
    }
  }

  // pi message from u to its j-th child.
  void send_pi(std::size_t u, std::size_t j) {
    std::vector<double> msg = pi(u);
    const auto lam = lambda(u, j);
    for (std::size_t s = 0; s < msg.size(); ++s) msg[s] *= lam[s];
    const std::size_t x = net_.children[u][j];
    pi_in_[x][position(net_.parents[x], u)] = std::move(msg);
  }

  // lambda message from x to its k-th parent.
  void send_lambda(std::size_t x, std::size_t k) {
    const std::size_t kx = net_.card[x];
    const auto& ps = net_.parents[x];
    const auto& table = net_.cpt[x];
    const std::size_t rows = table.size() / kx;
    count(counter_, table.size());
    const auto lam = lambda(x);
    std::vector<double> msg(net_.card[ps[k]], 0.0);
    std::vector<std::size_t> cfg(ps.size());
    for (std::size_t r = 0; r < rows; ++r) {
      decode(x, r, cfg);
      double w = 1.0;
      for (std::size_t j = 0; j < ps.size() && w != 0.0; ++j) {
        if (j != k) w *= pi_in_[x][j][cfg[j]];
      }
      if (w == 0.0) continue;
      double inner = 0.0;
      for (std::size_t s = 0; s < kx; ++s) inner += table[r * kx + s] * lam[s];
      msg[cfg[k]] += w * inner;
    }
    const std::size_t u = ps[k];
    lambda_in_[u][position(net_.children[u], x)] = std::move(msg);
  }

  const IndexedNet& net_;
  std::span<const std::size_t> evidence_;
  StepCounter* counter_;
  // pi_in_[x][j]: message from x's j-th parent; lambda_in_[x][j]: from its j-th child.
  std::vector<std::vector<std::vector<double>>> pi_in_;
  std::vector<std::vector<std::vector<double>>> lambda_in_;
};

}  // namespace

bool is_polytree(const Diagram& d) { return IndexedNet::from(d).is_polytree(); }

JointBeliefs propagate_polytree(const IndexedNet& net, std::span<const std::size_t> evidence, StepCounter* counter) {
  if (!net.is_polytree()) fail(ErrorCode::NotPolytree, "the network is multiply connected");
  const std::size_t n = net.size();
  Propagator prop(net, evidence, counter);

  std::vector<std::size_t> component(n, kNone);
  std::vector<std::size_t> up(n, kNone);
  std::vector<std::vector<std::size_t>> orders;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != kNone) continue;
    const std::size_t c = orders.size();
    auto& order = orders.emplace_back();
    std::deque<std::size_t> queue{root};
    component[root] = c;
    while (!queue.empty()) {
      std::size_t a = queue.front();
      queue.pop_front();
      order.push_back(a);
      auto visit = [&](std::size_t b) {
        if (component[b] != kNone) return;
        component[b] = c;
        up[b] = a;
        queue.push_back(b);
      };
      for (std::size_t p : net.parents[a]) visit(p);
      for (std::size_t ch : net.children[a]) visit(ch);
    }
  }

  for (const auto& order : orders) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (up[*it] != kNone) prop.send(*it, up[*it]);
    }
    for (std::size_t a : order) {
      for (std::size_t p : net.parents[a]) {
        if (up[p] == a) prop.send(a, p);
      }
      for (std::size_t ch : net.children[a]) {
        if (up[ch] == a) prop.send(a, ch);
      }
    }
  }

  JointBeliefs out;
  out.joint.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto b = prop.pi(x);
    const auto lam = prop.lambda(x);
    for (std::size_t s = 0; s < b.size(); ++s) b[s] *= lam[s];
    out.joint[x] = std::move(b);
  }

  // Scale each component by the evidence mass of the others so every vector
  // is on the scale of the full joint.
  const std::size_t c = orders.size();
  std::vector<double> mass(c, 0.0);
  for (std::size_t k = 0; k < c; ++k) {
    for (double v : out.joint[orders[k].front()]) mass[k] += v;
  }
  std::vector<double> prefix(c + 1, 1.0), suffix(c + 1, 1.0);
  for (std::size_t k = 0; k < c; ++k) prefix[k + 1] = prefix[k] * mass[k];
  for (std::size_t k = c; k > 0; --k) suffix[k - 1] = suffix[k] * mass[k - 1];
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t k = component[x];
    const double others = prefix[k] * suffix[k + 1];
    if (others != 1.0) {
      for (double& v : out.joint[x]) v *= others;
    }
  }
  out.evidence_probability = prefix[c];
  return out;
}

Beliefs polytree_infer(const Diagram& d, const Evidence& evidence, StepCounter* counter) {
  validate_evidence(d, evidence);
  const IndexedNet net = IndexedNet::from(d);
  const auto ev = net.evidence_vector(evidence);
  auto result = propagate_polytree(net, ev, counter);
  if (!(result.evidence_probability > 0.0)) {
    throw ImpossibleEvidenceError("impossible evidence: P(evidence) = 0");
  }
  for (const auto& v : result.joint) count(counter, 2 * v.size());
  return make_beliefs(net, std::move(result.joint), result.evidence_probability);
}

}  // namespace beliefcore
