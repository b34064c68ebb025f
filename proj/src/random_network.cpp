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

#include "beliefcore/random_network.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace beliefcore {

std::size_t Rng::below(std::size_t n) {
  if (n <= 1) return 0;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

std::vector<double> Rng::simplex(std::size_t k) {
  std::vector<double> cuts(k + 1);
  cuts[0] = 0.0;
  cuts[k] = 1.0;
  for (std::size_t i = 1; i < k; ++i) cuts[i] = uniform();
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  std::vector<double> p(k);
  for (std::size_t i = 0; i < k; ++i) p[i] = cuts[i + 1] - cuts[i];
  // Put any rounding residue on the largest entry so the row sums to 1.
  double sum = std::accumulate(p.begin(), p.end(), 0.0);
  auto big = std::max_element(p.begin(), p.end());
  *big += 1.0 - sum;
  return p;
}

namespace {

std::string node_name(std::size_t i, std::size_t count) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  return "N" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

Diagram random_network(const RandomNetworkParams& p) {
  if (p.node_count < 1) fail(ErrorCode::BadParams, "node_count must be at least 1");
  if (p.min_states < 1 || p.max_states < p.min_states) fail(ErrorCode::BadParams, "bad states range");
  if (!(p.arc_density >= 0.0 && p.arc_density <= 1.0)) fail(ErrorCode::BadParams, "arc_density must lie in [0, 1]");

  Rng rng(p.seed);
  std::vector<std::size_t> component(p.node_count);
  std::iota(component.begin(), component.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (component[x] != x) x = component[x] = component[component[x]];
    return x;
  };

  std::vector<Node> nodes;
  nodes.reserve(p.node_count);
  for (std::size_t i = 0; i < p.node_count; ++i) {
    Node n;
    n.id = node_name(i, p.node_count);
    const std::size_t k = p.min_states + rng.below(p.max_states - p.min_states + 1);
    for (std::size_t s = 0; s < k; ++s) n.states.push_back("s" + std::to_string(s));

    std::vector<std::size_t> candidates(i);
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    for (std::size_t j = candidates.size(); j > 1; --j) std::swap(candidates[j - 1], candidates[rng.below(j)]);
    std::vector<std::size_t> chosen;
    for (std::size_t c : candidates) {
      if (chosen.size() >= p.max_parents) break;
      if (!rng.bernoulli(p.arc_density)) continue;
      if (p.polytree_only) {
        std::size_t a = find(c), b = find(i);
        if (a == b) continue;
        component[a] = b;
      }
      chosen.push_back(c);
    }
    std::sort(chosen.begin(), chosen.end());

    std::size_t rows = 1;
    for (std::size_t c : chosen) {
      n.parents.push_back(nodes[c].id);
      rows *= nodes[c].states.size();
    }
    for (std::size_t r = 0; r < rows; ++r) n.rows.push_back(rng.simplex(k));
    nodes.push_back(std::move(n));
  }
  return build_diagram(std::move(nodes), "random-" + std::to_string(p.seed));
}

}  // namespace beliefcore
