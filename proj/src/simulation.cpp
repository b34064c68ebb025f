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

#include "beliefcore/simulation.hpp"

#include "beliefcore/random_network.hpp"

namespace beliefcore {

std::vector<double> markov_blanket_conditional(const IndexedNet& net, std::size_t i,
                                               std::span<const std::size_t> state) {
  std::vector<std::size_t> x(state.begin(), state.end());
  std::vector<double> out(net.card[i]);
  double total = 0.0;
  for (std::size_t s = 0; s < out.size(); ++s) {
    x[i] = s;
    double p = net.prob(i, x);
    for (std::size_t c : net.children[i]) p *= net.prob(c, x);
    out[s] = p;
    total += p;
  }
  for (double& p : out) p /= total;
  return out;
}

Beliefs gibbs_infer(const Diagram& d, const Evidence& evidence, const SimParams& params) {
  if (params.sweeps == 0 || params.burn_in >= params.sweeps) {
    fail(ErrorCode::BadParams, "need sweeps > burn_in >= 0");
  }
  validate_evidence(d, evidence);
  const IndexedNet net = IndexedNet::from(d);
  if (!is_strictly_positive(d)) {
    fail(ErrorCode::NotStrictlyPositive, "gibbs sampling needs a strictly positive network");
  }
  const auto ev = net.evidence_vector(evidence);
  const std::size_t n = net.size();

  Rng rng(params.seed);
  std::vector<std::size_t> x(n);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (ev[i] != kUnobserved) {
      x[i] = ev[i];
    } else {
      x[i] = rng.below(net.card[i]);
      free.push_back(i);
    }
  }

  std::vector<std::vector<std::size_t>> counts(n);
  for (std::size_t i = 0; i < n; ++i) counts[i].assign(net.card[i], 0);
  const std::size_t kept = params.sweeps - params.burn_in;
  if (!free.empty()) {
    for (std::size_t sweep = 0; sweep < params.sweeps; ++sweep) {
      for (std::size_t i : free) {
        const auto p = markov_blanket_conditional(net, i, x);
        const double u = rng.uniform();
        double cumulative = 0.0;
        std::size_t pick = p.size() - 1;
        for (std::size_t s = 0; s + 1 < p.size(); ++s) {
          cumulative += p[s];
          if (u < cumulative) {
            pick = s;
            break;
          }
        }
        x[i] = pick;
      }
      if (sweep >= params.burn_in) {
        for (std::size_t i : free) ++counts[i][x[i]];
      }
    }
  }

  Beliefs out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> b(net.card[i], 0.0);
    if (ev[i] != kUnobserved) {
      b[ev[i]] = 1.0;
    } else {
      for (std::size_t s = 0; s < b.size(); ++s) b[s] = static_cast<double>(counts[i][s]) / static_cast<double>(kept);
    }
    out.posteriors.emplace(net.ids[i], std::move(b));
  }
  return out;
}

}  // namespace beliefcore
