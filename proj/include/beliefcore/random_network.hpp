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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "beliefcore/model.hpp"

namespace beliefcore {

// Seeded generator with platform-stable conversions. std::mt19937_64 output
// is fixed by the standard; the distribution helpers below avoid the
// implementation-defined std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n).
  std::size_t below(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform draw from the probability simplex of dimension k.
  std::vector<double> simplex(std::size_t k);

 private:
  std::mt19937_64 engine_;
};

struct RandomNetworkParams {
  std::size_t node_count = 8;
  std::size_t max_parents = 2;
  std::size_t min_states = 2;
  std::size_t max_states = 2;
  // Probability that each candidate predecessor becomes a parent.
  double arc_density = 0.5;
  bool polytree_only = false;
  std::uint64_t seed = 1;
};

// Nodes N0..N(k-1) (zero-padded) are generated in index order; parents come
// only from predecessors, so the result is acyclic by construction.
Diagram random_network(const RandomNetworkParams& params);

}  // namespace beliefcore
