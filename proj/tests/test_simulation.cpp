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

#include "doctest.h"

#include <cmath>

#include "beliefcore/fixtures.hpp"
#include "beliefcore/oracle.hpp"
#include "beliefcore/random_network.hpp"
#include "beliefcore/simulation.hpp"
#include "support/support.hpp"

using namespace beliefcore;

namespace {

double joint(const IndexedNet& net, const std::vector<std::size_t>& x) {
  double p = 1.0;
  for (std::size_t i = 0; i < net.size(); ++i) p *= net.prob(i, x);
  return p;
}

}  // namespace

TEST_SUITE("simulation") {
  TEST_CASE("chain estimate") {
    const auto b = gibbs_infer(fixture("FIX-CHAIN"), {{"B", 0}}, SimParams{20000, 1000, 7});
    CHECK(std::abs(b.at("A")[0] - 24.0 / 31.0) <= 0.05);
    CHECK(b.at("B") == std::vector<double>{1.0, 0.0});
    CHECK_FALSE(b.evidence_probability.has_value());
  }

  TEST_CASE("fixed seeds reproduce exactly") {
    const Diagram d = fixture("FIX-DIAMOND");
    const SimParams p{3000, 100, 11};
    CHECK(gibbs_infer(d, {{"D", 0}}, p).posteriors == gibbs_infer(d, {{"D", 0}}, p).posteriors);
    CHECK(gibbs_infer(d, {}, SimParams{3000, 100, 12}).posteriors != gibbs_infer(d, {}, p).posteriors);
  }

  TEST_CASE("rejections") {
    try {
      gibbs_infer(fixture("FIX-ZERO"), {});
      FAIL("zero entries accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotStrictlyPositive);
    }
    for (const SimParams bad : {SimParams{0, 0, 1}, SimParams{100, 100, 1}, SimParams{10, 20, 1}}) {
      try {
        gibbs_infer(fixture("FIX-CHAIN"), {}, bad);
        FAIL("bad parameters accepted");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadParams);
      }
    }
  }

  TEST_CASE("fully observed nets need no sampling") {
    const auto b = gibbs_infer(fixture("FIX-DIAMOND"), {{"A", 0}, {"B", 1}, {"C", 0}, {"D", 1}}, SimParams{2, 1, 1});
    CHECK(b.at("A") == std::vector<double>{1.0, 0.0});
    CHECK(b.at("B") == std::vector<double>{0.0, 1.0});
  }

  TEST_CASE("Markov blanket conditional equals the joint ratio") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      RandomNetworkParams p;
      p.node_count = 3;
      p.max_states = 3;
      p.arc_density = 0.8;
      p.seed = seed;
      const IndexedNet net = IndexedNet::from(random_network(p));
      Rng rng(seed);
      std::vector<std::size_t> x(3);
      for (std::size_t i = 0; i < 3; ++i) x[i] = rng.below(net.card[i]);
      for (std::size_t i = 0; i < 3; ++i) {
        const auto got = markov_blanket_conditional(net, i, x);
        auto y = x;
        double total = 0.0;
        std::vector<double> direct(net.card[i]);
        for (std::size_t s = 0; s < direct.size(); ++s) {
          y[i] = s;
          direct[s] = joint(net, y);
          total += direct[s];
        }
        for (std::size_t s = 0; s < direct.size(); ++s) CHECK(std::abs(got[s] - direct[s] / total) <= 1e-12);
      }
    }
  }

  TEST_CASE("converges on small positive nets") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      RandomNetworkParams p;
      p.node_count = 6;
      p.max_parents = 2;
      p.max_states = 3;
      p.seed = seed;
      const Diagram d = make_strictly_positive(random_network(p), 0.05);
      const Evidence ev{{graph_order(d).back(), 0}};
      const auto est = gibbs_infer(d, ev, SimParams{20000, 1000, seed});
      CHECK(testing::linf(est, joint_enumeration_oracle(d, ev)) <= 0.05);
    }
  }
}
