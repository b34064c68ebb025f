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
#include <numeric>

#include "beliefcore/conditioning.hpp"
#include "beliefcore/fixtures.hpp"
#include "beliefcore/oracle.hpp"
#include "beliefcore/polytree.hpp"
#include "support/support.hpp"

using namespace beliefcore;

namespace {

// The skeleton without the cutset nodes has no cycle.
bool remainder_is_forest(const Diagram& d, const Cutset& c) {
  const IndexedNet net = IndexedNet::from(d);
  std::vector<bool> cut(net.size(), false);
  for (const auto& id : c.nodes) cut[net.index_of(id)] = true;
  std::vector<std::size_t> root(net.size());
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t x = 0; x < net.size(); ++x) {
    for (std::size_t p : net.parents[x]) {
      if (cut[x] || cut[p]) continue;
      const std::size_t a = find(p), b = find(x);
      if (a == b) return false;
      root[a] = b;
    }
  }
  return true;
}

Diagram two_diamonds() {
  std::vector<Node> nodes;
  for (const std::string s : {"1", "2"}) {
    nodes.push_back({"A" + s, NodeKind::chance, {"t", "f"}, {}, {{0.4, 0.6}}});
    nodes.push_back({"B" + s, NodeKind::chance, {"t", "f"}, {"A" + s}, {{0.3, 0.7}, {0.9, 0.1}}});
    nodes.push_back({"C" + s, NodeKind::chance, {"t", "f"}, {"A" + s}, {{0.5, 0.5}, {0.2, 0.8}}});
    nodes.push_back({"D" + s, NodeKind::chance, {"t", "f"}, {"B" + s, "C" + s},
                     {{0.1, 0.9}, {0.6, 0.4}, {0.7, 0.3}, {0.95, 0.05}}});
  }
  return build_diagram(nodes);
}

}  // namespace

TEST_SUITE("conditioning") {
  TEST_CASE("cutsets of the fixtures") {
    CHECK(find_loop_cutset(fixture("FIX-DIAMOND")).nodes == std::vector<std::string>{"A"});
    CHECK(find_loop_cutset(fixture("FIX-CHAIN")).nodes.empty());
    CHECK(find_loop_cutset(two_diamonds()).nodes.size() == 2);
    CHECK(find_loop_cutset(testing::three_cutset_fixture()).nodes == std::vector<std::string>{"A", "B", "C"});
  }

  TEST_CASE("cutset remainder is always a forest") {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
      const Diagram d = testing::random_loopy_net(seed);
      const Cutset c = find_loop_cutset(d);
      CHECK_FALSE(c.nodes.empty());
      CHECK(remainder_is_forest(d, c));
      const IndexedNet net = IndexedNet::from(d);
      std::vector<std::size_t> idx;
      for (const auto& id : c.nodes) idx.push_back(net.index_of(id));
      CHECK(std::is_sorted(idx.begin(), idx.end()));
      CHECK(clamp(net, idx, std::vector<std::size_t>(idx.size(), 0)).is_polytree());
    }
  }

  TEST_CASE("diamond values") {
    const Diagram d = fixture("FIX-DIAMOND");
    const auto w = conditioning_infer_weighted(d, {{"D", 0}});
    CHECK(std::abs(w.beliefs.at("A")[0] - 0.78091) < 1e-5);
    CHECK(w.beliefs.at("A")[0] == doctest::Approx(0.4416 / 0.5655).epsilon(1e-12));
    CHECK(w.log == CutsetCaseLog{2, 0, 2});
    const auto j = conditioning_infer_joint(d, {{"D", 0}});
    CHECK(testing::linf(w.beliefs, j.beliefs) <= 1e-12);
    CHECK(conditioning_infer_joint(d, {}).beliefs.at("D")[0] == doctest::Approx(0.5655).epsilon(1e-12));
  }

  TEST_CASE("a zero prior skips half the cases") {
    const Diagram d = testing::three_cutset_fixture();
    const auto r = conditioning_infer_weighted(d, {{"R3", 0}});
    CHECK(r.log == CutsetCaseLog{8, 4, 4});
    const auto debug = conditioning_infer_weighted(d, {{"R3", 0}}, ConditioningOptions{true});
    CHECK(debug.log.skipped_cases == 4);
    CHECK(debug.max_skipped_weight < 1e-15);
    CHECK(testing::linf(r.beliefs, debug.beliefs) <= 1e-12);
    CHECK(testing::linf(r.beliefs, joint_enumeration_oracle(d, {{"R3", 0}})) <= 1e-12);
  }

  TEST_CASE("mixing weights sum to one") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const Diagram d = testing::random_loopy_net(seed);
      Rng rng(seed);
      const Evidence ev = testing::random_evidence(d, rng, 3);
      try {
        const auto r = conditioning_infer_weighted(d, ev);
        CHECK(std::abs(std::accumulate(r.mixing_weights.begin(), r.mixing_weights.end(), 0.0) - 1.0) <= 1e-12);
        CHECK(r.log.total_cases == r.log.skipped_cases + r.log.evaluated_cases);
      } catch (const ImpossibleEvidenceError&) {
      }
    }
  }

  TEST_CASE("impossible evidence") {
    // The zero-entry pair embedded in a loop.
    Diagram d = fixture("FIX-DIAMOND");
    d.node_mut("B").rows = {{1.0, 0.0}, {0.4, 0.6}};
    try {
      conditioning_infer_weighted(d, {{"A", 0}, {"B", 1}});
      FAIL("impossible evidence accepted");
    } catch (const ImpossibleEvidenceError& e) {
      REQUIRE(e.case_log().has_value());
      CHECK(e.case_log()->skipped_cases == e.case_log()->total_cases);
    }
    CHECK_THROWS_AS(conditioning_infer_joint(d, {{"A", 0}, {"B", 1}}), ImpossibleEvidenceError);
  }

  TEST_CASE("both variants match the oracle on loopy nets") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const Diagram d = testing::random_loopy_net(seed);
      Rng rng(seed + 77);
      const Evidence ev = testing::random_evidence(d, rng, 3);
      try {
        const Beliefs expect = joint_enumeration_oracle(d, ev);
        CHECK(testing::linf(expect, conditioning_infer_weighted(d, ev).beliefs) <= 1e-9);
        CHECK(testing::linf(expect, conditioning_infer_joint(d, ev).beliefs) <= 1e-9);
      } catch (const ImpossibleEvidenceError&) {
        CHECK_THROWS_AS(conditioning_infer_weighted(d, ev), ImpossibleEvidenceError);
        CHECK_THROWS_AS(conditioning_infer_joint(d, ev), ImpossibleEvidenceError);
      }
    }
  }
}
