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

#include <algorithm>
#include <cmath>

#include "beliefcore/fixtures.hpp"
#include "beliefcore/oracle.hpp"
#include "beliefcore/random_network.hpp"
#include "beliefcore/transforms.hpp"

using namespace beliefcore;

namespace {

Node binary(std::string id, std::vector<std::string> parents, std::vector<double> p_true,
            NodeKind kind = NodeKind::chance) {
  Node n{std::move(id), kind, {"t", "f"}, std::move(parents), {}};
  for (double p : p_true) n.rows.push_back({p, 1.0 - p});
  return n;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<std::string> ids_of(const Diagram& d) {
  std::vector<std::string> out;
  for (const auto& [id, n] : d.nodes()) out.push_back(id);
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Inconsistent;
}

}  // namespace

TEST_SUITE("transforms") {
  TEST_CASE("reverse the chain arc") {
    const Diagram chain = fixture("FIX-CHAIN");
    const Diagram r = reverse_arc(chain, "A", "B");
    CHECK(r.node("B").parents.empty());
    CHECK(r.node("A").parents == std::vector<std::string>{"B"});
    CHECK(r.node("B").rows[0][0] == doctest::Approx(0.31).epsilon(1e-12));
    CHECK(r.node("A").rows[0][0] == doctest::Approx(24.0 / 31.0).epsilon(1e-12));
    CHECK(r.node("A").rows[1][0] == doctest::Approx(6.0 / 69.0).epsilon(1e-12));
    CHECK(max_diff(joint_marginal(chain, {"A", "B"}), joint_marginal(r, {"A", "B"})) <= 1e-12);
    CHECK(is_consistent(r).ok);
  }

  TEST_CASE("zero marginal gives a uniform reversed row") {
    const Diagram d = build_diagram({binary("A", {}, {1.0}), binary("B", {"A"}, {1.0, 0.3})});
    const Diagram r = reverse_arc(d, "A", "B");
    CHECK(r.node("B").rows[0][1] == 0.0);
    CHECK(r.node("A").rows[1] == std::vector<double>{0.5, 0.5});
    CHECK(is_consistent(r).ok);
  }

  TEST_CASE("reversal errors") {
    const Diagram diamond = fixture("FIX-DIAMOND");
    Diagram with_shortcut = diamond;
    {
      Node& d = with_shortcut.node_mut("D");
      d.parents.push_back("A");
      std::vector<std::vector<double>> rows;
      for (const auto& row : d.rows) {
        rows.push_back(row);
        rows.push_back(row);
      }
      d.rows = rows;
    }
    REQUIRE(is_consistent(with_shortcut).ok);
    CHECK(code_of([&] { reverse_arc(with_shortcut, "A", "D"); }) == ErrorCode::WouldCreateCycle);
    CHECK(code_of([&] { reverse_arc(diamond, "B", "C"); }) == ErrorCode::NoSuchArc);
    CHECK(code_of([] { reverse_arc(fixture("FIX-ID-INFO"), "W", "D"); }) == ErrorCode::NotChance);
  }

  TEST_CASE("double reversal restores the joint") {
    const Diagram d = fixture("FIX-DIAMOND");
    const Diagram back = reverse_arc(reverse_arc(d, "B", "D"), "D", "B");
    CHECK(max_diff(joint_marginal(d, {"A", "B", "C", "D"}), joint_marginal(back, {"A", "B", "C", "D"})) <= 1e-12);
  }

  TEST_CASE("barren removal") {
    const Diagram d = fixture("FIX-DIAMOND");
    const Diagram only_a = remove_all_barren(d, {"A"});
    CHECK(ids_of(only_a) == std::vector<std::string>{"A"});
    CHECK(only_a.node("A").rows[0][0] == 0.5);
    CHECK(remove_all_barren(d, {"A", "D"}) == d);
    CHECK(code_of([] { remove_barren_node(fixture("FIX-CHAIN"), "A"); }) == ErrorCode::NotBarren);
    CHECK(code_of([] { remove_barren_node(fixture("FIX-CHAIN"), "Q"); }) == ErrorCode::UnknownNode);
    CHECK(ids_of(remove_barren_node(fixture("FIX-CHAIN"), "B")) == std::vector<std::string>{"A"});
  }

  TEST_CASE("absorption") {
    const Diagram b = absorb_chance_node(fixture("FIX-CHAIN"), "A");
    CHECK(ids_of(b) == std::vector<std::string>{"B"});
    CHECK(b.node("B").rows[0][0] == doctest::Approx(0.31).epsilon(1e-12));

    const Diagram d = fixture("FIX-DIAMOND");
    const Diagram nob = absorb_chance_node(d, "B");
    auto ps = nob.node("D").parents;
    std::sort(ps.begin(), ps.end());
    CHECK(ps == std::vector<std::string>{"A", "C"});
    CHECK(max_diff(joint_marginal(d, {"A", "C", "D"}), joint_marginal(nob, {"A", "C", "D"})) <= 1e-12);
    CHECK(absorb_chance_node(d, "D") == remove_barren_node(d, "D"));
  }

  TEST_CASE("deterministic reduction") {
    const auto c = binary("C", {"B"}, {0.9, 0.2});
    const Diagram ident = build_diagram(
        {binary("A", {}, {0.3}), binary("B", {"A"}, {1.0, 0.0}, NodeKind::deterministic), c});
    const Diagram r = reduce_deterministic_node(ident, "B");
    CHECK(r.node("C").parents == std::vector<std::string>{"A"});
    CHECK(r.node("C").rows == c.rows);

    const Diagram neg = build_diagram(
        {binary("A", {}, {0.3}), binary("B", {"A"}, {0.0, 1.0}, NodeKind::deterministic), c});
    const Diagram rn = reduce_deterministic_node(neg, "B");
    CHECK(rn.node("C").rows == std::vector<std::vector<double>>{c.rows[1], c.rows[0]});
    CHECK(max_diff(joint_marginal(neg, {"A", "C"}), joint_marginal(rn, {"A", "C"})) <= 1e-12);
    CHECK(code_of([] { reduce_deterministic_node(fixture("FIX-CHAIN"), "B"); }) == ErrorCode::NotDeterministic);
  }

  TEST_CASE("in-place variants mutate the argument") {
    Diagram d = fixture("FIX-CHAIN");
    reverse_arc_in_place(d, "A", "B");
    CHECK(d == reverse_arc(fixture("FIX-CHAIN"), "A", "B"));
    absorb_chance_node_in_place(d, "A");
    CHECK(d.size() == 1);
  }

  TEST_CASE("seeded transforms preserve the joint and consistency") {
    int applied = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      Rng rng(seed * 17);
      RandomNetworkParams p;
      p.node_count = 2 + rng.below(7);
      p.max_parents = 1 + rng.below(3);
      p.max_states = 2 + rng.below(2);
      p.arc_density = 0.6;
      p.seed = seed;
      Diagram d = random_network(p);
      const auto order = graph_order(d);
      Diagram out;
      switch (seed % 4) {
        case 0: {
          std::vector<std::pair<std::string, std::string>> arcs;
          for (const auto& [id, n] : d.nodes()) {
            for (const auto& q : n.parents) arcs.emplace_back(q, id);
          }
          if (arcs.empty()) continue;
          const auto [from, to] = arcs[rng.below(arcs.size())];
          try {
            out = reverse_arc(d, from, to);
          } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::WouldCreateCycle);
            continue;
          }
          break;
        }
        case 1: {
          std::set<std::string, std::less<>> keep;
          for (const auto& id : order) {
            if (rng.bernoulli(0.3)) keep.insert(id);
          }
          if (keep.empty()) keep.insert(order.front());
          out = remove_all_barren(d, keep);
          break;
        }
        case 2:
          out = absorb_chance_node(d, order[rng.below(order.size())]);
          break;
        default: {
          // Make one node a deterministic function of its parents first.
          Node& n = d.node_mut(order[rng.below(order.size())]);
          for (auto& row : n.rows) {
            const std::size_t pick = rng.below(row.size());
            for (std::size_t s = 0; s < row.size(); ++s) row[s] = s == pick ? 1.0 : 0.0;
          }
          n.kind = NodeKind::deterministic;
          const std::string id = n.id;
          out = reduce_deterministic_node(d, id);
          break;
        }
      }
      ++applied;
      REQUIRE(is_consistent(out).ok);
      std::vector<std::string> survivors = ids_of(out);
      if (survivors.empty()) continue;
      CHECK(max_diff(joint_marginal(d, survivors), joint_marginal(out, survivors)) <= 1e-10);
    }
    CHECK(applied >= 150);
  }
}
