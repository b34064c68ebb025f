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

#include "beliefcore/editing.hpp"
#include "beliefcore/fixtures.hpp"
#include "beliefcore/io.hpp"
#include "beliefcore/oracle.hpp"
#include "beliefcore/random_network.hpp"
#include "support/support.hpp"

using namespace beliefcore;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Inconsistent;
}

Node prior(std::string id, std::vector<std::string> parents, std::size_t rows) {
  return Node{std::move(id), NodeKind::chance, {"t", "f"}, std::move(parents),
              std::vector<std::vector<double>>(rows, {0.5, 0.5})};
}

double p_true(const Diagram& d, const std::string& id) { return joint_enumeration_oracle(d, {}).at(id)[0]; }

}  // namespace

TEST_SUITE("editing") {
  TEST_CASE("add_node") {
    const Diagram chain = fixture("FIX-CHAIN");
    CHECK(add_node(chain, prior("C", {}, 1)).size() == 3);
    const Diagram child = add_node(chain, prior("C", {"B"}, 2));
    CHECK(is_consistent(child).ok);
    CHECK(graph_order(child).back() == "C");
    CHECK(code_of([&] { add_node(chain, prior("A", {}, 1)); }) == ErrorCode::DuplicateId);
  }

  TEST_CASE("delete_node") {
    const Diagram chain = fixture("FIX-CHAIN");
    CHECK(graph_order(delete_node(chain, "B", false)) == std::vector<std::string>{"A"});
    CHECK(code_of([&] { delete_node(chain, "A", false); }) == ErrorCode::HasChildren);
    const Diagram rest = delete_node(chain, "A", true);
    CHECK(rest.node("B").rows == std::vector<std::vector<double>>{{0.45, 0.55}});
    CHECK(code_of([&] { delete_node(chain, "Q", true); }) == ErrorCode::UnknownNode);
  }

  TEST_CASE("add_arc replicates rows and keeps the joint") {
    const Diagram chain = add_node(fixture("FIX-CHAIN"), prior("C", {}, 1));
    const Diagram more = add_arc(chain, "C", "B");
    const auto& b = more.node("B");
    CHECK(b.parents == std::vector<std::string>{"A", "C"});
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t c = 0; c < 2; ++c) CHECK(b.rows[a * 2 + c] == chain.node("B").rows[a]);
    }
    CHECK(p_true(more, "B") == doctest::Approx(0.31).epsilon(1e-12));
    CHECK(code_of([] { add_arc(fixture("FIX-CHAIN"), "B", "A"); }) == ErrorCode::CycleDetected);
    CHECK(code_of([] { add_arc(fixture("FIX-CHAIN"), "A", "B"); }) == ErrorCode::ArcExists);
  }

  TEST_CASE("delete_arc averages rows") {
    const Diagram chain = fixture("FIX-CHAIN");
    const Diagram cut = delete_arc(chain, "A", "B");
    CHECK(p_true(cut, "B") == doctest::Approx(0.45).epsilon(1e-12));
    const Diagram back = add_arc(cut, "A", "B");
    CHECK(back.node("B").rows[0] == back.node("B").rows[1]);
    CHECK(back.node("B").rows != chain.node("B").rows);
    CHECK(code_of([&] { delete_arc(chain, "B", "A"); }) == ErrorCode::NoSuchArc);
  }

  TEST_CASE("states") {
    const Diagram chain = fixture("FIX-CHAIN");
    const Diagram m = add_state(chain, "A", "m");
    CHECK(m.node("A").rows[0] == std::vector<double>{0.3, 0.7, 0.0});
    CHECK(m.node("B").rows[2] == std::vector<double>{0.5, 0.5});
    CHECK(is_consistent(m).ok);
    CHECK(delete_state(m, "A", "m") == chain);
    CHECK(save(delete_state(m, "A", "m")) == save(chain));
    CHECK(code_of([&] { add_state(chain, "A", "t"); }) == ErrorCode::DuplicateState);
    CHECK(code_of([&] { delete_state(chain, "A", "x"); }) == ErrorCode::UnknownState);
    const Diagram single = delete_state(chain, "A", "f");
    CHECK(single.node("A").rows[0] == std::vector<double>{1.0});
    CHECK(code_of([&] { delete_state(single, "A", "t"); }) == ErrorCode::LastState);
  }

  TEST_CASE("add_state keeps the other marginals") {
    const Diagram d = fixture("FIX-DIAMOND");
    const Diagram m = add_state(d, "B", "maybe");
    const auto before = joint_enumeration_oracle(d, {});
    const auto after = joint_enumeration_oracle(m, {});
    for (const char* id : {"A", "C", "D"}) {
      for (std::size_t s = 0; s < 2; ++s) CHECK(after.at(id)[s] == doctest::Approx(before.at(id)[s]).epsilon(1e-12));
    }
  }

  TEST_CASE("edit_distribution") {
    const Diagram chain = fixture("FIX-CHAIN");
    CHECK(p_true(edit_distribution(chain, "A", {{0.5, 0.5}}), "B") == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(code_of([&] { edit_distribution(chain, "A", {{0.6, 0.6}}); }) == ErrorCode::RowSumViolation);
    CHECK(code_of([&] { edit_distribution(chain, "A", {{0.5, 0.5}, {0.5, 0.5}}); }) == ErrorCode::ShapeMismatch);
    const Diagram id = edit_distribution(fixture("FIX-ID"), "V", {{-5.0}, {1.0}, {2.0}, {300.0}});
    CHECK(id.node("V").rows[0][0] == -5.0);
  }

  TEST_CASE("copies are independent") {
    const Diagram chain = fixture("FIX-CHAIN");
    const std::string canonical = save(chain);
    Diagram copy = copy_diagram(chain);
    CHECK(save(copy) == canonical);
    copy = edit_distribution(copy, "A", {{0.5, 0.5}});
    CHECK(save(chain) == canonical);
    Diagram tagged = chain;
    tagged.set_ext("A", "layout.x", "10");
    CHECK(copy_diagram(tagged).ext() == tagged.ext());
  }

  TEST_CASE("random edit sequences stay consistent") {
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
      Rng rng(seed);
      RandomNetworkParams p;
      p.node_count = 2 + rng.below(5);
      p.max_states = 3;
      p.seed = seed;
      Diagram d = random_network(p);
      for (int step = 0; step < 6; ++step) {
        const auto ids = graph_order(d);
        const std::string a = ids[rng.below(ids.size())];
        const std::string b = ids[rng.below(ids.size())];
        try {
          switch (rng.below(6)) {
            case 0: d = add_arc(d, a, b); break;
            case 1: d = delete_arc(d, a, b); break;
            case 2: d = add_state(d, a, "n" + std::to_string(step)); break;
            case 3: d = delete_state(d, a, d.node(a).states.back()); break;
            case 4: d = add_node(d, prior("Z" + std::to_string(step), {a}, d.card(a))); break;
            default: d = delete_node(d, a, true); break;
          }
        } catch (const Error&) {
          // Rejected edits leave the diagram untouched.
        }
        REQUIRE(is_consistent(d).ok);
        if (d.size() == 0) break;
      }
    }
  }

  TEST_CASE("add_arc never changes posteriors") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      Rng rng(seed + 1000);
      RandomNetworkParams p;
      p.node_count = 2 + rng.below(7);
      p.seed = seed;
      const Diagram d = random_network(p);
      const auto ids = graph_order(d);
      const std::string a = ids[rng.below(ids.size())], b = ids[rng.below(ids.size())];
      Diagram more;
      try {
        more = add_arc(d, a, b);
      } catch (const Error&) {
        continue;
      }
      const Evidence ev = testing::random_evidence(d, rng, 2);
      try {
        CHECK(testing::linf(joint_enumeration_oracle(d, ev), joint_enumeration_oracle(more, ev)) <= 1e-12);
      } catch (const ImpossibleEvidenceError&) {
        CHECK_THROWS_AS(joint_enumeration_oracle(more, ev), ImpossibleEvidenceError);
      }
    }
  }
}
