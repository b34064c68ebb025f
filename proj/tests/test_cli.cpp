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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "beliefcore/io.hpp"
#include "beliefcore/polytree.hpp"
#include "cli.hpp"
#include "support/support.hpp"

using namespace beliefcore;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

// "ID: p1 p2" lines into a map.
std::map<std::string, std::vector<double>> parse_posteriors(const std::string& text) {
  std::map<std::string, std::vector<double>> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    const auto colon = l.find(':');
    std::istringstream values(l.substr(colon + 1));
    for (double v; values >> v;) out[l.substr(0, colon)].push_back(v);
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("beliefcore_cli_" + name);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("documented examples") {
    auto q = run_cli({"query", "fix-chain", "--evidence", "B=t", "--algorithm", "polytree"});
    CHECK(q.code == 0);
    CHECK(has_line(q.out, "A: 0.774193548387 0.225806451613"));

    auto z = run_cli({"query", "fix-zero", "--evidence", "A=t,B=f", "--algorithm", "clustering-jensen"});
    CHECK(z.code == 3);
    CHECK(z.out.empty());
    CHECK(z.err.find("impossible evidence") != std::string::npos);

    auto s = run_cli({"solve", "fix-id"});
    CHECK(s.code == 0);
    CHECK(has_line(s.out, "D: take"));
    CHECK(has_line(s.out, "EU: 76"));
  }

  TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({"query", "fix-chain", "--algorithm", "magic"}).code == 1);
    CHECK(run_cli({"query", "no-such-net"}).code == 1);
    CHECK(run_cli({"query", "fix-chain", "--evidence", "B=maybe"}).code == 1);

    const auto bad = temp_file("bad.bn");
    std::ofstream(bad) << "%beliefcore 1\ndiagram bad\nnode A kind=chance states=t,f\ncpt A | : 0.5 0.6\n";
    const auto v = run_cli({"validate", bad.string()});
    CHECK(v.code == 2);
    CHECK(v.out.find("A") != std::string::npos);
    CHECK(run_cli({"query", bad.string()}).code == 2);

    std::ofstream(bad) << "%beliefcore 1\ndiagram bad\nnode A kind=chance states=t,f\ncpt A | : 0.5\n";
    CHECK(run_cli({"query", bad.string()}).code == 2);
    std::filesystem::remove(bad);

    // Over ten million joint states is beyond the oracle.
    const auto big = temp_file("big.bn");
    CHECK(run_cli({"gen", "--nodes", "24", "--states", "2", "--seed", "3", "--out", big.string()}).code == 0);
    const auto o = run_cli({"query", big.string(), "--algorithm", "oracle"});
    CHECK(o.code == 4);
    CHECK(!o.err.empty());
    std::filesystem::remove(big);
  }

  TEST_CASE("help goes to the output stream") {
    const auto h = run_cli({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("query") != std::string::npos);
  }

  TEST_CASE("exact algorithms print identical posteriors") {
    const std::vector<std::string> exact = {"polytree",          "conditioning-weighted", "conditioning-joint",
                                            "clustering-jensen", "clustering-meta",       "reduction",
                                            "oracle"};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Diagram d = testing::random_belief_net(seed);
      const auto path = temp_file("net" + std::to_string(seed) + ".bn");
      save_file(d, path.string());
      Rng rng(seed);
      std::string ev;
      for (const auto& [id, s] : testing::random_evidence(d, rng, 2)) {
        ev += (ev.empty() ? "" : ",") + id + "=" + d.node(id).states[s];
      }
      const auto reference = run_cli({"query", path.string(), "--evidence", ev, "--algorithm", "oracle"});
      if (reference.code != 0) continue;
      const auto want = parse_posteriors(reference.out);
      for (const auto& algo : exact) {
        if (algo == "polytree" && !is_polytree(d)) continue;
        const auto got = run_cli({"query", path.string(), "--evidence", ev, "--algorithm", algo});
        REQUIRE(got.code == 0);
        const auto have = parse_posteriors(got.out);
        REQUIRE(have.size() == want.size());
        for (const auto& [id, values] : want) {
          REQUIRE(have.at(id).size() == values.size());
          for (std::size_t i = 0; i < values.size(); ++i) CHECK(std::abs(have.at(id)[i] - values[i]) < 5e-10);
        }
      }
      std::filesystem::remove(path);
    }
  }

  TEST_CASE("output is deterministic") {
    const std::vector<std::vector<std::string>> commands = {
        {"query", "fix-diamond", "--evidence", "D=t", "--algorithm", "gibbs", "--seed", "4"},
        {"query", "fix-diamond", "--evidence", "D=t", "--stats", "--algorithm", "conditioning-joint"},
        {"compile", "fix-diamond"},
        {"describe", "fix-id-info"},
        {"gen", "--nodes", "9", "--max-parents", "3", "--states", "3", "--seed", "11"},
        {"transform", "fix-diamond", "--reverse-arc", "A", "B"},
    };
    for (const auto& c : commands) {
      const auto a = run_cli(c);
      const auto b = run_cli(c);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
      CHECK(!a.out.empty());
    }
  }

  TEST_CASE("auto, target and stats") {
    const auto a = run_cli({"query", "fix-diamond", "--evidence", "D=t", "--stats"});
    CHECK(a.code == 0);
    CHECK(has_line(a.out, "algorithm: clustering-jensen"));
    CHECK(has_line(a.out, "P(evidence): 0.5655"));
    const auto t = run_cli({"query", "fix-chain", "--evidence", "B=t", "--target", "A", "--algorithm", "reduction"});
    CHECK(t.out == "A: 0.774193548387 0.225806451613\n");
    CHECK(has_line(run_cli({"query", "fix-chain", "--stats"}).out, "algorithm: polytree"));
  }

  TEST_CASE("gen, transform and reload") {
    const auto net = temp_file("gen.bn");
    const auto out = temp_file("gen_t.bn");
    REQUIRE(run_cli({"gen", "--nodes", "7", "--max-parents", "2", "--states", "3", "--seed", "5", "--out",
                     net.string()})
                .code == 0);
    CHECK(run_cli({"validate", net.string()}).code == 0);
    CHECK(run_cli({"transform", net.string(), "--absorb", "N0", "--out", out.string()}).code == 0);
    CHECK(load_file(out.string()).size() == 6);
    CHECK(run_cli({"transform", net.string(), "--remove-barren", "--keep", "N0", "--out", out.string()}).code == 0);
    CHECK(load_file(out.string()).has("N0"));
    CHECK(run_cli({"transform", net.string(), "--absorb", "N0", "--remove-barren"}).code == 1);
    std::filesystem::remove(net);
    std::filesystem::remove(out);
  }

  TEST_CASE("estimate and compile") {
    const auto e = run_cli({"estimate", "fix-diamond"});
    CHECK(has_line(e.out, "init_estimate: 64"));
    CHECK(has_line(e.out, "update_estimate: 88"));
    const auto c = run_cli({"compile", "fix-diamond"});
    CHECK(has_line(c.out, "universes: 2"));
    CHECK(has_line(c.out, "U1 members=B,C,D S=8 N=1 parent=U0 sepset=B,C"));
  }

  TEST_CASE("bench writes csv") {
    const auto csv = temp_file("bench.csv");
    const auto b = run_cli({"bench", "--gen-count", "3", "--seed", "2", "--repeats", "1", "--out", csv.string()});
    CHECK(b.code == 0);
    CHECK(has_line(b.out, "nets: 3"));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "net_id,nodes,max_clique_states,init_estimate,update_estimate,instrumented_init,"
                    "instrumented_update,wall_time_ns");
    std::filesystem::remove(csv);
  }
}
