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

#include "beliefcore/estimators.hpp"

#include <chrono>
#include <cmath>

#include "beliefcore/editing.hpp"
#include "beliefcore/io.hpp"
#include "beliefcore/random_network.hpp"

namespace beliefcore {

std::uint64_t estimate_jensen_init(const JoinTree& jt) {
  std::uint64_t total = 0;
  for (const auto& u : jt.universes()) total += (3 + u.neighbor_count()) * u.size;
  return total;
}

std::uint64_t estimate_jensen_update(const JoinTree& jt, const Evidence& /*evidence*/) {
  std::uint64_t total = 0;
  for (const auto& u : jt.universes()) total += (2 + u.neighbor_count()) * u.size;
  const IndexedNet& net = jt.net();
  for (std::size_t i = 0; i < net.size(); ++i) total += jt.universes()[jt.member_home(i)].size + net.card[i];
  return total;
}

std::uint64_t evidence_declaration_cost(const JoinTree& jt, const Evidence& evidence) {
  std::uint64_t total = 0;
  for (const auto& [id, state] : evidence) total += jt.universes()[jt.member_home(jt.net().index_of(id))].size;
  return total;
}

Diagram set_distribution(const Diagram& d, std::string_view id, std::vector<std::vector<double>> rows,
                         StepCounter* counter) {
  std::uint64_t cells = 0;
  for (const auto& r : rows) cells += r.size();
  Diagram out = edit_distribution(d, id, std::move(rows));
  count(counter, cells);
  return out;
}

std::vector<double> normalize_beliefs(std::vector<double> v, StepCounter* counter) {
  double total = 0.0;
  for (double x : v) total += x;
  count(counter, v.size());
  if (!(total > 0.0)) throw ImpossibleEvidenceError("impossible evidence: zero normalizer");
  for (double& x : v) x /= total;
  count(counter, v.size());
  return v;
}

std::vector<UnitStepRule> unit_step_accounting() {
  std::vector<UnitStepRule> out;
  const Diagram two = load("%beliefcore 1\ndiagram unit\n"
                           "node P kind=chance states=t,f\nnode A kind=chance states=t,f\narc P -> A\n"
                           "cpt P | : 0.5 0.5\ncpt A | P=t : 0.5 0.5\ncpt A | P=f : 0.5 0.5\n");
  StepCounter c;
  set_distribution(two, "A", {{0.9, 0.1}, {0.2, 0.8}}, &c);
  out.push_back({"set distribution: binary node, one binary parent", c.total()});

  c.reset();
  normalize_beliefs({0.3, 0.1}, &c);
  out.push_back({"normalize: binary belief vector", c.total()});

  const Diagram three = load("%beliefcore 1\ndiagram unit\n"
                             "node P kind=chance states=t,f\nnode Q kind=chance states=t,f\n"
                             "node A kind=chance states=x,y,z\narc P -> A\narc Q -> A\n"
                             "cpt P | : 0.5 0.5\ncpt Q | : 0.5 0.5\n"
                             "cpt A | P=t,Q=t : 0.2 0.3 0.5\ncpt A | P=t,Q=f : 0.2 0.3 0.5\n"
                             "cpt A | P=f,Q=t : 0.2 0.3 0.5\ncpt A | P=f,Q=f : 0.2 0.3 0.5\n");
  c.reset();
  set_distribution(three, "A", std::vector<std::vector<double>>(4, {0.1, 0.1, 0.8}), &c);
  out.push_back({"set distribution: 3-state node, two binary parents", c.total()});
  return out;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::string Calibration::csv() const {
  std::string out =
      "net_id,nodes,max_clique_states,init_estimate,update_estimate,instrumented_init,instrumented_update,"
      "wall_time_ns\n";
  for (const auto& r : reports) {
    out += r.net_id + ',' + std::to_string(r.nodes) + ',' + std::to_string(r.max_clique_states) + ',' +
           std::to_string(r.init_estimate) + ',' + std::to_string(r.update_estimate) + ',' +
           std::to_string(r.instrumented_init) + ',' + std::to_string(r.instrumented_update) + ',' +
           std::to_string(r.wall_time_ns) + '\n';
  }
  return out;
}

Calibration calibrate(const std::vector<Diagram>& nets, const std::vector<Evidence>& evidence,
                      const CalibrationOptions& options) {
  Calibration out;
  for (std::size_t k = 0; k < nets.size(); ++k) {
    const Diagram& d = nets[k];
    const Evidence ev = k < evidence.size() ? evidence[k] : Evidence{};
    const JoinTree jt = build_join_tree(d);
    EstimateReport r;
    r.net_id = d.name();
    r.nodes = d.size();
    r.max_clique_states = jt.max_universe_size();
    r.init_estimate = estimate_jensen_init(jt);
    r.update_estimate = estimate_jensen_update(jt, ev);
    r.instrumented_init = jt.instrumented_init();

    std::uint64_t best = 0;
    for (std::size_t rep = 0; rep < std::max<std::size_t>(1, options.timing_repeats); ++rep) {
      StepCounter counter;
      std::uint64_t declared = 0;
      const auto start = std::chrono::steady_clock::now();
      jt_infer_jensen(jt, ev, &counter, &declared);
      const auto ns = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
      if (rep == 0 || ns < best) best = ns;
      r.instrumented_update = counter.total();
      r.evidence_declaration_cost = declared;
    }
    r.wall_time_ns = best;
    out.reports.push_back(std::move(r));
  }
  std::vector<double> est, wall, inst;
  for (const auto& r : out.reports) {
    est.push_back(static_cast<double>(r.update_estimate));
    wall.push_back(static_cast<double>(r.wall_time_ns));
    inst.push_back(static_cast<double>(r.instrumented_update));
  }
  out.correlation_wall_time = pearson(est, wall);
  out.correlation_instrumented = pearson(est, inst);
  return out;
}

std::vector<BenchCase> bench_networks(std::size_t count, std::uint64_t seed) {
  constexpr double kMaxClique = 1 << 16;
  std::vector<BenchCase> out;
  Rng pick(seed);
  std::uint64_t next = seed;
  for (std::size_t k = 0; k < count; ++k) {
    for (;;) {
      RandomNetworkParams p;
      p.node_count = 10 + 2 * k;
      p.max_parents = 3;
      // Sparse enough that clique sizes stay moderate as the nets grow.
      p.min_states = 2;
      p.max_states = 3;
      p.arc_density = std::min(0.3, 5.0 / static_cast<double>(p.node_count));
      p.seed = next++;
      Diagram d = random_network(p);
      // Keep the population tractable: skip nets with oversized cliques.
      if (max_clique_states(d) > kMaxClique) continue;
      const auto order = graph_order(d);
      const std::string& observed = order[pick.below(order.size())];
      out.push_back({std::move(d), Evidence{{observed, 0}}});
      break;
    }
  }
  return out;
}

}  // namespace beliefcore
