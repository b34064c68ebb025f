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

#include "beliefcore/conditioning.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "beliefcore/polytree.hpp"

namespace beliefcore {

std::size_t Cutset::case_count() const {
  std::size_t n = 1;
  for (std::size_t k : cards) n *= k;
  return n;
}

std::vector<std::size_t> find_loop_cutset(const IndexedNet& net) {
  const std::size_t n = net.size();
  // Arcs still present; a clamped node loses its outgoing arcs.
  std::vector<std::vector<bool>> live(n);
  for (std::size_t c = 0; c < n; ++c) live[c].assign(net.parents[c].size(), true);
  std::vector<bool> clamped(n, false);
  std::vector<std::size_t> cutset;

  for (;;) {
    // Peel nodes of degree <= 1 until only the cyclic core remains.
    std::vector<bool> in_core(n, true);
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t j = 0; j < net.parents[c].size(); ++j) {
        if (!live[c][j]) continue;
        ++degree[c];
        ++degree[net.parents[c][j]];
      }
    }
    std::vector<std::size_t> stack;
    for (std::size_t x = 0; x < n; ++x) {
      if (degree[x] <= 1) stack.push_back(x);
    }
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      if (!in_core[x]) continue;
      in_core[x] = false;
      auto drop = [&](std::size_t y) {
        if (in_core[y] && --degree[y] <= 1) stack.push_back(y);
      };
      for (std::size_t j = 0; j < net.parents[x].size(); ++j) {
        if (live[x][j]) drop(net.parents[x][j]);
      }
      for (std::size_t c : net.children[x]) {
        const auto& ps = net.parents[c];
        const std::size_t j = static_cast<std::size_t>(std::find(ps.begin(), ps.end(), x) - ps.begin());
        if (live[c][j]) drop(c);
      }
    }

    std::size_t best = static_cast<std::size_t>(-1);
    std::size_t best_degree = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (!in_core[x] || clamped[x]) continue;
      std::size_t incoming = 0;
      for (std::size_t j = 0; j < net.parents[x].size(); ++j) {
        if (live[x][j] && in_core[net.parents[x][j]]) ++incoming;
      }
      if (incoming > 1) continue;
      if (best == static_cast<std::size_t>(-1) || degree[x] > best_degree ||
          (degree[x] == best_degree && net.ids[x] < net.ids[best])) {
        best = x;
        best_degree = degree[x];
      }
    }
    if (best == static_cast<std::size_t>(-1)) {
      // A cyclic core where every node has two incoming core arcs cannot
      // exist in a DAG (its first node in graph order has none), so this
      // only happens once the core is empty.
      break;
    }
    clamped[best] = true;
    cutset.push_back(best);
    for (std::size_t c : net.children[best]) {
      const auto& ps = net.parents[c];
      live[c][static_cast<std::size_t>(std::find(ps.begin(), ps.end(), best) - ps.begin())] = false;
    }
  }
  std::sort(cutset.begin(), cutset.end());
  return cutset;
}

Cutset find_loop_cutset(const Diagram& d) {
  const IndexedNet net = IndexedNet::from(d);
  Cutset out;
  for (std::size_t i : find_loop_cutset(net)) {
    out.nodes.push_back(net.ids[i]);
    out.cards.push_back(net.card[i]);
  }
  return out;
}

IndexedNet clamp(const IndexedNet& net, std::span<const std::size_t> nodes, std::span<const std::size_t> states) {
  IndexedNet out = net;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::size_t c = nodes[k];
    const std::size_t s = states[k];
    for (std::size_t x : out.children[c]) {
      auto& ps = out.parents[x];
      const std::size_t j = static_cast<std::size_t>(std::find(ps.begin(), ps.end(), c) - ps.begin());
      // Stride of parent j in the row index.
      std::size_t stride = 1;
      for (std::size_t q = j + 1; q < ps.size(); ++q) stride *= out.card[ps[q]];
      const std::size_t kc = out.card[c];
      const std::size_t kx = out.card[x];
      const std::size_t rows = out.cpt[x].size() / kx;
      std::vector<double> table;
      table.reserve(out.cpt[x].size() / kc);
      for (std::size_t r = 0; r < rows; ++r) {
        if ((r / stride) % kc != s) continue;
        table.insert(table.end(), out.cpt[x].begin() + static_cast<std::ptrdiff_t>(r * kx),
                     out.cpt[x].begin() + static_cast<std::ptrdiff_t>((r + 1) * kx));
      }
      out.cpt[x] = std::move(table);
      ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(j));
    }
    out.children[c].clear();
  }
  return out;
}

namespace {

class CaseRunner {
 public:
  CaseRunner(const Diagram& d, const Evidence& evidence, const ConditioningOptions& options, StepCounter* counter)
      : net_(IndexedNet::from(d)), options_(options), counter_(counter) {
    validate_evidence(d, evidence);
    evidence_ = net_.evidence_vector(evidence);
    cut_ = find_loop_cutset(net_);
    for (std::size_t i : cut_) {
      result_.cutset.nodes.push_back(net_.ids[i]);
      result_.cutset.cards.push_back(net_.card[i]);
    }
    double cases = 1.0;
    for (std::size_t k : result_.cutset.cards) cases *= static_cast<double>(k);
    if (cases > 1e7) fail(ErrorCode::TooLarge, "cutset has too many cases to enumerate");
    result_.log.total_cases = result_.cutset.case_count();
    states_.assign(cut_.size(), 0);
  }

  // Calls `visit(joint beliefs)` for every case with P(s, e) > 0.
  template <typename Visit>
  void run(Visit visit) {
    std::function<void(std::size_t, bool)> recurse = [&](std::size_t j, bool skipped) {
      if (j == cut_.size()) {
        evaluate(visit, skipped);
        return;
      }
      for (std::size_t s = 0; s < net_.card[cut_[j]]; ++s) {
        states_[j] = s;
        if (!skipped && prefix_impossible(j)) {
          const std::size_t rest = remaining_cases(j);
          if (options_.evaluate_skipped) {
            recurse(j + 1, true);
          } else {
            result_.log.skipped_cases += rest;
          }
          continue;
        }
        recurse(j + 1, skipped);
      }
    };
    recurse(0, false);
  }

  const IndexedNet& net() const { return net_; }
  ConditioningResult& result() { return result_; }

 private:
  std::size_t remaining_cases(std::size_t j) const {
    std::size_t n = 1;
    for (std::size_t k = j + 1; k < cut_.size(); ++k) n *= net_.card[cut_[k]];
    return n;
  }

  // True when P(S_0..S_j = prefix, e) is zero by a local check: the state
  // contradicts evidence, or the node's table gives it probability zero in
  // every row consistent with the fixed cutset and evidence parents.
  bool prefix_impossible(std::size_t j) const {
    const std::size_t c = cut_[j];
    const std::size_t s = states_[j];
    if (evidence_[c] != kUnobserved && evidence_[c] != s) return true;
    const auto& ps = net_.parents[c];
    std::vector<std::size_t> fixed(ps.size(), kUnobserved);
    for (std::size_t q = 0; q < ps.size(); ++q) {
      const std::size_t p = ps[q];
      if (auto it = std::find(cut_.begin(), cut_.begin() + static_cast<std::ptrdiff_t>(j), p);
          it != cut_.begin() + static_cast<std::ptrdiff_t>(j)) {
        fixed[q] = states_[static_cast<std::size_t>(it - cut_.begin())];
      } else if (evidence_[p] != kUnobserved) {
        fixed[q] = evidence_[p];
      }
    }
    const std::size_t k = net_.card[c];
    const std::size_t rows = net_.cpt[c].size() / k;
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t rest = r;
      bool consistent = true;
      for (std::size_t q = ps.size(); q > 0 && consistent; --q) {
        const std::size_t v = rest % net_.card[ps[q - 1]];
        rest /= net_.card[ps[q - 1]];
        if (fixed[q - 1] != kUnobserved && fixed[q - 1] != v) consistent = false;
      }
      if (consistent && net_.cpt[c][r * k + s] != 0.0) return false;
    }
    return true;
  }

  template <typename Visit>
  void evaluate(Visit& visit, bool skipped) {
    const IndexedNet clamped = clamp(net_, cut_, states_);
    std::vector<std::size_t> ev = evidence_;
    for (std::size_t k = 0; k < cut_.size(); ++k) ev[cut_[k]] = states_[k];
    JointBeliefs jb = propagate_polytree(clamped, ev, counter_);
    if (skipped) {
      skipped_mass_.push_back(jb.evidence_probability);
      ++result_.log.skipped_cases;
      return;
    }
    if (!(jb.evidence_probability > 0.0)) {
      ++result_.log.skipped_cases;
      return;
    }
    ++result_.log.evaluated_cases;
    visit(std::move(jb));
  }

 public:
  std::vector<double> skipped_mass_;

 private:
  IndexedNet net_;
  ConditioningOptions options_;
  StepCounter* counter_;
  std::vector<std::size_t> evidence_;
  std::vector<std::size_t> cut_;
  std::vector<std::size_t> states_;
  ConditioningResult result_;
};

[[noreturn]] void impossible(const CutsetCaseLog& log) {
  throw ImpossibleEvidenceError("impossible evidence: every cutset case has probability zero", log);
}

void finish_debug(CaseRunner& runner, double total) {
  auto& r = runner.result();
  for (double m : runner.skipped_mass_) r.max_skipped_weight = std::max(r.max_skipped_weight, m / total);
}

}  // namespace

ConditioningResult conditioning_infer_weighted(const Diagram& d, const Evidence& evidence,
                                               const ConditioningOptions& options, StepCounter* counter) {
  CaseRunner runner(d, evidence, options, counter);
  const std::size_t n = runner.net().size();
  std::vector<double> masses;
  std::vector<std::vector<std::vector<double>>> conditionals;
  runner.run([&](JointBeliefs jb) {
    const double m = jb.evidence_probability;
    for (auto& v : jb.joint) {
      for (double& x : v) x /= m;
      count(counter, 2 * v.size());
    }
    masses.push_back(m);
    conditionals.push_back(std::move(jb.joint));
  });
  auto& result = runner.result();
  if (masses.empty()) impossible(result.log);

  double total = 0.0;
  for (double m : masses) total += m;
  std::vector<std::vector<double>> mixed(n);
  for (std::size_t i = 0; i < n; ++i) mixed[i].assign(runner.net().card[i], 0.0);
  for (std::size_t c = 0; c < masses.size(); ++c) {
    const double w = masses[c] / total;
    result.mixing_weights.push_back(w);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < mixed[i].size(); ++s) mixed[i][s] += w * conditionals[c][i][s];
      count(counter, mixed[i].size());
    }
  }
  finish_debug(runner, total);
  result.beliefs = make_beliefs(runner.net(), std::move(mixed), total);
  return std::move(result);
}

ConditioningResult conditioning_infer_joint(const Diagram& d, const Evidence& evidence,
                                            const ConditioningOptions& options, StepCounter* counter) {
  CaseRunner runner(d, evidence, options, counter);
  const std::size_t n = runner.net().size();
  std::vector<std::vector<double>> acc(n);
  for (std::size_t i = 0; i < n; ++i) acc[i].assign(runner.net().card[i], 0.0);
  double total = 0.0;
  runner.run([&](JointBeliefs jb) {
    total += jb.evidence_probability;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < acc[i].size(); ++s) acc[i][s] += jb.joint[i][s];
      count(counter, acc[i].size());
    }
  });
  auto& result = runner.result();
  if (!(total > 0.0)) impossible(result.log);
  for (const auto& v : acc) count(counter, 2 * v.size());
  finish_debug(runner, total);
  result.beliefs = make_beliefs(runner.net(), std::move(acc), total);
  return std::move(result);
}

}  // namespace beliefcore
