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

#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "beliefcore/clustering.hpp"
#include "beliefcore/conditioning.hpp"
#include "beliefcore/estimators.hpp"
#include "beliefcore/fixtures.hpp"
#include "beliefcore/io.hpp"
#include "beliefcore/oracle.hpp"
#include "beliefcore/polytree.hpp"
#include "beliefcore/random_network.hpp"
#include "beliefcore/reduction.hpp"
#include "beliefcore/simulation.hpp"
#include "beliefcore/transforms.hpp"

namespace beliefcore::cli {

namespace {

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// FILE is a path, or a fixture name when no such file exists.
Diagram open_diagram(const std::string& file, bool check = true) {
  if (std::filesystem::exists(file)) {
    LoadOptions opts;
    opts.check_consistency = check;
    return load_file(file, opts);
  }
  try {
    return fixture(file);
  } catch (const Error&) {
    fail(ErrorCode::BadParams, "no file or fixture named '" + file + "'");
  }
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::BadParams, "cannot write '" + path + "'");
  f << text;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ImpossibleEvidence:
      return kImpossibleEvidence;
    case ErrorCode::TooLarge:
      return kLimit;
    case ErrorCode::CycleDetected:
    case ErrorCode::RowSumViolation:
    case ErrorCode::UnknownParent:
    case ErrorCode::DuplicateId:
    case ErrorCode::BadIdentifier:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::Inconsistent:
    case ErrorCode::DuplicateState:
    case ErrorCode::ParseError:
    case ErrorCode::VersionUnsupported:
      return kInconsistent;
    default:
      return kUsage;
  }
}

void print_beliefs(const Diagram& d, const Beliefs& b, const std::optional<std::string>& target, std::ostream& out) {
  for (const auto& id : graph_order(d)) {
    if (target && id != *target) continue;
    const auto it = b.posteriors.find(id);
    if (it == b.posteriors.end()) continue;
    out << id << ':';
    for (double v : it->second) out << ' ' << num(v);
    out << '\n';
  }
}

struct QueryArgs {
  std::string file;
  std::string evidence;
  std::string target;
  std::string algorithm = "auto";
  std::string triangulation = "mcs";
  bool stats = false;
  std::size_t sweeps = 20000;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 1;
};

TriangulationMethod triangulation_of(const std::string& name) {
  return name == "min-fill" ? TriangulationMethod::min_fill : TriangulationMethod::mcs;
}

int do_query(const QueryArgs& a, std::ostream& out) {
  const Diagram d = open_diagram(a.file);
  const Evidence ev = parse_evidence(d, a.evidence);
  std::optional<std::string> target;
  if (!a.target.empty()) {
    d.node(a.target);
    target = a.target;
  }
  std::string algorithm = a.algorithm;
  if (algorithm == "auto") algorithm = is_polytree(d) ? "polytree" : "clustering-jensen";

  StepCounter counter;
  Beliefs b;
  std::optional<ConditioningResult> cond;
  if (algorithm == "polytree") {
    b = polytree_infer(d, ev, &counter);
  } else if (algorithm == "conditioning-weighted" || algorithm == "conditioning-joint") {
    cond = algorithm == "conditioning-weighted" ? conditioning_infer_weighted(d, ev, {}, &counter)
                                                : conditioning_infer_joint(d, ev, {}, &counter);
    b = cond->beliefs;
  } else if (algorithm == "clustering-jensen") {
    b = jt_infer_jensen(build_join_tree(d, triangulation_of(a.triangulation)), ev, &counter);
  } else if (algorithm == "clustering-meta") {
    b = jt_infer_meta(build_join_tree(d, triangulation_of(a.triangulation)), ev, &counter);
  } else if (algorithm == "reduction") {
    for (const auto& id : target ? std::vector<std::string>{*target} : graph_order(d)) {
      Beliefs one = reduction_query(d, id, ev);
      b.posteriors[id] = one.at(id);
      b.evidence_probability = one.evidence_probability;
    }
  } else if (algorithm == "gibbs") {
    b = gibbs_infer(d, ev, SimParams{a.sweeps, a.burn_in, a.seed});
  } else {
    b = joint_enumeration_oracle(d, ev);
  }
  print_beliefs(d, b, target, out);

  if (a.stats) {
    out << "algorithm: " << algorithm << '\n';
    if (b.evidence_probability) out << "P(evidence): " << num(*b.evidence_probability) << '\n';
    if (counter.total() > 0) out << "steps: " << counter.total() << '\n';
    if (cond) {
      out << "cutset: " << join(cond->cutset.nodes) << '\n';
      out << "cases: total=" << cond->log.total_cases << " skipped=" << cond->log.skipped_cases
          << " evaluated=" << cond->log.evaluated_cases << '\n';
    }
  }
  return kOk;
}

int do_validate(const std::string& file, std::ostream& out) {
  const Diagram d = open_diagram(file, false);
  const auto report = is_consistent(d);
  if (report.ok) {
    out << "ok: " << d.name() << " (" << d.size() << " nodes)\n";
    return kOk;
  }
  for (const auto& v : report.violations) out << v.node << ": " << v.rule << ": " << v.detail << '\n';
  return kInconsistent;
}

int do_describe(const std::string& file, const std::string& node, std::ostream& out) {
  const Diagram d = open_diagram(file);
  if (node.empty()) {
    std::size_t arcs = 0;
    for (const auto& [id, n] : d.nodes()) arcs += n.parents.size();
    out << "diagram " << d.name() << ": " << d.size() << " nodes, " << arcs << " arcs\n";
    for (const auto& id : graph_order(d)) {
      const Node& n = d.node(id);
      out << id << "  " << to_string(n.kind) << "  states=" << (n.states.empty() ? "-" : join(n.states))
          << "  parents=" << (n.parents.empty() ? "-" : join(n.parents)) << '\n';
    }
    return kOk;
  }
  const Node& n = d.node(node);
  out << n.id << ": " << to_string(n.kind) << '\n';
  if (!n.states.empty()) out << "states: " << join(n.states) << '\n';
  out << "parents: " << (n.parents.empty() ? "-" : join(n.parents)) << '\n';
  out << "children: " << [&] {
    auto kids = d.children(n.id);
    return kids.empty() ? std::string("-") : join(kids);
  }() << '\n';
  std::vector<std::size_t> cards;
  for (const auto& p : n.parents) cards.push_back(d.card(p));
  for (std::size_t r = 0; r < n.rows.size(); ++r) {
    std::size_t rest = r;
    std::vector<std::string> cfg(n.parents.size());
    for (std::size_t k = n.parents.size(); k > 0; --k) {
      cfg[k - 1] = n.parents[k - 1] + "=" + d.node(n.parents[k - 1]).states[rest % cards[k - 1]];
      rest /= cards[k - 1];
    }
    out << "  " << (cfg.empty() ? std::string("(prior)") : join(cfg)) << " :";
    for (double v : n.rows[r]) out << ' ' << num(v);
    out << '\n';
  }
  return kOk;
}

int do_solve(const std::string& file, bool no_forgetting, std::ostream& out) {
  Diagram d = open_diagram(file);
  if (no_forgetting) d = add_no_forgetting_arcs(d);
  const SolveResult r = evaluate_influence_diagram(d);
  for (const auto& id : graph_order(d)) {
    auto it = r.policy.find(id);
    if (it == r.policy.end()) continue;
    const Node& dec = d.node(id);
    const DecisionRule& rule = it->second;
    if (rule.parents.empty()) {
      out << id << ": " << dec.states[rule.choice.at(0)] << '\n';
      continue;
    }
    std::vector<std::size_t> cards;
    for (const auto& p : rule.parents) cards.push_back(d.card(p));
    for (std::size_t row = 0; row < rule.choice.size(); ++row) {
      std::size_t rest = row;
      std::vector<std::string> cfg(rule.parents.size());
      for (std::size_t k = rule.parents.size(); k > 0; --k) {
        cfg[k - 1] = rule.parents[k - 1] + "=" + d.node(rule.parents[k - 1]).states[rest % cards[k - 1]];
        rest /= cards[k - 1];
      }
      out << id << " | " << join(cfg) << ": " << dec.states[rule.choice[row]] << '\n';
    }
  }
  out << "EU: " << num(r.expected_utility) << '\n';
  return kOk;
}

int do_estimate(const std::string& file, const std::string& evidence, const std::string& triangulation,
                std::ostream& out) {
  const Diagram d = open_diagram(file);
  const Evidence ev = parse_evidence(d, evidence);
  const JoinTree jt = build_join_tree(d, triangulation_of(triangulation));
  out << "init_estimate: " << estimate_jensen_init(jt) << '\n';
  out << "update_estimate: " << estimate_jensen_update(jt, ev) << '\n';
  if (!ev.empty()) out << "evidence_declaration: " << evidence_declaration_cost(jt, ev) << '\n';
  return kOk;
}

int do_compile(const std::string& file, const std::string& triangulation, std::ostream& out) {
  const Diagram d = open_diagram(file);
  const JoinTree jt = build_join_tree(d, triangulation_of(triangulation));
  const auto& ids = jt.net().ids;
  auto names = [&](const std::vector<std::size_t>& members) {
    std::vector<std::string> v;
    for (std::size_t i : members) v.push_back(ids[i]);
    return v.empty() ? std::string("-") : join(v);
  };
  std::size_t total = 0;
  for (const auto& u : jt.universes()) total += u.size;
  out << "universes: " << jt.universes().size() << '\n';
  out << "max_state_space: " << jt.max_universe_size() << '\n';
  out << "total_state_space: " << total << '\n';
  for (std::size_t k = 0; k < jt.universes().size(); ++k) {
    const Universe& u = jt.universes()[k];
    out << 'U' << k << " members=" << names(u.members) << " S=" << u.size << " N=" << u.neighbor_count();
    if (u.parent != static_cast<std::size_t>(-1)) out << " parent=U" << u.parent << " sepset=" << names(u.sepset);
    out << '\n';
  }
  out << "init_estimate: " << estimate_jensen_init(jt) << '\n';
  out << "update_estimate: " << estimate_jensen_update(jt) << '\n';
  return kOk;
}

int do_bench(std::size_t count, std::uint64_t seed, std::size_t repeats, const std::string& path,
             std::ostream& out) {
  std::vector<Diagram> nets;
  std::vector<Evidence> evidence;
  for (auto& c : bench_networks(count, seed)) {
    nets.push_back(std::move(c.net));
    evidence.push_back(std::move(c.evidence));
  }
  const Calibration cal = calibrate(nets, evidence, CalibrationOptions{repeats});
  if (path.empty()) {
    out << cal.csv();
  } else {
    write_text(cal.csv(), path, out);
  }
  auto show = [](const std::optional<double>& v) { return v ? num(*v) : std::string("absent"); };
  out << "nets: " << cal.reports.size() << '\n';
  out << "correlation(update_estimate, wall_time): " << show(cal.correlation_wall_time) << '\n';
  out << "correlation(update_estimate, instrumented_update): " << show(cal.correlation_instrumented) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Belief network and influence diagram toolkit", "beliefcore"};
  app.require_subcommand(1);

  std::string file, evidence, node, out_path, triangulation = "mcs";

  auto* validate = app.add_subcommand("validate", "Check a diagram and list every violation");
  validate->add_option("file", file, "Diagram file or fixture name")->required();

  auto* describe = app.add_subcommand("describe", "Describe a diagram or one node");
  describe->add_option("file", file, "Diagram file or fixture name")->required();
  describe->add_option("--node", node, "Node to show in detail");

  QueryArgs q;
  auto* query = app.add_subcommand("query", "Posterior beliefs given evidence");
  query->add_option("file", q.file, "Diagram file or fixture name")->required();
  query->add_option("--evidence", q.evidence, "Observations, e.g. A=t,B=f");
  query->add_option("--target", q.target, "Only report this node");
  query->add_option("--algorithm", q.algorithm, "Inference algorithm")
      ->check(CLI::IsMember({"auto", "polytree", "conditioning-weighted", "conditioning-joint", "clustering-jensen",
                             "clustering-meta", "reduction", "gibbs", "oracle"}));
  query->add_option("--triangulation", q.triangulation, "Join tree heuristic")
      ->check(CLI::IsMember({"mcs", "min-fill"}));
  query->add_option("--sweeps", q.sweeps, "Gibbs sweeps");
  query->add_option("--burn-in", q.burn_in, "Gibbs sweeps discarded first");
  query->add_option("--seed", q.seed, "Gibbs seed");
  query->add_flag("--stats", q.stats, "Print evidence probability, step count and cutset cases");

  bool no_forgetting = false;
  auto* solve = app.add_subcommand("solve", "Optimal policy and expected utility");
  solve->add_option("file", file, "Diagram file or fixture name")->required();
  solve->add_flag("--add-no-forgetting", no_forgetting, "Add missing no-forgetting arcs first");

  auto* estimate = app.add_subcommand("estimate", "Predicted Jensen propagation cost");
  estimate->add_option("file", file, "Diagram file or fixture name")->required();
  estimate->add_option("--evidence", evidence, "Observations, e.g. A=t,B=f");
  estimate->add_option("--triangulation", triangulation, "Join tree heuristic")
      ->check(CLI::IsMember({"mcs", "min-fill"}));

  std::size_t gen_count = 30, repeats = 5;
  std::uint64_t seed = 1;
  auto* bench = app.add_subcommand("bench", "Compare cost estimates with measured propagation");
  bench->add_option("--gen-count", gen_count, "Number of generated networks");
  bench->add_option("--seed", seed, "Generator seed");
  bench->add_option("--repeats", repeats, "Timing repeats per network (fastest kept)");
  bench->add_option("--out", out_path, "CSV output path (default: standard output)");

  RandomNetworkParams gp;
  std::size_t states = 2;
  std::optional<std::size_t> min_states;
  auto* gen = app.add_subcommand("gen", "Generate a random belief network");
  gen->add_option("--nodes", gp.node_count, "Node count");
  gen->add_option("--max-parents", gp.max_parents, "Parent limit per node");
  gen->add_option("--states", states, "States per node (upper bound with --min-states)");
  gen->add_option("--min-states", min_states, "Lower bound on states per node");
  gen->add_option("--density", gp.arc_density, "Chance that each candidate arc is drawn");
  gen->add_flag("--polytree", gp.polytree_only, "Keep the skeleton a forest");
  gen->add_option("--seed", gp.seed, "Generator seed");
  gen->add_option("--out", out_path, "Output path (default: standard output)");

  std::vector<std::string> reverse;
  std::string absorb, reduce_det, keep;
  bool remove_barren = false;
  auto* transform = app.add_subcommand("transform", "Apply one transformation and save the result");
  transform->add_option("file", file, "Diagram file or fixture name")->required();
  transform->add_option("--reverse-arc", reverse, "Reverse the arc PARENT -> CHILD")->expected(2);
  transform->add_flag("--remove-barren", remove_barren, "Remove every barren chance node");
  transform->add_option("--keep", keep, "Nodes kept by --remove-barren, comma separated");
  transform->add_option("--absorb", absorb, "Absorb a chance node");
  transform->add_option("--reduce-det", reduce_det, "Remove a deterministic node");
  transform->add_option("--out", out_path, "Output path (default: standard output)");

  auto* compile = app.add_subcommand("compile", "Join tree statistics");
  compile->add_option("file", file, "Diagram file or fixture name")->required();
  compile->add_option("--triangulation", triangulation, "Join tree heuristic")
      ->check(CLI::IsMember({"mcs", "min-fill"}));

  std::vector<const char*> argv{"beliefcore"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return do_validate(file, out);
    if (*describe) return do_describe(file, node, out);
    if (*query) return do_query(q, out);
    if (*solve) return do_solve(file, no_forgetting, out);
    if (*estimate) return do_estimate(file, evidence, triangulation, out);
    if (*bench) return do_bench(gen_count, seed, repeats, out_path, out);
    if (*compile) return do_compile(file, triangulation, out);
    if (*gen) {
      gp.max_states = states;
      gp.min_states = min_states.value_or(states);
      write_text(save(random_network(gp)), out_path, out);
      return kOk;
    }
    if (*transform) {
      const int chosen = !reverse.empty() + remove_barren + !absorb.empty() + !reduce_det.empty();
      if (chosen != 1) {
        err << "error: choose exactly one of --reverse-arc, --remove-barren, --absorb, --reduce-det\n";
        return kUsage;
      }
      Diagram d = open_diagram(file);
      if (!reverse.empty()) {
        d = reverse_arc(d, reverse[0], reverse[1]);
      } else if (remove_barren) {
        std::set<std::string, std::less<>> kept;
        for (auto& id : split(keep)) kept.insert(id);
        d = remove_all_barren(d, kept);
      } else if (!absorb.empty()) {
        d = absorb_chance_node(d, absorb);
      } else {
        d = reduce_deterministic_node(d, reduce_det);
      }
      write_text(save(d), out_path, out);
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInconsistent;
  } catch (const ImpossibleEvidenceError& e) {
    err << "error: impossible evidence (" << e.what() << ")\n";
    return kImpossibleEvidence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace beliefcore::cli
