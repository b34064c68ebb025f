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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beliefcore/clustering.hpp"
#include "beliefcore/model.hpp"
#include "beliefcore/step_counter.hpp"

namespace beliefcore {

// Sum over universes of (3 + N(U)) * S(U).
std::uint64_t estimate_jensen_init(const JoinTree& jt);

// Sum over universes of (2 + N(U)) * S(U), plus S(U_i) + S(i) for every
// node. The evidence is not part of the formula.
std::uint64_t estimate_jensen_update(const JoinTree& jt, const Evidence& evidence = {});

// Sum of S(U_e) over observed nodes: the declaration passes the update
// formula leaves out.
std::uint64_t evidence_declaration_cost(const JoinTree& jt, const Evidence& evidence);

// Counted primitives behind the step conventions: writing a table costs one
// step per cell; normalizing a belief vector costs a sum pass plus a divide
// pass.
Diagram set_distribution(const Diagram& d, std::string_view id, std::vector<std::vector<double>> rows,
                         StepCounter* counter);
std::vector<double> normalize_beliefs(std::vector<double> v, StepCounter* counter);

struct UnitStepRule {
  std::string operation;
  std::uint64_t steps = 0;
};

// The reference costs, each measured by running the counted primitive.
std::vector<UnitStepRule> unit_step_accounting();

struct EstimateReport {
  std::string net_id;
  std::size_t nodes = 0;
  std::size_t max_clique_states = 0;
  std::uint64_t init_estimate = 0;
  std::uint64_t update_estimate = 0;
  std::uint64_t instrumented_init = 0;
  std::uint64_t instrumented_update = 0;
  std::uint64_t evidence_declaration_cost = 0;
  std::uint64_t wall_time_ns = 0;
};

struct CalibrationOptions {
  // Each query is timed this many times; the fastest run is kept.
  std::size_t timing_repeats = 5;
};

struct Calibration {
  std::vector<EstimateReport> reports;
  // Pearson correlations; absent with fewer than two reports or zero variance.
  std::optional<double> correlation_wall_time;
  std::optional<double> correlation_instrumented;

  std::string csv() const;
};

// Builds each join tree, runs one instrumented Jensen query per net and
// compares the estimates with the counters and the wall time.
Calibration calibrate(const std::vector<Diagram>& nets, const std::vector<Evidence>& evidence,
                      const CalibrationOptions& options = {});

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

// Seeded benchmark population of increasing size, each paired with one
// observation.
struct BenchCase {
  Diagram net;
  Evidence evidence;
};
std::vector<BenchCase> bench_networks(std::size_t count, std::uint64_t seed);

}  // namespace beliefcore
