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

#include <string>
#include <string_view>

#include "beliefcore/model.hpp"

namespace beliefcore {

inline constexpr int kFormatVersion = 1;
// Row-sum slack accepted when LoadOptions::renormalize is set.
inline constexpr double kRenormalizeTolerance = 1e-6;

// Canonical text: nodes in graph order, arcs grouped by child (graph order)
// in each child's parent order, rows row-major, numbers in shortest
// round-trip form, LF newlines. Throws Inconsistent for invalid diagrams.
std::string save(const Diagram& d);

struct LoadOptions {
  // Rescale chance rows whose sum is within kRenormalizeTolerance of 1.
  bool renormalize = false;
  // Off only for tools that want the full consistency report themselves.
  bool check_consistency = true;
};

// Throws ParseError, Error(VersionUnsupported) or the consistency error.
Diagram load(std::string_view text, const LoadOptions& options = {});

Diagram load_file(const std::string& path, const LoadOptions& options = {});
void save_file(const Diagram& d, const std::string& path);

// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace beliefcore
