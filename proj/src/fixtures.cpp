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

#include "beliefcore/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace beliefcore {

namespace {

Node binary(std::string id, std::vector<std::string> parents, std::vector<double> p_true) {
  Node n{std::move(id), NodeKind::chance, {"t", "f"}, std::move(parents), {}};
  for (double p : p_true) n.rows.push_back({p, 1.0 - p});
  return n;
}

Diagram weather(bool informed) {
  Node w{"W", NodeKind::chance, {"rain", "sun"}, {}, {{0.4, 0.6}}};
  Node dec{"D", NodeKind::decision, {"take", "leave"}, {}, {}};
  if (informed) dec.parents = {"W"};
  // Rows ordered (W, D): rain/take, rain/leave, sun/take, sun/leave.
  Node v{"V", NodeKind::value, {}, {"W", "D"}, {{70.0}, {0.0}, {80.0}, {100.0}}};
  return build_diagram({w, dec, v}, informed ? "FIX-ID-INFO" : "FIX-ID");
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

std::vector<std::string_view> fixture_names() {
  return {"FIX-CHAIN", "FIX-DIAMOND", "FIX-ZERO", "FIX-ID", "FIX-ID-INFO"};
}

Diagram fixture(std::string_view name) {
  const std::string key = upper(name);
  if (key == "FIX-CHAIN") {
    return build_diagram({binary("A", {}, {0.3}), binary("B", {"A"}, {0.8, 0.1})}, "FIX-CHAIN");
  }
  if (key == "FIX-DIAMOND") {
    return build_diagram({binary("A", {}, {0.5}), binary("B", {"A"}, {0.9, 0.2}),
                          binary("C", {"A"}, {0.7, 0.1}),
                          binary("D", {"B", "C"}, {0.99, 0.8, 0.6, 0.05})},
                         "FIX-DIAMOND");
  }
  if (key == "FIX-ZERO") {
    return build_diagram({binary("A", {}, {0.5}), binary("B", {"A"}, {1.0, 0.4})}, "FIX-ZERO");
  }
  if (key == "FIX-ID") return weather(false);
  if (key == "FIX-ID-INFO") return weather(true);
  fail(ErrorCode::UnknownFixture, "no fixture named '" + std::string(name) + "'");
}

}  // namespace beliefcore
