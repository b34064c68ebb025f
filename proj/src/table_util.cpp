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

#include "table_util.hpp"

#include <set>

namespace beliefcore::detail {

bool reachable(const Diagram& d, const std::string& from, const std::string& to, bool skip_direct) {
  std::vector<std::string> stack;
  std::set<std::string> seen{from};
  for (auto& c : d.children(from)) {
    if (skip_direct && c == to) continue;
    if (seen.insert(c).second) stack.push_back(std::move(c));
  }
  if (!skip_direct && from == to) return true;
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    if (cur == to) return true;
    for (auto& c : d.children(cur)) {
      if (seen.insert(c).second) stack.push_back(std::move(c));
    }
  }
  return false;
}

}  // namespace beliefcore::detail
