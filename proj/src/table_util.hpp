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
#include <span>
#include <string>
#include <vector>

#include "beliefcore/model.hpp"

namespace beliefcore::detail {

inline std::vector<std::size_t> cards_of(const Diagram& d, const std::vector<std::string>& ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(d.card(id));
  return out;
}

inline std::size_t product(std::span<const std::size_t> cards) {
  std::size_t n = 1;
  for (std::size_t c : cards) n *= c;
  return n;
}

// Row-major decode (first position slowest).
inline void decode(std::size_t index, std::span<const std::size_t> cards, std::span<std::size_t> out) {
  for (std::size_t k = cards.size(); k > 0; --k) {
    out[k - 1] = index % cards[k - 1];
    index /= cards[k - 1];
  }
}

inline std::size_t encode(std::span<const std::size_t> states, std::span<const std::size_t> cards) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < cards.size(); ++k) index = index * cards[k] + states[k];
  return index;
}

inline std::size_t position_of(const std::vector<std::string>& list, const std::string& id) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == id) return i;
  }
  return list.size();
}

// True if `to` is reachable from `from` along directed arcs. With
// skip_direct, the arc from -> to itself does not count.
bool reachable(const Diagram& d, const std::string& from, const std::string& to, bool skip_direct = false);

}  // namespace beliefcore::detail
