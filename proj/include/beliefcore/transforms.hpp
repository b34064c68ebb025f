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

#include <set>
#include <string>
#include <string_view>

#include "beliefcore/model.hpp"

namespace beliefcore {

// Transforms take a consistent diagram and return a consistent diagram. The
// *_in_place forms modify their argument and require exclusive access.

// Bayes-rule reversal of from -> to. Both nodes end up with the union of the
// two parent sets. Conditional rows whose conditioning marginal is zero are
// set uniform.
Diagram reverse_arc(const Diagram& d, std::string_view from, std::string_view to);
void reverse_arc_in_place(Diagram& d, std::string_view from, std::string_view to);

Diagram remove_barren_node(const Diagram& d, std::string_view id);
void remove_barren_node_in_place(Diagram& d, std::string_view id);

// Repeatedly removes chance nodes without children that are not in `keep`.
Diagram remove_all_barren(const Diagram& d, const std::set<std::string, std::less<>>& keep);
void remove_all_barren_in_place(Diagram& d, const std::set<std::string, std::less<>>& keep);

// Reverses every outgoing arc (children in graph order), then removes the
// node as barren.
Diagram absorb_chance_node(const Diagram& d, std::string_view id);
void absorb_chance_node_in_place(Diagram& d, std::string_view id);

// Substitutes a deterministic node's function into each child's table and
// removes the node.
Diagram reduce_deterministic_node(const Diagram& d, std::string_view id);
void reduce_deterministic_node_in_place(Diagram& d, std::string_view id);

}  // namespace beliefcore
