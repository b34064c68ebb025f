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

#include <string_view>
#include <vector>

#include "beliefcore/model.hpp"

namespace beliefcore {

// Every operation takes a consistent diagram and returns a new consistent
// diagram, leaving the input untouched.

Diagram add_node(const Diagram& d, Node node);

// With cascade set, outgoing arcs are removed first using the delete_arc rule.
Diagram delete_node(const Diagram& d, std::string_view id, bool cascade);

// The child's existing rows are replicated across every state of the new
// parent, so the child stays independent of it.
Diagram add_arc(const Diagram& d, std::string_view parent, std::string_view child);

// Collapses the child's rows by uniform averaging over the removed parent.
Diagram delete_arc(const Diagram& d, std::string_view parent, std::string_view child);

// The new state gets probability 0 in the node's own rows; children get
// uniform rows for configurations that involve it.
Diagram add_state(const Diagram& d, std::string_view node, std::string label);

// Drops the state from the node's rows (renormalizing each row) and drops the
// children's rows conditioned on it.
Diagram delete_state(const Diagram& d, std::string_view node, std::string_view label);

Diagram edit_distribution(const Diagram& d, std::string_view node, std::vector<std::vector<double>> rows);

Diagram copy_diagram(const Diagram& d);

}  // namespace beliefcore
