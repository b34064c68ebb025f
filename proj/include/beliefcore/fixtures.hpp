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

// Named reference diagrams: FIX-CHAIN, FIX-DIAMOND, FIX-ZERO, FIX-ID,
// FIX-ID-INFO. Lookup is case-insensitive. Throws UnknownFixture.
Diagram fixture(std::string_view name);

std::vector<std::string_view> fixture_names();

}  // namespace beliefcore
