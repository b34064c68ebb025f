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

#include <cstdint>

namespace beliefcore {

// Counts table cells visited by state-space-spanning passes. One counter per
// run; never shared between threads.
class StepCounter {
 public:
  void add(std::uint64_t steps) { total_ += steps; }
  std::uint64_t total() const { return total_; }
  void reset() { total_ = 0; }

 private:
  std::uint64_t total_ = 0;
};

inline void count(StepCounter* counter, std::uint64_t steps) {
  if (counter != nullptr) counter->add(steps);
}

}  // namespace beliefcore
