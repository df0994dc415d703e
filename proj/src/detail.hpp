// Copyright 2026 The ccsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "ccsim/model.hpp"

namespace ccsim::detail {

inline Transmission single(Stage stage, const FragmentId& f) { return Transmission{stage, {f}}; }

inline Transmission pair(Stage stage, const FragmentId& a, const FragmentId& b) {
  return Transmission{stage, {a, b}};
}

// File with the fewest requesting groups, smallest index on ties.
inline int least_requested(const RequestProfile& profile, const std::vector<int>& candidates) {
  int best = candidates.front();
  for (int f : candidates) {
    if (profile.requesters(f).size() < profile.requesters(best).size()) best = f;
  }
  return best;
}

}  // namespace ccsim::detail
