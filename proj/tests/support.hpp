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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ccsim/delivery.hpp"
#include "ccsim/model.hpp"
#include "ccsim/prefetch.hpp"

namespace ccsim::testing {

struct Instance {
  SystemParams params;
  PlacementState placement;
  RequestProfile profile;

  Instance(int N, int M, int alpha, std::vector<std::vector<int>> requests)
      : params(SystemParams::make(N, M, alpha)),
        placement(place(params)),
        profile(RequestProfile::make(N, std::move(requests))) {}
};

inline FragmentId frag(const ComboTable& table, int file, Combo combo, int cache) {
  return FragmentId{file, table.rank(combo), cache};
}

inline Transmission tx(Stage stage, std::vector<FragmentId> payload) {
  return Transmission{stage, std::move(payload)};
}

inline bool same(const Transmission& a, const Transmission& b) {
  return a.stage == b.stage && a.payload == b.payload;
}

// Calls fn(profile requests) for every profile where each of M groups asks for
// a nonempty subset of {1..N}.
inline void for_each_profile(int N, int M, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  const int subsets = (1 << N) - 1;
  std::vector<int> choice(M, 1);
  while (true) {
    std::vector<std::vector<int>> req(M);
    for (int m = 0; m < M; ++m) {
      for (int f = 1; f <= N; ++f) {
        if (choice[m] & (1 << (f - 1))) req[m].push_back(f);
      }
    }
    fn(req);
    int i = 0;
    while (i < M && choice[i] == subsets) choice[i++] = 1;
    if (i == M) return;
    ++choice[i];
  }
}

}  // namespace ccsim::testing
