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

#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "ccsim/prefetch.hpp"

using namespace ccsim;

TEST_CASE("three files, three caches, alpha two reproduces the reference placement") {
  const auto placement = place(SystemParams::make(3, 3, 2));
  std::ifstream in(std::string(CCSIM_GOLDEN_DIR) + "/reference_placement.txt");
  REQUIRE(in);
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(dump_placement(placement) == golden.str());
  CHECK(placement.dimension() == 18);
  CHECK(placement.packets_per_cache() * 3 == 9);
}

TEST_CASE("cache size is N / (M alpha)") {
  CHECK(cache_size(SystemParams::make(10, 6, 1)) == Rational(5, 3));
  CHECK(cache_size(SystemParams::make(10, 6, 4)) == Rational(5, 12));
}

TEST_CASE("fragment indexing is a bijection and packets partition the fragments") {
  for (auto [N, M, alpha] : {std::tuple{4, 3, 2}, std::tuple{5, 2, 3}, std::tuple{3, 4, 1}, std::tuple{5, 3, 5}}) {
    const auto params = SystemParams::make(N, M, alpha);
    const auto placement = place(params);
    CHECK(static_cast<Count>(placement.dimension()) == N * params.rate_denominator());

    std::set<std::size_t> seen;
    for (int m = 1; m <= M; ++m) {
      for (ComboIndex c = 0; c < placement.packets_per_cache(); ++c) {
        const auto frags = placement.packet(m, c);
        CHECK(static_cast<int>(frags.size()) == alpha);
        for (const auto& f : frags) {
          const auto idx = placement.fragment_index(f);
          CHECK(idx < placement.dimension());
          CHECK(placement.fragment_at(idx) == f);
          CHECK(PlacementState::fragment_home(f) == PacketId{c, m});
          CHECK(seen.insert(idx).second);
        }
      }
    }
    CHECK(seen.size() == placement.dimension());
  }
}

TEST_CASE("each file has M C(N-1, alpha-1) fragments") {
  const auto params = SystemParams::make(6, 4, 3);
  const auto placement = place(params);
  std::vector<Count> per_file(7, 0);
  for (std::size_t i = 0; i < placement.dimension(); ++i) ++per_file[placement.fragment_at(i).file];
  for (int f = 1; f <= 6; ++f) CHECK(per_file[f] == 4 * 10);
}
