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

#include <algorithm>

#include "ccsim/delivery.hpp"
#include "ccsim/errors.hpp"
#include "detail.hpp"

namespace ccsim {

LastStageOutput deliver_last_stage(const std::vector<FragmentId>& remaining, int n_caches) {
  LastStageOutput out;
  std::vector<std::vector<FragmentId>> by_cache(n_caches);
  for (const auto& f : remaining) {
    if (f.cache < 1 || f.cache > n_caches) throw DefectError("remaining fragment names an unknown cache");
    by_cache[f.cache - 1].push_back(f);
  }
  for (auto& list : by_cache) {
    std::sort(list.begin(), list.end(), [](const FragmentId& a, const FragmentId& b) {
      return a.combo != b.combo ? a.combo < b.combo : a.file < b.file;
    });
  }

  out.per_cache.resize(n_caches);
  int ref = 1;
  for (int m = 1; m <= n_caches; ++m) {
    out.per_cache[m - 1] = static_cast<Count>(by_cache[m - 1].size());
    if (by_cache[m - 1].size() < by_cache[ref - 1].size()) ref = m;
  }
  out.reference = ref;
  out.Delta = out.per_cache[ref - 1];

  std::vector<std::vector<char>> used(n_caches);
  for (int m = 1; m <= n_caches; ++m) used[m - 1].assign(by_cache[m - 1].size(), 0);

  // Partner preference: same packet label, then same file, then list order.
  auto pick = [&](int cache, const FragmentId& x) -> std::size_t {
    const auto& list = by_cache[cache - 1];
    const auto& taken = used[cache - 1];
    std::size_t same_file = list.size();
    std::size_t first = list.size();
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (taken[i]) continue;
      if (list[i].combo == x.combo) return i;
      if (same_file == list.size() && list[i].file == x.file) same_file = i;
      if (first == list.size()) first = i;
    }
    if (same_file != list.size()) return same_file;
    if (first == list.size()) throw DefectError("last stage ran out of partner fragments");
    return first;
  };

  for (std::size_t r = 0; r < by_cache[ref - 1].size(); ++r) {
    const FragmentId& x = by_cache[ref - 1][r];
    used[ref - 1][r] = 1;
    for (int m = 1; m <= n_caches; ++m) {
      if (m == ref) continue;
      const std::size_t i = pick(m, x);
      used[m - 1][i] = 1;
      out.transmissions.push_back(detail::pair(Stage::Last_1, x, by_cache[m - 1][i]));
    }
  }
  for (int m = 1; m <= n_caches; ++m) {
    for (std::size_t i = 0; i < by_cache[m - 1].size(); ++i) {
      if (!used[m - 1][i]) out.transmissions.push_back(detail::single(Stage::Last_2, by_cache[m - 1][i]));
    }
  }
  return out;
}

}  // namespace ccsim
