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

#include <cstdint>
#include <vector>

#include "ccsim/rational.hpp"

namespace ccsim {

// Exact C(n, k). Zero when k > n. Throws std::invalid_argument on negative
// arguments and std::overflow_error when the value does not fit in int64.
Count binom(Count n, Count k);

using Combo = std::vector<int>;     // strictly increasing, 1-based files
using ComboIndex = std::uint32_t;   // position in lexicographic order

// All alpha-subsets of {1..N} in lexicographic order, with per-file views.
class ComboTable {
 public:
  ComboTable(int n_files, int alpha);

  int n_files() const { return n_files_; }
  int alpha() const { return alpha_; }
  std::size_t size() const { return combos_.size(); }

  const Combo& combo(ComboIndex i) const { return combos_[i]; }
  const std::vector<Combo>& combos() const { return combos_; }

  // Bit (n-1) set for every file n of the combo.
  std::uint64_t mask(ComboIndex i) const { return masks_[i]; }

  bool contains(ComboIndex i, int file) const {
    return (masks_[i] >> (file - 1)) & 1U;
  }

  // Combos containing `file`, in lexicographic order (the set A_n).
  const std::vector<ComboIndex>& with_file(int file) const {
    return per_file_[file - 1];
  }

  // Position of combo i inside with_file(file); file must belong to combo i.
  std::uint32_t slot(ComboIndex i, int file) const;

  ComboIndex rank(const Combo& c) const;
  Combo unrank(ComboIndex index) const;

 private:
  int n_files_;
  int alpha_;
  std::vector<Combo> combos_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<ComboIndex>> per_file_;
  std::vector<std::uint32_t> slots_;  // combos_.size() * alpha_
};

// Same as ComboTable(N, alpha) but validates with a ValidationError.
ComboTable alpha_subsets(int n_files, int alpha);

// Indices of the combos fully contained in `allowed`, in table order.
std::vector<ComboIndex> restricted_subsets(const ComboTable& table,
                                           std::uint64_t allowed);

// Lexicographic iteration over k-subsets of an ordered pool.
// Calls fn(const std::vector<int>&) for each; stops early if fn returns false.
template <typename Fn>
bool for_each_subset(const std::vector<int>& pool, int k, Fn&& fn) {
  const int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> out(k);
  while (true) {
    for (int i = 0; i < k; ++i) out[i] = pool[idx[i]];
    if (!fn(static_cast<const std::vector<int>&>(out))) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace ccsim
