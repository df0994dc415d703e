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

#include "ccsim/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ccsim/errors.hpp"

namespace ccsim {

Count binom(Count n, Count k) {
  if (n < 0 || k < 0) {
    throw std::invalid_argument("binom: negative argument (" + std::to_string(n) +
                                ", " + std::to_string(k) + ")");
  }
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Multiplicative form; each partial product is itself a binomial, so the
  // division is exact.
  __int128 acc = 1;
  for (Count i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > INT64_MAX) throw std::overflow_error("binom: result exceeds int64");
  }
  return static_cast<Count>(acc);
}

ComboTable::ComboTable(int n_files, int alpha) : n_files_(n_files), alpha_(alpha) {
  if (n_files < 1 || n_files > 62) {
    throw std::invalid_argument("ComboTable: N must lie in [1, 62]");
  }
  if (alpha < 1 || alpha > n_files) {
    throw std::invalid_argument("ComboTable: alpha must lie in [1, N]");
  }
  const Count total = binom(n_files, alpha);
  combos_.reserve(static_cast<std::size_t>(total));
  std::vector<int> pool(n_files);
  for (int i = 0; i < n_files; ++i) pool[i] = i + 1;
  for_each_subset(pool, alpha, [&](const std::vector<int>& c) {
    combos_.push_back(c);
    return true;
  });

  masks_.resize(combos_.size());
  per_file_.assign(n_files, {});
  slots_.resize(combos_.size() * alpha);
  for (ComboIndex i = 0; i < combos_.size(); ++i) {
    std::uint64_t m = 0;
    for (int j = 0; j < alpha; ++j) {
      const int f = combos_[i][j];
      m |= std::uint64_t{1} << (f - 1);
      slots_[i * alpha + j] = static_cast<std::uint32_t>(per_file_[f - 1].size());
      per_file_[f - 1].push_back(i);
    }
    masks_[i] = m;
  }
}

std::uint32_t ComboTable::slot(ComboIndex i, int file) const {
  const Combo& c = combos_[i];
  for (int j = 0; j < alpha_; ++j) {
    if (c[j] == file) return slots_[i * alpha_ + j];
  }
  throw std::out_of_range("ComboTable::slot: file " + std::to_string(file) +
                          " not in combo");
}

ComboIndex ComboTable::rank(const Combo& c) const {
  if (static_cast<int>(c.size()) != alpha_) {
    throw std::invalid_argument("ComboTable::rank: wrong combo size");
  }
  // Count the combos that precede c: at position i, every choice strictly
  // between the previous element and c[i] starts a block of C(N-j, alpha-i-1).
  Count r = 0;
  int prev = 0;
  for (int i = 0; i < alpha_; ++i) {
    if (c[i] <= prev || c[i] > n_files_) {
      throw std::invalid_argument("ComboTable::rank: combo not strictly increasing in [1, N]");
    }
    for (int j = prev + 1; j < c[i]; ++j) r += binom(n_files_ - j, alpha_ - i - 1);
    prev = c[i];
  }
  return static_cast<ComboIndex>(r);
}

Combo ComboTable::unrank(ComboIndex index) const {
  if (index >= combos_.size()) throw std::out_of_range("ComboTable::unrank: index out of range");
  Combo c(alpha_);
  Count r = index;
  int next = 1;
  for (int i = 0; i < alpha_; ++i) {
    while (true) {
      const Count block = binom(n_files_ - next, alpha_ - i - 1);
      if (r < block) break;
      r -= block;
      ++next;
    }
    c[i] = next++;
  }
  return c;
}

ComboTable alpha_subsets(int n_files, int alpha) {
  if (n_files < 1) throw ValidationError("N must be at least 1");
  if (n_files > 62) throw ValidationError("N must not exceed 62");
  if (alpha < 1 || alpha > n_files) {
    throw ValidationError("alpha must satisfy 1 <= alpha <= N (got alpha=" +
                          std::to_string(alpha) + ", N=" + std::to_string(n_files) + ")");
  }
  return ComboTable(n_files, alpha);
}

std::vector<ComboIndex> restricted_subsets(const ComboTable& table, std::uint64_t allowed) {
  std::vector<ComboIndex> out;
  for (ComboIndex i = 0; i < table.size(); ++i) {
    if ((table.mask(i) & ~allowed) == 0) out.push_back(i);
  }
  return out;
}

}  // namespace ccsim
