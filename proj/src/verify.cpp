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

#include "ccsim/verify.hpp"

#include <algorithm>
#include <bit>

namespace ccsim {

namespace {

// XOR semantics: a coordinate listed twice cancels out.
std::vector<std::uint32_t> canonical_row(std::vector<std::uint32_t> row) {
  std::sort(row.begin(), row.end());
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < row.size();) {
    std::size_t j = i;
    while (j < row.size() && row[j] == row[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(row[i]);
    i = j;
  }
  return out;
}

}  // namespace

KnowledgeBasis::KnowledgeBasis(int group, const PlacementState& placement,
                               const TransmissionSchedule& schedule)
    : group_(group), dimension_(placement.dimension()) {
  const ComboTable& table = placement.table();
  rows_.reserve(table.size() + schedule.size());
  for (ComboIndex c = 0; c < table.size(); ++c) {
    std::vector<std::uint32_t> row;
    for (const auto& f : placement.packet(group, c)) {
      row.push_back(static_cast<std::uint32_t>(placement.fragment_index(f)));
    }
    rows_.push_back(canonical_row(std::move(row)));
  }
  for (const auto& t : schedule.transmissions) {
    std::vector<std::uint32_t> row;
    row.reserve(t.payload.size());
    for (const auto& f : t.payload) row.push_back(static_cast<std::uint32_t>(placement.fragment_index(f)));
    rows_.push_back(canonical_row(std::move(row)));
  }
  peel();
  eliminate();
}

void KnowledgeBasis::peel() {
  known_.assign(dimension_, 0);
  const std::size_t n_rows = rows_.size();

  std::vector<std::uint32_t> offset(dimension_ + 1, 0);
  for (const auto& row : rows_) {
    for (auto c : row) ++offset[c + 1];
  }
  for (std::size_t i = 0; i < dimension_; ++i) offset[i + 1] += offset[i];
  std::vector<std::uint32_t> incident(offset.back());
  {
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::uint32_t r = 0; r < n_rows; ++r) {
      for (auto c : rows_[r]) incident[fill[c]++] = r;
    }
  }

  std::vector<std::uint32_t> unknown(n_rows);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t r = 0; r < n_rows; ++r) {
    unknown[r] = static_cast<std::uint32_t>(rows_[r].size());
    if (unknown[r] == 1) queue.push_back(r);
  }
  while (!queue.empty()) {
    const std::uint32_t r = queue.back();
    queue.pop_back();
    if (unknown[r] != 1) continue;
    std::uint32_t target = 0;
    for (auto c : rows_[r]) {
      if (!known_[c]) {
        target = c;
        break;
      }
    }
    known_[target] = 1;
    ++known_count_;
    for (std::uint32_t k = offset[target]; k < offset[target + 1]; ++k) {
      const std::uint32_t r2 = incident[k];
      if (--unknown[r2] == 1) queue.push_back(r2);
    }
  }
}

void KnowledgeBasis::eliminate() {
  std::vector<const std::vector<std::uint32_t>*> residual;
  for (const auto& row : rows_) {
    std::size_t open = 0;
    for (auto c : row) open += known_[c] ? 0 : 1;
    if (open < 2) continue;
    residual.push_back(&row);
    for (auto c : row) {
      if (!known_[c]) column_.emplace(c, static_cast<std::uint32_t>(column_.size()));
    }
  }
  words_ = (column_.size() + 63) / 64;

  for (const auto* row : residual) {
    Bits v(words_, 0);
    for (auto c : *row) {
      if (known_[c]) continue;
      const auto bit = column_.at(c);
      v[bit / 64] ^= std::uint64_t{1} << (bit % 64);
    }
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
      const auto p = pivot_[i];
      if ((v[p / 64] >> (p % 64)) & 1U) {
        for (std::size_t w = 0; w < words_; ++w) v[w] ^= echelon_[i][w];
      }
    }
    std::size_t w = 0;
    while (w < words_ && v[w] == 0) ++w;
    if (w == words_) continue;
    const auto p = static_cast<std::uint32_t>(w * 64 + std::countr_zero(v[w]));
    for (auto& row : echelon_) {
      if ((row[p / 64] >> (p % 64)) & 1U) {
        for (std::size_t k = 0; k < words_; ++k) row[k] ^= v[k];
      }
    }
    echelon_.push_back(std::move(v));
    pivot_.push_back(p);
  }
}

bool KnowledgeBasis::in_span(std::size_t index) const {
  if (index >= dimension_) return false;
  if (known_[index]) return true;
  const auto it = column_.find(static_cast<std::uint32_t>(index));
  if (it == column_.end()) return false;
  Bits v(words_, 0);
  v[it->second / 64] = std::uint64_t{1} << (it->second % 64);
  for (std::size_t i = 0; i < echelon_.size(); ++i) {
    const auto p = pivot_[i];
    if ((v[p / 64] >> (p % 64)) & 1U) {
      for (std::size_t w = 0; w < words_; ++w) v[w] ^= echelon_[i][w];
    }
  }
  return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

std::vector<FragmentId> VerifyReport::missing() const {
  std::vector<FragmentId> out;
  for (const auto& g : groups) out.insert(out.end(), g.missing.begin(), g.missing.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroupReport verify_group(int group, const RequestProfile& profile, const PlacementState& placement,
                         const KnowledgeBasis& basis) {
  GroupReport report;
  report.group = group;
  report.rank = basis.rank();
  const ComboTable& table = placement.table();
  const int M = placement.params().M;
  for (int n : profile.requests(group)) {
    for (ComboIndex c : table.with_file(n)) {
      for (int k = 1; k <= M; ++k) {
        const FragmentId f{n, c, k};
        if (!basis.in_span(placement.fragment_index(f))) report.missing.push_back(f);
      }
    }
  }
  report.pass = report.missing.empty();
  return report;
}

VerifyReport verify_all(const RequestProfile& profile, const PlacementState& placement,
                        const TransmissionSchedule& schedule) {
  VerifyReport report;
  report.pass = true;
  for (int m = 1; m <= profile.n_groups(); ++m) {
    const KnowledgeBasis basis(m, placement, schedule);
    report.groups.push_back(verify_group(m, profile, placement, basis));
    report.pass = report.pass && report.groups.back().pass;
  }
  return report;
}

}  // namespace ccsim
