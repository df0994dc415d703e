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
#include <unordered_map>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/prefetch.hpp"

namespace ccsim {

// The GF(2) span of what one user group holds: its cached packets plus every
// transmitted payload. Vectors live over the fragment coordinates of the
// placement. Construction peels rows that reveal a single unknown coordinate
// and runs dense elimination on whatever is left, which keeps large sparse
// systems cheap while remaining exact.
class KnowledgeBasis {
 public:
  KnowledgeBasis(int group, const PlacementState& placement, const TransmissionSchedule& schedule);

  int group() const { return group_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t row_weight(std::size_t row) const { return rows_[row].size(); }
  std::size_t rank() const { return known_count_ + echelon_.size(); }

  // Whether the unit vector of fragment coordinate `index` lies in the span.
  bool in_span(std::size_t index) const;

 private:
  using Bits = std::vector<std::uint64_t>;

  void peel();
  void eliminate();

  int group_;
  std::size_t dimension_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<char> known_;
  std::size_t known_count_ = 0;

  std::unordered_map<std::uint32_t, std::uint32_t> column_;  // residual coordinate -> bit
  std::size_t words_ = 0;
  std::vector<Bits> echelon_;  // reduced rows, each pivot appears in one row only
  std::vector<std::uint32_t> pivot_;
};

struct GroupReport {
  int group = 0;
  bool pass = false;
  std::size_t rank = 0;
  std::vector<FragmentId> missing;
};

struct VerifyReport {
  bool pass = false;
  std::vector<GroupReport> groups;

  std::vector<FragmentId> missing() const;
};

// Every fragment of every file the group requests must lie in its span.
GroupReport verify_group(int group, const RequestProfile& profile, const PlacementState& placement,
                         const KnowledgeBasis& basis);

VerifyReport verify_all(const RequestProfile& profile, const PlacementState& placement,
                        const TransmissionSchedule& schedule);

}  // namespace ccsim
