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

#include "ccsim/prefetch.hpp"

#include <sstream>

namespace ccsim {

PlacementState::PlacementState(SystemParams params, std::shared_ptr<const ComboTable> table)
    : params_(params), table_(std::move(table)) {
  per_file_ = static_cast<std::size_t>(params_.fragments_per_file_per_cache());
  dimension_ = static_cast<std::size_t>(params_.N) * per_file_ * static_cast<std::size_t>(params_.M);
}

std::vector<FragmentId> PlacementState::packet(int cache, ComboIndex combo) const {
  std::vector<FragmentId> out;
  out.reserve(params_.alpha);
  for (int f : table_->combo(combo)) out.push_back(FragmentId{f, combo, cache});
  return out;
}

FragmentId PlacementState::fragment_at(std::size_t index) const {
  const std::size_t M = static_cast<std::size_t>(params_.M);
  const int cache = static_cast<int>(index % M) + 1;
  index /= M;
  const int file = static_cast<int>(index / per_file_) + 1;
  const ComboIndex combo = table_->with_file(file)[index % per_file_];
  return FragmentId{file, combo, cache};
}

PlacementState place(const SystemParams& params) {
  auto table = std::make_shared<const ComboTable>(alpha_subsets(params.N, params.alpha));
  return PlacementState(params, std::move(table));
}

Rational cache_size(const SystemParams& params) { return params.cache_size(); }

std::string format_combo(const Combo& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + ")";
}

std::string format_fragment(const ComboTable& table, const FragmentId& f) {
  return "S_{" + std::to_string(f.file) + "," + format_combo(table.combo(f.combo)) + "}^{(" +
         std::to_string(f.cache) + ")}";
}

std::string dump_placement(const PlacementState& placement) {
  std::ostringstream out;
  const auto& table = placement.table();
  for (int m = 1; m <= placement.params().M; ++m) {
    for (ComboIndex c = 0; c < table.size(); ++c) {
      out << "cache " << m << ": " << format_combo(table.combo(c)) << " = ";
      const auto frags = placement.packet(m, c);
      for (std::size_t i = 0; i < frags.size(); ++i) {
        if (i) out << " ^ ";
        out << format_fragment(table, frags[i]);
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace ccsim
