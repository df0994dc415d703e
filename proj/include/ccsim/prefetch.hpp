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

#include <memory>
#include <string>
#include <vector>

#include "ccsim/combinatorics.hpp"
#include "ccsim/model.hpp"

namespace ccsim {

// Coded placement: cache m stores, for every alpha-subset of files, one
// packet equal to the XOR of that subset's fragments labelled with m.
// Fragments are indexed densely by (file, position within A_file, cache).
class PlacementState {
 public:
  PlacementState(SystemParams params, std::shared_ptr<const ComboTable> table);

  const SystemParams& params() const { return params_; }
  const ComboTable& table() const { return *table_; }
  std::shared_ptr<const ComboTable> table_ptr() const { return table_; }

  std::size_t packets_per_cache() const { return table_->size(); }
  std::size_t dimension() const { return dimension_; }

  // The fragments XORed into packet (combo, cache), in file order.
  std::vector<FragmentId> packet(int cache, ComboIndex combo) const;

  std::size_t fragment_index(const FragmentId& f) const {
    return ((static_cast<std::size_t>(f.file) - 1) * per_file_ + table_->slot(f.combo, f.file)) *
               static_cast<std::size_t>(params_.M) +
           static_cast<std::size_t>(f.cache - 1);
  }
  FragmentId fragment_at(std::size_t index) const;

  // The packet holding fragment f.
  static PacketId fragment_home(const FragmentId& f) { return PacketId{f.combo, f.cache}; }

 private:
  SystemParams params_;
  std::shared_ptr<const ComboTable> table_;
  std::size_t per_file_ = 0;
  std::size_t dimension_ = 0;
};

PlacementState place(const SystemParams& params);

// C = N / (M * alpha).
Rational cache_size(const SystemParams& params);

// Fragment in the notation S_{n,(a,b,...)}^{(m)}.
std::string format_fragment(const ComboTable& table, const FragmentId& f);
std::string format_combo(const Combo& c);

// One line per packet: "cache m: (n1,...,na) = f1 ^ f2 ^ ...".
std::string dump_placement(const PlacementState& placement);

}  // namespace ccsim
