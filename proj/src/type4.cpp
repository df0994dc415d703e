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
#include <bit>

#include "ccsim/delivery.hpp"
#include "ccsim/errors.hpp"
#include "detail.hpp"

namespace ccsim {

using detail::least_requested;
using detail::pair;
using detail::single;

namespace {

std::vector<int> bits_to_indices(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

Combo mask_to_combo(std::uint64_t mask) { return bits_to_indices(mask); }

}  // namespace

Type4Pool::Type4Pool(const PacketClass& cls) {
  order_.resize(cls.groups);
  live_.assign(cls.groups, std::vector<char>(cls.table->size(), 0));
  left_.assign(cls.groups, 0);
  for (int m = 1; m <= cls.groups; ++m) {
    order_[m - 1] = cls.packets(m, PacketKind::TypeIV);
    for (ComboIndex c : order_[m - 1]) live_[m - 1][c] = 1;
    left_[m - 1] = static_cast<Count>(order_[m - 1].size());
  }
}

void Type4Pool::take(int cache, ComboIndex combo) {
  if (!available(cache, combo)) {
    throw DefectError("Type-IV packet of cache " + std::to_string(cache) + " consumed twice");
  }
  live_[cache - 1][combo] = 0;
  --left_[cache - 1];
}

std::vector<RequestSet> search_request_sets(const PacketClass& cls, const RequestProfile& profile) {
  std::vector<RequestSet> accepted;
  const ComboTable& table = *cls.table;
  const int alpha = table.alpha();
  const int M = cls.groups;
  if (alpha < 2) return accepted;

  std::vector<std::uint64_t> accepted_masks;
  Type4Pool pool(cls);

  auto compatible = [&](std::uint64_t v1) {
    for (std::uint64_t v2 : accepted_masks) {
      const int common = std::popcount(v1 & v2);
      if (common < alpha) continue;
      if (common > alpha) return false;
      const std::uint64_t diff = v1 ^ v2;
      const int a = std::countr_zero(diff) + 1;
      const int b = 64 - std::countl_zero(diff);
      if ((profile.file_mask(a) & profile.file_mask(b)) != 0) return false;
    }
    return true;
  };

  auto accept = [&](std::uint64_t v) {
    RequestSet set;
    set.files = bits_to_indices(v);
    std::uint64_t groups = 0;
    for (int f : set.files) groups |= profile.file_mask(f);
    set.members = bits_to_indices(groups);
    for (int m : set.members) {
      const ComboIndex c = table.rank(mask_to_combo(v & ~profile.group_mask(m)));
      if (cls.of(m, c) != PacketKind::TypeIV || !pool.available(m, c)) {
        throw DefectError("accepted request sets share a Type-IV packet");
      }
      set.combos.push_back(c);
    }
    for (std::size_t i = 0; i < set.members.size(); ++i) pool.take(set.members[i], set.combos[i]);

    // c_i: smallest cache asking for files[i]; file i is served from c_{i-1}.
    const std::size_t width = set.files.size();
    std::vector<int> first(width);
    for (std::size_t i = 0; i < width; ++i) first[i] = profile.requesters(set.files[i]).front();
    set.selected_from.resize(width);
    for (std::size_t i = 0; i < width; ++i) set.selected_from[i] = first[(i + width - 1) % width];

    accepted_masks.push_back(v);
    accepted.push_back(std::move(set));
  };

  std::vector<int> chosen_groups(alpha + 1);
  // Depth-first walk over one file per chosen group, in lexicographic order.
  auto walk = [&](auto&& self, int depth, std::uint64_t used_groups, std::uint64_t files) -> void {
    if (depth == alpha + 1) {
      if (compatible(files)) accept(files);
      return;
    }
    for (int n : profile.requests(chosen_groups[depth])) {
      const std::uint64_t owners = profile.file_mask(n);
      if (owners & used_groups) continue;
      self(self, depth + 1, used_groups | owners, files | (std::uint64_t{1} << (n - 1)));
    }
  };

  for (int m0 = 1; m0 <= M - alpha; ++m0) {
    std::vector<int> rest;
    for (int m = m0 + 1; m <= M; ++m) rest.push_back(m);
    for_each_subset(rest, alpha, [&](const std::vector<int>& z) {
      chosen_groups[0] = m0;
      std::copy(z.begin(), z.end(), chosen_groups.begin() + 1);
      walk(walk, 0, 0, 0);
      return true;
    });
  }
  return accepted;
}

StageOutput deliver_type4_step1(const std::vector<RequestSet>& sets, const PacketClass& cls,
                                Type4Pool& pool, Count& gain) {
  StageOutput out;
  const ComboTable& table = *cls.table;
  const int alpha = table.alpha();
  for (const auto& set : sets) {
    for (std::size_t j = 0; j < set.members.size(); ++j) pool.take(set.members[j], set.combos[j]);

    auto combo_of = [&](int cache) {
      const auto it = std::find(set.members.begin(), set.members.end(), cache);
      return set.combos[static_cast<std::size_t>(it - set.members.begin())];
    };
    std::vector<FragmentId> selected;
    for (std::size_t i = 0; i < set.files.size(); ++i) {
      selected.push_back(FragmentId{set.files[i], combo_of(set.selected_from[i]), set.selected_from[i]});
    }
    auto selected_of = [&](int file) -> const FragmentId& {
      const auto it = std::find(set.files.begin(), set.files.end(), file);
      return selected[static_cast<std::size_t>(it - set.files.begin())];
    };

    for (std::size_t j = 0; j < set.members.size(); ++j) {
      const int m = set.members[j];
      for (int f : table.combo(set.combos[j])) {
        const FragmentId frag{f, set.combos[j], m};
        const FragmentId& chosen = selected_of(f);
        if (chosen == frag) continue;
        out.transmissions.push_back(pair(Stage::TypeIV_1, frag, chosen));
      }
    }
    out.transmissions.push_back(Transmission{Stage::TypeIV_1, selected});
    gain += alpha;
  }
  return out;
}

std::vector<PacketGroup> search_packet_groups(const PacketClass& cls, const RequestProfile& profile,
                                              Type4Pool& pool) {
  std::vector<PacketGroup> found;
  const ComboTable& table = *cls.table;
  const int M = cls.groups;
  std::vector<int> everyone(M);
  for (int m = 1; m <= M; ++m) everyone[m - 1] = m;

  for (int width = 2; width <= M; ++width) {
    for_each_subset(everyone, width, [&](const std::vector<int>& members) {
      for (int m : members) {
        if (pool.left(m) == 0) return true;
      }
      std::uint64_t inside = 0;
      for (int m : members) inside |= std::uint64_t{1} << (m - 1);
      std::uint64_t outside_files = 0;
      for (int k = 1; k <= M; ++k) {
        if (!((inside >> (k - 1)) & 1U)) outside_files |= profile.group_mask(k);
      }

      // The qualifying test depends only on the packet, so a single forward
      // scan per member finds the packets in order.
      std::vector<std::size_t> cursor(members.size(), 0);
      while (true) {
        PacketGroup group;
        group.members = members;
        for (std::size_t i = 0; i < members.size(); ++i) {
          const int m = members[i];
          const auto& list = pool.packets(m);
          std::size_t& at = cursor[i];
          while (at < list.size() &&
                 (!pool.available(m, list[at]) || (table.mask(list[at]) & ~outside_files) == 0)) {
            ++at;
          }
          if (at == list.size()) return true;
          group.combos.push_back(list[at]);
          group.kept.push_back(std::countr_zero(table.mask(list[at]) & ~outside_files) + 1);
        }
        for (std::size_t i = 0; i < members.size(); ++i) pool.take(members[i], group.combos[i]);
        found.push_back(std::move(group));
      }
    });
  }
  return found;
}

StageOutput deliver_type4_step2(const std::vector<PacketGroup>& groups, const PacketClass& cls) {
  StageOutput out;
  const ComboTable& table = *cls.table;
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      for (int f : table.combo(g.combos[i])) {
        if (f != g.kept[i]) {
          out.transmissions.push_back(single(Stage::TypeIV_2, FragmentId{f, g.combos[i], g.members[i]}));
        }
      }
    }
    for (std::size_t i = 0; i + 1 < g.members.size(); ++i) {
      out.transmissions.push_back(pair(Stage::TypeIV_2, FragmentId{g.kept[i], g.combos[i], g.members[i]},
                                       FragmentId{g.kept[i + 1], g.combos[i + 1], g.members[i + 1]}));
    }
  }
  return out;
}

StageOutput deliver_type4_step3(const PacketClass& cls, const RequestProfile& profile,
                                Type4Pool& pool) {
  StageOutput out;
  const ComboTable& table = *cls.table;
  for (int m = 1; m <= cls.groups; ++m) {
    for (ComboIndex c : pool.packets(m)) {
      if (!pool.available(m, c)) continue;
      const int keep = least_requested(profile, table.combo(c));
      for (int f : table.combo(c)) {
        if (f != keep) out.transmissions.push_back(single(Stage::TypeIV_3, FragmentId{f, c, m}));
      }
      out.remaining.push_back(FragmentId{keep, c, m});
      pool.take(m, c);
    }
  }
  return out;
}

}  // namespace ccsim
