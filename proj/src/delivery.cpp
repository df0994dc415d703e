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

#include "ccsim/delivery.hpp"

#include <algorithm>
#include <bit>

#include "ccsim/errors.hpp"
#include "detail.hpp"

namespace ccsim {

using detail::least_requested;
using detail::pair;
using detail::single;

std::vector<ComboIndex> PacketClass::packets(int cache, PacketKind k) const {
  std::vector<ComboIndex> out;
  const auto& row = kind[cache - 1];
  for (ComboIndex c = 0; c < row.size(); ++c) {
    if (row[c] == k) out.push_back(c);
  }
  return out;
}

Count PacketClass::count(int cache, PacketKind k) const {
  const auto& row = kind[cache - 1];
  return std::count(row.begin(), row.end(), k);
}

PacketClass classify_packets(const PlacementState& placement, const RequestProfile& profile) {
  const auto& params = placement.params();
  if (profile.n_groups() != params.M || profile.n_files() != params.N) {
    throw ValidationError("request profile does not match the system parameters");
  }
  const ComboTable& table = placement.table();
  const std::uint64_t requested = profile.requested_mask();

  PacketClass cls;
  cls.table = placement.table_ptr();
  cls.groups = params.M;
  cls.kind.assign(params.M, std::vector<PacketKind>(table.size(), PacketKind::Inactive));
  for (int m = 1; m <= params.M; ++m) {
    const std::uint64_t local = profile.group_mask(m);
    auto& row = cls.kind[m - 1];
    for (ComboIndex c = 0; c < table.size(); ++c) {
      const std::uint64_t mask = table.mask(c);
      if ((mask & requested) == 0) {
        row[c] = PacketKind::Inactive;
      } else if ((mask & ~requested) != 0) {
        row[c] = PacketKind::TypeI;
      } else {
        switch (std::popcount(mask & local)) {
          case 0: row[c] = PacketKind::TypeIV; break;
          case 1: row[c] = PacketKind::TypeII; break;
          default: row[c] = PacketKind::TypeIII; break;
        }
      }
    }
  }
  return cls;
}

std::vector<int> local_files(const ComboTable& table, const RequestProfile& profile, int cache,
                             ComboIndex combo) {
  std::vector<int> out;
  for (int f : table.combo(combo)) {
    if (profile.requests_file(cache, f)) out.push_back(f);
  }
  return out;
}

StageOutput deliver_type1(const PacketClass& cls, const RequestProfile& profile) {
  StageOutput out;
  const ComboTable& table = *cls.table;
  for (int m = 1; m <= cls.groups; ++m) {
    for (ComboIndex c : cls.packets(m, PacketKind::TypeI)) {
      for (int f : table.combo(c)) {
        if (!profile.requesters(f).empty()) {
          out.transmissions.push_back(single(Stage::TypeI, FragmentId{f, c, m}));
        }
      }
    }
  }
  return out;
}

Type2Output deliver_type2(const PacketClass& cls, const RequestProfile& profile) {
  Type2Output out;
  const ComboTable& table = *cls.table;
  const int M = cls.groups;
  const int N = table.n_files();

  // locals[m-1][n-1]: Type-II packets of cache m whose local file is n.
  std::vector<std::vector<std::vector<ComboIndex>>> locals(
      M, std::vector<std::vector<ComboIndex>>(N));
  for (int m = 1; m <= M; ++m) {
    for (ComboIndex c : cls.packets(m, PacketKind::TypeII)) {
      int local = 0;
      for (int f : table.combo(c)) {
        if (profile.requests_file(m, f)) {
          local = f;
        } else {
          out.step1.push_back(single(Stage::TypeII_1, FragmentId{f, c, m}));
        }
      }
      locals[m - 1][local - 1].push_back(c);
    }
  }

  for (int n : profile.requested_files()) {
    const auto& groups = profile.requesters(n);
    int ref = groups.front();
    for (int m : groups) {
      if (locals[m - 1][n - 1].size() < locals[ref - 1][n - 1].size()) ref = m;
    }
    out.reference.emplace_back(n, ref);
    const auto& refs = locals[ref - 1][n - 1];
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const FragmentId x{n, refs[i], ref};
      for (int m : groups) {
        if (m == ref) continue;
        out.step2.push_back(pair(Stage::TypeII_2, x, FragmentId{n, locals[m - 1][n - 1][i], m}));
      }
    }
    for (int m : groups) {
      if (m == ref) continue;
      const auto& mine = locals[m - 1][n - 1];
      for (std::size_t i = refs.size(); i < mine.size(); ++i) {
        out.remaining.push_back(FragmentId{n, mine[i], m});
      }
    }
  }
  return out;
}

Type3Output deliver_type3(const PacketClass& cls, const RequestProfile& profile) {
  Type3Output out;
  const ComboTable& table = *cls.table;
  const int M = cls.groups;

  std::vector<std::vector<FragmentId>> shared(M);  // kept fragments wanted by several groups
  for (int m = 1; m <= M; ++m) {
    for (ComboIndex c : cls.packets(m, PacketKind::TypeIII)) {
      const int keep = least_requested(profile, local_files(table, profile, m, c));
      for (int f : table.combo(c)) {
        if (f != keep) out.step1.push_back(single(Stage::TypeIII_1, FragmentId{f, c, m}));
      }
      const FragmentId kept{keep, c, m};
      out.kept.push_back(kept);
      if (profile.requesters(keep).size() >= 2) shared[m - 1].push_back(kept);
    }
  }

  out.untransmitted.resize(M);
  int ref = 1;
  for (int m = 1; m <= M; ++m) {
    out.untransmitted[m - 1] = static_cast<Count>(shared[m - 1].size());
    if (shared[m - 1].size() < shared[ref - 1].size()) ref = m;
  }
  out.reference = ref;

  const auto& refs = shared[ref - 1];
  for (std::size_t i = 0; i < refs.size(); ++i) {
    for (int m = 1; m <= M; ++m) {
      if (m != ref) out.step2.push_back(pair(Stage::TypeIII_2, refs[i], shared[m - 1][i]));
    }
  }
  for (int m = 1; m <= M; ++m) {
    if (m == ref) continue;
    out.remaining.insert(out.remaining.end(), shared[m - 1].begin() + static_cast<std::ptrdiff_t>(refs.size()),
                         shared[m - 1].end());
  }
  return out;
}

}  // namespace ccsim
