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
#include <memory>
#include <utility>
#include <vector>

#include "ccsim/combinatorics.hpp"
#include "ccsim/model.hpp"
#include "ccsim/prefetch.hpp"

namespace ccsim {

// How a cached packet relates to the current requests.
//   TypeI    mixes requested and unrequested files
//   TypeII   all files requested, exactly one requested by the owning group
//   TypeIII  all files requested, several requested by the owning group
//   TypeIV   all files requested, none by the owning group
//   Inactive no file requested at all
enum class PacketKind : std::uint8_t { Inactive, TypeI, TypeII, TypeIII, TypeIV };

struct PacketClass {
  std::shared_ptr<const ComboTable> table;
  int groups = 0;
  std::vector<std::vector<PacketKind>> kind;  // [cache-1][combo]

  PacketKind of(int cache, ComboIndex combo) const { return kind[cache - 1][combo]; }

  // Packets of one kind in a cache, in lexicographic combo order.
  std::vector<ComboIndex> packets(int cache, PacketKind k) const;
  Count count(int cache, PacketKind k) const;
};

PacketClass classify_packets(const PlacementState& placement, const RequestProfile& profile);

// Files of `combo` requested by `cache`'s own group, ascending.
std::vector<int> local_files(const ComboTable& table, const RequestProfile& profile, int cache,
                             ComboIndex combo);

// Transmissions of one delivery phase plus fragments handed to the last stage.
struct StageOutput {
  std::vector<Transmission> transmissions;
  std::vector<FragmentId> remaining;
};

StageOutput deliver_type1(const PacketClass& cls, const RequestProfile& profile);

struct Type2Output {
  std::vector<Transmission> step1;
  std::vector<Transmission> step2;
  std::vector<FragmentId> remaining;
  std::vector<std::pair<int, int>> reference;  // (file, reference cache)
};

Type2Output deliver_type2(const PacketClass& cls, const RequestProfile& profile);

struct Type3Output {
  std::vector<Transmission> step1;
  std::vector<Transmission> step2;
  std::vector<FragmentId> remaining;
  std::vector<FragmentId> kept;   // one untransmitted fragment per packet
  std::vector<Count> untransmitted;  // L_m: kept fragments wanted by several groups
  int reference = 0;
};

Type3Output deliver_type3(const PacketClass& cls, const RequestProfile& profile);

// Type-IV packets not yet consumed by a delivery step.
class Type4Pool {
 public:
  explicit Type4Pool(const PacketClass& cls);

  const std::vector<ComboIndex>& packets(int cache) const { return order_[cache - 1]; }
  bool available(int cache, ComboIndex combo) const { return live_[cache - 1][combo] != 0; }
  void take(int cache, ComboIndex combo);
  Count left(int cache) const { return left_[cache - 1]; }

 private:
  std::vector<std::vector<ComboIndex>> order_;
  std::vector<std::vector<char>> live_;
  std::vector<Count> left_;
};

// An (alpha+1)-set of files, no two requested by the same group, together
// with the packet each requesting group contributes.
struct RequestSet {
  std::vector<int> files;          // r_0 < r_1 < ... < r_alpha
  std::vector<int> members;        // every group requesting a file of the set
  std::vector<ComboIndex> combos;  // members[i] contributes packet combos[i]
  std::vector<int> selected_from;  // the fragment of files[i] is taken from this cache
};

std::vector<RequestSet> search_request_sets(const PacketClass& cls, const RequestProfile& profile);

// Emits the pairwise and (alpha+1)-wise payloads for each set and removes
// the packets from the pool. The gain is alpha per set.
StageOutput deliver_type4_step1(const std::vector<RequestSet>& sets, const PacketClass& cls,
                                Type4Pool& pool, Count& gain);

struct PacketGroup {
  std::vector<int> members;        // caches, ascending
  std::vector<ComboIndex> combos;  // one remaining Type-IV packet per member
  std::vector<int> kept;           // file left untransmitted in each packet
};

// Consumes qualifying packets from the pool.
std::vector<PacketGroup> search_packet_groups(const PacketClass& cls, const RequestProfile& profile,
                                              Type4Pool& pool);

StageOutput deliver_type4_step2(const std::vector<PacketGroup>& groups, const PacketClass& cls);

StageOutput deliver_type4_step3(const PacketClass& cls, const RequestProfile& profile,
                                Type4Pool& pool);

struct LastStageOutput {
  std::vector<Transmission> transmissions;
  Count Delta = 0;
  int reference = 0;
  std::vector<Count> per_cache;
};

LastStageOutput deliver_last_stage(const std::vector<FragmentId>& remaining, int n_caches);

struct BuildOptions {
  bool certify = true;  // run the decodability check and repair on failure
};

struct ScheduleResult {
  TransmissionSchedule schedule;
  DeliveryStats stats;
};

// Re-verifies the schedule and, while some group cannot decode, splits each
// coded payload carrying an undecodable fragment into singletons. Marks
// stats.fallback when anything was split and stats.certified on success.
// Throws DefectError if a missing fragment is not carried by any coded payload.
void certify_schedule(const PlacementState& placement, const RequestProfile& profile,
                      TransmissionSchedule& schedule, DeliveryStats& stats);

ScheduleResult build_schedule(const PlacementState& placement, const RequestProfile& profile,
                              const BuildOptions& options = {});

}  // namespace ccsim
