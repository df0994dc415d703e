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
#include <set>

#include "ccsim/delivery.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/verify.hpp"

namespace ccsim {

namespace {

void append(std::vector<Transmission>& to, std::vector<Transmission>&& from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

void recount(const TransmissionSchedule& schedule, DeliveryStats& stats) {
  stats.t_I = schedule.count(Stage::TypeI);
  stats.t_II1 = schedule.count(Stage::TypeII_1);
  stats.t_II2 = schedule.count(Stage::TypeII_2);
  stats.t_III1 = schedule.count(Stage::TypeIII_1);
  stats.t_III2 = schedule.count(Stage::TypeIII_2);
  stats.t_IV1 = schedule.count(Stage::TypeIV_1);
  stats.t_IV2 = schedule.count(Stage::TypeIV_2);
  stats.t_IV3 = schedule.count(Stage::TypeIV_3);
  stats.t_rm = schedule.count(Stage::Last_1) + schedule.count(Stage::Last_2);
}

}  // namespace

void certify_schedule(const PlacementState& placement, const RequestProfile& profile,
                      TransmissionSchedule& schedule, DeliveryStats& stats) {
  while (true) {
    const VerifyReport report = verify_all(profile, placement, schedule);
    if (report.pass) break;
    const auto missing = report.missing();
    const std::set<FragmentId> bad(missing.begin(), missing.end());

    std::vector<Transmission> rebuilt;
    Count split = 0;
    for (auto& t : schedule.transmissions) {
      const bool hit = t.payload.size() > 1 &&
                       std::any_of(t.payload.begin(), t.payload.end(),
                                   [&](const FragmentId& f) { return bad.count(f) != 0; });
      if (!hit) {
        rebuilt.push_back(std::move(t));
        continue;
      }
      ++split;
      for (const auto& f : t.payload) rebuilt.push_back(Transmission{t.stage, {f}});
    }
    if (split == 0) {
      throw DefectError("schedule leaves requested fragments undecodable and no coded payload covers them");
    }
    schedule.transmissions = std::move(rebuilt);
    stats.fallback = true;
    stats.fallback_payloads += split;
  }
  stats.certified = true;
}

ScheduleResult build_schedule(const PlacementState& placement, const RequestProfile& profile,
                              const BuildOptions& options) {
  const PacketClass cls = classify_packets(placement, profile);
  const int M = placement.params().M;

  auto type1 = deliver_type1(cls, profile);
  auto type2 = deliver_type2(cls, profile);
  auto type3 = deliver_type3(cls, profile);

  Type4Pool pool(cls);
  Count gain1 = 0;
  std::vector<RequestSet> sets;
  if (placement.params().alpha >= 2) sets = search_request_sets(cls, profile);
  auto step1 = deliver_type4_step1(sets, cls, pool, gain1);
  const auto groups = search_packet_groups(cls, profile, pool);
  auto step2 = deliver_type4_step2(groups, cls);
  auto step3 = deliver_type4_step3(cls, profile, pool);

  std::vector<FragmentId> remaining = type2.remaining;
  remaining.insert(remaining.end(), type3.remaining.begin(), type3.remaining.end());
  remaining.insert(remaining.end(), step3.remaining.begin(), step3.remaining.end());
  auto last = deliver_last_stage(remaining, M);

  ScheduleResult result;
  DeliveryStats& stats = result.stats;
  stats.t_II_rm = static_cast<Count>(type2.remaining.size());
  stats.t_III_rm = static_cast<Count>(type3.remaining.size());
  stats.t_IV_rm = static_cast<Count>(step3.remaining.size());
  stats.delta1 = gain1;
  stats.delta2 = static_cast<Count>(groups.size());
  stats.delta = stats.delta1 + stats.delta2;
  stats.Delta = last.Delta;
  for (const auto& s : sets) stats.type4_delivered += static_cast<Count>(s.members.size());
  for (const auto& g : groups) stats.type4_delivered += static_cast<Count>(g.members.size());
  stats.untransmitted = type3.untransmitted;
  stats.remaining = last.per_cache;
  stats.type2_reference = type2.reference;
  stats.type3_reference = type3.reference;
  stats.type3_kept = type3.kept;
  stats.last_reference = last.reference;

  auto& out = result.schedule.transmissions;
  append(out, std::move(type1.transmissions));
  append(out, std::move(type2.step1));
  append(out, std::move(type2.step2));
  append(out, std::move(type3.step1));
  append(out, std::move(type3.step2));
  append(out, std::move(step1.transmissions));
  append(out, std::move(step2.transmissions));
  append(out, std::move(step3.transmissions));
  append(out, std::move(last.transmissions));

  if (options.certify) certify_schedule(placement, profile, result.schedule, stats);
  recount(result.schedule, stats);
  return result;
}

}  // namespace ccsim
