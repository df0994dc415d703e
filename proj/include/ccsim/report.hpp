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

#include <string>
#include <string_view>

#include "ccsim/delivery.hpp"
#include "ccsim/model.hpp"
#include "ccsim/prefetch.hpp"

namespace ccsim {

// Structured simulation record: profile, schedule (fragment triples
// [file, [combo], cache]) and stats. verify re-reads this document.
std::string run_to_json(const SystemParams& params, const RequestProfile& profile,
                        const ComboTable& table, const ScheduleResult& result);

struct LoadedRun {
  SystemParams params;
  RequestProfile profile;
  TransmissionSchedule schedule;
};

// Throws ValidationError on malformed input.
LoadedRun parse_run_json(std::string_view text);

// Stage-by-stage listing in S_{n,(combo)}^{(m)} notation followed by totals.
std::string render_human(const SystemParams& params, const RequestProfile& profile,
                         const ComboTable& table, const ScheduleResult& result);

std::string format_payload(const ComboTable& table, const Transmission& t);

// "(file,(a,b),cache)"
std::string format_triple(const ComboTable& table, const FragmentId& f);

}  // namespace ccsim
