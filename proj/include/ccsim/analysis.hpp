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

#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

// Transmitted fragments divided by the fragments per file.
Rational schedule_rate(const DeliveryStats& stats, const SystemParams& params);

// Closed-form rate for a profile given the measured Type-IV gain (delta)
// and last-stage gain (Delta).
Rational theorem_rate(const SystemParams& params, const RequestProfile& profile, Count delta,
                      Count Delta);

// Kept Type-III fragments wanted by several groups, per cache (L_m), from
// counting alone.
std::vector<Count> untransmitted_type3(const SystemParams& params, const RequestProfile& profile);

struct RatePair {
  Rational achieved;
  Rational theorem;
};

// Throws DefectError when the two disagree on a schedule that needed no repair.
RatePair rate_of_schedule(const DeliveryStats& stats, const SystemParams& params,
                          const RequestProfile& profile);

// Worst rate over all profiles whose per-group loads are `loads` and that
// request every file. Throws DomainError outside that regime.
Rational worst_rate(const SystemParams& params, const std::vector<int>& loads);

// Every group asks for L files.
Rational worst_rate_uniform(const SystemParams& params, int L);

// Reference rate of uncoded prefetching at C = N/M with L requests per group.
Rational uncoded_reference_rate(int N, int M, int L);

// Cut-set lower bound on the rate of any scheme for this profile.
Rational cutset_bound(const SystemParams& params, const RequestProfile& profile);

// Upper bound on worst_rate - cutset_bound: N - max_m D_m.
Rational gap_bound(const SystemParams& params, const RequestProfile& profile);

}  // namespace ccsim
