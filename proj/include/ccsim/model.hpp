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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccsim/combinatorics.hpp"
#include "ccsim/rational.hpp"

namespace ccsim {

inline constexpr int kMaxFiles = 62;
inline constexpr int kMaxCaches = 63;

struct SystemParams {
  int N = 0;      // files
  int M = 0;      // caches, one user group each
  int alpha = 0;  // coding parameter

  // Per-cache memory in file units: N / (M * alpha).
  Rational cache_size() const { return Rational(N, static_cast<Count>(M) * alpha); }

  // Fragments per file and cache: C(N-1, alpha-1).
  Count fragments_per_file_per_cache() const { return binom(N - 1, alpha - 1); }

  // M * C(N-1, alpha-1): the number of equal pieces each file is cut into.
  Count rate_denominator() const { return static_cast<Count>(M) * fragments_per_file_per_cache(); }

  static SystemParams make(int N, int M, int alpha);  // throws ValidationError
};

// Requests of each user group, with the derived sets the scheduler needs.
class RequestProfile {
 public:
  RequestProfile() = default;

  // requests[m-1] lists the distinct files asked for by group m.
  static RequestProfile make(int N, std::vector<std::vector<int>> requests);

  int n_files() const { return n_files_; }
  int n_groups() const { return static_cast<int>(requests_.size()); }

  const std::vector<int>& requests(int group) const { return requests_[group - 1]; }
  const std::vector<std::vector<int>>& all_requests() const { return requests_; }
  int load(int group) const { return static_cast<int>(requests_[group - 1].size()); }
  int total_load() const { return total_load_; }

  // N_R: files requested by at least one group, ascending.
  const std::vector<int>& requested_files() const { return requested_; }
  int n_requested() const { return static_cast<int>(requested_.size()); }

  // M(n): groups requesting file n, ascending; empty when unrequested.
  const std::vector<int>& requesters(int file) const { return requesters_[file - 1]; }

  // sigma_m: files of group m requested by no other group.
  int sigma(int group) const { return sigma_[group - 1]; }

  bool requests_file(int group, int file) const {
    return (group_mask_[group - 1] >> (file - 1)) & 1U;
  }
  std::uint64_t group_mask(int group) const { return group_mask_[group - 1]; }  // files of D_m
  std::uint64_t file_mask(int file) const { return file_mask_[file - 1]; }      // groups of M(n)
  std::uint64_t requested_mask() const { return requested_mask_; }

  bool operator==(const RequestProfile& other) const {
    return n_files_ == other.n_files_ && requests_ == other.requests_;
  }

 private:
  int n_files_ = 0;
  int total_load_ = 0;
  std::vector<std::vector<int>> requests_;
  std::vector<int> requested_;
  std::vector<std::vector<int>> requesters_;
  std::vector<int> sigma_;
  std::vector<std::uint64_t> group_mask_;
  std::vector<std::uint64_t> file_mask_;
  std::uint64_t requested_mask_ = 0;
};

// Fragment S_{file, combo}^{(cache)}: the piece of `file` stored in `cache`
// inside the packet labelled by `combo`.
struct FragmentId {
  int file = 0;
  ComboIndex combo = 0;
  int cache = 0;

  friend bool operator==(const FragmentId&, const FragmentId&) = default;
  friend auto operator<=>(const FragmentId&, const FragmentId&) = default;
};

struct PacketId {
  ComboIndex combo = 0;
  int cache = 0;

  friend bool operator==(const PacketId&, const PacketId&) = default;
};

enum class Stage : std::uint8_t {
  TypeI,
  TypeII_1,
  TypeII_2,
  TypeIII_1,
  TypeIII_2,
  TypeIV_1,
  TypeIV_2,
  TypeIV_3,
  Last_1,
  Last_2,
};
inline constexpr int kStageCount = 10;

std::string_view stage_name(Stage s);
Stage parse_stage(std::string_view name);  // throws ValidationError

struct Transmission {
  Stage stage = Stage::TypeI;
  std::vector<FragmentId> payload;  // XOR of these fragments
};

struct TransmissionSchedule {
  std::vector<Transmission> transmissions;

  std::size_t size() const { return transmissions.size(); }
  Count count(Stage s) const;
};

struct DeliveryStats {
  Count t_I = 0;
  Count t_II1 = 0, t_II2 = 0, t_II_rm = 0;
  Count t_III1 = 0, t_III2 = 0, t_III_rm = 0;
  Count t_IV1 = 0, t_IV2 = 0, t_IV3 = 0, t_IV_rm = 0;
  Count t_rm = 0;

  Count delta = 0;           // Type-IV saving: delta1 + delta2
  Count delta1 = 0;          // alpha per accepted request set
  Count delta2 = 0;          // one per packet group
  Count Delta = 0;           // smallest per-cache remaining count
  Count type4_delivered = 0; // Type-IV packets cleared by Steps 1 and 2

  std::vector<Count> untransmitted;  // L_m, per cache
  std::vector<Count> remaining;      // per-cache fragments entering the last stage

  // Trace of the reference choices.
  std::vector<std::pair<int, int>> type2_reference;  // (file, cache)
  int type3_reference = 0;
  std::vector<FragmentId> type3_kept;
  int last_reference = 0;

  bool certified = false;
  bool fallback = false;
  Count fallback_payloads = 0;

  Count t_IV() const { return t_IV1 + t_IV2 + t_IV3; }
  Count t_II() const { return t_II1 + t_II2; }
  Count t_III() const { return t_III1 + t_III2; }
  Count total() const { return t_I + t_II() + t_III() + t_IV() + t_rm; }
};

// JSON profile documents: {"N":..,"M":..,"alpha":..,"requests":[[..],..]}.
std::pair<SystemParams, RequestProfile> parse_profile(std::string_view text);
std::string serialize_profile(const SystemParams& params, const RequestProfile& profile);

// Inline request syntax "1,2;2;1,2" (groups separated by ';').
std::vector<std::vector<int>> parse_request_list(std::string_view text);
std::string format_request_list(const RequestProfile& profile);

}  // namespace ccsim
