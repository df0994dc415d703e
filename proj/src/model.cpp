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

#include "ccsim/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <string>

#include <json.hpp>

#include "ccsim/errors.hpp"

namespace ccsim {

namespace {

constexpr std::array<std::string_view, kStageCount> kStageNames = {
    "TypeI",     "TypeII-1",  "TypeII-2",  "TypeIII-1", "TypeIII-2",
    "TypeIV-1",  "TypeIV-2",  "TypeIV-3",  "Last-1",    "Last-2",
};

int parse_int(std::string_view s, std::string_view context) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("malformed integer '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

}  // namespace

SystemParams SystemParams::make(int N, int M, int alpha) {
  if (N < 1 || N > kMaxFiles) {
    throw ValidationError("N must lie in [1, " + std::to_string(kMaxFiles) + "], got " + std::to_string(N));
  }
  if (M < 1 || M > kMaxCaches) {
    throw ValidationError("M must lie in [1, " + std::to_string(kMaxCaches) + "], got " + std::to_string(M));
  }
  if (alpha < 1 || alpha > N) {
    throw ValidationError("alpha must satisfy 1 <= alpha <= N, got alpha=" + std::to_string(alpha) +
                          " with N=" + std::to_string(N));
  }
  return SystemParams{N, M, alpha};
}

RequestProfile RequestProfile::make(int N, std::vector<std::vector<int>> requests) {
  if (N < 1 || N > kMaxFiles) throw ValidationError("N out of range in request profile");
  if (requests.empty()) throw ValidationError("request profile has no groups");
  if (static_cast<int>(requests.size()) > kMaxCaches) throw ValidationError("too many groups");

  RequestProfile p;
  p.n_files_ = N;
  p.requesters_.assign(N, {});
  p.file_mask_.assign(N, 0);
  for (std::size_t g = 0; g < requests.size(); ++g) {
    auto& files = requests[g];
    const std::string who = "group " + std::to_string(g + 1);
    if (files.empty()) throw ValidationError(who + " requests no file");
    std::sort(files.begin(), files.end());
    if (std::adjacent_find(files.begin(), files.end()) != files.end()) {
      throw ValidationError(who + " lists a file twice");
    }
    if (files.front() < 1 || files.back() > N) {
      throw ValidationError(who + " requests a file outside [1, " + std::to_string(N) + "]");
    }
    std::uint64_t mask = 0;
    for (int f : files) {
      mask |= std::uint64_t{1} << (f - 1);
      p.requesters_[f - 1].push_back(static_cast<int>(g) + 1);
      p.file_mask_[f - 1] |= std::uint64_t{1} << g;
    }
    p.group_mask_.push_back(mask);
    p.requested_mask_ |= mask;
    p.total_load_ += static_cast<int>(files.size());
  }
  for (int f = 1; f <= N; ++f) {
    if (!p.requesters_[f - 1].empty()) p.requested_.push_back(f);
  }
  p.sigma_.assign(requests.size(), 0);
  for (std::size_t g = 0; g < requests.size(); ++g) {
    for (int f : requests[g]) {
      if (p.requesters_[f - 1].size() == 1) ++p.sigma_[g];
    }
  }
  p.requests_ = std::move(requests);
  return p;
}

std::string_view stage_name(Stage s) { return kStageNames[static_cast<std::size_t>(s)]; }

Stage parse_stage(std::string_view name) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  throw ValidationError("unknown stage tag '" + std::string(name) + "'");
}

Count TransmissionSchedule::count(Stage s) const {
  return std::count_if(transmissions.begin(), transmissions.end(),
                       [s](const Transmission& t) { return t.stage == s; });
}

std::pair<SystemParams, RequestProfile> parse_profile(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("profile is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("profile must be a JSON object");
  auto field = [&](const char* key) -> int {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
      throw ValidationError(std::string("profile field '") + key + "' must be an integer");
    }
    return doc[key].get<int>();
  };
  const auto params = SystemParams::make(field("N"), field("M"), field("alpha"));
  if (!doc.contains("requests") || !doc["requests"].is_array()) {
    throw ValidationError("profile field 'requests' must be an array of arrays");
  }
  std::vector<std::vector<int>> requests;
  for (const auto& group : doc["requests"]) {
    if (!group.is_array()) throw ValidationError("each request entry must be an array");
    std::vector<int> files;
    for (const auto& f : group) {
      if (!f.is_number_integer()) throw ValidationError("requested files must be integers");
      files.push_back(f.get<int>());
    }
    requests.push_back(std::move(files));
  }
  if (static_cast<int>(requests.size()) != params.M) {
    throw ValidationError("profile lists " + std::to_string(requests.size()) +
                          " groups but M=" + std::to_string(params.M));
  }
  return {params, RequestProfile::make(params.N, std::move(requests))};
}

std::string serialize_profile(const SystemParams& params, const RequestProfile& profile) {
  nlohmann::json doc;
  doc["N"] = params.N;
  doc["M"] = params.M;
  doc["alpha"] = params.alpha;
  doc["requests"] = profile.all_requests();
  return doc.dump();
}

std::vector<std::vector<int>> parse_request_list(std::string_view text) {
  std::vector<std::vector<int>> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(';', start);
    std::string_view group = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    std::vector<int> files;
    std::size_t s = 0;
    while (true) {
      const auto comma = group.find(',', s);
      files.push_back(parse_int(group.substr(s, comma == std::string_view::npos ? group.npos : comma - s),
                                "request list"));
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    out.push_back(std::move(files));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string format_request_list(const RequestProfile& profile) {
  std::string out;
  for (int g = 1; g <= profile.n_groups(); ++g) {
    if (g > 1) out += ';';
    const auto& files = profile.requests(g);
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(files[i]);
    }
  }
  return out;
}

}  // namespace ccsim
