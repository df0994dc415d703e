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

#include "ccsim/report.hpp"

#include <sstream>

#include <json.hpp>

#include "ccsim/analysis.hpp"
#include "ccsim/errors.hpp"

namespace ccsim {

using nlohmann::json;

namespace {

json stats_json(const DeliveryStats& s) {
  json j;
  j["T_I"] = s.t_I;
  j["T_II1"] = s.t_II1;
  j["T_II2"] = s.t_II2;
  j["T_II_RM"] = s.t_II_rm;
  j["T_III1"] = s.t_III1;
  j["T_III2"] = s.t_III2;
  j["T_III_RM"] = s.t_III_rm;
  j["T_IV1"] = s.t_IV1;
  j["T_IV2"] = s.t_IV2;
  j["T_IV3"] = s.t_IV3;
  j["T_IV"] = s.t_IV();
  j["T_IV_RM"] = s.t_IV_rm;
  j["T_RM"] = s.t_rm;
  j["total"] = s.total();
  j["delta"] = s.delta;
  j["delta_step1"] = s.delta1;
  j["delta_step2"] = s.delta2;
  j["Delta"] = s.Delta;
  j["type4_delivered"] = s.type4_delivered;
  j["untransmitted"] = s.untransmitted;
  j["remaining"] = s.remaining;
  j["type3_reference"] = s.type3_reference;
  j["last_reference"] = s.last_reference;
  json refs = json::array();
  for (const auto& [file, cache] : s.type2_reference) refs.push_back({file, cache});
  j["type2_reference"] = refs;
  j["certified"] = s.certified;
  j["fallback"] = s.fallback;
  j["fallback_payloads"] = s.fallback_payloads;
  return j;
}

}  // namespace

std::string format_triple(const ComboTable& table, const FragmentId& f) {
  return "(" + std::to_string(f.file) + "," + format_combo(table.combo(f.combo)) + "," +
         std::to_string(f.cache) + ")";
}

std::string format_payload(const ComboTable& table, const Transmission& t) {
  std::string out;
  for (std::size_t i = 0; i < t.payload.size(); ++i) {
    if (i) out += " ^ ";
    out += format_fragment(table, t.payload[i]);
  }
  return out;
}

std::string run_to_json(const SystemParams& params, const RequestProfile& profile,
                        const ComboTable& table, const ScheduleResult& result) {
  json doc;
  doc["profile"] = json::parse(serialize_profile(params, profile));
  json schedule = json::array();
  for (const auto& t : result.schedule.transmissions) {
    json payload = json::array();
    for (const auto& f : t.payload) payload.push_back({f.file, table.combo(f.combo), f.cache});
    schedule.push_back({{"stage", std::string(stage_name(t.stage))}, {"payload", payload}});
  }
  doc["schedule"] = schedule;
  doc["stats"] = stats_json(result.stats);
  const auto rates = rate_of_schedule(result.stats, params, profile);
  doc["rate"] = to_pq(rates.achieved);
  doc["rate_decimal"] = to_decimal(rates.achieved);
  doc["theorem_rate"] = to_pq(rates.theorem);
  doc["cache_size"] = to_pq(params.cache_size());
  return doc.dump(1);
}

LoadedRun parse_run_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("run record is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("profile") || !doc.contains("schedule")) {
    throw ValidationError("run record needs 'profile' and 'schedule'");
  }
  auto [params, profile] = parse_profile(doc["profile"].dump());
  const ComboTable table(params.N, params.alpha);

  LoadedRun run{params, profile, {}};
  if (!doc["schedule"].is_array()) throw ValidationError("'schedule' must be an array");
  for (const auto& entry : doc["schedule"]) {
    if (!entry.is_object() || !entry.contains("stage") || !entry.contains("payload") ||
        !entry["stage"].is_string() || !entry["payload"].is_array()) {
      throw ValidationError("schedule entries need a 'stage' string and a 'payload' array");
    }
    Transmission t;
    t.stage = parse_stage(entry["stage"].get<std::string>());
    for (const auto& triple : entry["payload"]) {
      try {
        if (!triple.is_array() || triple.size() != 3) throw ValidationError("fragment must be a triple");
        const int file = triple[0].get<int>();
        const Combo combo = triple[1].get<Combo>();
        const int cache = triple[2].get<int>();
        if (cache < 1 || cache > params.M) throw ValidationError("fragment cache out of range");
        const ComboIndex c = table.rank(combo);
        if (!table.contains(c, file)) throw ValidationError("fragment file not in its combo");
        t.payload.push_back(FragmentId{file, c, cache});
      } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed fragment triple: ") + e.what());
      } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("malformed fragment combo: ") + e.what());
      }
    }
    if (t.payload.empty()) throw ValidationError("empty payload in schedule");
    run.schedule.transmissions.push_back(std::move(t));
  }
  return run;
}

std::string render_human(const SystemParams& params, const RequestProfile& profile,
                         const ComboTable& table, const ScheduleResult& result) {
  std::ostringstream out;
  out << "N=" << params.N << " M=" << params.M << " alpha=" << params.alpha
      << " C=" << to_pq(params.cache_size()) << '\n';
  for (int m = 1; m <= params.M; ++m) {
    out << "D_" << m << " = {";
    const auto& files = profile.requests(m);
    for (std::size_t i = 0; i < files.size(); ++i) out << (i ? "," : "") << files[i];
    out << "}\n";
  }
  for (const auto& t : result.schedule.transmissions) {
    out << stage_name(t.stage) << "\t" << format_payload(table, t) << '\n';
  }
  const auto& s = result.stats;
  const auto rates = rate_of_schedule(s, params, profile);
  out << "T_I=" << s.t_I << " T_II=" << s.t_II1 << "+" << s.t_II2 << " (rm " << s.t_II_rm << ")"
      << " T_III=" << s.t_III1 << "+" << s.t_III2 << " (rm " << s.t_III_rm << ")"
      << " T_IV=" << s.t_IV1 << "+" << s.t_IV2 << "+" << s.t_IV3 << " (rm " << s.t_IV_rm << ")"
      << " T_RM=" << s.t_rm << '\n';
  out << "delta=" << s.delta << " Delta=" << s.Delta << " transmissions=" << s.total() << '\n';
  out << "R=" << to_pq(rates.achieved) << " (" << to_decimal(rates.achieved) << ")"
      << " closed-form=" << to_pq(rates.theorem) << (s.fallback ? " [fallback]" : "") << '\n';
  return out.str();
}

}  // namespace ccsim
