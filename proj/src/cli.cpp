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

#include "ccsim/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccsim/analysis.hpp"
#include "ccsim/delivery.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/prefetch.hpp"
#include "ccsim/report.hpp"
#include "ccsim/verify.hpp"

namespace ccsim {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flag-level problems are reported as usage errors, document problems as
// validation errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Options {
  std::string input;
  std::string output;
  std::string format = "human";
  std::uint64_t seed = 1;
  int samples = 100;
  int N = 0, M = 0, alpha = 0;
  std::string requests;
  std::string counts;
  int uniform_L = 0;
  std::string alphas;
  std::string loads;
  std::string kind = "load";
  bool uniform = false;
  int threads = 0;
};

std::vector<int> parse_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + " list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

SystemParams inline_params(const Options& o) {
  if (o.N == 0 || o.M == 0 || o.alpha == 0) throw UsageError("--N, --M and --alpha are required");
  try {
    return SystemParams::make(o.N, o.M, o.alpha);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

std::pair<SystemParams, RequestProfile> load_profile(const Options& o) {
  if (!o.input.empty()) return parse_profile(read_file(o.input));
  const auto params = inline_params(o);
  if (o.requests.empty()) throw UsageError("give --input or --requests");
  std::vector<std::vector<int>> requests;
  try {
    requests = parse_request_list(o.requests);
    if (static_cast<int>(requests.size()) != params.M) {
      throw ValidationError("--requests lists " + std::to_string(requests.size()) + " groups but M=" +
                            std::to_string(params.M));
    }
    return {params, RequestProfile::make(params.N, std::move(requests))};
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw IoError("cannot write '" + o.output + "'");
  file << text;
}

bool structured(const Options& o) {
  if (o.format == "structured") return true;
  if (o.format == "human") return false;
  throw UsageError("--format must be human or structured");
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto [params, profile] = load_profile(o);
  const auto placement = place(params);
  const auto result = build_schedule(placement, profile);
  emit(o, structured(o) ? run_to_json(params, profile, placement.table(), result) + "\n"
                        : render_human(params, profile, placement.table(), result),
       out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.input.empty()) throw UsageError("verify needs --input with a simulate record");
  const auto run = parse_run_json(read_file(o.input));
  const auto placement = place(run.params);
  const auto report = verify_all(run.profile, placement, run.schedule);
  const auto& table = placement.table();

  std::ostringstream text;
  if (structured(o)) {
    nlohmann::json doc;
    doc["pass"] = report.pass;
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : report.groups) {
      nlohmann::json missing = nlohmann::json::array();
      for (const auto& f : g.missing) missing.push_back({f.file, table.combo(f.combo), f.cache});
      groups.push_back({{"group", g.group}, {"pass", g.pass}, {"rank", g.rank}, {"missing", missing}});
    }
    doc["groups"] = groups;
    text << doc.dump(1) << '\n';
  } else {
    for (const auto& g : report.groups) {
      text << "group " << g.group << ": " << (g.pass ? "PASS" : "FAIL") << " rank=" << g.rank;
      for (const auto& f : g.missing) text << ' ' << format_triple(table, f);
      text << '\n';
    }
    text << (report.pass ? "PASS" : "FAIL") << '\n';
  }
  emit(o, text.str(), out);
  return report.pass ? kExitOk : kExitUndecodable;
}

int cmd_worst_rate(const Options& o, std::ostream& out) {
  const auto params = inline_params(o);
  Rational r;
  try {
    if (o.uniform_L > 0) {
      r = worst_rate_uniform(params, o.uniform_L);
    } else if (!o.counts.empty()) {
      r = worst_rate(params, parse_list(o.counts, "count"));
    } else {
      throw UsageError("worst-rate needs --counts or --uniform-L");
    }
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  std::ostringstream text;
  if (structured(o)) {
    text << nlohmann::json{{"worst_rate", to_pq(r)}, {"decimal", to_decimal(r)}}.dump() << '\n';
  } else {
    text << "R* = " << to_pq(r) << " (" << to_decimal(r) << ")\n";
  }
  emit(o, text.str(), out);
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const auto [params, profile] = load_profile(o);
  const Rational csb = cutset_bound(params, profile);
  const Rational gap = gap_bound(params, profile);
  std::optional<Rational> worst;
  std::vector<int> loads;
  for (int m = 1; m <= params.M; ++m) loads.push_back(profile.load(m));
  try {
    worst = worst_rate(params, loads);
  } catch (const DomainError&) {
  }
  std::ostringstream text;
  if (structured(o)) {
    nlohmann::json doc{{"cutset", to_pq(csb)}, {"gap_bound", to_pq(gap)}};
    doc["worst_rate"] = worst ? nlohmann::json(to_pq(*worst)) : nlohmann::json(nullptr);
    text << doc.dump() << '\n';
  } else {
    text << "cutset = " << to_pq(csb) << " (" << to_decimal(csb) << ")\n";
    text << "gap_bound = " << to_pq(gap) << '\n';
    text << "worst_rate = " << (worst ? to_pq(*worst) + " (" + to_decimal(*worst) + ")" : "-") << '\n';
  }
  emit(o, text.str(), out);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.N == 0 || o.M == 0) throw UsageError("sweep needs --N and --M");
  SweepConfig cfg;
  cfg.N = o.N;
  cfg.M = o.M;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.uniform = o.uniform;
  cfg.threads = o.threads;
  if (!o.alphas.empty()) cfg.alphas = parse_list(o.alphas, "alpha");
  if (!o.loads.empty()) cfg.loads = parse_list(o.loads, "load");
  std::vector<SweepPoint> points;
  try {
    if (o.kind == "load") {
      if (cfg.alphas.empty()) throw UsageError("load sweep needs --alphas");
      points = sweep_rate_vs_load(cfg);
    } else if (o.kind == "memory") {
      points = sweep_rate_vs_memory(cfg);
    } else {
      throw UsageError("--kind must be load or memory");
    }
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  emit(o, to_csv(points), out);
  Count fallbacks = 0;
  for (const auto& p : points) fallbacks += p.fallbacks;
  if (fallbacks > 0) std::cerr << "note: " << fallbacks << " sampled schedules needed the singleton fallback\n";
  return kExitOk;
}

int cmd_dump_placement(const Options& o, std::ostream& out) {
  const auto params = inline_params(o);
  emit(o, dump_placement(place(params)), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coded-caching placement and delivery simulator", "ccsim"};
  app.require_subcommand(1);
  Options o;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--N", o.N, "number of files");
    sub->add_option("--M", o.M, "number of caches / user groups");
    sub->add_option("--alpha", o.alpha, "coding parameter");
  };
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "input JSON file");
    sub->add_option("--output", o.output, "write result here instead of stdout");
    sub->add_option("--format", o.format, "human or structured");
  };

  auto* simulate = app.add_subcommand("simulate", "build and certify a delivery schedule");
  add_params(simulate);
  add_io(simulate);
  simulate->add_option("--requests", o.requests, "inline requests, e.g. \"1,2;2;1,2\"");

  auto* verify = app.add_subcommand("verify", "re-check a structured simulate record");
  add_io(verify);

  auto* worst = app.add_subcommand("worst-rate", "closed-form worst rate");
  add_params(worst);
  worst->add_option("--output", o.output, "write result here instead of stdout");
  worst->add_option("--format", o.format, "human or structured");
  worst->add_option("--counts", o.counts, "per-group loads, e.g. \"2,2,3\"");
  worst->add_option("--uniform-L", o.uniform_L, "every group requests L files");

  auto* bounds = app.add_subcommand("bounds", "cut-set bound, gap bound and worst rate for a profile");
  add_params(bounds);
  add_io(bounds);
  bounds->add_option("--requests", o.requests, "inline requests, e.g. \"1,2;2;1,2\"");

  auto* sweep = app.add_subcommand("sweep", "seeded Monte Carlo sweep to CSV");
  sweep->add_option("--N", o.N, "number of files");
  sweep->add_option("--M", o.M, "number of caches / user groups");
  sweep->add_option("--alphas", o.alphas, "comma list of alpha values");
  sweep->add_option("--loads", o.loads, "comma list of D values (or L values with --uniform)");
  sweep->add_option("--kind", o.kind, "load or memory");
  sweep->add_flag("--uniform", o.uniform, "every group requests the same number of files");
  sweep->add_option("--samples", o.samples, "profiles drawn per point");
  sweep->add_option("--seed", o.seed, "base seed");
  sweep->add_option("--threads", o.threads, "worker threads, 0 for all cores");
  sweep->add_option("--output", o.output, "write CSV here instead of stdout");

  auto* dump = app.add_subcommand("dump-placement", "list every cached packet");
  add_params(dump);
  dump->add_option("--output", o.output, "write result here instead of stdout");

  std::vector<const char*> argv{"ccsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (worst->parsed()) return cmd_worst_rate(o, out);
    if (bounds->parsed()) return cmd_bounds(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (dump->parsed()) return cmd_dump_placement(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "out of domain: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DefectError& e) {
    err << "internal defect: " << e.what() << '\n';
    return kExitDefect;
  } catch (const std::exception& e) {
    err << "internal defect: " << e.what() << '\n';
    return kExitDefect;
  }
  return kExitUsage;
}

}  // namespace ccsim
