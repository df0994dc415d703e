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
#include <optional>
#include <string>
#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

// SplitMix64 used as a counter-based generator: output i of a stream is
// mix(key + (i+1) * golden_gamma). Streams are keyed by hashing their
// coordinates, so every (seed, N, M, D, sample) gets its own sequence
// regardless of evaluation order or thread count.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z);
  static Stream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> coordinates);

  std::uint64_t next();
  // Uniform in [0, bound), bound >= 1, by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Number of (D_1..D_M) with 1 <= D_m <= N summing to D.
std::uint64_t count_compositions(int N, int M, int D);

// A uniformly drawn composition, then a uniformly drawn D_m-subset per group.
RequestProfile sample_requests(int N, int M, int D, Stream& stream);
std::vector<int> sample_composition(int N, int M, int D, Stream& stream);

// Every group draws a uniform L-subset.
RequestProfile sample_uniform_requests(int N, int M, int L, Stream& stream);

struct SweepPoint {
  int N = 0, M = 0, alpha = 0;
  Rational C;
  int D = 0;
  std::optional<int> L;
  int samples = 0;
  std::uint64_t seed = 0;
  Rational avg_rate;
  Rational max_rate;
  std::optional<Rational> worst_formula;
  Rational cutset_min;
  std::optional<Rational> uncoded_ref;
  Count fallbacks = 0;
};

struct SweepConfig {
  int N = 0;
  int M = 0;
  std::vector<int> alphas;   // memory axis
  std::vector<int> loads;    // D values; uniform mode uses L values instead
  bool uniform = false;
  int samples = 100;
  std::uint64_t seed = 1;
  int threads = 0;           // 0: hardware concurrency capped by CCSIM_THREADS
};

// One point per (alpha, load) pair, loads varying fastest.
std::vector<SweepPoint> run_sweep(const SweepConfig& config);

// D = M, 2M, ..., NM.
std::vector<int> default_loads(int N, int M);

std::vector<SweepPoint> sweep_rate_vs_load(SweepConfig config);
std::vector<SweepPoint> sweep_rate_vs_memory(SweepConfig config);

std::string csv_header();
std::string csv_row(const SweepPoint& point);
std::string to_csv(const std::vector<SweepPoint>& points);

int worker_count(int requested);

}  // namespace ccsim
