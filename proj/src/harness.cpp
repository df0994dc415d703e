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

#include "ccsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ccsim/analysis.hpp"
#include "ccsim/delivery.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/prefetch.hpp"

namespace ccsim {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

enum : std::uint64_t { kArbitraryMode = 1, kUniformMode = 2 };

std::vector<std::vector<std::uint64_t>> composition_table(int N, int M, int D) {
  std::vector<std::vector<std::uint64_t>> ways(M + 1, std::vector<std::uint64_t>(D + 1, 0));
  ways[0][0] = 1;
  for (int k = 1; k <= M; ++k) {
    for (int s = 0; s <= D; ++s) {
      std::uint64_t total = 0;
      for (int d = 1; d <= N && d <= s; ++d) {
        if (__builtin_add_overflow(total, ways[k - 1][s - d], &total)) {
          throw ValidationError("too many load compositions to sample exactly");
        }
      }
      ways[k][s] = total;
    }
  }
  return ways;
}

std::vector<int> sample_subset(int N, int k, Stream& stream) {
  std::vector<int> pool(N);
  for (int i = 0; i < N; ++i) pool[i] = i + 1;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(stream.below(static_cast<std::uint64_t>(N - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

struct SampleOutcome {
  Rational rate;
  std::optional<Rational> worst;
  Rational cutset;
  bool fallback = false;
};

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  const int n = std::max(1, std::min(threads, count));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::string optional_pair(const std::optional<Rational>& r, bool decimal) {
  if (!r) return "-";
  return decimal ? to_decimal(*r) : to_pq(*r);
}

}  // namespace

std::uint64_t Stream::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Stream Stream::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> coordinates) {
  std::uint64_t key = mix(seed + kGamma);
  for (std::uint64_t c : coordinates) key = mix(key ^ mix(c + kGamma));
  return Stream(key);
}

std::uint64_t Stream::next() {
  ++counter_;
  return mix(key_ + counter_ * kGamma);
}

std::uint64_t Stream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Stream::below: empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t count_compositions(int N, int M, int D) {
  if (N < 1 || M < 1 || D < 0) return 0;
  return composition_table(N, M, D)[M][D];
}

std::vector<int> sample_composition(int N, int M, int D, Stream& stream) {
  if (D < M || D > N * M) {
    throw ValidationError("total load D must lie in [M, N*M]");
  }
  const auto ways = composition_table(N, M, D);
  std::uint64_t r = stream.below(ways[M][D]);
  std::vector<int> loads;
  int rest = D;
  for (int k = M; k >= 1; --k) {
    for (int d = 1; d <= N; ++d) {
      const std::uint64_t w = d <= rest ? ways[k - 1][rest - d] : 0;
      if (r < w) {
        loads.push_back(d);
        rest -= d;
        break;
      }
      r -= w;
    }
  }
  return loads;
}

RequestProfile sample_requests(int N, int M, int D, Stream& stream) {
  const auto loads = sample_composition(N, M, D, stream);
  std::vector<std::vector<int>> requests;
  for (int d : loads) requests.push_back(sample_subset(N, d, stream));
  return RequestProfile::make(N, std::move(requests));
}

RequestProfile sample_uniform_requests(int N, int M, int L, Stream& stream) {
  if (L < 1 || L > N) throw ValidationError("uniform load L must lie in [1, N]");
  std::vector<std::vector<int>> requests;
  for (int m = 0; m < M; ++m) requests.push_back(sample_subset(N, L, stream));
  return RequestProfile::make(N, std::move(requests));
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CCSIM_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) n = std::min(n, limit);
  }
  return std::max(1, n);
}

std::vector<int> default_loads(int N, int M) {
  std::vector<int> out;
  for (int k = 1; k <= N; ++k) out.push_back(k * M);
  return out;
}

std::vector<SweepPoint> run_sweep(const SweepConfig& config) {
  if (config.samples < 1) throw ValidationError("samples must be positive");
  const int threads = worker_count(config.threads);
  std::vector<SweepPoint> points;

  for (int alpha : config.alphas) {
    const auto params = SystemParams::make(config.N, config.M, alpha);
    const auto placement = place(params);
    for (int load : config.loads) {
      std::vector<SampleOutcome> outcomes(config.samples);
      parallel_for(config.samples, threads, [&](int i) {
        const std::uint64_t mode = config.uniform ? kUniformMode : kArbitraryMode;
        Stream stream = Stream::derive(config.seed, {mode, static_cast<std::uint64_t>(config.N),
                                                     static_cast<std::uint64_t>(config.M),
                                                     static_cast<std::uint64_t>(load),
                                                     static_cast<std::uint64_t>(i)});
        const RequestProfile profile = config.uniform
                                           ? sample_uniform_requests(config.N, config.M, load, stream)
                                           : sample_requests(config.N, config.M, load, stream);
        const auto built = build_schedule(placement, profile);
        if (!built.stats.certified) throw DefectError("sampled schedule was not certified");
        SampleOutcome& out = outcomes[i];
        out.rate = rate_of_schedule(built.stats, params, profile).achieved;
        out.fallback = built.stats.fallback;
        out.cutset = cutset_bound(params, profile);
        std::vector<int> loads;
        for (int m = 1; m <= config.M; ++m) loads.push_back(profile.load(m));
        try {
          out.worst = worst_rate(params, loads);
        } catch (const DomainError&) {
          out.worst.reset();
        }
      });

      SweepPoint p;
      p.N = config.N;
      p.M = config.M;
      p.alpha = alpha;
      p.C = params.cache_size();
      p.D = config.uniform ? load * config.M : load;
      if (config.uniform) p.L = load;
      p.samples = config.samples;
      p.seed = config.seed;
      Rational sum(0);
      p.max_rate = outcomes.front().rate;
      p.cutset_min = outcomes.front().cutset;
      for (const auto& o : outcomes) {
        sum += o.rate;
        p.max_rate = std::max(p.max_rate, o.rate);
        p.cutset_min = std::min(p.cutset_min, o.cutset);
        if (o.worst && (!p.worst_formula || *o.worst > *p.worst_formula)) p.worst_formula = o.worst;
        if (o.fallback) ++p.fallbacks;
      }
      p.avg_rate = sum / Rational(config.samples);
      if (config.uniform && alpha == 1) p.uncoded_ref = uncoded_reference_rate(config.N, config.M, load);
      points.push_back(p);
    }
  }
  return points;
}

std::vector<SweepPoint> sweep_rate_vs_load(SweepConfig config) {
  if (config.loads.empty()) {
    if (config.uniform) {
      for (int L = 1; L <= config.N; ++L) config.loads.push_back(L);
    } else {
      config.loads = default_loads(config.N, config.M);
    }
  }
  return run_sweep(config);
}

std::vector<SweepPoint> sweep_rate_vs_memory(SweepConfig config) {
  if (config.alphas.empty()) {
    for (int a = config.N; a >= 1; --a) config.alphas.push_back(a);
  }
  if (config.loads.empty()) throw ValidationError("memory sweep needs a load value");
  return run_sweep(config);
}

std::string csv_header() {
  return "N,M,alpha,C,D,L_or_dash,samples,seed,avg_rate,max_rate,worst_formula,cutset_min,"
         "uncoded_ref_or_dash,C_pq,avg_rate_pq,max_rate_pq,worst_formula_pq,cutset_min_pq,"
         "uncoded_ref_pq";
}

std::string csv_row(const SweepPoint& p) {
  std::ostringstream out;
  out << p.N << ',' << p.M << ',' << p.alpha << ',' << to_decimal(p.C) << ',' << p.D << ','
      << (p.L ? std::to_string(*p.L) : "-") << ',' << p.samples << ',' << p.seed << ','
      << to_decimal(p.avg_rate) << ',' << to_decimal(p.max_rate) << ','
      << optional_pair(p.worst_formula, true) << ',' << to_decimal(p.cutset_min) << ','
      << optional_pair(p.uncoded_ref, true) << ',' << to_pq(p.C) << ',' << to_pq(p.avg_rate) << ','
      << to_pq(p.max_rate) << ',' << optional_pair(p.worst_formula, false) << ','
      << to_pq(p.cutset_min) << ',' << optional_pair(p.uncoded_ref, false);
  return out.str();
}

std::string to_csv(const std::vector<SweepPoint>& points) {
  std::string out = csv_header() + "\n";
  for (const auto& p : points) out += csv_row(p) + "\n";
  return out;
}

}  // namespace ccsim
