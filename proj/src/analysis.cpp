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

#include "ccsim/analysis.hpp"

#include <algorithm>
#include <numeric>

#include "ccsim/combinatorics.hpp"
#include "ccsim/errors.hpp"

namespace ccsim {

namespace {

// sum_{n=2}^{min(d, alpha)} C(a, n) C(b, alpha - n)
Count multi_local_packets(Count a, Count d, Count b, int alpha) {
  Count sum = 0;
  for (Count n = 2; n <= std::min<Count>(d, alpha); ++n) sum += binom(a, n) * binom(b, alpha - n);
  return sum;
}

void check_loads(const SystemParams& params, const std::vector<int>& loads) {
  if (static_cast<int>(loads.size()) != params.M) {
    throw ValidationError("expected one load per group");
  }
  for (int d : loads) {
    if (d < 1 || d > params.N) throw ValidationError("each group load must lie in [1, N]");
  }
}

}  // namespace

Rational schedule_rate(const DeliveryStats& stats, const SystemParams& params) {
  return Rational(stats.total(), params.rate_denominator());
}

std::vector<Count> untransmitted_type3(const SystemParams& params, const RequestProfile& profile) {
  std::vector<Count> out;
  const Count nr = profile.n_requested();
  for (int m = 1; m <= params.M; ++m) {
    const Count d = profile.load(m);
    out.push_back(multi_local_packets(d - profile.sigma(m), d, nr - d, params.alpha));
  }
  return out;
}

Rational theorem_rate(const SystemParams& params, const RequestProfile& profile, Count delta,
                      Count Delta) {
  const Count nr = profile.n_requested();
  const int alpha = params.alpha;

  Count saved = 0;
  for (int n : profile.requested_files()) {
    Count best = -1;
    for (int m : profile.requesters(n)) {
      const Count v = binom(nr - profile.load(m), alpha - 1);
      if (best < 0 || v < best) best = v;
    }
    saved += best;
  }
  for (int m = 1; m <= params.M; ++m) {
    const Count d = profile.load(m);
    saved += multi_local_packets(d, d, nr - d, alpha) -
             multi_local_packets(d - profile.sigma(m), d, nr - d, alpha);
  }
  const auto L = untransmitted_type3(params, profile);
  saved += *std::min_element(L.begin(), L.end());
  saved += delta + Delta;
  return Rational(nr) - Rational(saved, params.rate_denominator());
}

RatePair rate_of_schedule(const DeliveryStats& stats, const SystemParams& params,
                          const RequestProfile& profile) {
  RatePair out{schedule_rate(stats, params), theorem_rate(params, profile, stats.delta, stats.Delta)};
  if (!stats.fallback && out.achieved != out.theorem) {
    throw DefectError("counted rate " + to_pq(out.achieved) + " differs from closed form " +
                      to_pq(out.theorem));
  }
  return out;
}

Rational worst_rate(const SystemParams& params, const std::vector<int>& loads) {
  check_loads(params, loads);
  const int N = params.N;
  const int M = params.M;
  const int alpha = params.alpha;
  const Count D = std::accumulate(loads.begin(), loads.end(), Count{0});
  if (D < N) {
    throw DomainError("worst rate assumes every file is requested, which needs D >= N");
  }

  if (D == M) {
    return Rational(N) - Rational(static_cast<Count>(N) * (N + 1), static_cast<Count>(alpha + 1) * M);
  }

  std::vector<int> sorted = loads;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  Count prefix = 0;
  std::size_t I = 0;
  while (I < sorted.size() && prefix + sorted[I] <= N) prefix += sorted[I++];

  Count g = 0;
  for (std::size_t i = 0; i < I; ++i) g += binom(N - sorted[i], alpha - 1) * sorted[i];
  if (I < sorted.size()) g += (N - prefix) * binom(N - sorted[I], alpha - 1);

  Count type3 = -1;
  Count type4 = -1;
  for (int d : loads) {
    const Count t3 = multi_local_packets(d, d, N - d, alpha);
    const Count t4 = binom(N - d, alpha);
    type3 = type3 < 0 ? t3 : std::min(type3, t3);
    type4 = type4 < 0 ? t4 : std::min(type4, t4);
  }
  g += type3 + type4;

  const Rational G(g, params.rate_denominator());
  return Rational(N) - std::max(G, params.cache_size());
}

Rational worst_rate_uniform(const SystemParams& params, int L) {
  const int N = params.N;
  const int M = params.M;
  if (L == 1 && M >= N) return worst_rate(params, std::vector<int>(M, 1));
  if (L >= 2 && L <= N && static_cast<Count>(L) * M > N) {
    return Rational(N) -
           Rational(static_cast<Count>(N - L) * binom(N - L, params.alpha - 1), params.rate_denominator()) -
           params.cache_size();
  }
  throw DomainError("uniform worst rate needs L = 1 with M >= N, or 2 <= L <= N with LM > N");
}

Rational uncoded_reference_rate(int N, int M, int L) {
  if (N < 1 || M < 1 || L < 1 || L > N) throw ValidationError("uncoded reference needs 1 <= L <= N");
  if (L == 1 && N <= M && M <= 2 * N) return Rational(M - 1, 2);
  return std::min(Rational(static_cast<Count>(L) * (M - 1), 2), Rational(N) - Rational(N, M));
}

Rational cutset_bound(const SystemParams& params, const RequestProfile& profile) {
  const int M = params.M;
  const Count nr = profile.n_requested();
  int min_load = params.N;
  for (int m = 1; m <= M; ++m) min_load = std::min(min_load, profile.load(m));
  const Count s_max = std::min<Count>((nr + min_load - 1) / min_load, M);

  // reach[s][t]: some s groups have loads summing to t. Only (s, t) enters
  // the objective, so this covers every admissible group subset.
  std::vector<std::vector<char>> reach(s_max + 1, std::vector<char>(nr + 1, 0));
  reach[0][0] = 1;
  for (int m = 1; m <= M; ++m) {
    const int d = profile.load(m);
    for (Count s = s_max; s >= 1; --s) {
      for (Count t = nr; t >= d; --t) {
        if (reach[s - 1][t - d]) reach[s][t] = 1;
      }
    }
  }

  const Rational C = params.cache_size();
  bool any = false;
  Rational best;
  for (Count s = 1; s <= s_max; ++s) {
    for (Count t = 1; t <= nr; ++t) {
      if (!reach[s][t]) continue;
      const Rational v = Rational(t) - C * Rational(s) / Rational(nr / t);
      if (!any || v > best) best = v;
      any = true;
    }
  }
  if (!any) throw DefectError("cut-set bound found no admissible group subset");
  return best;
}

Rational gap_bound(const SystemParams& params, const RequestProfile& profile) {
  int max_load = 0;
  for (int m = 1; m <= params.M; ++m) max_load = std::max(max_load, profile.load(m));
  return Rational(params.N - max_load);
}

}  // namespace ccsim
