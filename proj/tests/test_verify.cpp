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

#include <doctest.h>

#include <set>

#include "ccsim/harness.hpp"
#include "ccsim/verify.hpp"
#include "support.hpp"

using namespace ccsim;
using ccsim::testing::frag;
using ccsim::testing::Instance;
using ccsim::testing::tx;

namespace {

// Plain dense elimination over GF(2); returns the rank and whether each unit
// vector lies in the row space.
struct DenseOracle {
  std::size_t rank = 0;
  std::vector<bool> unit_in_span;
};

DenseOracle dense_span(std::vector<std::vector<bool>> rows, std::size_t dim) {
  std::vector<std::vector<bool>> basis;
  std::vector<std::size_t> pivots;
  for (auto& r : rows) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (r[pivots[i]]) {
        for (std::size_t c = 0; c < dim; ++c) r[c] = r[c] != basis[i][c];
      }
    }
    std::size_t p = 0;
    while (p < dim && !r[p]) ++p;
    if (p == dim) continue;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i][p]) {
        for (std::size_t c = 0; c < dim; ++c) basis[i][c] = basis[i][c] != r[c];
      }
    }
    basis.push_back(r);
    pivots.push_back(p);
  }
  DenseOracle out{basis.size(), std::vector<bool>(dim, false)};
  // A unit vector e_j is in a fully reduced span iff some row equals it.
  for (const auto& b : basis) {
    std::size_t weight = 0, at = 0;
    for (std::size_t c = 0; c < dim; ++c) {
      if (b[c]) {
        ++weight;
        at = c;
      }
    }
    if (weight == 1) out.unit_in_span[at] = true;
  }
  return out;
}

std::vector<std::vector<bool>> knowledge_rows(int group, const PlacementState& pl,
                                              const TransmissionSchedule& schedule) {
  const std::size_t dim = pl.dimension();
  std::vector<std::vector<bool>> rows;
  const auto add = [&](const std::vector<FragmentId>& payload) {
    std::vector<bool> r(dim, false);
    for (const auto& f : payload) r[pl.fragment_index(f)] = !r[pl.fragment_index(f)];
    rows.push_back(r);
  };
  for (ComboIndex c = 0; c < pl.packets_per_cache(); ++c) add(pl.packet(group, c));
  for (const auto& t : schedule.transmissions) add(t.payload);
  return rows;
}

}  // namespace

TEST_CASE("empty schedule: a group knows its packets and no single fragment") {
  const Instance inst(4, 3, 2, {{1}, {2}, {3}});
  const TransmissionSchedule empty;
  for (int g = 1; g <= 3; ++g) {
    const KnowledgeBasis basis(g, inst.placement, empty);
    CHECK(basis.dimension() == inst.placement.dimension());
    CHECK(basis.rank() == inst.placement.packets_per_cache());
    for (std::size_t i = 0; i < basis.dimension(); ++i) CHECK_FALSE(basis.in_span(i));
  }
  const auto report = verify_all(inst.profile, inst.placement, empty);
  CHECK_FALSE(report.pass);
  CHECK(report.groups.size() == 3);
}

TEST_CASE("uncoded placement: the cache itself decodes") {
  const Instance inst(3, 2, 1, {{1}, {2}});
  const KnowledgeBasis basis(1, inst.placement, TransmissionSchedule{});
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    CHECK(basis.in_span(i) == (inst.placement.fragment_at(i).cache == 1));
  }
}

TEST_CASE("one sent fragment unlocks its packet partner") {
  const Instance inst(3, 3, 2, {{1}, {2}, {3}});
  const auto& t = inst.placement.table();
  const auto a = frag(t, 2, {1, 2}, 1);
  const auto b = frag(t, 1, {1, 2}, 1);
  TransmissionSchedule s;
  s.transmissions.push_back(tx(Stage::TypeII_1, {a}));

  const KnowledgeBasis g1(1, inst.placement, s), g2(2, inst.placement, s);
  CHECK(g1.row_weight(g1.row_count() - 1) == 1);
  CHECK(g1.row_weight(0) == 2);
  CHECK(g1.in_span(inst.placement.fragment_index(b)));
  CHECK(g1.rank() == g1.row_count());
  CHECK(g2.in_span(inst.placement.fragment_index(a)));
  CHECK_FALSE(g2.in_span(inst.placement.fragment_index(b)));
}

TEST_CASE("repeated fragments cancel inside a payload") {
  const Instance inst(3, 2, 1, {{1}, {2}});
  const auto& t = inst.placement.table();
  const auto x = frag(t, 3, {3}, 2);
  TransmissionSchedule s;
  s.transmissions.push_back(tx(Stage::Last_2, {x, x}));
  const KnowledgeBasis basis(1, inst.placement, s);
  CHECK_FALSE(basis.in_span(inst.placement.fragment_index(x)));
  CHECK(basis.rank() == inst.placement.packets_per_cache());
  CHECK(basis.row_weight(basis.row_count() - 1) == 0);
}

TEST_CASE("span agrees with dense elimination on random schedules") {
  Stream rng(0x5eedULL);
  for (auto [N, M, alpha] : {std::tuple{3, 3, 2}, std::tuple{4, 3, 2}, std::tuple{4, 2, 1}, std::tuple{5, 3, 3}}) {
    const auto params = SystemParams::make(N, M, alpha);
    const auto placement = place(params);
    const std::size_t dim = placement.dimension();
    for (int trial = 0; trial < 40; ++trial) {
      TransmissionSchedule s;
      const auto count = 1 + rng.below(dim);
      for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<FragmentId> payload;
        const auto width = 1 + rng.below(4);
        for (std::uint64_t w = 0; w < width; ++w) payload.push_back(placement.fragment_at(rng.below(dim)));
        s.transmissions.push_back(tx(Stage::Last_2, payload));
      }
      for (int g = 1; g <= M; ++g) {
        const KnowledgeBasis basis(g, placement, s);
        const auto oracle = dense_span(knowledge_rows(g, placement, s), dim);
        CHECK(basis.rank() == oracle.rank);
        for (std::size_t i = 0; i < dim; ++i) CHECK(basis.in_span(i) == oracle.unit_in_span[i]);
      }
    }
  }
}

TEST_CASE("adding transmissions never shrinks the span") {
  const Instance inst(4, 3, 2, {{1, 2, 3}, {2, 3}, {1, 4}});
  const auto built = build_schedule(inst.placement, inst.profile);
  TransmissionSchedule partial;
  std::vector<std::size_t> last(3, inst.placement.packets_per_cache());
  for (const auto& t : built.schedule.transmissions) {
    partial.transmissions.push_back(t);
    for (int g = 1; g <= 3; ++g) {
      const auto r = KnowledgeBasis(g, inst.placement, partial).rank();
      CHECK(r >= last[g - 1]);
      CHECK(r <= last[g - 1] + 1);
      last[g - 1] = r;
    }
  }
  CHECK(verify_all(inst.profile, inst.placement, partial).pass);
}

TEST_CASE("a missing transmission breaks the sender's packet for both its files") {
  const Instance inst(4, 3, 2, {{1, 2, 3}, {2, 3}, {1, 4}});
  const auto& t = inst.placement.table();
  auto schedule = build_schedule(inst.placement, inst.profile).schedule;
  const auto dropped = schedule.transmissions.front();
  // Group 1 cannot peel S_1 out of its (1,4) packet, which in turn masks the
  // coded pair that carried S_{1,(1,2)}^{(3)}. Group 3 never sees S_4.
  REQUIRE(dropped.payload == std::vector<FragmentId>{frag(t, 4, {1, 4}, 1)});
  schedule.transmissions.erase(schedule.transmissions.begin());
  const auto report = verify_all(inst.profile, inst.placement, schedule);
  CHECK_FALSE(report.pass);
  const std::set<FragmentId> lost1(report.groups[0].missing.begin(), report.groups[0].missing.end());
  CHECK(lost1 == std::set<FragmentId>{frag(t, 1, {1, 4}, 1), frag(t, 1, {1, 2}, 3)});
  CHECK(report.groups[1].pass);
  CHECK(report.groups[2].missing == std::vector<FragmentId>{frag(t, 4, {1, 4}, 1)});
  CHECK(report.missing().size() == 3);
}
