// Copyright 2026 The vruocc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vruocc/metrics.hpp"

#include <doctest.h>

#include <array>
#include <vector>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vruocc/rng.hpp"

using namespace vruocc;
using namespace vruocc::testing;

namespace
{

// Vehicle heading east at 10 m/s; pedestrian in its wedge behind a parked
// car, so the interaction is significant and, without messages, occluded.
Scenario occluded_interaction_scenario(int frames = 1)
{
  return static_scenario(
    {
      make_agent(0, AgentCategory::car, {0.0, 0.0}, {10.0, 0.0}),
      make_agent(1, AgentCategory::car, {8.0, 0.0}, {0.0, 0.0}),  // parked, empty wedge
      make_agent(2, AgentCategory::pedestrian, {16.0, 0.0}, {1.0, 0.0}),
    },
    frames);
}

// Build a perception map from a tracking matrix m[frame][vehicle][vru] over
// a static scenario where everything is present every frame.
PerceptionMap map_from_matrix(
  const Scenario & s, const std::vector<std::vector<std::vector<char>>> & m)
{
  const auto vehicles = s.vehicle_ids();
  const auto vrus = s.vru_ids();
  std::vector<std::vector<std::vector<int>>> sets(
    s.frame_count(), std::vector<std::vector<int>>(vehicles.size()));
  for (std::size_t f = 0; f < s.frame_count(); ++f) {
    for (std::size_t j = 0; j < vehicles.size(); ++j) {
      for (std::size_t i = 0; i < vrus.size(); ++i) {
        if (m[f][j][i]) sets[f][j].push_back(vrus[i]);
      }
    }
  }
  return PerceptionMap::from_sets(s, std::move(sets));
}

Scenario matrix_scenario(int n_vehicles, int n_vrus, int frames)
{
  std::vector<AgentState> agents;
  int id = 0;
  for (int v = 0; v < n_vehicles; ++v) {
    agents.push_back(make_agent(id++, AgentCategory::car, {v * 20.0, 0.0}, {0.0, 0.0}));
  }
  for (int u = 0; u < n_vrus; ++u) {
    agents.push_back(
      make_agent(id++, AgentCategory::pedestrian, {u * 20.0, 200.0}, {0.0, 0.0}));
  }
  return static_scenario(std::move(agents), frames);
}

}  // namespace

TEST_CASE("frame risk: single occluded interaction")
{
  const Scenario s = occluded_interaction_scenario();
  const auto direct = direct_perception(s, 75.0);
  const FrameRisk r = frame_risk(s.scenes()[0], direct, {});
  CHECK(r.significant == 1);
  CHECK(r.occluded == 1);
  REQUIRE(r.ratio.has_value());
  CHECK(*r.ratio == 1.0);
}

TEST_CASE("frame risk: two interacting VRUs, one occluded")
{
  Scenario s = static_scenario(
    {
      make_agent(0, AgentCategory::car, {0.0, 0.0}, {10.0, 0.0}),
      make_agent(1, AgentCategory::car, {8.0, 0.0}, {0.0, 0.0}),
      make_agent(2, AgentCategory::pedestrian, {16.0, 0.0}, {1.0, 0.0}),   // hidden
      make_agent(3, AgentCategory::pedestrian, {15.0, 6.0}, {1.0, 0.0}),   // visible
    },
    1);
  const auto direct = direct_perception(s, 75.0);
  const FrameRisk r = frame_risk(s.scenes()[0], direct, {});
  CHECK(r.significant == 2);
  CHECK(r.occluded == 1);
  CHECK(*r.ratio == 0.5);
}

TEST_CASE("frame risk: no significant interactions leaves the ratio undefined")
{
  const Scenario s = static_scenario(
    {
      make_agent(0, AgentCategory::car, {0.0, 0.0}, {10.0, 0.0}),
      make_agent(1, AgentCategory::pedestrian, {-20.0, 0.0}, {1.0, 0.0}),  // behind
    },
    1);
  const auto direct = direct_perception(s, 75.0);
  const FrameRisk r = frame_risk(s.scenes()[0], direct, {});
  CHECK(r.significant == 0);
  CHECK(r.occluded == 0);
  CHECK_FALSE(r.ratio.has_value());
}

TEST_CASE("fused knowledge counts as sight in the frame metric")
{
  Scenario s = static_scenario(
    {
      make_agent(0, AgentCategory::car, {0.0, 0.0}, {10.0, 0.0}),
      make_agent(1, AgentCategory::car, {8.0, 0.0}, {0.0, 0.0}),
      make_agent(2, AgentCategory::car, {16.0, 30.0}, {0.0, 0.0}),  // watcher
      make_agent(3, AgentCategory::pedestrian, {16.0, 0.0}, {1.0, 0.0}),
    },
    1);
  EquipageAssignment equipage;
  equipage.equipped = {0, 2};
  const auto fused = fuse_cpm(s, equipage, {}, 75.0);
  const FrameRisk r = frame_risk(s.scenes()[0], fused, {});
  CHECK(r.significant == 1);
  CHECK(r.occluded == 0);
}

TEST_CASE("vehicle risk summaries count per-frame occluded interactions")
{
  const Scenario s = occluded_interaction_scenario(10);
  const auto direct = direct_perception(s, 75.0);
  const auto summaries = vehicle_risk_summaries(s, direct, {});
  REQUIRE(summaries.size() == 2);
  CHECK(summaries[0].vehicle_id == 0);
  CHECK(summaries[0].occluded_interactions == 10);  // one hidden VRU, ten frames
  CHECK(summaries[1].vehicle_id == 1);
  CHECK(summaries[1].occluded_interactions == 0);  // parked: empty wedge
}

TEST_CASE("no VRUs means all-zero summaries")
{
  const Scenario s = static_scenario(
    {make_agent(0, AgentCategory::car, {0, 0}, {10, 0}),
     make_agent(1, AgentCategory::car, {30, 0}, {10, 0})},
    5);
  const auto direct = direct_perception(s, 75.0);
  for (const auto & v : vehicle_risk_summaries(s, direct, {})) {
    CHECK(v.occluded_interactions == 0);
  }
}

TEST_CASE("tracking gap examples")
{
  const Scenario s = matrix_scenario(1, 1, 10);
  std::vector<std::vector<std::vector<char>>> m(
    10, std::vector<std::vector<char>>(1, std::vector<char>(1, 1)));

  SUBCASE("tracked every frame")
  {
    const auto map = map_from_matrix(s, m);
    CHECK(mtl(s, map, MtlVariant::any_vehicle)[0].mtl_frames == 0);
    CHECK(mtl(s, map, MtlVariant::per_vehicle_max)[0].mtl_frames == 0);
  }
  SUBCASE("untracked at frames 3..7 only")
  {
    for (int f = 3; f <= 7; ++f) m[static_cast<std::size_t>(f)][0][0] = 0;
    const auto map = map_from_matrix(s, m);
    const auto any = mtl(s, map, MtlVariant::any_vehicle);
    CHECK(any[0].mtl_frames == 5);
    CHECK(any[0].mtl_ms == doctest::Approx(200.0));
    CHECK(mtl(s, map, MtlVariant::per_vehicle_max)[0].mtl_frames == 5);
  }
}

TEST_CASE("never tracked over 100 frames gives the whole lifespan in both variants")
{
  const Scenario s = matrix_scenario(1, 1, 100);
  std::vector<std::vector<std::vector<char>>> m(
    100, std::vector<std::vector<char>>(1, std::vector<char>(1, 0)));
  const auto map = map_from_matrix(s, m);
  CHECK(mtl(s, map, MtlVariant::any_vehicle)[0].mtl_frames == 100);
  CHECK(mtl(s, map, MtlVariant::per_vehicle_max)[0].mtl_frames == 100);
}

TEST_CASE("no vehicles in the scenario: whole lifespan untracked")
{
  const Scenario s = matrix_scenario(0, 1, 30);
  const auto map = PerceptionMap::from_sets(
    s, std::vector<std::vector<std::vector<int>>>(30));
  CHECK(mtl(s, map, MtlVariant::any_vehicle)[0].mtl_frames == 30);
  CHECK(mtl(s, map, MtlVariant::per_vehicle_max)[0].mtl_frames == 30);
}

TEST_CASE("gap metrics agree with a run-length oracle on random matrices")
{
  SplitMix64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int v = 1 + static_cast<int>(rng.next_below(3));
    const int u = 1 + static_cast<int>(rng.next_below(3));
    const int frames = 1 + static_cast<int>(rng.next_below(40));
    const Scenario s = matrix_scenario(v, u, frames);
    std::vector<std::vector<std::vector<char>>> m(
      static_cast<std::size_t>(frames),
      std::vector<std::vector<char>>(
        static_cast<std::size_t>(v), std::vector<char>(static_cast<std::size_t>(u))));
    for (auto & fm : m) {
      for (auto & vm : fm) {
        for (auto & b : vm) b = rng.next_double() < 0.5 ? 1 : 0;
      }
    }
    const auto map = map_from_matrix(s, m);
    const auto any = mtl(s, map, MtlVariant::any_vehicle);
    const auto pvm = mtl(s, map, MtlVariant::per_vehicle_max);
    for (int i = 0; i < u; ++i) {
      std::vector<char> untracked_all(static_cast<std::size_t>(frames));
      for (int f = 0; f < frames; ++f) {
        bool any_tracks = false;
        for (int j = 0; j < v; ++j) any_tracks = any_tracks || m[f][j][i];
        untracked_all[static_cast<std::size_t>(f)] = any_tracks ? 0 : 1;
      }
      CHECK(any[static_cast<std::size_t>(i)].mtl_frames == longest_true_run(untracked_all));

      int expect_pvm = 0;
      for (int j = 0; j < v; ++j) {
        std::vector<char> untracked(static_cast<std::size_t>(frames));
        for (int f = 0; f < frames; ++f) untracked[static_cast<std::size_t>(f)] = m[f][j][i] ? 0 : 1;
        expect_pvm = std::max(expect_pvm, longest_true_run(untracked));
      }
      CHECK(pvm[static_cast<std::size_t>(i)].mtl_frames == expect_pvm);

      // With full presence the any-vehicle gap can never exceed the
      // formula-literal one.
      CHECK(
        any[static_cast<std::size_t>(i)].mtl_frames <=
        pvm[static_cast<std::size_t>(i)].mtl_frames);
    }
  }
}

TEST_CASE("significant interactions are independent of equipage")
{
  const Scenario s = occluded_interaction_scenario(20);
  const auto vehicles = s.vehicle_ids();
  const auto none = fuse_cpm(s, assign_equipage(vehicles, 0.0, 1), {}, 75.0);
  const auto all = fuse_cpm(s, assign_equipage(vehicles, 1.0, 1), {}, 75.0);
  const auto r0 = frame_risk_series(s, none, {});
  const auto r1 = frame_risk_series(s, all, {});
  REQUIRE(r0.size() == r1.size());
  for (std::size_t f = 0; f < r0.size(); ++f) {
    CHECK(r0[f].significant == r1[f].significant);
    CHECK(r1[f].occluded <= r0[f].occluded);
  }
}

TEST_CASE("ccdf")
{
  const std::array<double, 4> v{0.0, 0.0, 0.0, 4.0};
  const auto points = ccdf(v);
  REQUIRE(points.size() == 2);
  CHECK(points[0] == CcdfPoint{0.0, 0.25});
  CHECK(points[1] == CcdfPoint{4.0, 0.0});

  const std::array<double, 1> single{5.0};
  CHECK(ccdf(single) == std::vector<CcdfPoint>{{5.0, 0.0}});

  const std::array<double, 3> equal{2.0, 2.0, 2.0};
  CHECK(ccdf(equal) == std::vector<CcdfPoint>{{2.0, 0.0}});

  CHECK_THROWS_AS(ccdf({}), std::invalid_argument);
}

TEST_CASE("boxplot statistics, inclusive quartiles")
{
  const std::array<double, 5> v{1, 2, 3, 4, 5};
  const BoxplotStats s = boxplot_stats(v);
  CHECK(s.median == 3.0);
  CHECK(s.q1 == 2.0);
  CHECK(s.q3 == 4.0);
  CHECK(s.whisker_low == 1.0);
  CHECK(s.whisker_high == 5.0);
  CHECK(s.outliers.empty());

  const std::array<double, 3> c{7.5, 7.5, 7.5};
  const BoxplotStats sc = boxplot_stats(c);
  CHECK(sc.min == 7.5);
  CHECK(sc.q1 == 7.5);
  CHECK(sc.median == 7.5);
  CHECK(sc.q3 == 7.5);
  CHECK(sc.max == 7.5);
  CHECK(sc.whisker_low == 7.5);
  CHECK(sc.whisker_high == 7.5);
  CHECK(sc.outliers.empty());

  const std::array<double, 5> o{1, 1, 1, 1, 100};
  const BoxplotStats so = boxplot_stats(o);
  CHECK(so.q3 == 1.0);
  CHECK(so.whisker_high == 1.0);
  REQUIRE(so.outliers.size() == 1);
  CHECK(so.outliers[0] == 100.0);

  CHECK_THROWS_AS(boxplot_stats({}), std::invalid_argument);
}

TEST_CASE("quantile interpolation on even-sized data")
{
  const std::array<double, 4> v{1, 2, 3, 10};
  const BoxplotStats s = boxplot_stats(v);
  CHECK(s.q1 == doctest::Approx(1.75));
  CHECK(s.median == doctest::Approx(2.5));
  CHECK(s.q3 == doctest::Approx(4.75));
}
