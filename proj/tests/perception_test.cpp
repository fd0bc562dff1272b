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

#include "vruocc/perception.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "test_util.hpp"
#include "vruocc/errors.hpp"
#include "vruocc/synthetic.hpp"

using namespace vruocc;
using namespace vruocc::testing;

namespace
{

std::vector<int> ids(int n)
{
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i + 1;
  return out;
}

bool subset(const std::vector<int> & small, const std::vector<int> & big)
{
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// One moving observer, a parked blocker and a pedestrian behind it; a second
// equipped observer with clear sight from the side.
Scenario occlusion_scenario(int frames = 10)
{
  return static_scenario(
    {
      make_agent(0, AgentCategory::car, {0.0, 0.0}, {10.0, 0.0}),       // observer A
      make_agent(1, AgentCategory::car, {10.0, 0.0}, {0.0, 0.0}),       // parked blocker
      make_agent(2, AgentCategory::car, {20.0, 30.0}, {0.0, 0.0}),      // watcher B, clear sight
      make_agent(3, AgentCategory::pedestrian, {20.0, 0.0}, {1.4, 0.0}),
    },
    frames);
}

}  // namespace

TEST_CASE("equipage counts and determinism")
{
  const auto vehicles = ids(10);
  CHECK(assign_equipage(vehicles, 0.0, 1).equipped.empty());
  CHECK(assign_equipage(vehicles, 1.0, 1).equipped == vehicles);
  // round(0.25 * 10) = round(2.5) = 3, round half up
  const auto quarter = assign_equipage(vehicles, 0.25, 99);
  CHECK(quarter.equipped.size() == 3);
  CHECK(assign_equipage(vehicles, 0.25, 99).equipped == quarter.equipped);
  CHECK(subset(quarter.equipped, vehicles));
  CHECK_THROWS_AS(assign_equipage(vehicles, 1.2, 1), std::invalid_argument);

  CHECK(equipage_count(10, 0.25) == 3);
  CHECK(equipage_count(10, 0.05) == 1);  // round(0.5) = 1
  CHECK(equipage_count(3, 0.5) == 2);    // round(1.5) = 2
}

TEST_CASE("nested equipage prefixes are nested across rates")
{
  const auto vehicles = ids(12);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r25 = nested_equipage(vehicles, 0.25, seed);
    const auto r50 = nested_equipage(vehicles, 0.5, seed);
    const auto r75 = nested_equipage(vehicles, 0.75, seed);
    CHECK(subset(r25.equipped, r50.equipped));
    CHECK(subset(r50.equipped, r75.equipped));
  }
}

TEST_CASE("direct detections: range and occlusion")
{
  Scene scene;
  scene.frame_index = 0;
  SUBCASE("unobstructed VRU ahead")
  {
    scene.agents = {
      make_agent(0, AgentCategory::car, {0, 0}, {10, 0}),
      make_agent(1, AgentCategory::pedestrian, {20, 0}, {1, 0})};
    CHECK(direct_detections(scene, 0, 75.0) == std::vector<int>{1});
  }
  SUBCASE("parked car on the segment hides the VRU but is itself visible")
  {
    scene.agents = {
      make_agent(0, AgentCategory::car, {0, 0}, {10, 0}),
      make_agent(1, AgentCategory::car, {10, 0}, {0, 0}),
      make_agent(2, AgentCategory::pedestrian, {20, 0}, {1, 0})};
    CHECK(direct_detections(scene, 0, 75.0) == std::vector<int>{1});
  }
  SUBCASE("VRU beyond 75 m is unseen")
  {
    scene.agents = {
      make_agent(0, AgentCategory::car, {0, 0}, {10, 0}),
      make_agent(1, AgentCategory::pedestrian, {80, 0}, {1, 0})};
    CHECK(direct_detections(scene, 0, 75.0).empty());
  }
  SUBCASE("VRUs never occlude")
  {
    scene.agents = {
      make_agent(0, AgentCategory::car, {0, 0}, {10, 0}),
      make_agent(1, AgentCategory::bicycle, {10, 0}, {1, 0}),
      make_agent(2, AgentCategory::pedestrian, {20, 0}, {1, 0})};
    CHECK(direct_detections(scene, 0, 75.0) == std::vector<int>{1, 2});
  }
  SUBCASE("observer must be present")
  {
    scene.agents = {make_agent(0, AgentCategory::car, {0, 0}, {10, 0})};
    CHECK_THROWS_AS(direct_detections(scene, 9, 75.0), DataError);
  }
}

TEST_CASE("zero penetration keeps the direct map")
{
  const Scenario s = occlusion_scenario();
  const auto direct = direct_perception(s, 75.0);
  const auto fused = fuse_cpm(s, assign_equipage(s.vehicle_ids(), 0.0, 1), {}, 75.0);
  CHECK(direct == fused);
}

TEST_CASE("message fusion bridges occlusion for equipped receivers only")
{
  const Scenario s = occlusion_scenario();
  EquipageAssignment equipage;
  equipage.penetration_rate = 0.5;
  equipage.equipped = {0, 2};  // A (occluded) and B (clear sight)
  const CpmSchedule schedule;  // 100 ms, zero phases
  const auto map = fuse_cpm(s, equipage, schedule, 75.0);

  // A never sees the pedestrian directly...
  const auto direct = direct_perception(s, 75.0);
  CHECK_FALSE(direct.is_tracked(1, 0, 3));
  // ...but tracks it through B's messages, from frame 0 on (send at t=0).
  for (int f = 0; f < 10; ++f) {
    CHECK(map.is_tracked(f, 0, 3));
  }
  // The unequipped blocker gains nothing.
  CHECK_FALSE(map.is_tracked(1, 1, 3));
  CHECK(map.tracked(1, 1) == direct.tracked(1, 1));

  // Content equals what the sender sensed at the sampling frame: A's fused
  // row is its direct row merged with B's direct row at the latest send time.
  for (int f = 0; f < 10; ++f) {
    const long t_frame = f * 40000L;          // us, 25 fps
    const long t_send = (t_frame / 100000L) * 100000L;
    const int g = static_cast<int>(t_send / 40000L);
    std::vector<int> expect = direct.tracked(f, 0);
    for (int id : direct.tracked(g, 2)) {
      if (!std::binary_search(expect.begin(), expect.end(), id)) expect.push_back(id);
    }
    std::sort(expect.begin(), expect.end());
    CHECK(map.tracked(f, 0) == expect);
  }
}

TEST_CASE("senders do not retain their own past messages")
{
  // A VRU visible to A only at even frames; A's own message from frame g
  // must not feed back into A's tracked set at odd frames.
  std::vector<Scene> scenes(4);
  for (int f = 0; f < 4; ++f) {
    scenes[static_cast<std::size_t>(f)].frame_index = f;
    const double y = (f % 2 == 0) ? 60.0 : 0.0;  // blocker toggles sight per frame
    scenes[static_cast<std::size_t>(f)].agents = {
      make_agent(0, AgentCategory::car, {0, 0}, {10, 0}),
      make_agent(1, AgentCategory::car, {10, y}, {0, 0}),
      make_agent(2, AgentCategory::pedestrian, {20, 0}, {1, 0})};
  }
  const Scenario s = Scenario::build(25.0, std::move(scenes));
  EquipageAssignment equipage;
  equipage.equipped = {0};
  const auto map = fuse_cpm(s, equipage, {}, 75.0);
  CHECK(map.is_tracked(0, 0, 2));  // clear at frame 0
  // Blocked at frame 1: A's own message from t=0 carried the pedestrian, but
  // a sender receives nothing from itself.
  CHECK_FALSE(map.is_tracked(1, 0, 2));
  CHECK(map.is_tracked(2, 0, 2));
  CHECK_FALSE(map.is_tracked(3, 0, 2));
}

TEST_CASE("tracking is monotone in the equipped set")
{
  SyntheticSpec spec;
  spec.duration_frames = 120;
  spec.vehicle_lanes = {{{-120, 0}, {120, 0}}, {{120, 3.5}, {-120, 3.5}}};
  spec.parking_rows = {{{-50, -5}, {50, -5}}};
  spec.vru_paths = {{{-60, -9}, {60, -9}}};
  spec.moving_vehicles = 4;
  spec.parked_vehicles = 4;
  spec.pedestrians = 3;
  spec.bicycles = 1;
  const Scenario s = generate_synthetic(spec, 3);
  const auto vehicles = s.vehicle_ids();

  const auto e1 = nested_equipage(vehicles, 0.25, 7);
  const auto e2 = nested_equipage(vehicles, 0.75, 7);
  REQUIRE(subset(e1.equipped, e2.equipped));
  const auto m1 = fuse_cpm(s, e1, {}, 75.0);
  const auto m2 = fuse_cpm(s, e2, {}, 75.0);
  for (int f = s.first_frame(); f <= s.last_frame(); ++f) {
    for (int v : e1.equipped) {
      CHECK(subset(m1.tracked(f, v), m2.tracked(f, v)));
    }
  }
}

TEST_CASE("fusion is deterministic, also with seeded phases")
{
  const Scenario s = occlusion_scenario(25);
  EquipageAssignment equipage;
  equipage.equipped = {0, 2};
  CpmSchedule schedule;
  schedule.phase_mode = CpmSchedule::PhaseMode::seeded;
  schedule.phase_seed = 11;
  const auto a = fuse_cpm(s, equipage, schedule, 75.0);
  const auto b = fuse_cpm(s, equipage, schedule, 75.0);
  CHECK(a == b);
}

TEST_CASE("is_tracked rejects absent agents")
{
  const Scenario s = occlusion_scenario(5);
  const auto map = direct_perception(s, 75.0);
  CHECK_THROWS_AS(map.is_tracked(0, 99, 3), DataError);
  CHECK_THROWS_AS(map.is_tracked(0, 0, 99), DataError);
  CHECK_THROWS_AS(map.is_tracked(50, 0, 3), DataError);
}

TEST_CASE("from_sets round-trips the tracked rows")
{
  const Scenario s = occlusion_scenario(2);
  std::vector<std::vector<std::vector<int>>> sets(
    2, std::vector<std::vector<int>>(s.vehicle_ids().size()));
  sets[0][0] = {3};
  sets[1][2] = {0, 3};
  const auto map = PerceptionMap::from_sets(s, sets);
  CHECK(map.is_tracked(0, 0, 3));
  CHECK_FALSE(map.is_tracked(0, 2, 3));
  CHECK(map.is_tracked(1, 2, 3));
}
