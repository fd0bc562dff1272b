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

#include "vruocc/synthetic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "vruocc/errors.hpp"
#include "vruocc/geometry.hpp"
#include "vruocc/rng.hpp"

namespace vruocc
{

namespace
{

struct SeedAgent
{
  AgentCategory category;
  Vec2 start;     // position at frame 0
  Vec2 velocity;  // constant
  double heading;
  double length;
  double width;
};

Vec2 lane_direction(const LaneSegment & lane, std::vector<std::string> & issues, int index,
                    const char * kind)
{
  const Vec2 d = lane.to - lane.from;
  const double len = norm(d);
  if (len <= 0.0) {
    issues.push_back(std::string(kind) + "[" + std::to_string(index) + "] has zero length");
    return {1.0, 0.0};
  }
  return {d.x / len, d.y / len};
}

}  // namespace

std::vector<std::string> validate_synthetic_spec(const SyntheticSpec & spec)
{
  std::vector<std::string> issues;
  if (spec.duration_frames <= 0) issues.push_back("duration_frames must be > 0");
  if (!(spec.frame_rate > 0.0)) issues.push_back("frame_rate must be > 0");
  if (spec.moving_vehicles < 0 || spec.parked_vehicles < 0 || spec.pedestrians < 0 ||
      spec.bicycles < 0) {
    issues.push_back("agent counts must be >= 0");
  }
  if (spec.moving_vehicles > 0 && spec.vehicle_lanes.empty()) {
    issues.push_back("moving_vehicles > 0 requires vehicle_lanes");
  }
  if (spec.parked_vehicles > 0 && spec.parking_rows.empty()) {
    issues.push_back("parked_vehicles > 0 requires parking_rows");
  }
  if ((spec.pedestrians > 0 || spec.bicycles > 0) && spec.vru_paths.empty()) {
    issues.push_back("pedestrians/bicycles > 0 requires vru_paths");
  }
  auto check_range = [&](double lo, double hi, const char * name) {
    if (!(lo >= 0.0) || hi < lo) issues.push_back(std::string(name) + " speed range invalid");
  };
  check_range(spec.vehicle_speed_min, spec.vehicle_speed_max, "vehicle");
  check_range(spec.pedestrian_speed_min, spec.pedestrian_speed_max, "pedestrian");
  check_range(spec.bicycle_speed_min, spec.bicycle_speed_max, "bicycle");
  return issues;
}

Scenario generate_synthetic(const SyntheticSpec & spec, std::uint64_t seed)
{
  std::vector<std::string> issues = validate_synthetic_spec(spec);
  if (!issues.empty()) throw ConfigError(std::move(issues));

  SplitMix64 rng(seed);
  std::vector<SeedAgent> agents;
  std::vector<std::string> lane_issues;

  for (int k = 0; k < spec.moving_vehicles; ++k) {
    const int li = k % static_cast<int>(spec.vehicle_lanes.size());
    const LaneSegment & lane = spec.vehicle_lanes[static_cast<std::size_t>(li)];
    const Vec2 dir = lane_direction(lane, lane_issues, li, "vehicle_lanes");
    const double back = static_cast<double>(k / static_cast<int>(spec.vehicle_lanes.size())) *
                        spec.vehicle_headway;
    const double speed = rng.uniform(spec.vehicle_speed_min, spec.vehicle_speed_max);
    agents.push_back(
      {AgentCategory::car, lane.from - dir * back, dir * speed,
       wrap_angle(std::atan2(dir.y, dir.x)), spec.car_length, spec.car_width});
  }
  for (int k = 0; k < spec.parked_vehicles; ++k) {
    const int ri = k % static_cast<int>(spec.parking_rows.size());
    const LaneSegment & row = spec.parking_rows[static_cast<std::size_t>(ri)];
    const Vec2 dir = lane_direction(row, lane_issues, ri, "parking_rows");
    const double along = static_cast<double>(k / static_cast<int>(spec.parking_rows.size())) *
                           (spec.car_length + spec.parking_gap) +
                         spec.car_length * 0.5;
    agents.push_back(
      {AgentCategory::car, row.from + dir * along, {0.0, 0.0},
       wrap_angle(std::atan2(dir.y, dir.x)), spec.car_length, spec.car_width});
  }
  const int vru_total = spec.pedestrians + spec.bicycles;
  for (int k = 0; k < vru_total; ++k) {
    const bool ped = k < spec.pedestrians;
    const int pi = k % static_cast<int>(spec.vru_paths.size());
    const LaneSegment & path = spec.vru_paths[static_cast<std::size_t>(pi)];
    const Vec2 dir = lane_direction(path, lane_issues, pi, "vru_paths");
    const double back =
      static_cast<double>(k / static_cast<int>(spec.vru_paths.size())) * spec.vru_headway;
    const double speed = ped ? rng.uniform(spec.pedestrian_speed_min, spec.pedestrian_speed_max)
                             : rng.uniform(spec.bicycle_speed_min, spec.bicycle_speed_max);
    agents.push_back(
      {ped ? AgentCategory::pedestrian : AgentCategory::bicycle, path.from - dir * back,
       dir * speed, wrap_angle(std::atan2(dir.y, dir.x)),
       ped ? spec.pedestrian_size : spec.bicycle_length,
       ped ? spec.pedestrian_size : spec.bicycle_width});
  }
  if (!lane_issues.empty()) throw ConfigError(std::move(lane_issues));

  // Spawn sanity: no two footprints may overlap at frame 0.
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      const ObstacleRect ri{agents[i].start, agents[i].heading, agents[i].length,
                            agents[i].width};
      const ObstacleRect rj{agents[j].start, agents[j].heading, agents[j].length,
                            agents[j].width};
      if (ri.length > 0.0 && ri.width > 0.0 && rj.length > 0.0 && rj.width > 0.0 &&
          rects_overlap(ri, rj)) {
        throw DataError(
          "overlapping spawn footprints: agents " + std::to_string(i) + " and " +
          std::to_string(j));
      }
    }
  }

  const double dt = 1.0 / spec.frame_rate;
  std::vector<Scene> scenes(static_cast<std::size_t>(spec.duration_frames));
  for (int f = 0; f < spec.duration_frames; ++f) {
    Scene & scene = scenes[static_cast<std::size_t>(f)];
    scene.frame_index = f;
    scene.agents.reserve(agents.size());
    for (std::size_t id = 0; id < agents.size(); ++id) {
      const SeedAgent & sa = agents[id];
      AgentState a;
      a.agent_id = static_cast<int>(id);
      a.category = sa.category;
      a.position = sa.start + sa.velocity * (f * dt);
      a.velocity = sa.velocity;
      a.heading = sa.heading;
      a.footprint_length = sa.length;
      a.footprint_width = sa.width;
      scene.agents.push_back(a);
    }
  }
  return Scenario::build(spec.frame_rate, std::move(scenes));
}

}  // namespace vruocc
