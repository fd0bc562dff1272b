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

#ifndef VRUOCC_SYNTHETIC_HPP_
#define VRUOCC_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "vruocc/scenario.hpp"
#include "vruocc/vec2.hpp"

namespace vruocc
{

// Straight path segment, meters.
struct LaneSegment
{
  Vec2 from;
  Vec2 to;

  bool operator==(const LaneSegment &) const = default;
};

// Declarative description of a desk-scale scenario: agent counts, straight
// lane geometry, duration. Speeds are drawn per agent from the per-category
// ranges (m/s); agents move at constant velocity along their lane direction
// for the whole duration. Parked vehicles sit still along parking rows.
struct SyntheticSpec
{
  double frame_rate = 25.0;  // Hz
  int duration_frames = 0;

  std::vector<LaneSegment> vehicle_lanes;
  std::vector<LaneSegment> vru_paths;
  std::vector<LaneSegment> parking_rows;

  int moving_vehicles = 0;
  int parked_vehicles = 0;
  int pedestrians = 0;
  int bicycles = 0;

  double vehicle_speed_min = 8.0;
  double vehicle_speed_max = 14.0;
  double pedestrian_speed_min = 1.0;
  double pedestrian_speed_max = 2.0;
  double bicycle_speed_min = 4.0;
  double bicycle_speed_max = 7.0;

  double car_length = 4.5;
  double car_width = 1.8;
  double pedestrian_size = 0.5;
  double bicycle_length = 1.8;
  double bicycle_width = 0.6;

  double vehicle_headway = 25.0;  // m between vehicle spawn points on a lane
  double vru_headway = 8.0;       // m between VRU spawn points on a path
  double parking_gap = 1.5;       // m between parked vehicles

  bool operator==(const SyntheticSpec &) const = default;
};

// Field-level spec checks; empty result means valid.
std::vector<std::string> validate_synthetic_spec(const SyntheticSpec & spec);

// Deterministic for a given (spec, seed). Throws ConfigError for an invalid
// spec (zero duration, counts without lanes, bad speed ranges) and DataError
// when spawn footprints overlap.
Scenario generate_synthetic(const SyntheticSpec & spec, std::uint64_t seed);

}  // namespace vruocc

#endif  // VRUOCC_SYNTHETIC_HPP_
