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

#ifndef VRUOCC_AGENT_HPP_
#define VRUOCC_AGENT_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "vruocc/vec2.hpp"

namespace vruocc
{

enum class AgentCategory { car, truck_bus, pedestrian, bicycle };

constexpr bool is_vehicle(AgentCategory c)
{
  return c == AgentCategory::car || c == AgentCategory::truck_bus;
}

constexpr bool is_vru(AgentCategory c)
{
  return c == AgentCategory::pedestrian || c == AgentCategory::bicycle;
}

std::string_view category_label(AgentCategory c);
std::optional<AgentCategory> parse_category(std::string_view label);

// One traffic participant's pose, kinematics and footprint at one frame.
// Positions are scenario-local Cartesian meters; heading is the direction of
// travel in radians, [0, 2*pi).
struct AgentState
{
  int agent_id = 0;
  AgentCategory category = AgentCategory::car;
  Vec2 position;
  Vec2 velocity;  // m/s
  double heading = 0.0;
  double footprint_length = 0.0;  // m, along heading
  double footprint_width = 0.0;   // m, across heading

  double speed() const { return norm(velocity); }

  bool operator==(const AgentState &) const = default;
};

}  // namespace vruocc

#endif  // VRUOCC_AGENT_HPP_
