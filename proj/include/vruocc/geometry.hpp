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

#ifndef VRUOCC_GEOMETRY_HPP_
#define VRUOCC_GEOMETRY_HPP_

#include <numbers>
#include <span>
#include <variant>

#include "vruocc/agent.hpp"
#include "vruocc/vec2.hpp"

namespace vruocc
{

// Parameters of the speed-dependent danger zones. Defaults follow the
// standard comfort-braking model: 1.5 s reaction time, 3.2 m/s^2 comfort
// deceleration, friction coefficient 0.9, a 60 degree forward wedge for
// vehicles and a 1 s motion horizon for VRUs.
struct SafetyParams
{
  double reaction_time = 1.5;                           // s
  double comfort_decel = 3.2;                           // m/s^2
  double friction = 0.9;                                // dimensionless
  double wedge_apex_angle = std::numbers::pi / 3.0;     // rad, full apex angle
  double risk_horizon = 1.0;                            // s

  bool operator==(const SafetyParams &) const = default;
};

// Forward wedge of a moving vehicle: closed circular sector with the apex at
// the vehicle center, symmetric about the heading. radius == 0 denotes an
// empty area that intersects nothing (a parked vehicle threatens nothing).
struct SectorArea
{
  Vec2 apex;
  double axis = 0.0;        // rad
  double half_angle = 0.0;  // rad, apex angle / 2
  double radius = 0.0;      // m
};

// Closed disc around a VRU. radius == 0 degenerates to a point; by
// convention the point still registers against a vehicle wedge (a standing
// pedestrian inside a wedge counts).
struct DiscArea
{
  Vec2 center;
  double radius = 0.0;  // m
};

using SafetyCriticalArea = std::variant<SectorArea, DiscArea>;

// Oriented rectangle footprint used as a sight obstruction.
struct ObstacleRect
{
  Vec2 center;
  double heading = 0.0;  // rad
  double length = 0.0;   // m, along heading
  double width = 0.0;    // m, across heading
};

ObstacleRect footprint_rect(const AgentState & state);

// Stopping reach: v * t_react + v^2 / (2 * mu * a). Strictly increasing in v.
double stopping_distance(double speed, const SafetyParams & params);

// Wedge for a vehicle state (category must be a vehicle).
SectorArea vehicle_safety_area(const AgentState & state, const SafetyParams & params);

// Disc for a VRU state (category must be a VRU); radius = speed * horizon.
DiscArea vru_safety_area(const AgentState & state, const SafetyParams & params);

bool point_in_sector(Vec2 p, const SectorArea & sector);
bool point_in_rect(Vec2 p, const ObstacleRect & rect);

double distance_point_segment(Vec2 p, Vec2 a, Vec2 b);

// Distance from p to the closed sector region (0 when inside). Requires
// sector.radius > 0.
double distance_to_sector(Vec2 p, const SectorArea & sector);

// Distance from p to the sector's boundary (two edges plus arc), defined for
// points inside and outside. Requires sector.radius > 0.
double sector_boundary_distance(Vec2 p, const SectorArea & sector);

// Closed-region intersection test between a vehicle wedge and a VRU disc.
// Exact case analysis (center-in-sector, edge/arc vs circle); boundary
// contact counts. Empty sector (radius 0) intersects nothing; a radius-0
// disc is a point test against the closed sector.
bool sector_disc_intersects(const SectorArea & sector, const DiscArea & disc);

// Variant convenience: expects (Sector, Disc) in that order.
bool areas_intersect(const SafetyCriticalArea & a, const SafetyCriticalArea & b);

// Closed-region overlap of two oriented rectangles (separating-axis test).
bool rects_overlap(const ObstacleRect & a, const ObstacleRect & b);

// True when the open segment (observer, target) crosses the closed rect.
// Touching at an endpoint alone does not block.
bool segment_blocked_by_rect(Vec2 observer, Vec2 target, const ObstacleRect & rect);

// True iff the open segment (observer, target) meets none of the obstacles.
bool line_of_sight(Vec2 observer, Vec2 target, std::span<const ObstacleRect> obstacles);

// Closed ball: boundary contact is in range. Requires sensor_radius > 0.
bool within_sensor_range(Vec2 observer, Vec2 target, double sensor_radius);

// --- boundary-margin helpers (used by the oracle test suites) -------------

// |distance from the predicate's decision boundary| for a sector/disc pair.
double sector_disc_clearance(const SectorArea & sector, const DiscArea & disc);

// Margin of the open-segment occlusion test against one rect: separation
// distance when clear, deepest interior penetration when blocked.
double segment_rect_clearance(Vec2 a, Vec2 b, const ObstacleRect & rect);

}  // namespace vruocc

#endif  // VRUOCC_GEOMETRY_HPP_
