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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace vruocc::testing
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool point_in_disc(Vec2 p, const DiscArea & disc)
{
  return norm_sq(p - disc.center) <= disc.radius * disc.radius;
}

}  // namespace

bool oracle_point_in_sector(Vec2 p, const SectorArea & sector)
{
  if (sector.radius <= 0.0) return false;
  const Vec2 v = p - sector.apex;
  const double d2 = norm_sq(v);
  if (d2 > sector.radius * sector.radius) return false;
  if (d2 == 0.0) return true;
  const Vec2 axis = unit_from_angle(sector.axis);
  return dot(v, axis) >= std::sqrt(d2) * std::cos(sector.half_angle);
}

bool sector_disc_oracle(
  const SectorArea & sector, const DiscArea & disc, SplitMix64 & rng, int area_samples,
  int boundary_samples)
{
  if (sector.radius <= 0.0) return false;
  if (disc.radius <= 0.0) return oracle_point_in_sector(disc.center, sector);

  // Area samples inside the disc, tested against the sector.
  for (int i = 0; i < area_samples; ++i) {
    const double theta = kTwoPi * rng.next_double();
    const double rho = disc.radius * std::sqrt(rng.next_double());
    if (oracle_point_in_sector(disc.center + rho * unit_from_angle(theta), sector)) return true;
  }
  // Area samples inside the sector, tested against the disc.
  for (int i = 0; i < area_samples; ++i) {
    const double phi =
      sector.axis - sector.half_angle + 2.0 * sector.half_angle * rng.next_double();
    const double rho = sector.radius * std::sqrt(rng.next_double());
    if (point_in_disc(sector.apex + rho * unit_from_angle(phi), disc)) return true;
  }
  // Samples on the disc boundary circle.
  for (int i = 0; i < boundary_samples; ++i) {
    const double theta = kTwoPi * rng.next_double();
    if (oracle_point_in_sector(disc.center + disc.radius * unit_from_angle(theta), sector)) {
      return true;
    }
  }
  // Samples on the sector boundary (two edges plus arc, by perimeter length).
  const double edge_len = sector.radius;
  const double arc_len = sector.radius * 2.0 * sector.half_angle;
  const double perimeter = 2.0 * edge_len + arc_len;
  for (int i = 0; i < boundary_samples; ++i) {
    const double s = perimeter * rng.next_double();
    Vec2 p;
    if (s < edge_len) {
      p = sector.apex + s * unit_from_angle(sector.axis - sector.half_angle);
    } else if (s < 2.0 * edge_len) {
      p = sector.apex + (s - edge_len) * unit_from_angle(sector.axis + sector.half_angle);
    } else {
      const double phi = sector.axis - sector.half_angle + (s - 2.0 * edge_len) / sector.radius;
      p = sector.apex + sector.radius * unit_from_angle(phi);
    }
    if (point_in_disc(p, disc)) return true;
  }
  return false;
}

bool line_of_sight_oracle(
  Vec2 observer, Vec2 target, std::span<const ObstacleRect> obstacles, int uniform_samples)
{
  const Vec2 d = target - observer;
  auto blocked_at = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return false;  // endpoints never count
    const Vec2 p = observer + d * t;
    for (const auto & rect : obstacles) {
      if (point_in_rect(p, rect)) return true;
    }
    return false;
  };

  for (int k = 1; k <= uniform_samples; ++k) {
    if (blocked_at(static_cast<double>(k) / (uniform_samples + 1))) return false;
  }

  // Thin crossings cluster near corner projections and near the endpoints;
  // probe those neighborhoods at several scales.
  const double len2 = norm_sq(d);
  static constexpr double kScales[] = {1e-2, 1e-4, 1e-6};
  constexpr int kWindow = 64;
  auto probe_window = [&](double center) {
    for (double scale : kScales) {
      for (int j = 0; j < kWindow; ++j) {
        const double t = center - scale + 2.0 * scale * (j + 0.5) / kWindow;
        if (blocked_at(t)) return true;
      }
    }
    return false;
  };
  if (len2 > 0.0) {
    for (const auto & rect : obstacles) {
      const Vec2 u = unit_from_angle(rect.heading);
      const Vec2 ex = u * (rect.length * 0.5);
      const Vec2 ey = Vec2{-u.y, u.x} * (rect.width * 0.5);
      const Vec2 corners[4] = {
        rect.center + ex + ey, rect.center - ex + ey, rect.center - ex - ey,
        rect.center + ex - ey};
      for (const Vec2 & c : corners) {
        if (probe_window(dot(c - observer, d) / len2)) return false;
      }
    }
  }
  if (probe_window(0.0) || probe_window(1.0)) return false;
  return true;
}

double los_clearance(Vec2 observer, Vec2 target, std::span<const ObstacleRect> obstacles)
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto & rect : obstacles) {
    best = std::min(best, segment_rect_clearance(observer, target, rect));
  }
  return best;
}

SectorArea random_sector(SplitMix64 & rng)
{
  SectorArea s;
  s.apex = {rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0)};
  s.axis = rng.uniform(0.0, kTwoPi);
  s.half_angle = rng.uniform(0.05, std::numbers::pi / 2.0);
  s.radius = rng.uniform(0.5, 45.0);
  return s;
}

DiscArea random_disc(SplitMix64 & rng)
{
  DiscArea d;
  d.center = {rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0)};
  d.radius = rng.uniform(0.05, 12.0);
  return d;
}

ObstacleRect random_rect(SplitMix64 & rng, double extent)
{
  ObstacleRect r;
  r.center = {rng.uniform(-extent, extent), rng.uniform(-extent, extent)};
  r.heading = rng.uniform(0.0, kTwoPi);
  r.length = rng.uniform(1.0, 12.0);
  r.width = rng.uniform(0.8, 3.0);
  return r;
}

Vec2 RigidTransform::apply(Vec2 p) const
{
  const Vec2 u = unit_from_angle(angle);
  return {p.x * u.x - p.y * u.y + translation.x, p.x * u.y + p.y * u.x + translation.y};
}

double RigidTransform::apply_angle(double a) const { return wrap_angle(a + angle); }

RigidTransform random_transform(SplitMix64 & rng)
{
  return {rng.uniform(0.0, kTwoPi), {rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)}};
}

int longest_true_run(std::span<const char> values)
{
  int best = 0;
  int run = 0;
  for (char v : values) {
    run = v ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

std::optional<Scenario> try_random_frame(
  SplitMix64 & rng, int vehicles, int vrus, const SafetyParams & params, double sensor_radius,
  double min_clearance)
{
  Scene scene;
  scene.frame_index = 0;
  int id = 0;
  for (int v = 0; v < vehicles; ++v) {
    AgentState a;
    a.agent_id = id++;
    a.category = AgentCategory::car;
    a.position = {rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0)};
    a.heading = rng.uniform(0.0, kTwoPi);
    const double speed = rng.next_double() < 0.25 ? 0.0 : rng.uniform(0.5, 15.0);
    a.velocity = speed * unit_from_angle(a.heading);
    a.footprint_length = rng.uniform(3.5, 6.0);
    a.footprint_width = rng.uniform(1.6, 2.4);
    scene.agents.push_back(a);
  }
  for (int u = 0; u < vrus; ++u) {
    AgentState a;
    a.agent_id = id++;
    a.category = rng.next_double() < 0.5 ? AgentCategory::pedestrian : AgentCategory::bicycle;
    a.position = {rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0)};
    a.heading = rng.uniform(0.0, kTwoPi);
    const double speed = rng.next_double() < 0.15 ? 0.0 : rng.uniform(0.3, 7.0);
    a.velocity = speed * unit_from_angle(a.heading);
    a.footprint_length = 0.5;
    a.footprint_width = 0.5;
    scene.agents.push_back(a);
  }

  // Reject frames where any geometric decision is near its boundary, so
  // sampling oracles and closed-form predicates cannot disagree for
  // knife-edge reasons.
  std::vector<const AgentState *> veh_states;
  std::vector<const AgentState *> vru_states;
  for (const auto & a : scene.agents) {
    (is_vehicle(a.category) ? veh_states : vru_states).push_back(&a);
  }
  for (const auto * veh : veh_states) {
    const SectorArea wedge = vehicle_safety_area(*veh, params);
    if (wedge.radius <= 0.0) continue;
    for (const auto * vru : vru_states) {
      if (sector_disc_clearance(wedge, vru_safety_area(*vru, params)) <= min_clearance) {
        return std::nullopt;
      }
    }
  }
  for (const auto * obs : veh_states) {
    for (const auto & tgt : scene.agents) {
      if (tgt.agent_id == obs->agent_id) continue;
      if (std::abs(distance(obs->position, tgt.position) - sensor_radius) <= min_clearance) {
        return std::nullopt;
      }
      for (const auto * rect_owner : veh_states) {
        if (rect_owner->agent_id == obs->agent_id || rect_owner->agent_id == tgt.agent_id) {
          continue;
        }
        const ObstacleRect rect = footprint_rect(*rect_owner);
        if (segment_rect_clearance(obs->position, tgt.position, rect) <= min_clearance) {
          return std::nullopt;
        }
      }
    }
  }

  std::vector<Scene> scenes{std::move(scene)};
  return Scenario::build(25.0, std::move(scenes));
}

}  // namespace vruocc::testing
