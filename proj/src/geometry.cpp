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

#include "vruocc/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vruocc
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

// Angular half-width of the arc of circle(apex, R) lying inside disc(d, r),
// where d = |disc center - apex| > 0. Returns a negative value when the
// circle misses the disc entirely.
double arc_overlap_half_angle(double d, double R, double r)
{
  if (R < d - r || R > d + r) return -1.0;
  const double c = (d * d + R * R - r * r) / (2.0 * d * R);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

struct LocalSegment
{
  // Segment endpoints in the rect's frame (rect is an AABB [-hx,hx]x[-hy,hy]).
  Vec2 a;
  Vec2 b;
  double hx;
  double hy;
};

LocalSegment to_local(Vec2 a, Vec2 b, const ObstacleRect & rect)
{
  const Vec2 u = unit_from_angle(rect.heading);
  const Vec2 da = a - rect.center;
  const Vec2 db = b - rect.center;
  return {
    {dot(da, u), cross(u, da)},
    {dot(db, u), cross(u, db)},
    rect.length * 0.5,
    rect.width * 0.5};
}

// Slab clip of the segment against the closed AABB. Returns false when the
// closed segment misses the box; otherwise [t0, t1] is the inside interval,
// already clipped to [0, 1].
bool clip_segment_aabb(const LocalSegment & s, double & t0, double & t1)
{
  t0 = 0.0;
  t1 = 1.0;
  const double d[2] = {s.b.x - s.a.x, s.b.y - s.a.y};
  const double p[2] = {s.a.x, s.a.y};
  const double h[2] = {s.hx, s.hy};
  for (int k = 0; k < 2; ++k) {
    if (d[k] == 0.0) {
      if (std::abs(p[k]) > h[k]) return false;
      continue;
    }
    double lo = (-h[k] - p[k]) / d[k];
    double hi = (h[k] - p[k]) / d[k];
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
    if (t0 > t1) return false;
  }
  return true;
}

double distance_segment_segment(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1)
{
  const Vec2 da = a1 - a0;
  const Vec2 db = b1 - b0;
  const double denom = cross(da, db);
  if (denom != 0.0) {
    const Vec2 w = b0 - a0;
    const double s = cross(w, db) / denom;
    const double t = cross(w, da) / denom;
    if (s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0) return 0.0;
  }
  double d = distance_point_segment(a0, b0, b1);
  d = std::min(d, distance_point_segment(a1, b0, b1));
  d = std::min(d, distance_point_segment(b0, a0, a1));
  d = std::min(d, distance_point_segment(b1, a0, a1));
  return d;
}

std::array<Vec2, 4> rect_corners(const ObstacleRect & rect)
{
  const Vec2 u = unit_from_angle(rect.heading);
  const Vec2 v{-u.y, u.x};
  const Vec2 ex = u * (rect.length * 0.5);
  const Vec2 ey = v * (rect.width * 0.5);
  return {
    rect.center + ex + ey, rect.center - ex + ey, rect.center - ex - ey, rect.center + ex - ey};
}

}  // namespace

ObstacleRect footprint_rect(const AgentState & state)
{
  return {state.position, state.heading, state.footprint_length, state.footprint_width};
}

double stopping_distance(double speed, const SafetyParams & params)
{
  return speed * params.reaction_time +
         (speed * speed) / (2.0 * params.friction * params.comfort_decel);
}

SectorArea vehicle_safety_area(const AgentState & state, const SafetyParams & params)
{
  if (!is_vehicle(state.category)) {
    throw std::invalid_argument("vehicle_safety_area: agent is not a vehicle");
  }
  return {state.position, state.heading, params.wedge_apex_angle * 0.5,
          stopping_distance(state.speed(), params)};
}

DiscArea vru_safety_area(const AgentState & state, const SafetyParams & params)
{
  if (!is_vru(state.category)) {
    throw std::invalid_argument("vru_safety_area: agent is not a VRU");
  }
  return {state.position, state.speed() * params.risk_horizon};
}

bool point_in_sector(Vec2 p, const SectorArea & sector)
{
  if (sector.radius <= 0.0) return false;
  const Vec2 v = p - sector.apex;
  const double d2 = norm_sq(v);
  if (d2 > sector.radius * sector.radius) return false;
  if (d2 == 0.0) return true;
  return std::abs(angle_diff(std::atan2(v.y, v.x), sector.axis)) <= sector.half_angle;
}

bool point_in_rect(Vec2 p, const ObstacleRect & rect)
{
  const Vec2 u = unit_from_angle(rect.heading);
  const Vec2 d = p - rect.center;
  return std::abs(dot(d, u)) <= rect.length * 0.5 && std::abs(cross(u, d)) <= rect.width * 0.5;
}

double distance_point_segment(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 ab = b - a;
  const double len2 = norm_sq(ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = clamp01(dot(p - a, ab) / len2);
  return distance(p, a + ab * t);
}

double distance_to_sector(Vec2 p, const SectorArea & sector)
{
  if (point_in_sector(p, sector)) return 0.0;
  return sector_boundary_distance(p, sector);
}

double sector_boundary_distance(Vec2 p, const SectorArea & sector)
{
  const Vec2 e1 = sector.apex + sector.radius * unit_from_angle(sector.axis - sector.half_angle);
  const Vec2 e2 = sector.apex + sector.radius * unit_from_angle(sector.axis + sector.half_angle);
  double best = distance_point_segment(p, sector.apex, e1);
  best = std::min(best, distance_point_segment(p, sector.apex, e2));
  const Vec2 v = p - sector.apex;
  const double d = norm(v);
  if (d > 0.0 && std::abs(angle_diff(std::atan2(v.y, v.x), sector.axis)) <= sector.half_angle) {
    best = std::min(best, std::abs(d - sector.radius));
  }
  return best;
}

bool sector_disc_intersects(const SectorArea & sector, const DiscArea & disc)
{
  if (sector.radius <= 0.0) return false;
  if (disc.radius <= 0.0) return point_in_sector(disc.center, sector);

  // The regions meet iff the disc center lies in the sector or the sector's
  // boundary (two edges + arc) reaches the disc.
  if (point_in_sector(disc.center, sector)) return true;

  const Vec2 e1 = sector.apex + sector.radius * unit_from_angle(sector.axis - sector.half_angle);
  const Vec2 e2 = sector.apex + sector.radius * unit_from_angle(sector.axis + sector.half_angle);
  if (distance_point_segment(disc.center, sector.apex, e1) <= disc.radius) return true;
  if (distance_point_segment(disc.center, sector.apex, e2) <= disc.radius) return true;

  const Vec2 w = disc.center - sector.apex;
  const double d = norm(w);
  // d == 0 implies the apex (inside the sector) sits at the disc center,
  // already handled above.
  const double beta = arc_overlap_half_angle(d, sector.radius, disc.radius);
  if (beta < 0.0) return false;
  const double phi = std::atan2(w.y, w.x);
  return std::abs(angle_diff(phi, sector.axis)) <= sector.half_angle + beta;
}

bool areas_intersect(const SafetyCriticalArea & a, const SafetyCriticalArea & b)
{
  const auto * sector = std::get_if<SectorArea>(&a);
  const auto * disc = std::get_if<DiscArea>(&b);
  if (sector == nullptr || disc == nullptr) {
    throw std::invalid_argument("areas_intersect: expects (sector, disc)");
  }
  return sector_disc_intersects(*sector, *disc);
}

bool rects_overlap(const ObstacleRect & a, const ObstacleRect & b)
{
  const auto ca = rect_corners(a);
  const auto cb = rect_corners(b);
  auto separated_by_axes_of = [](const ObstacleRect & r, const std::array<Vec2, 4> & other) {
    const Vec2 u = unit_from_angle(r.heading);
    const Vec2 axes[2] = {u, {-u.y, u.x}};
    const double half[2] = {r.length * 0.5, r.width * 0.5};
    for (int k = 0; k < 2; ++k) {
      double lo = kInf;
      double hi = -kInf;
      for (const Vec2 & c : other) {
        const double p = dot(c - r.center, axes[k]);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
      if (lo > half[k] || hi < -half[k]) return true;
    }
    return false;
  };
  return !separated_by_axes_of(a, cb) && !separated_by_axes_of(b, ca);
}

bool segment_blocked_by_rect(Vec2 observer, Vec2 target, const ObstacleRect & rect)
{
  const LocalSegment s = to_local(observer, target, rect);
  double t0;
  double t1;
  if (!clip_segment_aabb(s, t0, t1)) return false;
  if (t0 == t1) return t0 > 0.0 && t0 < 1.0;  // grazing contact at a single point
  return true;  // [t0, t1] has positive length inside [0, 1], so interior points overlap
}

bool line_of_sight(Vec2 observer, Vec2 target, std::span<const ObstacleRect> obstacles)
{
  for (const auto & rect : obstacles) {
    if (segment_blocked_by_rect(observer, target, rect)) return false;
  }
  return true;
}

bool within_sensor_range(Vec2 observer, Vec2 target, double sensor_radius)
{
  if (!(sensor_radius > 0.0)) {
    throw std::invalid_argument("within_sensor_range: sensor_radius must be > 0");
  }
  return norm_sq(target - observer) <= sensor_radius * sensor_radius;
}

double sector_disc_clearance(const SectorArea & sector, const DiscArea & disc)
{
  if (sector.radius <= 0.0) return kInf;  // constant-false predicate, no boundary
  const double outside = distance_to_sector(disc.center, sector);
  if (outside > 0.0) return std::abs(outside - disc.radius);
  return sector_boundary_distance(disc.center, sector) + disc.radius;
}

double segment_rect_clearance(Vec2 a, Vec2 b, const ObstacleRect & rect)
{
  const LocalSegment s = to_local(a, b, rect);
  double t0;
  double t1;
  const bool hit = clip_segment_aabb(s, t0, t1);
  if (!hit) {
    const auto corners = rect_corners(rect);
    double best = kInf;
    for (int k = 0; k < 4; ++k) {
      best = std::min(best, distance_segment_segment(a, b, corners[k], corners[(k + 1) % 4]));
    }
    return best;
  }

  // Deepest interior penetration: depth(t) = min(hx-|x(t)|, hy-|y(t)|) is
  // concave piecewise-linear on [t0, t1]; the max sits at an endpoint or a
  // breakpoint (axis crossing or where the two terms tie).
  const Vec2 d = s.b - s.a;
  auto depth = [&](double t) {
    const double x = s.a.x + t * d.x;
    const double y = s.a.y + t * d.y;
    return std::min(s.hx - std::abs(x), s.hy - std::abs(y));
  };
  std::array<double, 10> cand{};
  int n = 0;
  cand[n++] = t0;
  cand[n++] = t1;
  if (d.x != 0.0) cand[n++] = -s.a.x / d.x;
  if (d.y != 0.0) cand[n++] = -s.a.y / d.y;
  // hx - sx*x = hy - sy*y for the four sign combinations
  for (const double sx : {-1.0, 1.0}) {
    for (const double sy : {-1.0, 1.0}) {
      const double denom = sx * d.x - sy * d.y;
      if (denom != 0.0) cand[n++] = (s.hx - s.hy - sx * s.a.x + sy * s.a.y) / denom;
    }
  }
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = cand[i];
    if (t < t0 || t > t1) continue;
    best = std::max(best, depth(t));
  }
  return best;
}

}  // namespace vruocc
