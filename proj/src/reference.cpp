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

#include "vruocc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

#include "vruocc/geometry.hpp"
#include "vruocc/rng.hpp"

namespace vruocc::reference
{

namespace
{

std::vector<std::vector<std::vector<int>>> empty_sets(const Scenario & scenario)
{
  return std::vector<std::vector<std::vector<int>>>(
    scenario.frame_count(), std::vector<std::vector<int>>(scenario.vehicle_ids().size()));
}

int slot_of(const std::vector<int> & ids, int id)
{
  return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
}

}  // namespace

PerceptionMap direct_perception(const Scenario & scenario, double sensor_radius)
{
  const std::vector<int> vehicles = scenario.vehicle_ids();
  auto sets = empty_sets(scenario);
  for (std::size_t f = 0; f < scenario.frame_count(); ++f) {
    const Scene & scene = scenario.scenes()[f];
    for (const AgentState & a : scene.agents) {
      if (!is_vehicle(a.category)) continue;
      sets[f][static_cast<std::size_t>(slot_of(vehicles, a.agent_id))] =
        direct_detections(scene, a.agent_id, sensor_radius);
    }
  }
  return PerceptionMap::from_sets(scenario, std::move(sets));
}

PerceptionMap fuse_cpm(
  const Scenario & scenario, const EquipageAssignment & equipage, const CpmSchedule & schedule,
  double sensor_radius)
{
  const PerceptionMap direct = reference::direct_perception(scenario, sensor_radius);
  const std::vector<int> vehicles = scenario.vehicle_ids();
  auto sets = empty_sets(scenario);

  const std::int64_t period_us = std::llround(1e6 / scenario.frame_rate());
  const std::int64_t interval_us = std::llround(schedule.interval * 1e6);

  auto phase_of = [&](int id) -> std::int64_t {
    if (schedule.phase_mode == CpmSchedule::PhaseMode::zero) return 0;
    return static_cast<std::int64_t>(
      mix_seed(schedule.phase_seed, static_cast<std::uint64_t>(id)) %
      static_cast<std::uint64_t>(interval_us));
  };

  const int first = scenario.first_frame();
  for (std::size_t fo = 0; fo < scenario.frame_count(); ++fo) {
    const int f = first + static_cast<int>(fo);
    const std::int64_t t_frame = static_cast<std::int64_t>(f) * period_us;
    for (const AgentState & a : scenario.scenes()[fo].agents) {
      if (!is_vehicle(a.category)) continue;
      const int slot = slot_of(vehicles, a.agent_id);
      std::set<int> tracked;
      for (int id : direct.tracked_row(f, slot)) tracked.insert(id);
      if (equipage.is_equipped(a.agent_id)) {
        for (int sender : equipage.equipped) {
          if (sender == a.agent_id) continue;
          const std::int64_t phase = phase_of(sender);
          if (t_frame < phase) continue;
          const std::int64_t k = (t_frame - phase) / interval_us;
          const std::int64_t t_send = phase + k * interval_us;
          const int g = static_cast<int>(t_send / period_us);
          if (!scenario.has_frame(g)) continue;
          if (!scenario.present(sender, g)) continue;       // sender not there to send
          if (!scenario.present(a.agent_id, g)) continue;   // receiver missed delivery
          for (int id : direct.tracked_row(g, slot_of(vehicles, sender))) tracked.insert(id);
        }
      }
      sets[fo][static_cast<std::size_t>(slot)].assign(tracked.begin(), tracked.end());
    }
  }
  return PerceptionMap::from_sets(scenario, std::move(sets));
}

std::vector<FrameRisk> frame_risk_series(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params)
{
  std::vector<FrameRisk> out;
  out.reserve(scenario.frame_count());
  for (const Scene & scene : scenario.scenes()) {
    out.push_back(frame_risk(scene, perception, params));
  }
  return out;
}

std::vector<VehicleRiskSummary> vehicle_risk_summaries(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params)
{
  const std::vector<int> vehicles = scenario.vehicle_ids();
  std::vector<VehicleRiskSummary> out;
  out.reserve(vehicles.size());
  for (int id : vehicles) out.push_back({id, 0});
  for (const Scene & scene : scenario.scenes()) {
    for (const AgentState & veh : scene.agents) {
      if (!is_vehicle(veh.category)) continue;
      const SectorArea wedge = vehicle_safety_area(veh, params);
      for (const AgentState & vru : scene.agents) {
        if (!is_vru(vru.category)) continue;
        if (!sector_disc_intersects(wedge, vru_safety_area(vru, params))) continue;
        if (!perception.is_tracked(scene.frame_index, veh.agent_id, vru.agent_id)) {
          ++out[static_cast<std::size_t>(slot_of(vehicles, veh.agent_id))].occluded_interactions;
        }
      }
    }
  }
  return out;
}

std::vector<MtlResult> mtl(
  const Scenario & scenario, const PerceptionMap & perception, MtlVariant variant)
{
  const std::vector<int> vehicles = scenario.vehicle_ids();
  const double ms_per_frame = 1000.0 / scenario.frame_rate();
  std::vector<MtlResult> out;

  for (int vru : scenario.vru_ids()) {
    const AgentRecord * rec = scenario.record(vru);
    int best = 0;
    if (variant == MtlVariant::any_vehicle) {
      int run = 0;
      for (int f = rec->first_frame; f <= rec->last_frame; ++f) {
        bool tracked = false;
        for (int veh : vehicles) {
          if (!scenario.present(veh, f)) continue;
          if (perception.is_tracked(f, veh, vru)) {
            tracked = true;
            break;
          }
        }
        run = tracked ? 0 : run + 1;
        best = std::max(best, run);
      }
    } else {
      if (vehicles.empty()) best = rec->last_frame - rec->first_frame + 1;
      for (int veh : vehicles) {
        int run = 0;
        for (int f = rec->first_frame; f <= rec->last_frame; ++f) {
          if (!scenario.present(veh, f)) {
            run = 0;
            continue;
          }
          run = perception.is_tracked(f, veh, vru) ? 0 : run + 1;
          best = std::max(best, run);
        }
      }
    }
    out.push_back({vru, best, best * ms_per_frame, variant});
  }
  return out;
}

}  // namespace vruocc::reference
