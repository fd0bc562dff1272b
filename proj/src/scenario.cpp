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

#include "vruocc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "vruocc/errors.hpp"

namespace vruocc
{

namespace
{

bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

void check_agent(const AgentState & a, int frame)
{
  const std::string who = "agent " + std::to_string(a.agent_id) + " at frame " +
                          std::to_string(frame);
  if (!finite(a.position) || !finite(a.velocity)) {
    throw DataError("non-finite position/velocity for " + who);
  }
  if (!(a.heading >= 0.0 && a.heading < 2.0 * std::numbers::pi)) {
    throw DataError("heading out of [0, 2*pi) for " + who);
  }
  if (a.footprint_length < 0.0 || a.footprint_width < 0.0) {
    throw DataError("negative footprint for " + who);
  }
  if (is_vehicle(a.category) && (a.footprint_length <= 0.0 || a.footprint_width <= 0.0)) {
    throw DataError("vehicle footprint must be positive for " + who);
  }
}

}  // namespace

const AgentState * Scene::find(int agent_id) const
{
  auto it = std::lower_bound(
    agents.begin(), agents.end(), agent_id,
    [](const AgentState & a, int id) { return a.agent_id < id; });
  if (it == agents.end() || it->agent_id != agent_id) return nullptr;
  return &*it;
}

Scenario Scenario::build(double frame_rate, std::vector<Scene> scenes)
{
  if (!(frame_rate > 0.0) || !std::isfinite(frame_rate)) {
    throw DataError("frame rate must be positive and finite");
  }

  struct Span
  {
    AgentCategory category;
    int first;
    int last;
    long observed;  // frames the agent actually appeared in
  };
  std::map<int, Span> spans;

  for (std::size_t i = 0; i < scenes.size(); ++i) {
    Scene & scene = scenes[i];
    if (scene.frame_index < 0) throw DataError("negative frame index");
    if (i > 0 && scene.frame_index != scenes[i - 1].frame_index + 1) {
      throw DataError(
        "scenes not contiguous: frame " + std::to_string(scenes[i - 1].frame_index) +
        " followed by " + std::to_string(scene.frame_index));
    }
    scene.timestamp = scene.frame_index / frame_rate;
    std::sort(scene.agents.begin(), scene.agents.end(), [](const auto & a, const auto & b) {
      return a.agent_id < b.agent_id;
    });
    for (std::size_t k = 0; k < scene.agents.size(); ++k) {
      const AgentState & a = scene.agents[k];
      if (k > 0 && scene.agents[k - 1].agent_id == a.agent_id) {
        throw DataError(
          "duplicate agent id " + std::to_string(a.agent_id) + " in frame " +
          std::to_string(scene.frame_index));
      }
      check_agent(a, scene.frame_index);
      auto [it, inserted] = spans.try_emplace(
        a.agent_id, Span{a.category, scene.frame_index, scene.frame_index, 1});
      if (!inserted) {
        Span & s = it->second;
        if (s.category != a.category) {
          throw DataError("agent " + std::to_string(a.agent_id) + " changes category");
        }
        s.last = scene.frame_index;
        ++s.observed;
      }
    }
  }

  Scenario out;
  out.frame_rate_ = frame_rate;
  out.scenes_ = std::move(scenes);
  out.registry_.reserve(spans.size());
  for (const auto & [id, s] : spans) {
    if (s.observed != static_cast<long>(s.last - s.first + 1)) {
      throw DataError(
        "track " + std::to_string(id) + " has non-contiguous frames (" +
        std::to_string(s.observed) + " rows over [" + std::to_string(s.first) + ", " +
        std::to_string(s.last) + "])");
    }
    out.registry_.push_back({id, s.category, s.first, s.last});
  }
  return out;
}

const Scene & Scenario::scene_at(int frame) const
{
  if (!has_frame(frame)) throw DataError("frame " + std::to_string(frame) + " out of range");
  return scenes_[static_cast<std::size_t>(frame - first_frame())];
}

const AgentRecord * Scenario::record(int agent_id) const
{
  auto it = std::lower_bound(
    registry_.begin(), registry_.end(), agent_id,
    [](const AgentRecord & r, int id) { return r.agent_id < id; });
  if (it == registry_.end() || it->agent_id != agent_id) return nullptr;
  return &*it;
}

bool Scenario::present(int agent_id, int frame) const
{
  const AgentRecord * r = record(agent_id);
  return r != nullptr && frame >= r->first_frame && frame <= r->last_frame;
}

std::vector<int> Scenario::vehicle_ids() const
{
  std::vector<int> out;
  for (const auto & r : registry_) {
    if (is_vehicle(r.category)) out.push_back(r.agent_id);
  }
  return out;
}

std::vector<int> Scenario::vru_ids() const
{
  std::vector<int> out;
  for (const auto & r : registry_) {
    if (is_vru(r.category)) out.push_back(r.agent_id);
  }
  return out;
}

}  // namespace vruocc
