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

#ifndef VRUOCC_SCENARIO_HPP_
#define VRUOCC_SCENARIO_HPP_

#include <cstddef>
#include <vector>

#include "vruocc/agent.hpp"

namespace vruocc
{

// All agent states at one frame. Agents are kept sorted by agent_id.
struct Scene
{
  int frame_index = 0;
  double timestamp = 0.0;  // s, frame_index / frame_rate
  std::vector<AgentState> agents;

  const AgentState * find(int agent_id) const;

  bool operator==(const Scene &) const = default;
};

// Registry entry: one agent's category and contiguous lifespan.
struct AgentRecord
{
  int agent_id = 0;
  AgentCategory category = AgentCategory::car;
  int first_frame = 0;
  int last_frame = 0;

  bool operator==(const AgentRecord &) const = default;
};

// An immutable recorded (or generated) scenario: a gap-free, strictly
// increasing sequence of scenes plus the derived agent registry. Safe to
// share read-only across threads.
class Scenario
{
public:
  Scenario() = default;

  // Validates all structural invariants (contiguous frames, unique sorted
  // agent ids per scene, contiguous per-agent lifespans, consistent
  // categories, finite kinematics, headings in [0, 2*pi), vehicle footprints
  // positive) and derives the registry. Throws DataError on violation.
  static Scenario build(double frame_rate, std::vector<Scene> scenes);

  double frame_rate() const { return frame_rate_; }
  const std::vector<Scene> & scenes() const { return scenes_; }
  const std::vector<AgentRecord> & registry() const { return registry_; }

  bool empty() const { return scenes_.empty(); }
  int first_frame() const { return scenes_.empty() ? 0 : scenes_.front().frame_index; }
  int last_frame() const { return scenes_.empty() ? -1 : scenes_.back().frame_index; }
  std::size_t frame_count() const { return scenes_.size(); }

  bool has_frame(int frame) const
  {
    return !scenes_.empty() && frame >= first_frame() && frame <= last_frame();
  }
  const Scene & scene_at(int frame) const;

  const AgentRecord * record(int agent_id) const;
  bool present(int agent_id, int frame) const;

  // Agent ids ascending, filtered by category class.
  std::vector<int> vehicle_ids() const;
  std::vector<int> vru_ids() const;

  bool operator==(const Scenario &) const = default;

private:
  double frame_rate_ = 0.0;
  std::vector<Scene> scenes_;
  std::vector<AgentRecord> registry_;
};

}  // namespace vruocc

#endif  // VRUOCC_SCENARIO_HPP_
