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

#ifndef VRUOCC_PERCEPTION_HPP_
#define VRUOCC_PERCEPTION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "vruocc/scenario.hpp"

namespace vruocc
{

// Which vehicles carry the perception service at a given penetration rate.
// |equipped| = round(rate * total), round half up.
struct EquipageAssignment
{
  double penetration_rate = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> equipped;  // sorted vehicle agent ids

  bool is_equipped(int vehicle_id) const;
};

std::size_t equipage_count(std::size_t total_vehicles, double rate);

// Uniform sample without replacement, deterministic in (ids, rate, seed).
// Draws at different rates are independent; use nested_equipage when the
// subsets must be nested across rates.
EquipageAssignment assign_equipage(
  std::span<const int> vehicle_ids, double rate, std::uint64_t seed);

// One seeded permutation per seed, equip its prefix: guarantees
// equipped(r1) subset-of equipped(r2) for r1 <= r2 at the same seed.
EquipageAssignment nested_equipage(
  std::span<const int> vehicle_ids, double rate, std::uint64_t seed);

// Message schedule: every equipped vehicle broadcasts its sensed object list
// every `interval` seconds, offset by a per-sender phase. A message stays
// fresh until the sender's next one.
struct CpmSchedule
{
  enum class PhaseMode { zero, seeded };

  double interval = 0.100;  // s
  PhaseMode phase_mode = PhaseMode::zero;
  std::uint64_t phase_seed = 0;
};

// Per frame, per vehicle: the sorted set of agent ids the vehicle tracks
// (direct sensing plus fused messages for equipped vehicles). Immutable and
// shareable once built.
class PerceptionMap
{
public:
  PerceptionMap() = default;

  // Test/diagnostic constructor from raw per-frame, per-vehicle-slot sorted
  // id sets; sets[frame_offset][vehicle_slot] indexed like vehicle_ids().
  static PerceptionMap from_sets(
    const Scenario & scenario, std::vector<std::vector<std::vector<int>>> sets);

  int first_frame() const { return first_frame_; }
  std::size_t frame_count() const { return vehicle_ids_.empty() ? 0 : rows_.size() / vehicle_ids_.size(); }
  bool covers(int frame) const
  {
    return frame >= first_frame_ && frame < first_frame_ + static_cast<int>(frame_count());
  }

  const std::vector<int> & vehicle_ids() const { return vehicle_ids_; }
  const std::vector<int> & vru_ids() const { return vru_ids_; }
  const std::vector<AgentRecord> & registry() const { return registry_; }
  bool present(int agent_id, int frame) const;

  // Throws DataError when the vehicle is absent at the frame.
  const std::vector<int> & tracked(int frame, int vehicle_id) const;

  // Throws DataError when either agent is absent at the frame.
  bool is_tracked(int frame, int vehicle_id, int agent_id) const;

  // Slot-level access (metrics fast path). Slots index vehicle_ids()/vru_ids().
  int vehicle_slot(int vehicle_id) const;
  int vru_slot(int agent_id) const;
  std::size_t mask_words() const { return words_; }
  // Bitmask over VRU slots tracked by the vehicle slot at the frame.
  const std::uint64_t * vru_mask(int frame, int vehicle_slot) const;
  const std::vector<int> & tracked_row(int frame, int vehicle_slot) const;

  bool operator==(const PerceptionMap &) const = default;

private:
  friend PerceptionMap direct_perception(const Scenario &, double, int);
  friend PerceptionMap fuse_cpm_with_direct(
    const Scenario &, const PerceptionMap &, const EquipageAssignment &, const CpmSchedule &, int);

  void init_frame(const Scenario & scenario);
  void rebuild_masks();
  std::size_t row_index(int frame, int vehicle_slot) const
  {
    return static_cast<std::size_t>(frame - first_frame_) * vehicle_ids_.size() +
           static_cast<std::size_t>(vehicle_slot);
  }

  int first_frame_ = 0;
  std::vector<int> vehicle_ids_;
  std::vector<int> vru_ids_;
  std::vector<AgentRecord> registry_;
  std::vector<std::vector<int>> rows_;
  std::vector<std::uint64_t> masks_;
  std::size_t words_ = 0;
};

// All other agents within sensor range and unobstructed line of sight of the
// observer: vehicle footprints (except observer and target) block, VRUs
// never block. Throws DataError when the observer is not in the scene.
std::vector<int> direct_detections(const Scene & scene, int observer_id, double sensor_radius);

// Direct sensing only, for every vehicle and frame; parallel across frames.
PerceptionMap direct_perception(const Scenario & scenario, double sensor_radius, int threads = 0);

// Fused map: each equipped sender broadcasts, on its schedule, the object
// list it sensed at the latest frame at or before the send time; delivery is
// instantaneous and lossless to every equipped vehicle present at the send
// time, and the content stays valid for one interval. Unequipped vehicles
// keep direct detections only.
PerceptionMap fuse_cpm(
  const Scenario & scenario, const EquipageAssignment & equipage, const CpmSchedule & schedule,
  double sensor_radius, int threads = 0);

// Same, reusing an already computed direct-perception map (the expensive,
// equipage-independent part).
PerceptionMap fuse_cpm_with_direct(
  const Scenario & scenario, const PerceptionMap & direct, const EquipageAssignment & equipage,
  const CpmSchedule & schedule, int threads = 0);

bool is_tracked(const PerceptionMap & perception, int frame, int vehicle_id, int agent_id);

}  // namespace vruocc

#endif  // VRUOCC_PERCEPTION_HPP_
