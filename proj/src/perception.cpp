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

#include "vruocc/perception.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vruocc/errors.hpp"
#include "vruocc/geometry.hpp"
#include "vruocc/rng.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace vruocc
{

namespace
{

int resolve_threads(int requested)
{
#if defined(_OPENMP)
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

bool contains_sorted(const std::vector<int> & v, int id)
{
  return std::binary_search(v.begin(), v.end(), id);
}

double sq_dist_point_segment(Vec2 p, Vec2 a, Vec2 ab, double ab_len2)
{
  const Vec2 ap = p - a;
  double t = ab_len2 > 0.0 ? dot(ap, ab) / ab_len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 c = a + ab * t;
  return norm_sq(p - c);
}

// Per-scene cache of vehicle footprints used as sight obstructions.
struct SceneObstacles
{
  std::vector<std::size_t> agent_index;  // into scene.agents
  std::vector<ObstacleRect> rects;
  std::vector<double> bound_radius_sq;  // squared half-diagonal

  void build(const Scene & scene)
  {
    agent_index.clear();
    rects.clear();
    bound_radius_sq.clear();
    for (std::size_t i = 0; i < scene.agents.size(); ++i) {
      const AgentState & a = scene.agents[i];
      if (!is_vehicle(a.category)) continue;
      agent_index.push_back(i);
      rects.push_back(footprint_rect(a));
      const double hd2 = (a.footprint_length * a.footprint_length +
                          a.footprint_width * a.footprint_width) *
                         0.25;
      bound_radius_sq.push_back(hd2);
    }
  }

  bool blocked(Vec2 from, Vec2 to, std::size_t skip_a, std::size_t skip_b) const
  {
    const Vec2 ab = to - from;
    const double ab_len2 = norm_sq(ab);
    for (std::size_t k = 0; k < rects.size(); ++k) {
      const std::size_t ai = agent_index[k];
      if (ai == skip_a || ai == skip_b) continue;
      if (sq_dist_point_segment(rects[k].center, from, ab, ab_len2) > bound_radius_sq[k]) {
        continue;
      }
      if (segment_blocked_by_rect(from, to, rects[k])) return true;
    }
    return false;
  }
};

void detect_for_observer(
  const Scene & scene, std::size_t observer_index, const SceneObstacles & obstacles,
  double sensor_radius, std::vector<int> & out)
{
  out.clear();
  const AgentState & obs = scene.agents[observer_index];
  const double r2 = sensor_radius * sensor_radius;
  for (std::size_t t = 0; t < scene.agents.size(); ++t) {
    if (t == observer_index) continue;
    const AgentState & tgt = scene.agents[t];
    if (norm_sq(tgt.position - obs.position) > r2) continue;
    if (!obstacles.blocked(obs.position, tgt.position, observer_index, t)) {
      out.push_back(tgt.agent_id);  // scene agents are id-sorted, so out stays sorted
    }
  }
}

}  // namespace

bool EquipageAssignment::is_equipped(int vehicle_id) const
{
  return contains_sorted(equipped, vehicle_id);
}

std::size_t equipage_count(std::size_t total_vehicles, double rate)
{
  const double n = static_cast<double>(total_vehicles);
  const auto m = static_cast<std::size_t>(std::floor(rate * n + 0.5));
  return std::min(m, total_vehicles);
}

namespace
{

EquipageAssignment prefix_equipage(
  std::span<const int> vehicle_ids, double rate, std::uint64_t seed, std::uint64_t stream)
{
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("penetration rate must be in [0, 1]");
  }
  EquipageAssignment out;
  out.penetration_rate = rate;
  out.seed = seed;
  std::vector<int> pool(vehicle_ids.begin(), vehicle_ids.end());
  std::sort(pool.begin(), pool.end());
  SplitMix64 rng(mix_seed(seed, stream));
  deterministic_shuffle(pool, rng);
  pool.resize(equipage_count(pool.size(), rate));
  std::sort(pool.begin(), pool.end());
  out.equipped = std::move(pool);
  return out;
}

}  // namespace

EquipageAssignment assign_equipage(
  std::span<const int> vehicle_ids, double rate, std::uint64_t seed)
{
  // Rate folded into the stream: draws at different rates are independent.
  return prefix_equipage(vehicle_ids, rate, seed, std::bit_cast<std::uint64_t>(rate));
}

EquipageAssignment nested_equipage(
  std::span<const int> vehicle_ids, double rate, std::uint64_t seed)
{
  // One permutation per seed; the equipped set is its prefix, so subsets are
  // nested across rates.
  return prefix_equipage(vehicle_ids, rate, seed, 0x6E65737465644551ULL);
}

PerceptionMap PerceptionMap::from_sets(
  const Scenario & scenario, std::vector<std::vector<std::vector<int>>> sets)
{
  PerceptionMap map;
  map.init_frame(scenario);
  const std::size_t v = map.vehicle_ids_.size();
  if (sets.size() != map.frame_count()) {
    throw std::invalid_argument("from_sets: frame count mismatch");
  }
  for (std::size_t f = 0; f < sets.size(); ++f) {
    if (sets[f].size() != v) throw std::invalid_argument("from_sets: vehicle count mismatch");
    for (std::size_t s = 0; s < v; ++s) {
      map.rows_[f * v + s] = std::move(sets[f][s]);
    }
  }
  map.rebuild_masks();
  return map;
}

void PerceptionMap::init_frame(const Scenario & scenario)
{
  first_frame_ = scenario.first_frame();
  vehicle_ids_ = scenario.vehicle_ids();
  vru_ids_ = scenario.vru_ids();
  registry_ = scenario.registry();
  words_ = (vru_ids_.size() + 63) / 64;
  rows_.assign(scenario.frame_count() * vehicle_ids_.size(), {});
  masks_.assign(rows_.size() * words_, 0);
}

void PerceptionMap::rebuild_masks()
{
  masks_.assign(rows_.size() * words_, 0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (int id : rows_[r]) {
      const int slot = vru_slot(id);
      if (slot < 0) continue;
      masks_[r * words_ + static_cast<std::size_t>(slot) / 64] |=
        std::uint64_t{1} << (static_cast<std::size_t>(slot) % 64);
    }
  }
}

bool PerceptionMap::present(int agent_id, int frame) const
{
  auto it = std::lower_bound(
    registry_.begin(), registry_.end(), agent_id,
    [](const AgentRecord & r, int id) { return r.agent_id < id; });
  return it != registry_.end() && it->agent_id == agent_id && frame >= it->first_frame &&
         frame <= it->last_frame;
}

const std::vector<int> & PerceptionMap::tracked(int frame, int vehicle_id) const
{
  if (!covers(frame)) throw DataError("perception does not cover frame " + std::to_string(frame));
  const int slot = vehicle_slot(vehicle_id);
  if (slot < 0 || !present(vehicle_id, frame)) {
    throw DataError(
      "vehicle " + std::to_string(vehicle_id) + " absent at frame " + std::to_string(frame));
  }
  return rows_[row_index(frame, slot)];
}

bool PerceptionMap::is_tracked(int frame, int vehicle_id, int agent_id) const
{
  const std::vector<int> & row = tracked(frame, vehicle_id);
  if (!present(agent_id, frame)) {
    throw DataError(
      "agent " + std::to_string(agent_id) + " absent at frame " + std::to_string(frame));
  }
  return contains_sorted(row, agent_id);
}

int PerceptionMap::vehicle_slot(int vehicle_id) const
{
  auto it = std::lower_bound(vehicle_ids_.begin(), vehicle_ids_.end(), vehicle_id);
  if (it == vehicle_ids_.end() || *it != vehicle_id) return -1;
  return static_cast<int>(it - vehicle_ids_.begin());
}

int PerceptionMap::vru_slot(int agent_id) const
{
  auto it = std::lower_bound(vru_ids_.begin(), vru_ids_.end(), agent_id);
  if (it == vru_ids_.end() || *it != agent_id) return -1;
  return static_cast<int>(it - vru_ids_.begin());
}

const std::uint64_t * PerceptionMap::vru_mask(int frame, int vehicle_slot) const
{
  return masks_.data() + row_index(frame, vehicle_slot) * words_;
}

const std::vector<int> & PerceptionMap::tracked_row(int frame, int vehicle_slot) const
{
  return rows_[row_index(frame, vehicle_slot)];
}

std::vector<int> direct_detections(const Scene & scene, int observer_id, double sensor_radius)
{
  const AgentState * observer = scene.find(observer_id);
  if (observer == nullptr) {
    throw DataError(
      "observer " + std::to_string(observer_id) + " not in scene " +
      std::to_string(scene.frame_index));
  }
  if (!is_vehicle(observer->category)) {
    throw std::invalid_argument("direct_detections: observer must be a vehicle");
  }
  SceneObstacles obstacles;
  obstacles.build(scene);
  std::vector<int> out;
  detect_for_observer(
    scene, static_cast<std::size_t>(observer - scene.agents.data()), obstacles, sensor_radius,
    out);
  return out;
}

PerceptionMap direct_perception(const Scenario & scenario, double sensor_radius, int threads)
{
  if (!(sensor_radius > 0.0)) {
    throw std::invalid_argument("direct_perception: sensor_radius must be > 0");
  }
  PerceptionMap map;
  map.init_frame(scenario);
  const auto frames = static_cast<long>(scenario.frame_count());
  const std::size_t v = map.vehicle_ids_.size();
  const int nthreads = resolve_threads(threads);
  (void)nthreads;

#if defined(_OPENMP)
#pragma omp parallel num_threads(nthreads)
#endif
  {
    SceneObstacles obstacles;
    std::vector<int> detections;
#if defined(_OPENMP)
#pragma omp for schedule(static)
#endif
    for (long f = 0; f < frames; ++f) {
      const Scene & scene = scenario.scenes()[static_cast<std::size_t>(f)];
      obstacles.build(scene);
      for (std::size_t oi : obstacles.agent_index) {
        const int id = scene.agents[oi].agent_id;
        const int slot = map.vehicle_slot(id);
        detect_for_observer(scene, oi, obstacles, sensor_radius, detections);
        map.rows_[static_cast<std::size_t>(f) * v + static_cast<std::size_t>(slot)] = detections;
      }
    }
  }
  map.rebuild_masks();
  return map;
}

PerceptionMap fuse_cpm_with_direct(
  const Scenario & scenario, const PerceptionMap & direct, const EquipageAssignment & equipage,
  const CpmSchedule & schedule, int threads)
{
  if (!(schedule.interval > 0.0)) {
    throw std::invalid_argument("CPM interval must be > 0");
  }
  if (direct.first_frame() != scenario.first_frame() ||
      direct.frame_count() != scenario.frame_count()) {
    throw std::invalid_argument("fuse_cpm_with_direct: direct map does not match scenario");
  }

  PerceptionMap map = direct;  // unequipped vehicles keep direct detections only

  // Time bookkeeping on an integer microsecond grid keeps the frame/message
  // alignment exact and portable.
  const std::int64_t period_us = std::llround(1e6 / scenario.frame_rate());
  const std::int64_t interval_us = std::llround(schedule.interval * 1e6);
  if (period_us <= 0 || interval_us <= 0) {
    throw std::invalid_argument("fuse_cpm_with_direct: degenerate time grid");
  }

  const std::vector<int> & senders = equipage.equipped;
  const auto n_senders = senders.size();
  if (n_senders == 0) return map;

  std::vector<std::int64_t> phase_us(n_senders, 0);
  if (schedule.phase_mode == CpmSchedule::PhaseMode::seeded) {
    for (std::size_t s = 0; s < n_senders; ++s) {
      phase_us[static_cast<std::size_t>(s)] = static_cast<std::int64_t>(
        mix_seed(schedule.phase_seed, static_cast<std::uint64_t>(senders[s])) %
        static_cast<std::uint64_t>(interval_us));
    }
  }
  std::vector<int> sender_slot(n_senders);
  std::vector<int> sender_first(n_senders);
  std::vector<int> sender_last(n_senders);
  for (std::size_t s = 0; s < n_senders; ++s) {
    sender_slot[s] = map.vehicle_slot(senders[s]);
    const AgentRecord * rec = scenario.record(senders[s]);
    if (sender_slot[s] < 0 || rec == nullptr) {
      throw std::invalid_argument("equipped id is not a vehicle of the scenario");
    }
    sender_first[s] = rec->first_frame;
    sender_last[s] = rec->last_frame;
  }

  // Dense agent index (ascending over all registry ids).
  std::vector<int> all_ids;
  all_ids.reserve(scenario.registry().size());
  for (const auto & r : scenario.registry()) all_ids.push_back(r.agent_id);
  const auto n_agents = all_ids.size();
  auto dense_of = [&](int id) {
    return static_cast<std::size_t>(
      std::lower_bound(all_ids.begin(), all_ids.end(), id) - all_ids.begin());
  };

  const int first = scenario.first_frame();
  const auto frames = static_cast<long>(scenario.frame_count());
  const std::size_t v = map.vehicle_ids_.size();
  const int nthreads = resolve_threads(threads);
  (void)nthreads;

#if defined(_OPENMP)
#pragma omp parallel num_threads(nthreads)
#endif
  {
    // One CPM batch per distinct sampling frame g among this frame's senders.
    struct Batch
    {
      int g;
      std::vector<std::size_t> sender_idx;
      std::vector<std::size_t> carried;  // distinct dense ids, with cnt[] populated
    };
    std::vector<Batch> batches;
    std::vector<int> cnt(n_agents, 0);
    std::vector<char> marked(n_agents, 0);
    std::vector<std::size_t> collected;

    // Message payloads always come from the immutable direct map: a CPM
    // carries what the sender itself sensed, never relayed content.
    auto content_of = [&](std::size_t s, int g) -> const std::vector<int> & {
      return direct.tracked_row(g, sender_slot[s]);
    };

#if defined(_OPENMP)
#pragma omp for schedule(static)
#endif
    for (long fo = 0; fo < frames; ++fo) {
      const int f = first + static_cast<int>(fo);
      const std::int64_t t_frame = static_cast<std::int64_t>(f) * period_us;

      batches.clear();
      for (std::size_t s = 0; s < n_senders; ++s) {
        if (t_frame < phase_us[s]) continue;  // no message sent yet
        const std::int64_t k = (t_frame - phase_us[s]) / interval_us;
        const std::int64_t t_send = phase_us[s] + k * interval_us;
        const int g = static_cast<int>(t_send / period_us);
        if (!scenario.has_frame(g)) continue;
        if (g < sender_first[s] || g > sender_last[s]) continue;  // sender absent at send time
        auto it = std::find_if(batches.begin(), batches.end(), [&](const Batch & b) {
          return b.g == g;
        });
        if (it == batches.end()) {
          batches.push_back({g, {}, {}});
          it = batches.end() - 1;
        }
        it->sender_idx.push_back(s);
      }
      for (Batch & b : batches) {
        for (std::size_t s : b.sender_idx) {
          for (int id : content_of(s, b.g)) {
            const std::size_t d = dense_of(id);
            if (cnt[d]++ == 0) b.carried.push_back(d);
          }
        }
      }

      // Receivers: equipped vehicles present now; they get every batch whose
      // send time they were present for, minus their own contribution.
      for (std::size_t j = 0; j < n_senders; ++j) {
        if (f < sender_first[j] || f > sender_last[j]) continue;
        const std::size_t row = static_cast<std::size_t>(fo) * v +
                                static_cast<std::size_t>(sender_slot[j]);
        collected.clear();
        for (int id : direct.tracked_row(f, sender_slot[j])) {
          const std::size_t d = dense_of(id);
          if (!marked[d]) {
            marked[d] = 1;
            collected.push_back(d);
          }
        }
        for (const Batch & b : batches) {
          if (b.g < sender_first[j] || b.g > sender_last[j]) continue;  // missed delivery
          const bool own = std::find(b.sender_idx.begin(), b.sender_idx.end(), j) !=
                           b.sender_idx.end();
          if (own) {
            for (int id : content_of(j, b.g)) --cnt[dense_of(id)];
          }
          for (std::size_t d : b.carried) {
            if (cnt[d] > 0 && !marked[d]) {
              marked[d] = 1;
              collected.push_back(d);
            }
          }
          if (own) {
            for (int id : content_of(j, b.g)) ++cnt[dense_of(id)];
          }
        }
        std::sort(collected.begin(), collected.end());
        std::vector<int> row_ids;
        row_ids.reserve(collected.size());
        for (std::size_t d : collected) {
          marked[d] = 0;
          row_ids.push_back(all_ids[d]);
        }
        map.rows_[row] = std::move(row_ids);
      }

      for (Batch & b : batches) {
        for (std::size_t d : b.carried) cnt[d] = 0;
      }
    }
  }

  map.rebuild_masks();
  return map;
}

PerceptionMap fuse_cpm(
  const Scenario & scenario, const EquipageAssignment & equipage, const CpmSchedule & schedule,
  double sensor_radius, int threads)
{
  const PerceptionMap direct = direct_perception(scenario, sensor_radius, threads);
  return fuse_cpm_with_direct(scenario, direct, equipage, schedule, threads);
}

bool is_tracked(const PerceptionMap & perception, int frame, int vehicle_id, int agent_id)
{
  return perception.is_tracked(frame, vehicle_id, agent_id);
}

}  // namespace vruocc
