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

#include "vruocc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vruocc/errors.hpp"

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

void scene_pairs(
  const Scene & scene, const SafetyParams & params, std::vector<InteractionPair> & out)
{
  out.clear();
  for (const AgentState & veh : scene.agents) {
    if (!is_vehicle(veh.category)) continue;
    const SectorArea wedge = vehicle_safety_area(veh, params);
    if (wedge.radius <= 0.0) continue;
    for (const AgentState & vru : scene.agents) {
      if (!is_vru(vru.category)) continue;
      if (sector_disc_intersects(wedge, vru_safety_area(vru, params))) {
        out.push_back({veh.agent_id, vru.agent_id});
      }
    }
  }
}

bool mask_bit(const std::uint64_t * mask, int slot)
{
  return (mask[static_cast<std::size_t>(slot) / 64] >>
          (static_cast<std::size_t>(slot) % 64)) & 1U;
}

void require_coverage(const Scenario & scenario, const PerceptionMap & perception)
{
  if (scenario.empty()) return;
  if (!perception.covers(scenario.first_frame()) || !perception.covers(scenario.last_frame())) {
    throw DataError("perception map does not cover the scenario frames");
  }
}

}  // namespace

std::string_view mtl_variant_label(MtlVariant v)
{
  return v == MtlVariant::any_vehicle ? "any_vehicle" : "per_vehicle_max";
}

std::optional<MtlVariant> parse_mtl_variant(std::string_view label)
{
  if (label == "any_vehicle") return MtlVariant::any_vehicle;
  if (label == "per_vehicle_max") return MtlVariant::per_vehicle_max;
  return std::nullopt;
}

FrameRisk frame_risk(
  const Scene & scene, const PerceptionMap & perception, const SafetyParams & params)
{
  if (!perception.covers(scene.frame_index)) {
    throw DataError("perception does not cover frame " + std::to_string(scene.frame_index));
  }
  FrameRisk out;
  out.frame_index = scene.frame_index;
  std::vector<InteractionPair> pairs;
  scene_pairs(scene, params, pairs);
  out.significant = static_cast<int>(pairs.size());
  for (const auto & p : pairs) {
    if (!perception.is_tracked(scene.frame_index, p.vehicle_id, p.vru_id)) ++out.occluded;
  }
  if (out.significant > 0) {
    out.ratio = static_cast<double>(out.occluded) / static_cast<double>(out.significant);
  }
  return out;
}

std::vector<std::vector<InteractionPair>> significant_pairs(
  const Scenario & scenario, const SafetyParams & params, int threads)
{
  const auto frames = static_cast<long>(scenario.frame_count());
  std::vector<std::vector<InteractionPair>> out(static_cast<std::size_t>(frames));
  const int nthreads = resolve_threads(threads);
  (void)nthreads;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
  for (long f = 0; f < frames; ++f) {
    scene_pairs(scenario.scenes()[static_cast<std::size_t>(f)], params,
                out[static_cast<std::size_t>(f)]);
  }
  return out;
}

std::vector<FrameRisk> frame_risks_from_pairs(
  const Scenario & scenario, const std::vector<std::vector<InteractionPair>> & pairs,
  const PerceptionMap & perception, int threads)
{
  require_coverage(scenario, perception);
  const auto frames = static_cast<long>(scenario.frame_count());
  if (pairs.size() != static_cast<std::size_t>(frames)) {
    throw std::invalid_argument("frame_risks_from_pairs: pairs/scenario mismatch");
  }
  std::vector<FrameRisk> out(static_cast<std::size_t>(frames));
  const int first = scenario.first_frame();
  const int nthreads = resolve_threads(threads);
  (void)nthreads;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
  for (long f = 0; f < frames; ++f) {
    const auto & frame_pairs = pairs[static_cast<std::size_t>(f)];
    FrameRisk r;
    r.frame_index = first + static_cast<int>(f);
    r.significant = static_cast<int>(frame_pairs.size());
    for (const auto & p : frame_pairs) {
      const int vslot = perception.vehicle_slot(p.vehicle_id);
      const int uslot = perception.vru_slot(p.vru_id);
      if (!mask_bit(perception.vru_mask(r.frame_index, vslot), uslot)) ++r.occluded;
    }
    if (r.significant > 0) {
      r.ratio = static_cast<double>(r.occluded) / static_cast<double>(r.significant);
    }
    out[static_cast<std::size_t>(f)] = r;
  }
  return out;
}

std::vector<FrameRisk> frame_risk_series(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params,
  int threads)
{
  return frame_risks_from_pairs(
    scenario, significant_pairs(scenario, params, threads), perception, threads);
}

std::vector<VehicleRiskSummary> vehicle_summaries_from_pairs(
  const Scenario & scenario, const std::vector<std::vector<InteractionPair>> & pairs,
  const PerceptionMap & perception, int threads)
{
  require_coverage(scenario, perception);
  const auto frames = static_cast<long>(scenario.frame_count());
  if (pairs.size() != static_cast<std::size_t>(frames)) {
    throw std::invalid_argument("vehicle_summaries_from_pairs: pairs/scenario mismatch");
  }
  const std::vector<int> & vehicles = perception.vehicle_ids();
  const int first = scenario.first_frame();
  const int nthreads = resolve_threads(threads);
  std::vector<long> counts(vehicles.size(), 0);

#if defined(_OPENMP)
#pragma omp parallel num_threads(nthreads)
#endif
  {
    std::vector<long> local(vehicles.size(), 0);
#if defined(_OPENMP)
#pragma omp for schedule(static)
#endif
    for (long f = 0; f < frames; ++f) {
      const int frame = first + static_cast<int>(f);
      for (const auto & p : pairs[static_cast<std::size_t>(f)]) {
        const int vslot = perception.vehicle_slot(p.vehicle_id);
        const int uslot = perception.vru_slot(p.vru_id);
        if (!mask_bit(perception.vru_mask(frame, vslot), uslot)) {
          ++local[static_cast<std::size_t>(vslot)];
        }
      }
    }
#if defined(_OPENMP)
#pragma omp critical
#endif
    {
      for (std::size_t s = 0; s < counts.size(); ++s) counts[s] += local[s];
    }
  }

  std::vector<VehicleRiskSummary> out(vehicles.size());
  for (std::size_t s = 0; s < vehicles.size(); ++s) out[s] = {vehicles[s], counts[s]};
  return out;
}

std::vector<VehicleRiskSummary> vehicle_risk_summaries(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params,
  int threads)
{
  return vehicle_summaries_from_pairs(
    scenario, significant_pairs(scenario, params, threads), perception, threads);
}

std::vector<MtlResult> mtl(
  const Scenario & scenario, const PerceptionMap & perception, MtlVariant variant)
{
  require_coverage(scenario, perception);
  const std::vector<int> & vrus = perception.vru_ids();
  const std::vector<int> & vehicles = perception.vehicle_ids();
  const double ms_per_frame = 1000.0 / scenario.frame_rate();

  std::vector<MtlResult> out;
  out.reserve(vrus.size());

  struct Lifespan
  {
    int first;
    int last;
  };
  auto lifespan = [&](int id) {
    const AgentRecord * r = scenario.record(id);
    if (r == nullptr || r->last_frame < r->first_frame) {
      throw DataError("agent " + std::to_string(id) + " has an empty lifespan");
    }
    return Lifespan{r->first_frame, r->last_frame};
  };

  const std::size_t words = perception.mask_words();

  if (variant == MtlVariant::any_vehicle) {
    // Per frame, OR the tracked-VRU masks of all present vehicles, then scan
    // run lengths per VRU.
    std::vector<Lifespan> veh_span(vehicles.size());
    for (std::size_t s = 0; s < vehicles.size(); ++s) veh_span[s] = lifespan(vehicles[s]);
    std::vector<int> run(vrus.size(), 0);
    std::vector<int> best(vrus.size(), 0);
    std::vector<Lifespan> vru_span(vrus.size());
    for (std::size_t u = 0; u < vrus.size(); ++u) vru_span[u] = lifespan(vrus[u]);
    std::vector<std::uint64_t> any(words, 0);

    for (int f = scenario.first_frame(); f <= scenario.last_frame(); ++f) {
      std::fill(any.begin(), any.end(), 0);
      for (std::size_t s = 0; s < vehicles.size(); ++s) {
        if (f < veh_span[s].first || f > veh_span[s].last) continue;
        const std::uint64_t * m = perception.vru_mask(f, static_cast<int>(s));
        for (std::size_t w = 0; w < words; ++w) any[w] |= m[w];
      }
      for (std::size_t u = 0; u < vrus.size(); ++u) {
        if (f < vru_span[u].first || f > vru_span[u].last) continue;
        const bool tracked = (any[u / 64] >> (u % 64)) & 1U;
        if (tracked) {
          run[u] = 0;
        } else {
          best[u] = std::max(best[u], ++run[u]);
        }
      }
    }
    for (std::size_t u = 0; u < vrus.size(); ++u) {
      out.push_back({vrus[u], best[u], best[u] * ms_per_frame, variant});
    }
    return out;
  }

  // Formula-literal variant: longest untracked run per vehicle over frames
  // where both are present, maximum over vehicles. With no vehicle in the
  // scenario at all the gap is the whole lifespan (nothing ever tracks).
  for (std::size_t u = 0; u < vrus.size(); ++u) {
    const Lifespan li = lifespan(vrus[u]);
    int best = 0;
    if (vehicles.empty()) {
      best = li.last - li.first + 1;
    }
    for (std::size_t s = 0; s < vehicles.size(); ++s) {
      const Lifespan lj = lifespan(vehicles[s]);
      const int lo = std::max(li.first, lj.first);
      const int hi = std::min(li.last, lj.last);
      int run = 0;
      for (int f = lo; f <= hi; ++f) {
        const bool tracked = mask_bit(perception.vru_mask(f, static_cast<int>(s)),
                                      static_cast<int>(u));
        if (tracked) {
          run = 0;
        } else {
          best = std::max(best, ++run);
        }
      }
    }
    out.push_back({vrus[u], best, best * ms_per_frame, variant});
  }
  return out;
}

std::vector<CcdfPoint> ccdf(std::span<const double> values)
{
  if (values.empty()) throw std::invalid_argument("ccdf: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<CcdfPoint> out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    out.push_back({sorted[i], static_cast<double>(sorted.size() - j) / n});
    i = j;
  }
  return out;
}

BoxplotStats boxplot_stats(std::span<const double> values)
{
  if (values.empty()) throw std::invalid_argument("boxplot_stats: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
  };
  BoxplotStats s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  for (double v : sorted) {
    if (v >= lo_fence) {
      s.whisker_low = v;
      break;
    }
  }
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (*it <= hi_fence) {
      s.whisker_high = *it;
      break;
    }
  }
  for (double v : sorted) {
    if (v < lo_fence || v > hi_fence) s.outliers.push_back(v);
  }
  return s;
}

}  // namespace vruocc
