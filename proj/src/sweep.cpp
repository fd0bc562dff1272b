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

#include "vruocc/sweep.hpp"

#include <algorithm>
#include <utility>

#include "vruocc/metrics.hpp"
#include "vruocc/perception.hpp"

namespace vruocc
{

namespace
{

MtlSummary summarize_mtl(std::vector<MtlResult> results)
{
  MtlSummary out;
  std::vector<double> ms;
  ms.reserve(results.size());
  for (auto & r : results) {
    r.mtl_ms = quantize6(r.mtl_ms);
    ms.push_back(r.mtl_ms);
  }
  out.per_vru = std::move(results);
  if (!ms.empty()) {
    for (auto & p : ccdf(ms)) {
      out.ccdf_ms.push_back({quantize6(p.threshold), quantize6(p.fraction)});
    }
  }
  return out;
}

std::optional<BoxplotStats> summarize_boxplot(const std::vector<VehicleRiskSummary> & counts)
{
  if (counts.empty()) return std::nullopt;
  std::vector<double> values;
  values.reserve(counts.size());
  for (const auto & c : counts) values.push_back(static_cast<double>(c.occluded_interactions));
  BoxplotStats s = boxplot_stats(values);
  s.min = quantize6(s.min);
  s.q1 = quantize6(s.q1);
  s.median = quantize6(s.median);
  s.q3 = quantize6(s.q3);
  s.max = quantize6(s.max);
  s.whisker_low = quantize6(s.whisker_low);
  s.whisker_high = quantize6(s.whisker_high);
  for (auto & o : s.outliers) o = quantize6(o);
  return s;
}

}  // namespace

Scenario load_source_scenario(const RunConfig & config)
{
  if (const auto * ind = std::get_if<IndSource>(&config.source)) {
    return load_ind_recording(ind->tracks, ind->tracks_meta, ind->recording_meta, ind->columns);
  }
  return generate_synthetic(std::get<SyntheticSpec>(config.source), config.synthetic_seed);
}

std::string derive_scenario_id(const RunConfig & config)
{
  if (config.scenario_id) return *config.scenario_id;
  if (const auto * ind = std::get_if<IndSource>(&config.source)) {
    return std::filesystem::path(ind->tracks).stem().string();
  }
  return "synthetic";
}

SweepReport run_sweep_on(
  const Scenario & scenario, const RunConfig & config, const ExecOptions & options)
{
  const int threads = options.threads;

  // Equipage-independent precomputation shared by every sweep cell.
  const PerceptionMap direct = direct_perception(scenario, config.sensor_radius, threads);
  const auto pairs = significant_pairs(scenario, config.safety, threads);
  const std::vector<int> vehicles = scenario.vehicle_ids();

  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  SweepReport report;
  report.scenario_id = derive_scenario_id(config);
  report.config_digest = config_digest(config.effective_json(false));
  report.frame_rate = scenario.frame_rate();
  report.config = config.effective_json(true);

  for (double rate : config.penetration_rates) {
    for (std::uint64_t seed : seeds) {
      EquipageAssignment equipage = config.equipage_mode == EquipageMode::nested
                                      ? nested_equipage(vehicles, rate, seed)
                                      : assign_equipage(vehicles, rate, seed);
      const PerceptionMap perception =
        options.disable_cpm
          ? direct
          : fuse_cpm_with_direct(scenario, direct, equipage, config.cpm, threads);

      CellReport cell;
      cell.rate = quantize6(rate);
      cell.seed = seed;
      cell.equipped = equipage.equipped;

      cell.vehicle_counts = vehicle_summaries_from_pairs(scenario, pairs, perception, threads);
      cell.risk_boxplot = summarize_boxplot(cell.vehicle_counts);

      const auto risks = frame_risks_from_pairs(scenario, pairs, perception, threads);
      double sum = 0.0;
      double max = 0.0;
      long defined = 0;
      for (const auto & r : risks) {
        if (!r.ratio) continue;
        const double q = quantize6(*r.ratio);
        cell.frame_ratios.emplace_back(r.frame_index, q);
        sum += *r.ratio;
        max = std::max(max, *r.ratio);
        ++defined;
      }
      if (defined > 0) {
        cell.frame_ratio = FrameRatioSummary{
          quantize6(sum / static_cast<double>(defined)), quantize6(max), defined};
      }

      cell.mtl_any = summarize_mtl(mtl(scenario, perception, MtlVariant::any_vehicle));
      cell.mtl_per_vehicle = summarize_mtl(mtl(scenario, perception, MtlVariant::per_vehicle_max));

      report.cells.push_back(std::move(cell));
    }
  }

  if (options.write_files) write_report(report, config.output_dir);
  return report;
}

SweepReport run_sweep(const RunConfig & config, const ExecOptions & options)
{
  const Scenario scenario = load_source_scenario(config);
  return run_sweep_on(scenario, config, options);
}

}  // namespace vruocc
