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

#ifndef VRUOCC_REPORT_HPP_
#define VRUOCC_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vruocc/metrics.hpp"
#include "vruocc/perception.hpp"

namespace vruocc
{

// Round to 6 significant digits (the serialized precision), so in-memory
// reports equal their parsed-back form exactly.
double quantize6(double v);
std::string format_g6(double v);

struct FrameRatioSummary
{
  double mean = 0.0;
  double max = 0.0;
  long defined_frames = 0;

  bool operator==(const FrameRatioSummary &) const = default;
};

struct MtlSummary
{
  std::vector<MtlResult> per_vru;
  std::vector<CcdfPoint> ccdf_ms;  // thresholds in milliseconds

  bool operator==(const MtlSummary &) const = default;
};

// One sweep cell: a (penetration rate, seed) pair.
struct CellReport
{
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> equipped;
  std::vector<VehicleRiskSummary> vehicle_counts;
  std::optional<BoxplotStats> risk_boxplot;
  std::vector<std::pair<int, double>> frame_ratios;  // frames with a defined ratio only
  std::optional<FrameRatioSummary> frame_ratio;
  MtlSummary mtl_any;
  MtlSummary mtl_per_vehicle;

  bool operator==(const CellReport &) const = default;
};

struct SweepReport
{
  std::string scenario_id;
  std::string config_digest;
  double frame_rate = 0.0;
  nlohmann::json config;  // full effective parameter set
  std::vector<CellReport> cells;

  bool operator==(const SweepReport &) const = default;
};

// 64-bit FNV-1a over the canonical dump of the effective parameters,
// rendered as 16 hex digits.
std::string config_digest(const nlohmann::json & effective_config);

// Emits report.json plus flat risk_boxplot.csv, frame_ratio.csv and
// mtl_ccdf.csv (UTF-8, LF, '.' decimals, rows ordered by rate, seed, id).
// Writing the same report twice produces byte-identical files.
void write_report(const SweepReport & report, const std::filesystem::path & dir);

SweepReport read_report(const std::filesystem::path & dir);

// Debug dump: frame -> vehicle -> sorted tracked ids.
nlohmann::json perception_to_json(const PerceptionMap & perception);

}  // namespace vruocc

#endif  // VRUOCC_REPORT_HPP_
