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

#ifndef VRUOCC_METRICS_HPP_
#define VRUOCC_METRICS_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vruocc/geometry.hpp"
#include "vruocc/perception.hpp"
#include "vruocc/scenario.hpp"

namespace vruocc
{

// Per-frame occlusion risk: a vehicle/VRU pair whose safety areas intersect
// is a significant interaction; it counts as occluded when the vehicle does
// not track the VRU (fused knowledge counts as sight). The ratio is
// undefined when no interaction is significant.
struct FrameRisk
{
  int frame_index = 0;
  int significant = 0;
  int occluded = 0;
  std::optional<double> ratio;

  bool operator==(const FrameRisk &) const = default;
};

struct InteractionPair
{
  int vehicle_id = 0;
  int vru_id = 0;

  bool operator==(const InteractionPair &) const = default;
};

struct VehicleRiskSummary
{
  int vehicle_id = 0;
  long occluded_interactions = 0;  // (frame, VRU) pairs over the lifespan

  bool operator==(const VehicleRiskSummary &) const = default;
};

enum class MtlVariant { any_vehicle, per_vehicle_max };

std::string_view mtl_variant_label(MtlVariant v);
std::optional<MtlVariant> parse_mtl_variant(std::string_view label);

struct MtlResult
{
  int vru_id = 0;
  int mtl_frames = 0;
  double mtl_ms = 0.0;
  MtlVariant variant = MtlVariant::any_vehicle;

  bool operator==(const MtlResult &) const = default;
};

struct CcdfPoint
{
  double threshold = 0.0;
  double fraction = 0.0;

  bool operator==(const CcdfPoint &) const = default;
};

struct BoxplotStats
{
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;

  bool operator==(const BoxplotStats &) const = default;
};

FrameRisk frame_risk(
  const Scene & scene, const PerceptionMap & perception, const SafetyParams & params);

// Geometry-only precomputation: per frame, the significant vehicle/VRU
// pairs. Independent of equipage, so a sweep computes it once.
std::vector<std::vector<InteractionPair>> significant_pairs(
  const Scenario & scenario, const SafetyParams & params, int threads = 0);

std::vector<FrameRisk> frame_risks_from_pairs(
  const Scenario & scenario, const std::vector<std::vector<InteractionPair>> & pairs,
  const PerceptionMap & perception, int threads = 0);

std::vector<FrameRisk> frame_risk_series(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params,
  int threads = 0);

std::vector<VehicleRiskSummary> vehicle_summaries_from_pairs(
  const Scenario & scenario, const std::vector<std::vector<InteractionPair>> & pairs,
  const PerceptionMap & perception, int threads = 0);

std::vector<VehicleRiskSummary> vehicle_risk_summaries(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params,
  int threads = 0);

// Longest no-tracking gap per VRU, in frames.
//   any_vehicle:     longest run of frames where no present vehicle tracks
//                    the VRU (frames with zero vehicles count as untracked).
//   per_vehicle_max: per vehicle, longest untracked run over frames where
//                    both are present; maximum over vehicles.
std::vector<MtlResult> mtl(
  const Scenario & scenario, const PerceptionMap & perception, MtlVariant variant);

// Complementary CDF: for each distinct value ascending, the fraction of
// values strictly greater. Throws on empty input.
std::vector<CcdfPoint> ccdf(std::span<const double> values);

// Quartiles by linear interpolation (inclusive method); whiskers at the
// furthest data point within 1.5*IQR of the box. Throws on empty input.
BoxplotStats boxplot_stats(std::span<const double> values);

}  // namespace vruocc

#endif  // VRUOCC_METRICS_HPP_
