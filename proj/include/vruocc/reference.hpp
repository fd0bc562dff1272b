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

#ifndef VRUOCC_REFERENCE_HPP_
#define VRUOCC_REFERENCE_HPP_

#include "vruocc/metrics.hpp"
#include "vruocc/perception.hpp"
#include "vruocc/scenario.hpp"

// Serial reference implementations written as plain nested loops straight
// from the definitions: no OpenMP, no shared precomputation, no bitmask
// tricks. Kept as the equivalence baseline for the parallel kernels and as
// the slow side of the benchmark.
namespace vruocc::reference
{

PerceptionMap direct_perception(const Scenario & scenario, double sensor_radius);

PerceptionMap fuse_cpm(
  const Scenario & scenario, const EquipageAssignment & equipage, const CpmSchedule & schedule,
  double sensor_radius);

std::vector<FrameRisk> frame_risk_series(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params);

std::vector<VehicleRiskSummary> vehicle_risk_summaries(
  const Scenario & scenario, const PerceptionMap & perception, const SafetyParams & params);

std::vector<MtlResult> mtl(
  const Scenario & scenario, const PerceptionMap & perception, MtlVariant variant);

}  // namespace vruocc::reference

#endif  // VRUOCC_REFERENCE_HPP_
