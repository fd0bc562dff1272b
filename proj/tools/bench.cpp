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

// Compares the serial reference pipeline against the OpenMP kernels on a
// synthetic intersection scenario and prints timings plus an equality check.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vruocc/metrics.hpp"
#include "vruocc/perception.hpp"
#include "vruocc/reference.hpp"
#include "vruocc/synthetic.hpp"

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

vruocc::SyntheticSpec intersection_spec(int frames, int moving, int parked, int peds, int bikes)
{
  vruocc::SyntheticSpec spec;
  spec.frame_rate = 25.0;
  spec.duration_frames = frames;
  spec.vehicle_lanes = {
    {{-300.0, 0.0}, {300.0, 0.0}},
    {{300.0, 3.5}, {-300.0, 3.5}},
    {{0.0, -300.0}, {0.0, 300.0}},
    {{3.5, 300.0}, {3.5, -300.0}}};
  spec.parking_rows = {{{-90.0, -6.0}, {90.0, -6.0}}};
  spec.vru_paths = {
    {{-120.0, 9.0}, {120.0, 9.0}},
    {{15.0, -40.0}, {15.0, 40.0}},
    {{120.0, -9.0}, {-120.0, -9.0}}};
  spec.moving_vehicles = moving;
  spec.parked_vehicles = parked;
  spec.pedestrians = peds;
  spec.bicycles = bikes;
  spec.vehicle_speed_min = 4.0;
  spec.vehicle_speed_max = 9.0;
  return spec;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"serial-reference vs OpenMP pipeline benchmark"};
  int frames = 2000;
  int moving = 12;
  int parked = 6;
  int peds = 8;
  int bikes = 4;
  int threads = 0;
  bool skip_reference = false;
  double rate = 0.5;
  app.add_option("--frames", frames, "scenario length in frames");
  app.add_option("--moving", moving, "moving vehicles");
  app.add_option("--parked", parked, "parked vehicles");
  app.add_option("--pedestrians", peds, "pedestrians");
  app.add_option("--bicycles", bikes, "bicycles");
  app.add_option("--threads", threads, "parallel threads (0 = all cores)");
  app.add_option("--rate", rate, "penetration rate for the fused pass");
  app.add_flag("--skip-reference", skip_reference, "time only the parallel kernels");
  CLI11_PARSE(app, argc, argv);

  const vruocc::SyntheticSpec spec = intersection_spec(frames, moving, parked, peds, bikes);
  const vruocc::Scenario scenario = vruocc::generate_synthetic(spec, 7);
  const vruocc::SafetyParams params;
  const vruocc::CpmSchedule schedule;
  const double radius = 75.0;
  const auto vehicles = scenario.vehicle_ids();
  const auto equipage = vruocc::nested_equipage(vehicles, rate, 1);

  std::printf(
    "scenario: %zu frames, %zu agents (%zu vehicles), rate %.2f\n", scenario.frame_count(),
    scenario.registry().size(), vehicles.size(), rate);

  auto run_parallel = [&](int nthreads) {
    const auto t0 = Clock::now();
    const auto direct = vruocc::direct_perception(scenario, radius, nthreads);
    const double t_direct = seconds_since(t0);
    const auto t1 = Clock::now();
    const auto fused = vruocc::fuse_cpm_with_direct(scenario, direct, equipage, schedule, nthreads);
    const double t_fuse = seconds_since(t1);
    const auto t2 = Clock::now();
    const auto risks = vruocc::frame_risk_series(scenario, fused, params, nthreads);
    const auto mtls = vruocc::mtl(scenario, fused, vruocc::MtlVariant::any_vehicle);
    const double t_metrics = seconds_since(t2);
    std::printf(
      "parallel %2d thread(s): direct %.3fs  fuse %.3fs  metrics %.3fs  total %.3fs\n", nthreads,
      t_direct, t_fuse, t_metrics, t_direct + t_fuse + t_metrics);
    return std::make_pair(fused, std::make_pair(risks, mtls));
  };

  const auto [fused1, metrics1] = run_parallel(1);
  const auto [fusedN, metricsN] = run_parallel(threads);
  if (!(fused1 == fusedN) || metrics1 != metricsN) {
    std::printf("MISMATCH between 1-thread and N-thread results\n");
    return 1;
  }

  if (!skip_reference) {
    const auto t0 = Clock::now();
    const auto ref_fused = vruocc::reference::fuse_cpm(scenario, equipage, schedule, radius);
    const auto ref_risks = vruocc::reference::frame_risk_series(scenario, ref_fused, params);
    const auto ref_mtls = vruocc::reference::mtl(scenario, ref_fused, vruocc::MtlVariant::any_vehicle);
    const double t_ref = seconds_since(t0);
    std::printf("serial reference:      total %.3fs\n", t_ref);
    if (!(ref_fused == fusedN) || ref_risks != metricsN.first || ref_mtls != metricsN.second) {
      std::printf("MISMATCH between reference and parallel results\n");
      return 1;
    }
    std::printf("reference and parallel kernels agree\n");
  }
  return 0;
}
