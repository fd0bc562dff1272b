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

#ifndef VRUOCC_SWEEP_HPP_
#define VRUOCC_SWEEP_HPP_

#include "vruocc/config.hpp"
#include "vruocc/report.hpp"
#include "vruocc/scenario.hpp"

namespace vruocc
{

struct ExecOptions
{
  int threads = 0;          // 0 = library default
  bool disable_cpm = false; // pure line-of-sight baseline (testing path)
  bool write_files = true;
};

// Loads or generates the configured scenario.
Scenario load_source_scenario(const RunConfig & config);

std::string derive_scenario_id(const RunConfig & config);

// Full penetration sweep: per (rate, seed) cell, build the equipage, fuse
// perception, compute all metrics, and assemble the report (written to
// config.output_dir unless options say otherwise). Cells are ordered by
// rate, then seed. Output is byte-identical across runs and thread counts.
SweepReport run_sweep(const RunConfig & config, const ExecOptions & options = {});

// Sweep over an already constructed scenario (testing entry point).
SweepReport run_sweep_on(
  const Scenario & scenario, const RunConfig & config, const ExecOptions & options = {});

}  // namespace vruocc

#endif  // VRUOCC_SWEEP_HPP_
