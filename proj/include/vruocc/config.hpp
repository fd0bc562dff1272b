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

#ifndef VRUOCC_CONFIG_HPP_
#define VRUOCC_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vruocc/geometry.hpp"
#include "vruocc/ind_io.hpp"
#include "vruocc/metrics.hpp"
#include "vruocc/perception.hpp"
#include "vruocc/synthetic.hpp"

namespace vruocc
{

struct IndSource
{
  std::string tracks;
  std::string tracks_meta;
  std::string recording_meta;
  IndColumnMap columns;

  bool operator==(const IndSource &) const = default;
};

enum class EquipageMode { nested, independent };

// Fully resolved run configuration; defaults follow the standard parameter
// set (1.5 s / 3.2 m/s^2 / 0.9 / 60 deg / 1 s, 75 m sensor, 100 ms messages,
// rates 0..100%).
struct RunConfig
{
  std::variant<IndSource, SyntheticSpec> source = SyntheticSpec{};
  std::uint64_t synthetic_seed = 1;  // scenario generation seed (synthetic source only)
  std::optional<std::string> scenario_id;
  SafetyParams safety;
  double sensor_radius = 75.0;
  CpmSchedule cpm;
  std::vector<double> penetration_rates{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<std::uint64_t> seeds{1};
  EquipageMode equipage_mode = EquipageMode::nested;
  MtlVariant mtl_variant = MtlVariant::any_vehicle;
  std::string output_dir = "out";

  // Canonical resolved form. Embedded in every report; the config digest
  // hashes it without the non-effective fields (output_dir, scenario_id).
  nlohmann::json effective_json(bool include_non_effective) const;
};

// Strict parse: unknown keys are rejected, every issue is reported at once
// via ConfigError::issues().
RunConfig parse_run_config(const nlohmann::json & doc);
RunConfig load_run_config(const std::filesystem::path & path);

// Standalone synthetic spec document (used by the synth subcommand); accepts
// an optional top-level "seed".
SyntheticSpec parse_synthetic_spec_file(const nlohmann::json & doc, std::uint64_t & seed);
SyntheticSpec load_synthetic_spec(const std::filesystem::path & path, std::uint64_t & seed);

}  // namespace vruocc

#endif  // VRUOCC_CONFIG_HPP_
