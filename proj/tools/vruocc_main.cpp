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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vruocc/errors.hpp"
#include "vruocc/ind_io.hpp"
#include "vruocc/sweep.hpp"
#include "vruocc/synthetic.hpp"

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

int run_command(const std::string & config_path, const std::string & out_override, int workers)
{
  vruocc::RunConfig config = vruocc::load_run_config(config_path);
  if (!out_override.empty()) config.output_dir = out_override;
  vruocc::ExecOptions options;
  options.threads = workers;
  const vruocc::SweepReport report = vruocc::run_sweep(config, options);
  std::cout << "scenario: " << report.scenario_id << "\n"
            << "config digest: " << report.config_digest << "\n"
            << "cells: " << report.cells.size() << "\n"
            << "report written to: " << config.output_dir << "\n";
  return 0;
}

int validate_command(const std::string & config_path)
{
  const vruocc::RunConfig config = vruocc::load_run_config(config_path);
  std::cout << "config OK\n"
            << "effective digest: "
            << vruocc::config_digest(config.effective_json(false)) << "\n"
            << config.effective_json(true).dump(2) << "\n";
  return 0;
}

int synth_command(const std::string & spec_path, const std::string & out_dir, std::int64_t seed_flag)
{
  std::uint64_t seed = 1;
  const vruocc::SyntheticSpec spec = vruocc::load_synthetic_spec(spec_path, seed);
  if (seed_flag >= 0) seed = static_cast<std::uint64_t>(seed_flag);
  const vruocc::Scenario scenario = vruocc::generate_synthetic(spec, seed);
  vruocc::save_ind_recording(scenario, out_dir);
  std::cout << "wrote " << out_dir << "/00_tracks.csv (+ tracksMeta, recordingMeta), "
            << scenario.frame_count() << " frames, " << scenario.registry().size()
            << " agents\n";
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"VRU occlusion risk and tracking-loss replay toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  int workers = 0;
  auto * run = app.add_subcommand("run", "run a penetration sweep and write reports");
  run->add_option("--config", config_path, "run configuration (JSON)")->required();
  run->add_option("--out", out_override, "output directory (overrides config)");
  run->add_option("--workers", workers, "worker threads (0 = all cores)");

  std::string validate_path;
  auto * validate = app.add_subcommand("validate", "validate a run configuration");
  validate->add_option("--config", validate_path, "run configuration (JSON)")->required();

  std::string spec_path;
  std::string synth_out;
  std::int64_t seed_flag = -1;
  auto * synth = app.add_subcommand("synth", "emit a synthetic scenario as recording CSVs");
  synth->add_option("--spec", spec_path, "synthetic spec (JSON)")->required();
  synth->add_option("--out", synth_out, "output directory for the CSV files")->required();
  synth->add_option("--seed", seed_flag, "generation seed (overrides the spec)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, out_override, workers);
    if (validate->parsed()) return validate_command(validate_path);
    return synth_command(spec_path, synth_out, seed_flag);
  } catch (const vruocc::ConfigError & e) {
    for (const auto & issue : e.issues()) std::cerr << "config error: " << issue << "\n";
    return kExitConfig;
  } catch (const vruocc::DataError & e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const vruocc::IoError & e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
