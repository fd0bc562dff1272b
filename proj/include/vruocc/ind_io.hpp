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

#ifndef VRUOCC_IND_IO_HPP_
#define VRUOCC_IND_IO_HPP_

#include <filesystem>
#include <string>

#include "vruocc/scenario.hpp"

namespace vruocc
{

// Column-name mapping for the drone-recording CSV schema. Defaults match the
// inD naming; override via the run config when a dataset uses other headers.
struct IndColumnMap
{
  std::string track_id = "trackId";
  std::string frame = "frame";
  std::string x_center = "xCenter";
  std::string y_center = "yCenter";
  std::string heading = "heading";  // degrees in the file
  std::string width = "width";
  std::string length = "length";
  std::string x_velocity = "xVelocity";
  std::string y_velocity = "yVelocity";

  std::string meta_track_id = "trackId";
  std::string meta_class = "class";

  std::string rec_frame_rate = "frameRate";

  bool operator==(const IndColumnMap &) const = default;
};

// Loads a drone-style recording (tracks / tracksMeta / recordingMeta CSVs,
// comma- or semicolon-delimited, header row). Headings are converted from
// degrees to radians. No interpolation: a track with missing frames is
// rejected. Throws IoError (unreadable file) or DataError (schema/content).
Scenario load_ind_recording(
  const std::filesystem::path & tracks_path, const std::filesystem::path & tracks_meta_path,
  const std::filesystem::path & recording_meta_path, const IndColumnMap & columns = {});

// Writes a scenario as a recording in the same schema (headings in degrees).
// Produces <prefix>tracks.csv, <prefix>tracksMeta.csv, <prefix>recordingMeta.csv.
void save_ind_recording(
  const Scenario & scenario, const std::filesystem::path & dir, const std::string & prefix = "00_");

// Exact internal scene format: single CSV-like file, radians and
// shortest-round-trip doubles, so save followed by load reproduces an equal
// scenario bit for bit.
void save_scenario(const Scenario & scenario, const std::filesystem::path & path);
Scenario load_scenario(const std::filesystem::path & path);

}  // namespace vruocc

#endif  // VRUOCC_IND_IO_HPP_
