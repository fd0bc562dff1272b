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

#include "vruocc/ind_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "vruocc/errors.hpp"

namespace vruocc
{

namespace
{

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string format_double(double v)
{
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const std::string & context)
{
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("cannot parse number '" + std::string(s) + "' in " + context);
  }
  return v;
}

long parse_long(std::string_view s, const std::string & context)
{
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("cannot parse integer '" + std::string(s) + "' in " + context);
  }
  return v;
}

// Header-row CSV table. Delimiter auto-detected (semicolon wins when the
// header contains one); quoting is not part of the drone-recording schema.
struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string name;

  bool empty() const { return header.empty(); }

  int column(const std::string & col) const
  {
    auto it = std::find(header.begin(), header.end(), col);
    if (it == header.end()) {
      throw DataError("missing column '" + col + "' in " + name);
    }
    return static_cast<int>(it - header.begin());
  }
};

std::vector<std::string> split_line(std::string_view line, char delim)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == delim) {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

CsvTable read_csv(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  table.name = path.filename().string();
  std::string line;
  bool first = true;
  char delim = ',';
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      delim = line.find(';') != std::string::npos ? ';' : ',';
      table.header = split_line(line, delim);
      first = false;
      continue;
    }
    auto fields = split_line(line, delim);
    if (fields.size() != table.header.size()) {
      throw DataError(
        "row with " + std::to_string(fields.size()) + " fields, expected " +
        std::to_string(table.header.size()) + " in " + table.name);
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

}  // namespace

Scenario load_ind_recording(
  const std::filesystem::path & tracks_path, const std::filesystem::path & tracks_meta_path,
  const std::filesystem::path & recording_meta_path, const IndColumnMap & columns)
{
  const CsvTable rec = read_csv(recording_meta_path);
  if (rec.empty() || rec.rows.empty()) {
    throw DataError("recording meta " + recording_meta_path.string() + " has no data row");
  }
  const double frame_rate =
    parse_double(rec.rows.front()[static_cast<std::size_t>(rec.column(columns.rec_frame_rate))],
                 rec.name);
  if (!(frame_rate > 0.0)) throw DataError("frame rate must be positive in " + rec.name);

  const CsvTable meta = read_csv(tracks_meta_path);
  std::unordered_map<long, AgentCategory> categories;
  if (!meta.empty()) {
    const auto id_col = static_cast<std::size_t>(meta.column(columns.meta_track_id));
    const auto class_col = static_cast<std::size_t>(meta.column(columns.meta_class));
    for (const auto & row : meta.rows) {
      const long id = parse_long(row[id_col], meta.name);
      const auto cat = parse_category(row[class_col]);
      if (!cat) {
        throw DataError(
          "unknown category label '" + row[class_col] + "' for track " + std::to_string(id) +
          " in " + meta.name);
      }
      categories[id] = *cat;
    }
  }

  const CsvTable tracks = read_csv(tracks_path);
  if (tracks.empty() || tracks.rows.empty()) {
    return Scenario::build(frame_rate, {});
  }

  const auto c_id = static_cast<std::size_t>(tracks.column(columns.track_id));
  const auto c_frame = static_cast<std::size_t>(tracks.column(columns.frame));
  const auto c_x = static_cast<std::size_t>(tracks.column(columns.x_center));
  const auto c_y = static_cast<std::size_t>(tracks.column(columns.y_center));
  const auto c_heading = static_cast<std::size_t>(tracks.column(columns.heading));
  const auto c_width = static_cast<std::size_t>(tracks.column(columns.width));
  const auto c_length = static_cast<std::size_t>(tracks.column(columns.length));
  const auto c_vx = static_cast<std::size_t>(tracks.column(columns.x_velocity));
  const auto c_vy = static_cast<std::size_t>(tracks.column(columns.y_velocity));

  std::map<int, std::vector<AgentState>> by_frame;
  for (const auto & row : tracks.rows) {
    const long id = parse_long(row[c_id], tracks.name);
    const long frame = parse_long(row[c_frame], tracks.name);
    if (frame < 0) throw DataError("negative frame for track " + std::to_string(id));
    auto cat_it = categories.find(id);
    if (cat_it == categories.end()) {
      throw DataError(
        "track " + std::to_string(id) + " has no category entry in " + meta.name);
    }
    AgentState a;
    a.agent_id = static_cast<int>(id);
    a.category = cat_it->second;
    a.position = {parse_double(row[c_x], tracks.name), parse_double(row[c_y], tracks.name)};
    a.velocity = {parse_double(row[c_vx], tracks.name), parse_double(row[c_vy], tracks.name)};
    a.heading = wrap_angle(parse_double(row[c_heading], tracks.name) * kDegToRad);
    a.footprint_length = parse_double(row[c_length], tracks.name);
    a.footprint_width = parse_double(row[c_width], tracks.name);
    by_frame[static_cast<int>(frame)].push_back(a);
  }

  const int first = by_frame.begin()->first;
  const int last = by_frame.rbegin()->first;
  std::vector<Scene> scenes(static_cast<std::size_t>(last - first + 1));
  for (int f = first; f <= last; ++f) {
    scenes[static_cast<std::size_t>(f - first)].frame_index = f;
  }
  for (auto & [frame, agents] : by_frame) {
    scenes[static_cast<std::size_t>(frame - first)].agents = std::move(agents);
  }
  return Scenario::build(frame_rate, std::move(scenes));
}

void save_ind_recording(
  const Scenario & scenario, const std::filesystem::path & dir, const std::string & prefix)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  const auto open = [&](const std::string & name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    return out;
  };

  {
    auto out = open(prefix + "recordingMeta.csv");
    out << "recordingId;frameRate;numFrames\n";
    out << "0;" << format_double(scenario.frame_rate()) << ";" << scenario.frame_count() << "\n";
  }
  {
    auto out = open(prefix + "tracksMeta.csv");
    out << "recordingId;trackId;initialFrame;finalFrame;numFrames;class\n";
    for (const auto & r : scenario.registry()) {
      out << "0;" << r.agent_id << ";" << r.first_frame << ";" << r.last_frame << ";"
          << (r.last_frame - r.first_frame + 1) << ";" << category_label(r.category) << "\n";
    }
  }
  {
    auto out = open(prefix + "tracks.csv");
    out << "recordingId;trackId;frame;xCenter;yCenter;heading;width;length;"
           "xVelocity;yVelocity\n";
    for (const auto & scene : scenario.scenes()) {
      for (const auto & a : scene.agents) {
        out << "0;" << a.agent_id << ";" << scene.frame_index << ";"
            << format_double(a.position.x) << ";" << format_double(a.position.y) << ";"
            << format_double(a.heading * kRadToDeg) << ";" << format_double(a.footprint_width)
            << ";" << format_double(a.footprint_length) << ";" << format_double(a.velocity.x)
            << ";" << format_double(a.velocity.y) << "\n";
      }
    }
  }
}

void save_scenario(const Scenario & scenario, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "#vruocc-scenario v1\n";
  out << "frame_rate=" << format_double(scenario.frame_rate()) << "\n";
  out << "first_frame=" << scenario.first_frame() << "\n";
  out << "scene_count=" << scenario.frame_count() << "\n";
  out << "agent_id,frame,category,x,y,heading,vx,vy,length,width\n";
  for (const auto & scene : scenario.scenes()) {
    for (const auto & a : scene.agents) {
      out << a.agent_id << "," << scene.frame_index << "," << category_label(a.category) << ","
          << format_double(a.position.x) << "," << format_double(a.position.y) << ","
          << format_double(a.heading) << "," << format_double(a.velocity.x) << ","
          << format_double(a.velocity.y) << "," << format_double(a.footprint_length) << ","
          << format_double(a.footprint_width) << "\n";
    }
  }
}

Scenario load_scenario(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string name = path.filename().string();
  std::string line;
  if (!std::getline(in, line) || line.rfind("#vruocc-scenario", 0) != 0) {
    throw DataError("not a scenario file: " + name);
  }
  auto read_kv = [&](const std::string & key) {
    if (!std::getline(in, line) || line.rfind(key + "=", 0) != 0) {
      throw DataError("expected '" + key + "=' line in " + name);
    }
    return line.substr(key.size() + 1);
  };
  const double frame_rate = parse_double(read_kv("frame_rate"), name);
  const long first = parse_long(read_kv("first_frame"), name);
  const long count = parse_long(read_kv("scene_count"), name);
  if (!std::getline(in, line)) throw DataError("missing header row in " + name);

  std::vector<Scene> scenes(static_cast<std::size_t>(count));
  for (long f = 0; f < count; ++f) {
    scenes[static_cast<std::size_t>(f)].frame_index = static_cast<int>(first + f);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line, ',');
    if (fields.size() != 10) throw DataError("bad row in " + name);
    AgentState a;
    a.agent_id = static_cast<int>(parse_long(fields[0], name));
    const long frame = parse_long(fields[1], name);
    const auto cat = parse_category(fields[2]);
    if (!cat) throw DataError("unknown category '" + fields[2] + "' in " + name);
    a.category = *cat;
    a.position = {parse_double(fields[3], name), parse_double(fields[4], name)};
    a.heading = parse_double(fields[5], name);
    a.velocity = {parse_double(fields[6], name), parse_double(fields[7], name)};
    a.footprint_length = parse_double(fields[8], name);
    a.footprint_width = parse_double(fields[9], name);
    if (frame < first || frame >= first + count) {
      throw DataError("row frame out of declared range in " + name);
    }
    scenes[static_cast<std::size_t>(frame - first)].agents.push_back(a);
  }
  return Scenario::build(frame_rate, std::move(scenes));
}

}  // namespace vruocc
