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

#include "vruocc/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "vruocc/errors.hpp"

namespace vruocc
{

namespace
{

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

nlohmann::json boxplot_to_json(const BoxplotStats & s)
{
  nlohmann::json j;
  j["min"] = s.min;
  j["q1"] = s.q1;
  j["median"] = s.median;
  j["q3"] = s.q3;
  j["max"] = s.max;
  j["whisker_low"] = s.whisker_low;
  j["whisker_high"] = s.whisker_high;
  j["outliers"] = s.outliers;
  return j;
}

BoxplotStats boxplot_from_json(const nlohmann::json & j)
{
  BoxplotStats s;
  s.min = j.at("min").get<double>();
  s.q1 = j.at("q1").get<double>();
  s.median = j.at("median").get<double>();
  s.q3 = j.at("q3").get<double>();
  s.max = j.at("max").get<double>();
  s.whisker_low = j.at("whisker_low").get<double>();
  s.whisker_high = j.at("whisker_high").get<double>();
  s.outliers = j.at("outliers").get<std::vector<double>>();
  return s;
}

nlohmann::json mtl_to_json(const MtlSummary & m, MtlVariant variant)
{
  nlohmann::json per_vru = nlohmann::json::array();
  for (const auto & r : m.per_vru) {
    per_vru.push_back({{"vru_id", r.vru_id}, {"frames", r.mtl_frames}, {"ms", r.mtl_ms}});
  }
  nlohmann::json ccdf = nlohmann::json::array();
  for (const auto & p : m.ccdf_ms) {
    ccdf.push_back({{"threshold_ms", p.threshold}, {"fraction", p.fraction}});
  }
  (void)variant;
  return {{"per_vru", per_vru}, {"ccdf", ccdf}};
}

MtlSummary mtl_from_json(const nlohmann::json & j, MtlVariant variant)
{
  MtlSummary m;
  for (const auto & r : j.at("per_vru")) {
    m.per_vru.push_back(
      {r.at("vru_id").get<int>(), r.at("frames").get<int>(), r.at("ms").get<double>(), variant});
  }
  for (const auto & p : j.at("ccdf")) {
    m.ccdf_ms.push_back({p.at("threshold_ms").get<double>(), p.at("fraction").get<double>()});
  }
  return m;
}

std::string cell_key(double rate, std::uint64_t seed)
{
  return format_g6(rate) + ":" + std::to_string(seed);
}

double parse_double_field(const std::string & s, const char * file)
{
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("bad numeric field '" + s + "' in " + file);
  }
  return v;
}

long parse_long_field(const std::string & s, const char * file)
{
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("bad integer field '" + s + "' in " + file);
  }
  return v;
}

}  // namespace

double quantize6(double v)
{
  const std::string s = format_g6(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

std::string format_g6(double v)
{
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string config_digest(const nlohmann::json & effective_config)
{
  const std::string dump = effective_config.dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  static const char * hex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) {
    buf[i] = hex[(h >> (60 - 4 * i)) & 0xF];
  }
  return std::string(buf, 16);
}

void write_report(const SweepReport & report, const std::filesystem::path & dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string());
  }

  nlohmann::json j;
  j["format"] = "vruocc-sweep-report";
  j["version"] = 1;
  j["scenario_id"] = report.scenario_id;
  j["config_digest"] = report.config_digest;
  j["frame_rate"] = report.frame_rate;
  j["boxplot_statistic"] = "occluded_interaction_count_per_vehicle";
  j["config"] = report.config;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto & c : report.cells) {
    nlohmann::json cj;
    cj["rate"] = c.rate;
    cj["seed"] = c.seed;
    cj["equipped"] = c.equipped;
    cj["risk_boxplot"] = c.risk_boxplot ? boxplot_to_json(*c.risk_boxplot) : nlohmann::json();
    if (c.frame_ratio) {
      cj["frame_ratio"] = {
        {"mean", c.frame_ratio->mean},
        {"max", c.frame_ratio->max},
        {"defined_frames", c.frame_ratio->defined_frames}};
    } else {
      cj["frame_ratio"] = nlohmann::json();
    }
    cj["mtl"] = {
      {"any_vehicle", mtl_to_json(c.mtl_any, MtlVariant::any_vehicle)},
      {"per_vehicle_max", mtl_to_json(c.mtl_per_vehicle, MtlVariant::per_vehicle_max)}};
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  write_file(dir / "report.json", j.dump(2) + "\n");

  {
    std::string csv = "rate,seed,vehicle_id,count\n";
    for (const auto & c : report.cells) {
      for (const auto & v : c.vehicle_counts) {
        csv += format_g6(c.rate) + "," + std::to_string(c.seed) + "," +
               std::to_string(v.vehicle_id) + "," + std::to_string(v.occluded_interactions) +
               "\n";
      }
    }
    write_file(dir / "risk_boxplot.csv", csv);
  }
  {
    std::string csv = "rate,seed,frame,ratio\n";
    for (const auto & c : report.cells) {
      for (const auto & [frame, ratio] : c.frame_ratios) {
        csv += format_g6(c.rate) + "," + std::to_string(c.seed) + "," + std::to_string(frame) +
               "," + format_g6(ratio) + "\n";
      }
    }
    write_file(dir / "frame_ratio.csv", csv);
  }
  {
    std::string csv = "rate,seed,variant,threshold_ms,fraction\n";
    for (const auto & c : report.cells) {
      for (const auto & p : c.mtl_any.ccdf_ms) {
        csv += format_g6(c.rate) + "," + std::to_string(c.seed) + ",any_vehicle," +
               format_g6(p.threshold) + "," + format_g6(p.fraction) + "\n";
      }
      for (const auto & p : c.mtl_per_vehicle.ccdf_ms) {
        csv += format_g6(c.rate) + "," + std::to_string(c.seed) + ",per_vehicle_max," +
               format_g6(p.threshold) + "," + format_g6(p.fraction) + "\n";
      }
    }
    write_file(dir / "mtl_ccdf.csv", csv);
  }
}

SweepReport read_report(const std::filesystem::path & dir)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(dir / "report.json"));
  } catch (const nlohmann::json::parse_error & e) {
    throw DataError("malformed report.json: " + std::string(e.what()));
  }
  SweepReport report;
  try {
    report.scenario_id = j.at("scenario_id").get<std::string>();
    report.config_digest = j.at("config_digest").get<std::string>();
    report.frame_rate = j.at("frame_rate").get<double>();
    report.config = j.at("config");
    for (const auto & cj : j.at("cells")) {
      CellReport c;
      c.rate = cj.at("rate").get<double>();
      c.seed = cj.at("seed").get<std::uint64_t>();
      c.equipped = cj.at("equipped").get<std::vector<int>>();
      if (!cj.at("risk_boxplot").is_null()) {
        c.risk_boxplot = boxplot_from_json(cj.at("risk_boxplot"));
      }
      if (!cj.at("frame_ratio").is_null()) {
        const auto & fr = cj.at("frame_ratio");
        c.frame_ratio = FrameRatioSummary{
          fr.at("mean").get<double>(), fr.at("max").get<double>(),
          fr.at("defined_frames").get<long>()};
      }
      c.mtl_any = mtl_from_json(cj.at("mtl").at("any_vehicle"), MtlVariant::any_vehicle);
      c.mtl_per_vehicle =
        mtl_from_json(cj.at("mtl").at("per_vehicle_max"), MtlVariant::per_vehicle_max);
      report.cells.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception & e) {
    throw DataError("report.json schema error: " + std::string(e.what()));
  }

  auto cell_by_key = [&](const std::string & key) -> CellReport * {
    for (auto & c : report.cells) {
      if (cell_key(c.rate, c.seed) == key) return &c;
    }
    throw DataError("CSV row refers to unknown sweep cell " + key);
  };

  auto parse_rows = [&](const std::filesystem::path & path, auto && consume) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
          fields.emplace_back(line.substr(start, i - start));
          start = i + 1;
        }
      }
      consume(fields);
    }
  };

  parse_rows(dir / "risk_boxplot.csv", [&](const std::vector<std::string> & f) {
    if (f.size() != 4) throw DataError("bad row in risk_boxplot.csv");
    CellReport * c = cell_by_key(f[0] + ":" + f[1]);
    c->vehicle_counts.push_back(
      {static_cast<int>(parse_long_field(f[2], "risk_boxplot.csv")),
       parse_long_field(f[3], "risk_boxplot.csv")});
  });
  parse_rows(dir / "frame_ratio.csv", [&](const std::vector<std::string> & f) {
    if (f.size() != 4) throw DataError("bad row in frame_ratio.csv");
    CellReport * c = cell_by_key(f[0] + ":" + f[1]);
    c->frame_ratios.emplace_back(
      static_cast<int>(parse_long_field(f[2], "frame_ratio.csv")),
      parse_double_field(f[3], "frame_ratio.csv"));
  });

  return report;
}

nlohmann::json perception_to_json(const PerceptionMap & perception)
{
  nlohmann::json frames = nlohmann::json::array();
  const int first = perception.first_frame();
  for (std::size_t fo = 0; fo < perception.frame_count(); ++fo) {
    const int f = first + static_cast<int>(fo);
    nlohmann::json vehicles;
    for (std::size_t s = 0; s < perception.vehicle_ids().size(); ++s) {
      const int id = perception.vehicle_ids()[s];
      if (!perception.present(id, f)) continue;
      vehicles[std::to_string(id)] = perception.tracked_row(f, static_cast<int>(s));
    }
    frames.push_back({{"frame", f}, {"vehicles", std::move(vehicles)}});
  }
  return {{"first_frame", first}, {"frames", std::move(frames)}};
}

}  // namespace vruocc
