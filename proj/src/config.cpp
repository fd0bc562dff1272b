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

#include "vruocc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "vruocc/errors.hpp"

namespace vruocc
{

namespace
{

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Strict object reader: type errors and unknown keys are collected, never
// thrown one at a time, so a bad config reports everything in one pass.
class ObjReader
{
public:
  ObjReader(const nlohmann::json & j, std::string path, std::vector<std::string> & issues)
  : j_(j), path_(std::move(path)), issues_(issues)
  {
    if (!j_.is_object()) {
      issues_.push_back(path_ + ": expected an object");
      ok_ = false;
    }
  }

  bool has(const std::string & key)
  {
    known_.insert(key);
    return ok_ && j_.contains(key);
  }

  double number(const std::string & key, double fallback)
  {
    if (!has(key)) return fallback;
    const auto & v = j_.at(key);
    if (!v.is_number()) {
      issues_.push_back(path_ + "." + key + ": expected a number");
      return fallback;
    }
    return v.get<double>();
  }

  long integer(const std::string & key, long fallback)
  {
    if (!has(key)) return fallback;
    const auto & v = j_.at(key);
    if (!v.is_number_integer()) {
      issues_.push_back(path_ + "." + key + ": expected an integer");
      return fallback;
    }
    return v.get<long>();
  }

  std::string text(const std::string & key, std::string fallback)
  {
    if (!has(key)) return fallback;
    const auto & v = j_.at(key);
    if (!v.is_string()) {
      issues_.push_back(path_ + "." + key + ": expected a string");
      return fallback;
    }
    return v.get<std::string>();
  }

  const nlohmann::json * child(const std::string & key)
  {
    if (!has(key)) return nullptr;
    return &j_.at(key);
  }

  void finish()
  {
    if (!ok_) return;
    for (const auto & [key, value] : j_.items()) {
      if (known_.find(key) == known_.end()) {
        issues_.push_back(path_ + ": unknown key '" + key + "'");
      }
    }
  }

  const std::string & path() const { return path_; }
  std::vector<std::string> & issues() { return issues_; }
  bool object_ok() const { return ok_; }

private:
  const nlohmann::json & j_;
  std::string path_;
  std::vector<std::string> & issues_;
  std::set<std::string> known_;
  bool ok_ = true;
};

Vec2 parse_point(
  const nlohmann::json & j, const std::string & path, std::vector<std::string> & issues)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    issues.push_back(path + ": expected [x, y]");
    return {};
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<LaneSegment> parse_lanes(
  const nlohmann::json * j, const std::string & path, std::vector<std::string> & issues)
{
  std::vector<LaneSegment> out;
  if (j == nullptr) return out;
  if (!j->is_array()) {
    issues.push_back(path + ": expected an array of segments");
    return out;
  }
  for (std::size_t i = 0; i < j->size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    ObjReader seg((*j)[i], p, issues);
    LaneSegment lane;
    if (const auto * from = seg.child("from")) lane.from = parse_point(*from, p + ".from", issues);
    else issues.push_back(p + ".from: required");
    if (const auto * to = seg.child("to")) lane.to = parse_point(*to, p + ".to", issues);
    else issues.push_back(p + ".to: required");
    seg.finish();
    out.push_back(lane);
  }
  return out;
}

SyntheticSpec parse_synthetic(
  const nlohmann::json & j, const std::string & path, std::vector<std::string> & issues,
  std::set<std::string> extra_keys = {})
{
  ObjReader r(j, path, issues);
  SyntheticSpec s;
  for (const auto & k : extra_keys) r.has(k);  // claimed by the caller
  s.frame_rate = r.number("frame_rate", s.frame_rate);
  s.duration_frames = static_cast<int>(r.integer("duration_frames", s.duration_frames));
  s.vehicle_lanes = parse_lanes(r.child("vehicle_lanes"), path + ".vehicle_lanes", issues);
  s.vru_paths = parse_lanes(r.child("vru_paths"), path + ".vru_paths", issues);
  s.parking_rows = parse_lanes(r.child("parking_rows"), path + ".parking_rows", issues);
  s.moving_vehicles = static_cast<int>(r.integer("moving_vehicles", s.moving_vehicles));
  s.parked_vehicles = static_cast<int>(r.integer("parked_vehicles", s.parked_vehicles));
  s.pedestrians = static_cast<int>(r.integer("pedestrians", s.pedestrians));
  s.bicycles = static_cast<int>(r.integer("bicycles", s.bicycles));
  s.vehicle_speed_min = r.number("vehicle_speed_min", s.vehicle_speed_min);
  s.vehicle_speed_max = r.number("vehicle_speed_max", s.vehicle_speed_max);
  s.pedestrian_speed_min = r.number("pedestrian_speed_min", s.pedestrian_speed_min);
  s.pedestrian_speed_max = r.number("pedestrian_speed_max", s.pedestrian_speed_max);
  s.bicycle_speed_min = r.number("bicycle_speed_min", s.bicycle_speed_min);
  s.bicycle_speed_max = r.number("bicycle_speed_max", s.bicycle_speed_max);
  s.car_length = r.number("car_length", s.car_length);
  s.car_width = r.number("car_width", s.car_width);
  s.pedestrian_size = r.number("pedestrian_size", s.pedestrian_size);
  s.bicycle_length = r.number("bicycle_length", s.bicycle_length);
  s.bicycle_width = r.number("bicycle_width", s.bicycle_width);
  s.vehicle_headway = r.number("vehicle_headway", s.vehicle_headway);
  s.vru_headway = r.number("vru_headway", s.vru_headway);
  s.parking_gap = r.number("parking_gap", s.parking_gap);
  r.finish();
  for (const auto & issue : validate_synthetic_spec(s)) {
    issues.push_back(path + ": " + issue);
  }
  return s;
}

IndColumnMap parse_columns(
  const nlohmann::json & j, const std::string & path, std::vector<std::string> & issues)
{
  ObjReader r(j, path, issues);
  IndColumnMap c;
  c.track_id = r.text("track_id", c.track_id);
  c.frame = r.text("frame", c.frame);
  c.x_center = r.text("x_center", c.x_center);
  c.y_center = r.text("y_center", c.y_center);
  c.heading = r.text("heading", c.heading);
  c.width = r.text("width", c.width);
  c.length = r.text("length", c.length);
  c.x_velocity = r.text("x_velocity", c.x_velocity);
  c.y_velocity = r.text("y_velocity", c.y_velocity);
  c.meta_track_id = r.text("meta_track_id", c.meta_track_id);
  c.meta_class = r.text("meta_class", c.meta_class);
  c.rec_frame_rate = r.text("rec_frame_rate", c.rec_frame_rate);
  r.finish();
  return c;
}

nlohmann::json lanes_json(const std::vector<LaneSegment> & lanes)
{
  nlohmann::json out = nlohmann::json::array();
  for (const auto & l : lanes) {
    out.push_back({{"from", {l.from.x, l.from.y}}, {"to", {l.to.x, l.to.y}}});
  }
  return out;
}

nlohmann::json synthetic_json(const SyntheticSpec & s)
{
  nlohmann::json j;
  j["frame_rate"] = s.frame_rate;
  j["duration_frames"] = s.duration_frames;
  j["vehicle_lanes"] = lanes_json(s.vehicle_lanes);
  j["vru_paths"] = lanes_json(s.vru_paths);
  j["parking_rows"] = lanes_json(s.parking_rows);
  j["moving_vehicles"] = s.moving_vehicles;
  j["parked_vehicles"] = s.parked_vehicles;
  j["pedestrians"] = s.pedestrians;
  j["bicycles"] = s.bicycles;
  j["vehicle_speed_min"] = s.vehicle_speed_min;
  j["vehicle_speed_max"] = s.vehicle_speed_max;
  j["pedestrian_speed_min"] = s.pedestrian_speed_min;
  j["pedestrian_speed_max"] = s.pedestrian_speed_max;
  j["bicycle_speed_min"] = s.bicycle_speed_min;
  j["bicycle_speed_max"] = s.bicycle_speed_max;
  j["car_length"] = s.car_length;
  j["car_width"] = s.car_width;
  j["pedestrian_size"] = s.pedestrian_size;
  j["bicycle_length"] = s.bicycle_length;
  j["bicycle_width"] = s.bicycle_width;
  j["vehicle_headway"] = s.vehicle_headway;
  j["vru_headway"] = s.vru_headway;
  j["parking_gap"] = s.parking_gap;
  return j;
}

}  // namespace

nlohmann::json RunConfig::effective_json(bool include_non_effective) const
{
  nlohmann::json j;
  if (const auto * ind = std::get_if<IndSource>(&source)) {
    nlohmann::json cols;
    cols["track_id"] = ind->columns.track_id;
    cols["frame"] = ind->columns.frame;
    cols["x_center"] = ind->columns.x_center;
    cols["y_center"] = ind->columns.y_center;
    cols["heading"] = ind->columns.heading;
    cols["width"] = ind->columns.width;
    cols["length"] = ind->columns.length;
    cols["x_velocity"] = ind->columns.x_velocity;
    cols["y_velocity"] = ind->columns.y_velocity;
    cols["meta_track_id"] = ind->columns.meta_track_id;
    cols["meta_class"] = ind->columns.meta_class;
    cols["rec_frame_rate"] = ind->columns.rec_frame_rate;
    j["scenario"]["ind"] = {
      {"tracks", ind->tracks},
      {"tracks_meta", ind->tracks_meta},
      {"recording_meta", ind->recording_meta},
      {"columns", cols}};
  } else {
    j["scenario"]["synthetic"] = synthetic_json(std::get<SyntheticSpec>(source));
    j["scenario"]["synthetic"]["seed"] = synthetic_seed;
  }
  j["safety"] = {
    {"reaction_time", safety.reaction_time},
    {"comfort_deceleration", safety.comfort_decel},
    {"friction", safety.friction},
    {"wedge_apex_angle_deg", safety.wedge_apex_angle * kRadToDeg},
    {"risk_horizon", safety.risk_horizon}};
  j["sensor_radius"] = sensor_radius;
  j["cpm"] = {
    {"interval", cpm.interval},
    {"phase_mode", cpm.phase_mode == CpmSchedule::PhaseMode::zero ? "zero" : "seeded"},
    {"phase_seed", cpm.phase_seed}};
  j["penetration_rates"] = penetration_rates;
  j["seeds"] = seeds;
  j["equipage_mode"] = equipage_mode == EquipageMode::nested ? "nested" : "independent";
  j["mtl_variant"] = std::string(mtl_variant_label(mtl_variant));
  if (include_non_effective) {
    j["output_dir"] = output_dir;
    if (scenario_id) j["scenario_id"] = *scenario_id;
  }
  return j;
}

RunConfig parse_run_config(const nlohmann::json & doc)
{
  std::vector<std::string> issues;
  RunConfig cfg;
  ObjReader root(doc, "config", issues);

  const nlohmann::json * scenario = root.child("scenario");
  if (scenario == nullptr) {
    if (root.object_ok()) issues.push_back("config.scenario: required");
  } else {
    ObjReader sc(*scenario, "config.scenario", issues);
    const nlohmann::json * ind = sc.child("ind");
    const nlohmann::json * synthetic = sc.child("synthetic");
    if ((ind != nullptr) == (synthetic != nullptr)) {
      issues.push_back("config.scenario: exactly one of 'ind' or 'synthetic' required");
    } else if (ind != nullptr) {
      ObjReader ir(*ind, "config.scenario.ind", issues);
      IndSource src;
      src.tracks = ir.text("tracks", "");
      src.tracks_meta = ir.text("tracks_meta", "");
      src.recording_meta = ir.text("recording_meta", "");
      if (src.tracks.empty()) issues.push_back("config.scenario.ind.tracks: required");
      if (src.tracks_meta.empty()) issues.push_back("config.scenario.ind.tracks_meta: required");
      if (src.recording_meta.empty()) {
        issues.push_back("config.scenario.ind.recording_meta: required");
      }
      if (const auto * cols = ir.child("columns")) {
        src.columns = parse_columns(*cols, "config.scenario.ind.columns", issues);
      }
      ir.finish();
      cfg.source = std::move(src);
    } else {
      if (synthetic->is_object() && synthetic->contains("seed")) {
        if (!synthetic->at("seed").is_number_integer()) {
          issues.push_back("config.scenario.synthetic.seed: expected an integer");
        } else {
          cfg.synthetic_seed = synthetic->at("seed").get<std::uint64_t>();
        }
      }
      cfg.source = parse_synthetic(*synthetic, "config.scenario.synthetic", issues, {"seed"});
    }
    sc.finish();
  }

  if (const auto * safety = root.child("safety")) {
    ObjReader sr(*safety, "config.safety", issues);
    cfg.safety.reaction_time = sr.number("reaction_time", cfg.safety.reaction_time);
    cfg.safety.comfort_decel = sr.number("comfort_deceleration", cfg.safety.comfort_decel);
    cfg.safety.friction = sr.number("friction", cfg.safety.friction);
    const double deg = sr.number("wedge_apex_angle_deg", cfg.safety.wedge_apex_angle * kRadToDeg);
    cfg.safety.wedge_apex_angle = deg * kDegToRad;
    cfg.safety.risk_horizon = sr.number("risk_horizon", cfg.safety.risk_horizon);
    sr.finish();
    if (!(cfg.safety.reaction_time > 0.0)) issues.push_back("config.safety.reaction_time: must be > 0");
    if (!(cfg.safety.comfort_decel > 0.0)) {
      issues.push_back("config.safety.comfort_deceleration: must be > 0");
    }
    if (!(cfg.safety.friction > 0.0)) issues.push_back("config.safety.friction: must be > 0");
    if (!(deg > 0.0 && deg <= 180.0)) {
      issues.push_back("config.safety.wedge_apex_angle_deg: must be in (0, 180]");
    }
    if (!(cfg.safety.risk_horizon > 0.0)) issues.push_back("config.safety.risk_horizon: must be > 0");
  }

  cfg.sensor_radius = root.number("sensor_radius", cfg.sensor_radius);
  if (!(cfg.sensor_radius > 0.0)) issues.push_back("config.sensor_radius: must be > 0");

  if (const auto * cpm = root.child("cpm")) {
    ObjReader cr(*cpm, "config.cpm", issues);
    cfg.cpm.interval = cr.number("interval", cfg.cpm.interval);
    const std::string mode = cr.text("phase_mode", "zero");
    if (mode == "zero") {
      cfg.cpm.phase_mode = CpmSchedule::PhaseMode::zero;
    } else if (mode == "seeded") {
      cfg.cpm.phase_mode = CpmSchedule::PhaseMode::seeded;
    } else {
      issues.push_back("config.cpm.phase_mode: must be 'zero' or 'seeded'");
    }
    cfg.cpm.phase_seed = static_cast<std::uint64_t>(cr.integer("phase_seed", 0));
    cr.finish();
    if (!(cfg.cpm.interval > 0.0)) issues.push_back("config.cpm.interval: must be > 0");
  }

  if (root.has("penetration_rates")) {
    const auto & rates = doc.at("penetration_rates");
    if (!rates.is_array() || rates.empty()) {
      issues.push_back("config.penetration_rates: expected a non-empty array");
    } else {
      cfg.penetration_rates.clear();
      for (const auto & r : rates) {
        if (!r.is_number()) {
          issues.push_back("config.penetration_rates: entries must be numbers");
          break;
        }
        cfg.penetration_rates.push_back(r.get<double>());
      }
      for (double r : cfg.penetration_rates) {
        if (!(r >= 0.0 && r <= 1.0)) {
          issues.push_back("config.penetration_rates: values must be in [0, 1]");
          break;
        }
      }
      for (std::size_t i = 1; i < cfg.penetration_rates.size(); ++i) {
        if (!(cfg.penetration_rates[i] > cfg.penetration_rates[i - 1])) {
          issues.push_back("config.penetration_rates: must be strictly ascending");
          break;
        }
      }
    }
  }

  if (root.has("seeds")) {
    const auto & seeds = doc.at("seeds");
    if (!seeds.is_array() || seeds.empty()) {
      issues.push_back("config.seeds: expected a non-empty array");
    } else {
      cfg.seeds.clear();
      for (const auto & s : seeds) {
        if (!s.is_number_integer()) {
          issues.push_back("config.seeds: entries must be integers");
          break;
        }
        cfg.seeds.push_back(s.get<std::uint64_t>());
      }
    }
  }

  const std::string mode = root.text("equipage_mode", "nested");
  if (mode == "nested") {
    cfg.equipage_mode = EquipageMode::nested;
  } else if (mode == "independent") {
    cfg.equipage_mode = EquipageMode::independent;
  } else {
    issues.push_back("config.equipage_mode: must be 'nested' or 'independent'");
  }

  const std::string variant = root.text("mtl_variant", "any_vehicle");
  if (auto v = parse_mtl_variant(variant)) {
    cfg.mtl_variant = *v;
  } else {
    issues.push_back("config.mtl_variant: must be 'any_vehicle' or 'per_vehicle_max'");
  }

  cfg.output_dir = root.text("output_dir", cfg.output_dir);
  if (root.has("scenario_id")) {
    cfg.scenario_id = root.text("scenario_id", "");
  }

  root.finish();
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error & e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(doc);
}

SyntheticSpec parse_synthetic_spec_file(const nlohmann::json & doc, std::uint64_t & seed)
{
  std::vector<std::string> issues;
  if (doc.is_object() && doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer()) {
      issues.push_back("spec.seed: expected an integer");
    } else {
      seed = doc.at("seed").get<std::uint64_t>();
    }
  }
  SyntheticSpec spec = parse_synthetic(doc, "spec", issues, {"seed"});
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return spec;
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path & path, std::uint64_t & seed)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error & e) {
    throw ConfigError("spec " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_synthetic_spec_file(doc, seed);
}

}  // namespace vruocc
