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

#ifndef VRUOCC_TESTS_TEST_UTIL_HPP_
#define VRUOCC_TESTS_TEST_UTIL_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vruocc/scenario.hpp"
#include "vruocc/vec2.hpp"

namespace vruocc::testing
{

inline AgentState make_agent(
  int id, AgentCategory cat, Vec2 pos, Vec2 vel, double heading = 0.0)
{
  AgentState a;
  a.agent_id = id;
  a.category = cat;
  a.position = pos;
  a.velocity = vel;
  a.heading = heading;
  if (is_vehicle(cat)) {
    a.footprint_length = 4.5;
    a.footprint_width = 1.8;
  } else {
    a.footprint_length = 0.5;
    a.footprint_width = 0.5;
  }
  return a;
}

// Static scenario: the same agent states repeated over `frames` frames.
inline Scenario static_scenario(std::vector<AgentState> agents, int frames, double rate = 25.0)
{
  std::vector<Scene> scenes(static_cast<std::size_t>(frames));
  for (int f = 0; f < frames; ++f) {
    scenes[static_cast<std::size_t>(f)].frame_index = f;
    scenes[static_cast<std::size_t>(f)].agents = agents;
  }
  return Scenario::build(rate, std::move(scenes));
}

class TempDir
{
public:
  explicit TempDir(const std::string & tag)
  {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("vruocc_test_" + tag + "_" + std::to_string(++counter));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;

  const std::filesystem::path & path() const { return path_; }
  std::filesystem::path file(const std::string & name) const { return path_ / name; }

  std::filesystem::path write(const std::string & name, const std::string & content) const
  {
    const auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path & p)
{
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace vruocc::testing

#endif  // VRUOCC_TESTS_TEST_UTIL_HPP_
