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

#include "vruocc/agent.hpp"

namespace vruocc
{

std::string_view category_label(AgentCategory c)
{
  switch (c) {
    case AgentCategory::car:
      return "car";
    case AgentCategory::truck_bus:
      return "truck_bus";
    case AgentCategory::pedestrian:
      return "pedestrian";
    case AgentCategory::bicycle:
      return "bicycle";
  }
  return "car";
}

std::optional<AgentCategory> parse_category(std::string_view label)
{
  if (label == "car") return AgentCategory::car;
  if (label == "truck_bus") return AgentCategory::truck_bus;
  if (label == "pedestrian") return AgentCategory::pedestrian;
  if (label == "bicycle") return AgentCategory::bicycle;
  return std::nullopt;
}

}  // namespace vruocc
