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

#ifndef VRUOCC_ERRORS_HPP_
#define VRUOCC_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace vruocc
{

// Error taxonomy maps onto CLI exit codes: config(2), data(3), io(4).

class ConfigError : public std::runtime_error
{
public:
  explicit ConfigError(std::vector<std::string> issues)
  : std::runtime_error(join(issues)), issues_(std::move(issues))
  {
  }
  explicit ConfigError(std::string issue) : ConfigError(std::vector<std::string>{std::move(issue)})
  {
  }
  const std::vector<std::string> & issues() const { return issues_; }

private:
  static std::string join(const std::vector<std::string> & v)
  {
    std::string s;
    for (const auto & e : v) {
      if (!s.empty()) s += "; ";
      s += e;
    }
    return s;
  }
  std::vector<std::string> issues_;
};

class DataError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace vruocc

#endif  // VRUOCC_ERRORS_HPP_
