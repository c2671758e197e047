// Copyright 2026 The qpt Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpt::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericalError = 3,
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Experiment description read from a JSON config file. Every key is optional
/// at load time; individual subcommands may insist on some (see README).
struct ExperimentConfig {
  std::string gate = "sqiswap";   // sqiswap | iswap | cnot | identity
  double noise_p = 0.0;           // depolarizing weight; 0 means noiseless
  std::string protocol = "both";  // standard | tetrahedron | both
  std::int64_t shots = 100000;
  int runs = 200;
  std::uint64_t seed = 42;
  std::string output_dir = ".";
  int bins = 60;
  int max_iterations = 2000;
  int j_max = 1000;

  /// Keys present in the file.
  std::set<std::string> provided;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Runs one CLI invocation; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpt::cli
