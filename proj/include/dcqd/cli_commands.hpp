// Copyright 2026 The dcqd authors
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

#ifndef DCQD_CLI_COMMANDS_HPP
#define DCQD_CLI_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "dcqd/channel_io.hpp"

namespace dcqd {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

struct ReconstructOptions {
  std::string channel_file;
  std::optional<int> expected_d;
  std::optional<long long> shots;
  uint64_t seed = 0;
  std::string output_file;
  bool trace_preserving = false;
  std::string alphas_policy = "geometric";
  int subgroup_offset = 0;
  int coset_label = 0;
};

/// Full pipeline: enumerate, simulate (exact or sampled), assemble, solve,
/// write the report. Returns kExitCheckFailed when the system turned out
/// rank-deficient (the partial result is still reported).
int cmd_reconstruct(const ReconstructOptions& options, std::ostream& out,
                    std::ostream& err);

/// Runs the structural property suite for one dimension, one PASS/FAIL
/// line per check.
int cmd_verify(int d, std::ostream& out, std::ostream& err);

/// Prints the experimental-resource comparison of the tomography schemes.
int cmd_resources(int d, int n, std::ostream& out, std::ostream& err);

/// Single-configuration diagonal extraction printed as a d x d grid;
/// identity channel when no file is given.
int cmd_population_demo(int d, const std::string& channel_file,
                        std::ostream& out, std::ostream& err);

}  // namespace dcqd

#endif  // DCQD_CLI_COMMANDS_HPP
