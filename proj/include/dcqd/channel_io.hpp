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

#ifndef DCQD_CHANNEL_IO_HPP
#define DCQD_CHANNEL_IO_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcqd/channels.hpp"
#include "dcqd/reconstruction.hpp"

namespace dcqd {

/// Input document: JSON object with integer fields "d" and "n_qudits", a
/// "representation" of "kraus" or "chi", and the matching matrix payload.
/// Matrices are arrays of rows, each entry a [real, imaginary] pair.
struct ChannelSpec {
  int d = 2;
  int n_qudits = 1;
  std::string representation;  // "kraus" | "chi"
  ChiMatrix chi;               // always populated after parsing
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, const std::string& field)
      : std::runtime_error(field.empty() ? message
                                         : message + " (field: " + field + ")"),
        field(field) {}
  std::string field;
};

ChannelSpec parse_channel_spec(const std::string& text);
ChannelSpec load_channel_spec(const std::string& path);
std::string render_channel_spec_chi(const ChiMatrix& chi);
std::string render_channel_spec_kraus(const KrausSet& kraus);

struct ConfigurationSummary {
  std::string kind;
  int stabilizer_index = 0;
  int subgroup_index = 0;
  int coset_label = 0;
  std::vector<double> stabilizer_probs;
};

/// Self-contained result document for one reconstruction run; rendering is
/// canonical, so parse + re-render is byte-identical for a fixed tool
/// version.
struct RunReport {
  std::string tool = "dcqd";
  std::string version;
  uint64_t seed = 0;
  int d = 2;
  std::optional<long long> shots;
  std::string alphas_policy = "geometric";
  int subgroup_offset = 0;
  int coset_label = 0;
  bool trace_preserving_rows = false;

  std::vector<ConfigurationSummary> configurations;
  int rank = 0;
  std::vector<int> incremental_rank;
  bool under_determined = false;
  std::vector<std::string> null_space;
  double residual_norm = 0.0;

  std::vector<std::vector<std::array<double, 2>>> recovered_chi;
  std::optional<std::vector<std::vector<std::array<double, 2>>>>
      ground_truth_chi;
  std::optional<double> frobenius_error;
  double duration_seconds = 0.0;
};

std::string render_report(const RunReport& report);
RunReport parse_report(const std::string& text);
void save_report(const RunReport& report, const std::string& path);
RunReport load_report(const std::string& path);

std::vector<std::vector<std::array<double, 2>>> matrix_to_pairs(
    const Matrix& m);
Matrix pairs_to_matrix(
    const std::vector<std::vector<std::array<double, 2>>>& pairs);

}  // namespace dcqd

#endif  // DCQD_CHANNEL_IO_HPP
