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

#ifndef DCQD_RECONSTRUCTION_HPP
#define DCQD_RECONSTRUCTION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcqd/protocol.hpp"

namespace dcqd {

/// Real parametrization of a Hermitian chi of side N: N diagonal entries,
/// then Re chi_mn for m < n, then Im chi_mn for m < n, both lexicographic.
struct ChiParametrization {
  explicit ChiParametrization(int basis_size);

  int basis_size;   // N
  int param_count;  // N^2

  int diag_index(int m) const;
  int real_index(int m, int n) const;
  int imag_index(int m, int n) const;
  std::string label(int param) const;

  Eigen::VectorXd params_from_chi(const Matrix& chi) const;
  Matrix chi_from_params(const Eigen::VectorXd& params) const;
};

struct RowLabel {
  enum class Kind {
    population_prob,
    stabilizer_prob,
    moment_real,
    moment_imag,
    trace_constraint_real,
    trace_constraint_imag,
  };
  Kind kind = Kind::population_prob;
  int config_index = 0;
  int outcome = 0;       // k (or flattened grid cell for population)
  int normalizer_b = 0;  // 1..d-1 for moment rows
  std::string to_string() const;
};

/// The statistics of all configurations as one real linear map from chi
/// parameters to predicted values. Normalizer statistics enter as the
/// unnormalized joint moments Tr[T P_k E(rho) P_k] (expectation times
/// outcome probability), which stay linear in chi and are exactly zero for
/// outcomes whose probability vanishes.
struct LinearSystem {
  int d = 2;
  int basis_size = 4;  // d^2
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<RowLabel> row_labels;
  std::vector<std::string> column_labels;
  // Half-open row ranges per configuration, in enumeration order.
  std::vector<std::pair<int, int>> config_row_ranges;
};

struct AssemblyOptions {
  /// Appends the d^2 complex trace-preservation constraint rows
  /// sum_mn chi_mn E_n^dag E_m = I.
  bool trace_preserving_rows = false;
};

/// Coefficient matrix alone (channel-independent): column j holds the
/// statistics of the j-th Hermitian unit perturbation of chi.
LinearSystem assemble_coefficients(
    const std::vector<ExperimentalConfiguration>& configs,
    const AssemblyOptions& options = {});

/// Coefficients plus right-hand side taken from the records, which must be
/// aligned with the configurations.
LinearSystem assemble_system(
    const std::vector<ExperimentalConfiguration>& configs,
    const std::vector<OutcomeRecord>& records,
    const AssemblyOptions& options = {});

struct RankReport {
  int rank = 0;
  double sigma_max = 0.0;
  /// Rank of the system truncated after each configuration's rows.
  std::vector<int> cumulative_rank;
  /// First differences of cumulative_rank: what each configuration added.
  std::vector<int> incremental_rank;
};

RankReport rank_report(const LinearSystem& system,
                       double threshold_rel = 1e-8);

class UnderdeterminedError : public std::runtime_error {
 public:
  UnderdeterminedError(const std::string& message,
                       std::vector<std::string> missing)
      : std::runtime_error(message), missing_directions(std::move(missing)) {}
  std::vector<std::string> missing_directions;
};

struct SolveOptions {
  double threshold_rel = 1e-8;
  /// Throw UnderdeterminedError when rank < d^4 (otherwise return the
  /// minimum-norm solution with the under_determined flag set).
  bool require_full_rank = true;
  /// Clip negative eigenvalues of the recovered chi.
  bool psd_projection = false;
};

struct SolveResult {
  ChiMatrix chi;
  double residual_norm = 0.0;
  int rank = 0;
  bool under_determined = false;
  std::vector<std::string> null_space_labels;
};

SolveResult solve_chi(const LinearSystem& system,
                      const SolveOptions& options = {});

/// Reusable SVD factorization for solving many right-hand sides against
/// one coefficient matrix. Keeps a reference to the system, which must
/// outlive the solver.
class LeastSquaresSolver {
 public:
  explicit LeastSquaresSolver(const LinearSystem& system,
                              double threshold_rel = 1e-8);
  SolveResult solve(const Eigen::VectorXd& rhs,
                    const SolveOptions& options = {}) const;
  int rank() const { return rank_; }

 private:
  const LinearSystem& system_;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_;
  int rank_ = 0;
};

struct SchemeResources {
  std::string scheme;
  unsigned long long hilbert_dim = 0;
  unsigned long long inputs = 0;
  unsigned long long configurations = 0;
  std::string measurements;
  std::string interactions;
};

/// Closed-form experimental-resource counts of the five tomography schemes
/// for n qudits of dimension d.
std::vector<SchemeResources> resource_table(int d, int n);

}  // namespace dcqd

#endif  // DCQD_RECONSTRUCTION_HPP
