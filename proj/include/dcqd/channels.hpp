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

#ifndef DCQD_CHANNELS_HPP
#define DCQD_CHANNELS_HPP

#include <cstdint>
#include <vector>

#include "dcqd/pauli.hpp"

namespace dcqd {

/// Process matrix of a completely positive map over the Weyl error basis:
///
///   E(rho) = sum_{m,n} chi[m][n] E_m rho E_n^dag
///
/// with E_m the phase-free basis of `error_basis(d)` per qudit, combined
/// row-major across qudits for n_qudits > 1. For a valid map chi is
/// Hermitian, positive semidefinite, and Tr chi <= 1; trace-preserving maps
/// have Tr chi = 1 under this normalization.
struct ChiMatrix {
  int d = 2;
  int n_qudits = 1;
  Matrix entries;

  /// Side length d^n_qudits of the operators the map acts on.
  int op_dim() const;
  /// Side length d^(2*n_qudits) of `entries`.
  int basis_size() const;

  static ChiMatrix identity_channel(int d, int n_qudits = 1);
};

/// Operator-sum form {K_i}; sum K_i^dag K_i <= I (equality when
/// trace-preserving).
struct KrausSet {
  int d = 2;
  int n_qudits = 1;
  std::vector<Matrix> operators;
};

/// Multi-qudit error-basis element for a row-major combined index.
MultiPauli multi_basis_element(int d, int n_qudits, int index);

/// E(rho) for a density matrix on the map's own system.
Matrix apply_channel(const ChiMatrix& chi, const Matrix& rho);

/// E applied to the first subsystem of a bipartite state: operators act as
/// E_m (x) I_env. `env_dim` is the dimension of the untouched remainder.
Matrix apply_channel_to_first(const ChiMatrix& chi, const Matrix& rho,
                              int env_dim);

/// chi_mn = sum_i c_im conj(c_in) with K_i = sum_m c_im E_m,
/// c_im = Tr(E_m^dag K_i) / d^n_qudits.
ChiMatrix kraus_to_chi(const KrausSet& kraus);

/// Deterministic random CP map: `rank` Kraus operators from a seeded
/// Ginibre/QR construction; trace-preserving on request, otherwise
/// right-multiplied by a random contraction so that Tr chi < 1.
ChiMatrix random_cp_map(int d, int n_qudits, int rank, bool trace_preserving,
                        uint64_t seed);

struct ChiValidationReport {
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  bool hermitian = false;
  bool positive_semidefinite = false;
  bool trace_at_most_one = false;
  bool valid() const {
    return hermitian && positive_semidefinite && trace_at_most_one;
  }
};

ChiValidationReport validate_chi(const ChiMatrix& chi, double tol = 1e-10);

/// Process matrix of the product channel E_1 (x) E_2 (x) ... with combined
/// indices row-major in the factor indices.
ChiMatrix tensor_chi(const std::vector<ChiMatrix>& chis);

}  // namespace dcqd

#endif  // DCQD_CHANNELS_HPP
