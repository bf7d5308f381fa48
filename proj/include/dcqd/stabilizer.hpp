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

#ifndef DCQD_STABILIZER_HPP
#define DCQD_STABILIZER_HPP

#include <vector>

#include "dcqd/pauli.hpp"

namespace dcqd {

/// A two-qudit stabilizer code together with the probe state it fixes.
///
/// Every generator S satisfies S^d = I exactly (any phase picked up by the
/// d-th power is folded into the generator's global phase) and fixes the
/// probe with eigenvalue w^k, k the matching entry of eigenvalue_labels.
/// Probes are constructed in the k = 0 sector.
struct StabilizerCode {
  int d = 2;
  std::vector<MultiPauli> generators;
  std::vector<int> eigenvalue_labels;
  Vector state;

  // Single-generator (coherence) codes carry the logical frame: the basis
  // index of the defining single-qudit element E_i, its eigenbasis (column
  // l holds |l>_i), the shift partner mapping |l>_i to |l+1>_i, and the
  // logical superposition coefficients of the probe.
  int basis_index = 0;
  Matrix eigenbasis;
  Vector alphas;
};

/// Members T^b S^a0 (b = 0..d-1) of one coset inside an Abelian subgroup of
/// the normalizer, stored as phase-free canonical elements. logical_x_pow /
/// logical_z_pow are the exponents of the coset generator T (b = 1 member
/// of the a0 = 0 coset) in the code's logical-shift/logical-phase frame.
struct NormalizerCoset {
  int subgroup_index = 1;  // v in [1, d+1]
  int coset_label = 0;     // a0 in [0, d)
  std::vector<MultiPauli> members;
  int logical_x_pow = 0;
  int logical_z_pow = 0;
};

/// Nondegenerate two-generator code fixing the maximally entangled state
/// (1/sqrt d) sum_k |k>|k>; generators X(x)X and Z(x)Z^(d-1).
StabilizerCode population_probe(int d);

/// Degenerate single-generator code E_i (x) E_i^(d-1) fixing
/// sum_l alphas[l] |l>_i |l>_i. With check_entanglement set, rejects
/// coefficient vectors whose power spectrum sum_l w^(al) |alpha_l|^2
/// vanishes for some a != 0 (in particular the maximally entangled uniform
/// vector); throws std::invalid_argument on rejection or on a zero vector.
StabilizerCode coherence_probe(int d, int basis_index, const Vector& alphas,
                               bool check_entanglement = true);

struct AlphaValidation {
  bool ok = false;
  double min_margin = 0.0;
  // Arguments (a, b) of the worst margin, for diagnostics.
  int worst_a = 0;
  int worst_b = 0;
};

/// Checks |sum_l w^((a+b*p)l) conj(alpha_l) alpha_(l+b*q)| > tol for every
/// b in [0, d) and every a in [0, d), with (q, p) the coset generator's
/// logical exponents. The full range of a is a conservative superset of the
/// exponents that actually arise from basis-element pairs.
AlphaValidation validate_alphas(int d, const Vector& alphas,
                                const NormalizerCoset& coset,
                                double tol = 1e-6);

/// Projector onto the w^k eigenspace, (1/d) sum_l w^(-lk) S^l. Requires
/// S^d = I with zero phase; throws std::invalid_argument otherwise.
Matrix eigenprojector(const MultiPauli& s, int k);

/// All phase-free two-qudit elements commuting with the code's single
/// generator, in lexicographic (q1, p1, q2, p2) order. Has exactly d^3
/// members.
std::vector<MultiPauli> normalizer(const StabilizerCode& code);

/// The d+1 maximal Abelian subgroups of the normalizer that contain the
/// cyclic group of the generator. Each has d^2 phase-free members; any two
/// intersect exactly in the generator's cyclic group.
std::vector<std::vector<MultiPauli>> abelian_subgroups(
    const StabilizerCode& code);

/// Splits one Abelian subgroup into the d cosets {T^b S^a0 : b}, a0 in
/// [0, d), with T the first subgroup member outside the generator's cyclic
/// group. subgroup_index is the 1-based position v reported in the coset.
std::vector<NormalizerCoset> cosets(const std::vector<MultiPauli>& subgroup,
                                    const StabilizerCode& code,
                                    int subgroup_index = 1);

/// True iff every cross pair of columns from different bases has squared
/// overlap 1/dim within tol.
bool mub_check(const std::vector<Matrix>& bases, double tol = 1e-10);

struct HammingBoundResult {
  long long lhs_num = 0;  // lhs as the reduced fraction lhs_num / lhs_den
  long long lhs_den = 1;
  long long rhs = 0;      // d^n
  bool holds = false;
  bool equality = false;
};

/// Evaluates sum_{j=0}^{t} C(n_e, j) (d^2-1)^j d^k / g <= d^n in exact
/// integer arithmetic.
HammingBoundResult check_hamming_bound(int n, int k, int g, int n_e, int t,
                                       int d);

/// Basis indices of one representative per cyclic family of the d^2 - 1
/// nonidentity single-qudit elements: Z, X, XZ, XZ^2, ..., XZ^(d-1). These
/// d+1 elements generate the d+1 mutually unbiased eigenbases.
std::vector<int> family_representatives(int d);

/// First basis element F with commutation phase 1 against e and F^d = I
/// phase-free; conjugating partner used to ladder through e's eigenbasis.
PauliElement conjugate_partner(const PauliElement& e);

/// Eigenbasis of e as matrix columns |0>, |1>, ..., |d-1> with
/// e|l> = gamma w^l |l>, gamma the principal d-th root of the phase of
/// e^d, and |l> = partner^l |0>. Deterministic up to solver reproducibility.
Matrix eigenbasis_of(const PauliElement& e);

/// Isometry from logical space to the two-qudit space: column l is
/// |l>_i (x) |l>_i for the code's eigenbasis.
Matrix code_space_isometry(const StabilizerCode& code);

}  // namespace dcqd

#endif  // DCQD_STABILIZER_HPP
