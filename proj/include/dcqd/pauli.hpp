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

#ifndef DCQD_PAULI_HPP
#define DCQD_PAULI_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dcqd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

bool is_prime(int d);

/// Primitive d-th root of unity raised to `power`, exp(2*pi*i*power/d).
Complex root_of_unity(int d, long long power);

/// A single-qudit Weyl operator w^a X^q Z^p over Z_d, d prime.
///
/// X|k> = |k+1 mod d>, Z|k> = w^k |k>, w = exp(2*pi*i/d). Elements are kept
/// in normal order (X left of Z) with all exponents reduced to [0, d), so
/// equality is exact integer comparison. Phases never touch floating point
/// until matrix() is called.
class PauliElement {
 public:
  PauliElement(int d, int phase, int x_pow, int z_pow);

  static PauliElement identity(int d) { return PauliElement(d, 0, 0, 0); }

  int dim() const { return d_; }
  int phase() const { return phase_; }
  int x_pow() const { return x_pow_; }
  int z_pow() const { return z_pow_; }

  bool is_identity_up_to_phase() const { return x_pow_ == 0 && z_pow_ == 0; }

  PauliElement with_phase(int phase) const {
    return PauliElement(d_, phase, x_pow_, z_pow_);
  }

  friend bool operator==(const PauliElement&, const PauliElement&) = default;

 private:
  int d_;
  int phase_;
  int x_pow_;
  int z_pow_;
};

/// Canonical constructor: reduces all exponents mod d. Throws
/// std::invalid_argument if d is not prime.
PauliElement weyl_element(int d, int a, int q, int p);

/// Normal-ordered product. Follows from ZX = w XZ:
///   (a1,q1,p1)*(a2,q2,p2) = (a1+a2+p1*q2, q1+q2, p1+p2)  (mod d).
PauliElement compose(const PauliElement& e1, const PauliElement& e2);

/// Inverse element: compose(e, inverse(e)) is the identity.
PauliElement inverse(const PauliElement& e);

PauliElement pow(const PauliElement& e, int n);

/// k in [0, d) such that M1 M2 = w^k M2 M1 as matrices; equals
/// p1*q2 - q1*p2 mod d. Zero iff the elements commute.
int commutation_phase(const PauliElement& e1, const PauliElement& e2);

/// Dense unitary realization w^a X^q Z^p.
Matrix matrix_of(const PauliElement& e);

/// The d^2 phase-free elements X^q Z^p ordered by index = q*d + p.
/// Index 0 is the identity; Tr(Ei^dag Ej) = d delta_ij.
std::vector<PauliElement> error_basis(int d);

int basis_index_of(const PauliElement& e);
PauliElement basis_element(int d, int index);

/// Indices j of the d basis elements whose commutation phase with basis
/// element i equals k. For fixed i != 0 the d subsets k = 0..d-1 partition
/// the basis; the k = 0 subset is the cyclic family of element i.
std::vector<int> commutation_subset(int d, int i, int k);

/// A tensor product of single-qudit Weyl operators times a global phase
/// w^g. Factors are kept phase-free; all phase bookkeeping accumulates in
/// the global exponent, so two MultiPauli agree modulo phase iff their
/// factor lists are equal.
class MultiPauli {
 public:
  MultiPauli(std::vector<PauliElement> factors, int global_phase);

  int dim() const { return d_; }
  int num_qudits() const { return static_cast<int>(factors_.size()); }
  int global_phase() const { return global_phase_; }
  const std::vector<PauliElement>& factors() const { return factors_; }
  const PauliElement& factor(int i) const { return factors_.at(i); }

  MultiPauli with_global_phase(int g) const {
    return MultiPauli(factors_, g);
  }
  bool equal_up_to_phase(const MultiPauli& other) const {
    return factors_ == other.factors_;
  }
  bool is_identity_up_to_phase() const;

  /// Encodes the phase-free content as sum_i (q_i*d + p_i) * d^(2i).
  long long phase_free_key() const;

  friend bool operator==(const MultiPauli&, const MultiPauli&) = default;

 private:
  int d_;
  std::vector<PauliElement> factors_;
  int global_phase_;
};

/// Kronecker product of the factors; the factors' own phases fold into the
/// global exponent.
MultiPauli tensor(std::span<const PauliElement> elements);
MultiPauli tensor(std::initializer_list<PauliElement> elements);

MultiPauli compose(const MultiPauli& m1, const MultiPauli& m2);
MultiPauli inverse(const MultiPauli& m);
MultiPauli pow(const MultiPauli& m, int n);
MultiPauli adjoint(const MultiPauli& m);

/// Sum of per-factor commutation phases mod d.
int commutation_phase(const MultiPauli& m1, const MultiPauli& m2);

Matrix matrix_of(const MultiPauli& m);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace dcqd

#endif  // DCQD_PAULI_HPP
