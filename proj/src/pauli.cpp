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

#include "dcqd/pauli.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dcqd {

namespace {

int mod(long long value, int d) {
  long long r = value % d;
  if (r < 0) r += d;
  return static_cast<int>(r);
}

void require_same_dim(int d1, int d2, const char* what) {
  if (d1 != d2) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(d1) + " vs " +
                                std::to_string(d2) + ")");
  }
}

}  // namespace

bool is_prime(int d) {
  if (d < 2) return false;
  for (int f = 2; static_cast<long long>(f) * f <= d; ++f) {
    if (d % f == 0) return false;
  }
  return true;
}

Complex root_of_unity(int d, long long power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(power, d)) / d;
  return Complex{std::cos(angle), std::sin(angle)};
}

PauliElement::PauliElement(int d, int phase, int x_pow, int z_pow)
    : d_(d), phase_(phase), x_pow_(x_pow), z_pow_(z_pow) {
  if (!is_prime(d)) {
    throw std::invalid_argument("PauliElement: dimension " + std::to_string(d) +
                                " is not prime");
  }
  phase_ = mod(phase_, d);
  x_pow_ = mod(x_pow_, d);
  z_pow_ = mod(z_pow_, d);
}

PauliElement weyl_element(int d, int a, int q, int p) {
  return PauliElement(d, a, q, p);
}

PauliElement compose(const PauliElement& e1, const PauliElement& e2) {
  require_same_dim(e1.dim(), e2.dim(), "compose");
  const int d = e1.dim();
  // Reordering Z^{p1} past X^{q2} costs w^{p1*q2}.
  const long long a = static_cast<long long>(e1.phase()) + e2.phase() +
                      static_cast<long long>(e1.z_pow()) * e2.x_pow();
  return PauliElement(d, mod(a, d), e1.x_pow() + e2.x_pow(),
                      e1.z_pow() + e2.z_pow());
}

PauliElement inverse(const PauliElement& e) {
  const int d = e.dim();
  const long long a = -static_cast<long long>(e.phase()) +
                      static_cast<long long>(e.x_pow()) * e.z_pow();
  return PauliElement(d, mod(a, d), -e.x_pow(), -e.z_pow());
}

PauliElement pow(const PauliElement& e, int n) {
  PauliElement acc = PauliElement::identity(e.dim());
  const PauliElement base = n < 0 ? inverse(e) : e;
  const int k = n < 0 ? -n : n;
  for (int i = 0; i < k; ++i) acc = compose(acc, base);
  return acc;
}

int commutation_phase(const PauliElement& e1, const PauliElement& e2) {
  require_same_dim(e1.dim(), e2.dim(), "commutation_phase");
  const long long k = static_cast<long long>(e1.z_pow()) * e2.x_pow() -
                      static_cast<long long>(e1.x_pow()) * e2.z_pow();
  return mod(k, e1.dim());
}

Matrix matrix_of(const PauliElement& e) {
  const int d = e.dim();
  Matrix m = Matrix::Zero(d, d);
  // (w^a X^q Z^p)|k> = w^{a + p k} |k + q>.
  for (int k = 0; k < d; ++k) {
    const long long exponent =
        e.phase() + static_cast<long long>(e.z_pow()) * k;
    m((k + e.x_pow()) % d, k) = root_of_unity(d, exponent);
  }
  return m;
}

std::vector<PauliElement> error_basis(int d) {
  std::vector<PauliElement> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  for (int q = 0; q < d; ++q) {
    for (int p = 0; p < d; ++p) {
      basis.push_back(PauliElement(d, 0, q, p));
    }
  }
  return basis;
}

int basis_index_of(const PauliElement& e) {
  return e.x_pow() * e.dim() + e.z_pow();
}

PauliElement basis_element(int d, int index) {
  if (index < 0 || index >= d * d) {
    throw std::invalid_argument("basis_element: index out of range");
  }
  return PauliElement(d, 0, index / d, index % d);
}

std::vector<int> commutation_subset(int d, int i, int k) {
  const PauliElement ei = basis_element(d, i);
  std::vector<int> subset;
  for (int j = 0; j < d * d; ++j) {
    if (commutation_phase(ei, basis_element(d, j)) == mod(k, d)) {
      subset.push_back(j);
    }
  }
  return subset;
}

MultiPauli::MultiPauli(std::vector<PauliElement> factors, int global_phase)
    : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw std::invalid_argument("MultiPauli: factor list is empty");
  }
  d_ = factors_[0].dim();
  long long g = global_phase;
  for (auto& f : factors_) {
    require_same_dim(f.dim(), d_, "MultiPauli");
    g += f.phase();
    f = f.with_phase(0);
  }
  global_phase_ = mod(g, d_);
}

bool MultiPauli::is_identity_up_to_phase() const {
  for (const auto& f : factors_) {
    if (!f.is_identity_up_to_phase()) return false;
  }
  return true;
}

long long MultiPauli::phase_free_key() const {
  long long key = 0;
  long long scale = 1;
  for (const auto& f : factors_) {
    key += scale * (static_cast<long long>(f.x_pow()) * d_ + f.z_pow());
    scale *= static_cast<long long>(d_) * d_;
  }
  return key;
}

MultiPauli tensor(std::span<const PauliElement> elements) {
  if (elements.empty()) {
    throw std::invalid_argument("tensor: empty element sequence");
  }
  return MultiPauli(std::vector<PauliElement>(elements.begin(), elements.end()),
                    0);
}

MultiPauli tensor(std::initializer_list<PauliElement> elements) {
  return tensor(std::span<const PauliElement>(elements.begin(), elements.size()));
}

MultiPauli compose(const MultiPauli& m1, const MultiPauli& m2) {
  require_same_dim(m1.dim(), m2.dim(), "compose");
  if (m1.num_qudits() != m2.num_qudits()) {
    throw std::invalid_argument("compose: qudit count mismatch");
  }
  std::vector<PauliElement> factors;
  factors.reserve(m1.num_qudits());
  for (int i = 0; i < m1.num_qudits(); ++i) {
    factors.push_back(compose(m1.factor(i), m2.factor(i)));
  }
  return MultiPauli(std::move(factors),
                    m1.global_phase() + m2.global_phase());
}

MultiPauli inverse(const MultiPauli& m) {
  std::vector<PauliElement> factors;
  factors.reserve(m.num_qudits());
  for (const auto& f : m.factors()) factors.push_back(inverse(f));
  return MultiPauli(std::move(factors), -m.global_phase());
}

MultiPauli pow(const MultiPauli& m, int n) {
  std::vector<PauliElement> id(m.num_qudits(), PauliElement::identity(m.dim()));
  MultiPauli acc(id, 0);
  MultiPauli base = n < 0 ? inverse(m) : m;
  const int k = n < 0 ? -n : n;
  for (int i = 0; i < k; ++i) acc = compose(acc, base);
  return acc;
}

MultiPauli adjoint(const MultiPauli& m) { return inverse(m); }

int commutation_phase(const MultiPauli& m1, const MultiPauli& m2) {
  require_same_dim(m1.dim(), m2.dim(), "commutation_phase");
  if (m1.num_qudits() != m2.num_qudits()) {
    throw std::invalid_argument("commutation_phase: qudit count mismatch");
  }
  long long k = 0;
  for (int i = 0; i < m1.num_qudits(); ++i) {
    k += commutation_phase(m1.factor(i), m2.factor(i));
  }
  long long r = k % m1.dim();
  if (r < 0) r += m1.dim();
  return static_cast<int>(r);
}

Matrix matrix_of(const MultiPauli& m) {
  Matrix result = matrix_of(m.factor(0));
  for (int i = 1; i < m.num_qudits(); ++i) {
    result = kron(result, matrix_of(m.factor(i)));
  }
  return root_of_unity(m.dim(), m.global_phase()) * result;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace dcqd
