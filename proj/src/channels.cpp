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

#include "dcqd/channels.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace dcqd {

namespace {

int int_pow(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_square(const Matrix& m, int side, const char* what) {
  if (m.rows() != side || m.cols() != side) {
    throw std::invalid_argument(std::string(what) + ": expected a " +
                                std::to_string(side) + "x" +
                                std::to_string(side) + " matrix, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

Matrix random_ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      g(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  return g;
}

}  // namespace

int ChiMatrix::op_dim() const { return int_pow(d, n_qudits); }

int ChiMatrix::basis_size() const { return int_pow(d, 2 * n_qudits); }

ChiMatrix ChiMatrix::identity_channel(int d, int n_qudits) {
  ChiMatrix chi;
  chi.d = d;
  chi.n_qudits = n_qudits;
  chi.entries = Matrix::Zero(chi.basis_size(), chi.basis_size());
  chi.entries(0, 0) = 1.0;
  return chi;
}

MultiPauli multi_basis_element(int d, int n_qudits, int index) {
  const int per_qudit = d * d;
  std::vector<PauliElement> factors;
  factors.reserve(n_qudits);
  int rem = index;
  for (int i = 0; i < n_qudits; ++i) {
    const int scale = int_pow(per_qudit, n_qudits - 1 - i);
    factors.push_back(basis_element(d, rem / scale));
    rem %= scale;
  }
  return MultiPauli(std::move(factors), 0);
}

Matrix apply_channel(const ChiMatrix& chi, const Matrix& rho) {
  return apply_channel_to_first(chi, rho, 1);
}

Matrix apply_channel_to_first(const ChiMatrix& chi, const Matrix& rho,
                              int env_dim) {
  const int n = chi.basis_size();
  const int side = chi.op_dim() * env_dim;
  require_square(chi.entries, n, "apply_channel: chi");
  require_square(rho, side, "apply_channel: rho");

  std::vector<Matrix> lifted(n);
  for (int m = 0; m < n; ++m) {
    Matrix em = matrix_of(multi_basis_element(chi.d, chi.n_qudits, m));
    lifted[m] = env_dim == 1
                    ? std::move(em)
                    : kron(em, Matrix::Identity(env_dim, env_dim));
  }

  Matrix out = Matrix::Zero(side, side);
  for (int m = 0; m < n; ++m) {
    if (chi.entries.row(m).cwiseAbs().maxCoeff() == 0.0) continue;
    const Matrix left = lifted[m] * rho;
    for (int nn = 0; nn < n; ++nn) {
      const Complex c = chi.entries(m, nn);
      if (c == Complex(0.0, 0.0)) continue;
      out.noalias() += c * left * lifted[nn].adjoint();
    }
  }
  return out;
}

ChiMatrix kraus_to_chi(const KrausSet& kraus) {
  ChiMatrix chi;
  chi.d = kraus.d;
  chi.n_qudits = kraus.n_qudits;
  const int n = chi.basis_size();
  const int side = chi.op_dim();
  chi.entries = Matrix::Zero(n, n);

  std::vector<Matrix> basis_adj(n);
  for (int m = 0; m < n; ++m) {
    basis_adj[m] = matrix_of(multi_basis_element(chi.d, chi.n_qudits, m)).adjoint();
  }

  for (const auto& k : kraus.operators) {
    require_square(k, side, "kraus_to_chi");
    Vector coeffs(n);
    for (int m = 0; m < n; ++m) {
      coeffs(m) = (basis_adj[m] * k).trace() / static_cast<double>(side);
    }
    chi.entries.noalias() += coeffs * coeffs.adjoint();
  }
  return chi;
}

ChiMatrix random_cp_map(int d, int n_qudits, int rank, bool trace_preserving,
                        uint64_t seed) {
  if (rank < 1) throw std::invalid_argument("random_cp_map: rank must be >= 1");
  if (!is_prime(d)) {
    throw std::invalid_argument("random_cp_map: dimension " +
                                std::to_string(d) + " is not prime");
  }
  const int side = int_pow(d, n_qudits);
  std::mt19937_64 rng(seed);

  // QR of a tall Ginibre matrix gives a Haar-random isometry
  // C^side -> C^(rank*side); its side x side blocks are the Kraus set.
  Matrix g = random_ginibre(rank * side, side, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rank * side, side);

  KrausSet kraus;
  kraus.d = d;
  kraus.n_qudits = n_qudits;
  for (int i = 0; i < rank; ++i) {
    kraus.operators.push_back(q.block(i * side, 0, side, side));
  }

  if (!trace_preserving) {
    // Right-multiplying every K_i by a common contraction keeps complete
    // positivity and makes sum K^dag K strictly below the identity.
    Matrix c = random_ginibre(side, side, rng);
    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd sv = svd.singularValues();
    std::uniform_real_distribution<double> unif(0.2, 0.9);
    for (int i = 0; i < sv.size(); ++i) sv(i) = unif(rng);
    const Matrix contraction =
        svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
    for (auto& k : kraus.operators) k = k * contraction;
  }

  return kraus_to_chi(kraus);
}

ChiValidationReport validate_chi(const ChiMatrix& chi, double tol) {
  ChiValidationReport report;
  const Matrix& m = chi.entries;
  report.hermiticity_residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      Matrix(0.5 * (m + m.adjoint())), Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.trace = m.trace().real();
  report.hermitian = report.hermiticity_residual <= tol;
  report.positive_semidefinite = report.min_eigenvalue >= -tol;
  report.trace_at_most_one = report.trace <= 1.0 + tol;
  return report;
}

ChiMatrix tensor_chi(const std::vector<ChiMatrix>& chis) {
  if (chis.empty()) throw std::invalid_argument("tensor_chi: empty sequence");
  ChiMatrix out = chis[0];
  for (size_t i = 1; i < chis.size(); ++i) {
    if (chis[i].d != out.d) {
      throw std::invalid_argument("tensor_chi: mixed qudit dimensions");
    }
    out.n_qudits += chis[i].n_qudits;
    out.entries = kron(out.entries, chis[i].entries);
  }
  return out;
}

}  // namespace dcqd
