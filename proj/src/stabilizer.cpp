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

#include "dcqd/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace dcqd {

namespace {

constexpr double kEigenEquationTol = 1e-10;

int mod(long long v, int d) {
  long long r = v % d;
  if (r < 0) r += d;
  return static_cast<int>(r);
}

void require_prime(int d, const char* what) {
  if (!is_prime(d)) {
    throw std::invalid_argument(std::string(what) + ": dimension " +
                                std::to_string(d) + " is not prime");
  }
}

MultiPauli two_qudit_identity(int d) {
  return MultiPauli({PauliElement::identity(d), PauliElement::identity(d)}, 0);
}

const MultiPauli& single_generator(const StabilizerCode& code,
                                   const char* what) {
  if (code.generators.size() != 1) {
    throw std::invalid_argument(std::string(what) +
                                ": code must have exactly one generator");
  }
  return code.generators[0];
}

/// Integer exponent s with M|state> = w^s |state>; throws if the state is
/// not an eigenvector with a d-th-root-of-unity eigenvalue.
int eigenvalue_exponent(const MultiPauli& m, const Vector& state) {
  const Vector image = matrix_of(m) * state;
  const Complex lambda = state.dot(image);  // <state|M|state>
  const int d = m.dim();
  for (int s = 0; s < d; ++s) {
    if (std::abs(lambda - root_of_unity(d, s)) < 1e-8 &&
        (image - root_of_unity(d, s) * state).norm() < kEigenEquationTol) {
      return s;
    }
  }
  throw std::invalid_argument(
      "eigenvalue_exponent: state is not a root-of-unity eigenvector");
}

}  // namespace

StabilizerCode population_probe(int d) {
  require_prime(d, "population_probe");
  StabilizerCode code;
  code.d = d;
  const PauliElement x = weyl_element(d, 0, 1, 0);
  const PauliElement z = weyl_element(d, 0, 0, 1);
  code.generators.push_back(tensor({x, x}));
  code.generators.push_back(tensor({z, pow(z, d - 1)}));
  code.eigenvalue_labels = {0, 0};

  code.state = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) code.state(k * d + k) = amp;

  for (const auto& g : code.generators) {
    if (eigenvalue_exponent(g, code.state) != 0) {
      throw std::logic_error("population_probe: generator does not fix probe");
    }
  }
  return code;
}

PauliElement conjugate_partner(const PauliElement& e) {
  const int d = e.dim();
  for (int idx = 1; idx < d * d; ++idx) {
    const PauliElement f = basis_element(d, idx);
    if (commutation_phase(e, f) != 1) continue;
    if (pow(f, d) == PauliElement::identity(d)) return f;
  }
  throw std::invalid_argument("conjugate_partner: no partner found");
}

Matrix eigenbasis_of(const PauliElement& e) {
  const int d = e.dim();
  if (e.is_identity_up_to_phase()) {
    throw std::invalid_argument("eigenbasis_of: element is the identity");
  }
  // gamma = principal d-th root of the phase of e^d; the eigenvalues of e
  // are exactly gamma * w^l.
  const int power_phase = pow(e.with_phase(0), d).phase();
  const double gamma_angle =
      2.0 * std::numbers::pi * power_phase / (static_cast<double>(d) * d);
  const Complex gamma{std::cos(gamma_angle), std::sin(gamma_angle)};

  const Matrix m = matrix_of(e.with_phase(0));
  Eigen::ComplexEigenSolver<Matrix> solver(m);
  int ground = -1;
  for (int j = 0; j < d; ++j) {
    if (std::abs(solver.eigenvalues()(j) - gamma) < 1e-8) {
      ground = j;
      break;
    }
  }
  if (ground < 0) {
    throw std::logic_error("eigenbasis_of: principal eigenvalue not found");
  }

  Vector v0 = solver.eigenvectors().col(ground);
  v0.normalize();
  // Deterministic phase: largest-modulus entry made real positive.
  int pivot = 0;
  for (int r = 1; r < d; ++r) {
    if (std::abs(v0(r)) > std::abs(v0(pivot))) pivot = r;
  }
  v0 *= std::conj(v0(pivot)) / std::abs(v0(pivot));

  const Matrix shift = matrix_of(conjugate_partner(e));
  Matrix basis(d, d);
  basis.col(0) = v0;
  for (int l = 1; l < d; ++l) basis.col(l) = shift * basis.col(l - 1);
  return basis;
}

StabilizerCode coherence_probe(int d, int basis_index, const Vector& alphas,
                               bool check_entanglement) {
  require_prime(d, "coherence_probe");
  if (basis_index <= 0 || basis_index >= d * d) {
    throw std::invalid_argument(
        "coherence_probe: basis index must identify a nonidentity element");
  }
  if (alphas.size() != d) {
    throw std::invalid_argument("coherence_probe: need d coefficients");
  }
  const double norm = alphas.norm();
  if (norm < 1e-12) {
    throw std::invalid_argument("coherence_probe: zero coefficient vector");
  }
  Vector a = alphas / norm;

  if (check_entanglement) {
    // sum_l w^(al) |alpha_l|^2 != 0 for every a != 0; the uniform vector
    // (maximal entanglement) fails this for every a.
    for (int aa = 1; aa < d; ++aa) {
      Complex sum = 0.0;
      for (int l = 0; l < d; ++l) {
        sum += root_of_unity(d, static_cast<long long>(aa) * l) *
               std::norm(a(l));
      }
      if (std::abs(sum) <= 1e-6) {
        throw std::invalid_argument(
            "coherence_probe: coefficients too close to maximal entanglement "
            "(power spectrum vanishes at a=" +
            std::to_string(aa) + ")");
      }
    }
  }

  StabilizerCode code;
  code.d = d;
  code.basis_index = basis_index;
  code.alphas = a;

  const PauliElement ei = basis_element(d, basis_index);
  code.eigenbasis = eigenbasis_of(ei);

  code.state = Vector::Zero(d * d);
  for (int l = 0; l < d; ++l) {
    Vector col = code.eigenbasis.col(l);
    for (int r = 0; r < d; ++r) {
      for (int s = 0; s < d; ++s) {
        code.state(r * d + s) += a(l) * col(r) * col(s);
      }
    }
  }
  code.state.normalize();

  // Generator E_i (x) E_i^(d-1), with the global phase chosen so the probe
  // sits in the +1 sector.
  MultiPauli gen = tensor({ei, pow(ei, d - 1)}).with_global_phase(0);
  const int sector = eigenvalue_exponent(gen, code.state);
  gen = gen.with_global_phase(mod(-sector, d));
  if (eigenvalue_exponent(gen, code.state) != 0) {
    throw std::logic_error("coherence_probe: sector adjustment failed");
  }
  code.generators.push_back(gen);
  code.eigenvalue_labels = {0};
  return code;
}

AlphaValidation validate_alphas(int d, const Vector& alphas,
                                const NormalizerCoset& coset, double tol) {
  if (alphas.size() != d) {
    throw std::invalid_argument("validate_alphas: need d coefficients");
  }
  Vector a = alphas;
  a.normalize();
  const int q = coset.logical_x_pow;
  const int p = coset.logical_z_pow;

  AlphaValidation result;
  result.min_margin = std::numeric_limits<double>::infinity();
  for (int b = 0; b < d; ++b) {
    for (int aa = 0; aa < d; ++aa) {
      if (b == 0 && aa == 0) continue;  // normalization, identically 1
      Complex sum = 0.0;
      for (int l = 0; l < d; ++l) {
        const long long phase = static_cast<long long>(aa + b * p) * l;
        sum += root_of_unity(d, phase) * std::conj(a(l)) *
               a(mod(l + static_cast<long long>(b) * q, d));
      }
      if (std::abs(sum) < result.min_margin) {
        result.min_margin = std::abs(sum);
        result.worst_a = aa;
        result.worst_b = b;
      }
    }
  }
  result.ok = result.min_margin > tol;
  return result;
}

Matrix eigenprojector(const MultiPauli& s, int k) {
  const int d = s.dim();
  if (!(pow(s, d) == MultiPauli(
            std::vector<PauliElement>(s.num_qudits(),
                                      PauliElement::identity(d)),
            0))) {
    throw std::invalid_argument(
        "eigenprojector: generator's d-th power carries a nontrivial phase");
  }
  const Matrix m = matrix_of(s);
  Matrix pk = Matrix::Zero(m.rows(), m.cols());
  Matrix power = Matrix::Identity(m.rows(), m.cols());
  for (int l = 0; l < d; ++l) {
    pk += root_of_unity(d, -static_cast<long long>(l) * k) * power;
    power = m * power;
  }
  return pk / static_cast<double>(d);
}

std::vector<MultiPauli> normalizer(const StabilizerCode& code) {
  const MultiPauli& s = single_generator(code, "normalizer");
  const int d = code.d;
  std::vector<MultiPauli> members;
  members.reserve(static_cast<size_t>(d) * d * d);
  for (int q1 = 0; q1 < d; ++q1) {
    for (int p1 = 0; p1 < d; ++p1) {
      for (int q2 = 0; q2 < d; ++q2) {
        for (int p2 = 0; p2 < d; ++p2) {
          MultiPauli t({PauliElement(d, 0, q1, p1), PauliElement(d, 0, q2, p2)},
                       0);
          if (commutation_phase(t, s) == 0) members.push_back(std::move(t));
        }
      }
    }
  }
  return members;
}

std::vector<std::vector<MultiPauli>> abelian_subgroups(
    const StabilizerCode& code) {
  const MultiPauli& s = single_generator(code, "abelian_subgroups");
  const int d = code.d;

  std::set<long long> stabilizer_keys;
  for (int a = 0; a < d; ++a) stabilizer_keys.insert(pow(s, a).phase_free_key());

  const std::vector<MultiPauli> big = normalizer(code);
  std::set<long long> assigned;
  std::vector<std::vector<MultiPauli>> subgroups;

  for (const auto& t : big) {
    const long long key = t.phase_free_key();
    if (stabilizer_keys.count(key) || assigned.count(key)) continue;

    std::vector<MultiPauli> span;
    std::set<long long> span_keys;
    for (int b = 0; b < d; ++b) {
      const MultiPauli tb = pow(t, b);
      for (int a = 0; a < d; ++a) {
        MultiPauli member = compose(tb, pow(s, a)).with_global_phase(0);
        if (span_keys.insert(member.phase_free_key()).second) {
          span.push_back(std::move(member));
        }
      }
    }
    if (span.size() != static_cast<size_t>(d) * d) {
      throw std::logic_error("abelian_subgroups: span has unexpected size");
    }
    for (long long k : span_keys) {
      if (!stabilizer_keys.count(k)) assigned.insert(k);
    }
    std::sort(span.begin(), span.end(),
              [](const MultiPauli& a, const MultiPauli& b) {
                return a.phase_free_key() < b.phase_free_key();
              });
    subgroups.push_back(std::move(span));
  }
  return subgroups;
}

std::vector<NormalizerCoset> cosets(const std::vector<MultiPauli>& subgroup,
                                    const StabilizerCode& code,
                                    int subgroup_index) {
  const MultiPauli& s = single_generator(code, "cosets");
  const int d = code.d;

  std::set<long long> stabilizer_keys;
  for (int a = 0; a < d; ++a) stabilizer_keys.insert(pow(s, a).phase_free_key());

  const MultiPauli* generator = nullptr;
  for (const auto& m : subgroup) {
    if (!stabilizer_keys.count(m.phase_free_key())) {
      generator = &m;
      break;
    }
  }
  if (generator == nullptr) {
    throw std::invalid_argument("cosets: subgroup equals the stabilizer group");
  }

  // Logical exponents of T: the shift power from commuting with E_i (x) I,
  // the phase power from commuting with the shift partner pair.
  const PauliElement ei = s.factor(0).with_phase(0);
  const PauliElement partner = conjugate_partner(ei);
  const MultiPauli logical_z = tensor({ei, PauliElement::identity(d)});
  const MultiPauli logical_x = tensor({partner, partner});
  const int q = commutation_phase(logical_z, *generator);
  const int p = mod(-commutation_phase(logical_x, *generator), d);

  std::vector<NormalizerCoset> out;
  for (int a0 = 0; a0 < d; ++a0) {
    NormalizerCoset coset;
    coset.subgroup_index = subgroup_index;
    coset.coset_label = a0;
    coset.logical_x_pow = q;
    coset.logical_z_pow = p;
    for (int b = 0; b < d; ++b) {
      coset.members.push_back(
          compose(pow(*generator, b), pow(s, a0)).with_global_phase(0));
    }
    out.push_back(std::move(coset));
  }
  return out;
}

bool mub_check(const std::vector<Matrix>& bases, double tol) {
  if (bases.empty()) return true;
  const Eigen::Index dim = bases[0].rows();
  for (const auto& b : bases) {
    if (b.rows() != dim || b.cols() != dim) {
      throw std::invalid_argument("mub_check: bases must be square, same dim");
    }
    if ((b.adjoint() * b - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() >
        1e-8) {
      throw std::invalid_argument("mub_check: basis is not orthonormal");
    }
  }
  const double target = 1.0 / static_cast<double>(dim);
  for (size_t i = 0; i < bases.size(); ++i) {
    for (size_t j = i + 1; j < bases.size(); ++j) {
      for (Eigen::Index u = 0; u < dim; ++u) {
        for (Eigen::Index v = 0; v < dim; ++v) {
          const double overlap = std::norm(bases[i].col(u).dot(bases[j].col(v)));
          if (std::abs(overlap - target) > tol) return false;
        }
      }
    }
  }
  return true;
}

HammingBoundResult check_hamming_bound(int n, int k, int g, int n_e, int t,
                                       int d) {
  if (t < 0 || t > n_e || n_e > n || g < 1) {
    throw std::invalid_argument("check_hamming_bound: invalid arguments");
  }
  auto ipow = [](long long base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
  };
  auto choose = [](int nn, int kk) {
    long long out = 1;
    for (int i = 1; i <= kk; ++i) out = out * (nn - kk + i) / i;
    return out;
  };

  long long sum = 0;
  const long long d2m1 = static_cast<long long>(d) * d - 1;
  for (int j = 0; j <= t; ++j) sum += choose(n_e, j) * ipow(d2m1, j);

  HammingBoundResult result;
  long long num = sum * ipow(d, k);
  long long den = g;
  const long long common = std::gcd(num, den);
  result.lhs_num = num / common;
  result.lhs_den = den / common;
  result.rhs = ipow(d, n);
  // lhs <= rhs  <=>  num <= rhs * den (exact integers).
  result.holds = num <= result.rhs * den;
  result.equality = num == result.rhs * den;
  return result;
}

std::vector<int> family_representatives(int d) {
  require_prime(d, "family_representatives");
  std::vector<int> reps;
  reps.push_back(basis_index_of(weyl_element(d, 0, 0, 1)));  // Z
  for (int t = 0; t < d; ++t) {
    reps.push_back(basis_index_of(weyl_element(d, 0, 1, t)));  // X Z^t
  }
  return reps;
}

Matrix code_space_isometry(const StabilizerCode& code) {
  const int d = code.d;
  if (code.eigenbasis.rows() != d) {
    throw std::invalid_argument("code_space_isometry: code has no eigenbasis");
  }
  Matrix v = Matrix::Zero(d * d, d);
  for (int l = 0; l < d; ++l) {
    const Vector col = code.eigenbasis.col(l);
    for (int r = 0; r < d; ++r) {
      for (int s = 0; s < d; ++s) {
        v(r * d + s, l) = col(r) * col(s);
      }
    }
  }
  return v;
}

}  // namespace dcqd
