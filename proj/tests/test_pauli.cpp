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

#include <set>

#include "doctest.h"

using namespace dcqd;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("primality check") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(5));
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(6));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("weyl element construction") {
  const PauliElement xz = weyl_element(2, 0, 1, 1);
  CHECK(xz.x_pow() == 1);
  CHECK(xz.z_pow() == 1);

  const PauliElement id = weyl_element(3, 0, 0, 0);
  CHECK(id == PauliElement::identity(3));

  // Exponents reduce mod d.
  CHECK(weyl_element(5, 7, 6, -1) == weyl_element(5, 2, 1, 4));

  CHECK_THROWS_AS(weyl_element(4, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(weyl_element(6, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("matrix realizations") {
  // Qubit X.
  Matrix x2(2, 2);
  x2 << 0, 1, 1, 0;
  CHECK(max_abs_diff(matrix_of(weyl_element(2, 0, 1, 0)), x2) < 1e-15);

  // Qutrit Z = diag(1, w, w^2).
  const Matrix z3 = matrix_of(weyl_element(3, 0, 0, 1));
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(z3(k, k) - root_of_unity(3, k)) < 1e-15);
  }
  CHECK(std::abs(z3(0, 1)) < 1e-15);

  // XZ on a qubit is the product of the X and Z matrices.
  Matrix expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK(max_abs_diff(matrix_of(weyl_element(2, 0, 1, 1)), expected) < 1e-15);
}

TEST_CASE("composition matches dense matrix products") {
  for (int d : {2, 3, 5}) {
    for (int q1 = 0; q1 < d; ++q1) {
      for (int p1 = 0; p1 < d; ++p1) {
        for (int q2 = 0; q2 < d; ++q2) {
          for (int p2 = 0; p2 < d; ++p2) {
            const PauliElement e1 = weyl_element(d, 0, q1, p1);
            const PauliElement e2 = weyl_element(d, 1, q2, p2);
            const Matrix product = matrix_of(e1) * matrix_of(e2);
            CHECK(max_abs_diff(product, matrix_of(compose(e1, e2))) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("composition examples") {
  // Z * X = w * (X Z) on a qubit.
  const PauliElement z = weyl_element(2, 0, 0, 1);
  const PauliElement x = weyl_element(2, 0, 1, 0);
  CHECK(compose(z, x) == weyl_element(2, 1, 1, 1));

  // Identity is neutral.
  const PauliElement e = weyl_element(5, 3, 2, 4);
  CHECK(compose(e, PauliElement::identity(5)) == e);
  CHECK(compose(PauliElement::identity(5), e) == e);

  // X Z^2 * X^2 Z^1 in d=3, checked against the dense product.
  const PauliElement a = weyl_element(3, 0, 1, 2);
  const PauliElement b = weyl_element(3, 0, 2, 1);
  const PauliElement ab = compose(a, b);
  CHECK(ab == weyl_element(3, 1, 0, 0));
  CHECK(max_abs_diff(matrix_of(a) * matrix_of(b), matrix_of(ab)) < 1e-12);

  CHECK_THROWS_AS(compose(weyl_element(2, 0, 1, 0), weyl_element(3, 0, 1, 0)),
                  std::invalid_argument);
}

TEST_CASE("inverse and powers") {
  for (int d : {2, 3, 5}) {
    for (int q = 0; q < d; ++q) {
      for (int p = 0; p < d; ++p) {
        const PauliElement e = weyl_element(d, 1, q, p);
        CHECK(compose(e, inverse(e)) == PauliElement::identity(d));
        CHECK(compose(inverse(e), e) == PauliElement::identity(d));
        CHECK(max_abs_diff(matrix_of(pow(e, 3)),
                           matrix_of(e) * matrix_of(e) * matrix_of(e)) <
              1e-12);
      }
    }
  }
}

TEST_CASE("commutation phase formula and matrix identity") {
  // X and Z on a qubit anticommute.
  CHECK(commutation_phase(weyl_element(2, 0, 1, 0), weyl_element(2, 0, 0, 1)) ==
        1);
  // Self-commutation.
  const PauliElement e = weyl_element(3, 0, 2, 1);
  CHECK(commutation_phase(e, e) == 0);
  // Direct formula evaluation, d=5: (q,p)=(1,2), (q',p')=(3,4).
  CHECK(commutation_phase(weyl_element(5, 0, 1, 2), weyl_element(5, 0, 3, 4)) ==
        2);

  // M1 M2 = w^k M2 M1 with k the reported phase, for all pairs.
  for (int d : {2, 3}) {
    const auto basis = error_basis(d);
    for (const auto& e1 : basis) {
      for (const auto& e2 : basis) {
        const int k = commutation_phase(e1, e2);
        const Matrix lhs = matrix_of(e1) * matrix_of(e2);
        const Matrix rhs = root_of_unity(d, k) * matrix_of(e2) * matrix_of(e1);
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("error basis enumeration and orthogonality") {
  SUBCASE("d=2 contains I, X, Z, XZ") {
    const auto basis = error_basis(2);
    REQUIRE(basis.size() == 4);
    CHECK(basis[0] == PauliElement::identity(2));
    std::set<std::pair<int, int>> seen;
    for (const auto& e : basis) seen.insert({e.x_pow(), e.z_pow()});
    CHECK(seen == std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  }

  SUBCASE("index layout is q*d + p") {
    for (int d : {2, 3, 5}) {
      const auto basis = error_basis(d);
      for (int i = 0; i < d * d; ++i) {
        CHECK(basis_index_of(basis[i]) == i);
        CHECK(basis_element(d, i) == basis[i]);
      }
    }
  }

  SUBCASE("Hilbert-Schmidt orthogonality at d=3") {
    const auto basis = error_basis(3);
    for (size_t i = 0; i < basis.size(); ++i) {
      for (size_t j = 0; j < basis.size(); ++j) {
        const Complex tr =
            (matrix_of(basis[i]).adjoint() * matrix_of(basis[j])).trace();
        const Complex expected = i == j ? Complex(3, 0) : Complex(0, 0);
        CHECK(std::abs(tr - expected) < 1e-12);
      }
    }
  }

  SUBCASE("identity has trace d") {
    CHECK(std::abs(matrix_of(error_basis(5)[0]).trace() - Complex(5, 0)) <
          1e-12);
  }
}

TEST_CASE("unique partner exponent for every target phase") {
  // For fixed (q,p) with q != 0, and for every q' and k, exactly one p'
  // solves p q' - q p' = k (mod d). When q = 0 the equation is degenerate
  // in p', but the total count of (q',p') solutions is still d for every
  // k, which is what the subset-size argument uses.
  for (int d : {2, 3, 5}) {
    for (int q = 0; q < d; ++q) {
      for (int p = 0; p < d; ++p) {
        if (q == 0 && p == 0) continue;
        for (int k = 0; k < d; ++k) {
          int total = 0;
          for (int qp = 0; qp < d; ++qp) {
            int solutions = 0;
            for (int pp = 0; pp < d; ++pp) {
              if (((p * qp - q * pp) % d + d) % d == k) ++solutions;
            }
            if (q != 0) CHECK(solutions == 1);
            total += solutions;
          }
          CHECK(total == d);
        }
      }
    }
  }
}

TEST_CASE("commutation subsets") {
  SUBCASE("spec cases for d=2 and i=X") {
    const int x_index = basis_index_of(weyl_element(2, 0, 1, 0));
    const auto w0 = commutation_subset(2, x_index, 0);
    const auto w1 = commutation_subset(2, x_index, 1);
    CHECK(std::set<int>(w0.begin(), w0.end()) ==
          std::set<int>{0, x_index});  // contains I and X
    CHECK(std::set<int>(w1.begin(), w1.end()) ==
          std::set<int>{basis_index_of(weyl_element(2, 0, 0, 1)),
                        basis_index_of(weyl_element(2, 0, 1, 1))});
  }

  SUBCASE("size d and partition for every nonidentity element") {
    for (int d : {2, 3, 5}) {
      for (int i = 1; i < d * d; ++i) {
        std::set<int> all;
        for (int k = 0; k < d; ++k) {
          const auto subset = commutation_subset(d, i, k);
          CHECK(subset.size() == static_cast<size_t>(d));
          all.insert(subset.begin(), subset.end());
        }
        CHECK(all.size() == static_cast<size_t>(d * d));
      }
    }
  }
}

TEST_CASE("tensor products") {
  const PauliElement x = weyl_element(2, 0, 1, 0);
  const MultiPauli xx = tensor({x, x});
  CHECK(max_abs_diff(matrix_of(xx), kron(matrix_of(x), matrix_of(x))) < 1e-15);

  const PauliElement z3 = weyl_element(3, 0, 0, 1);
  const MultiPauli zz2 = tensor({z3, pow(z3, 2)});
  CHECK(zz2.factor(1).z_pow() == 2);

  // Kronecker oracle over all pairs, with a phase on the first factor.
  for (int d : {2, 3}) {
    for (int i = 0; i < d * d; ++i) {
      for (int j = 0; j < d * d; ++j) {
        const PauliElement a = basis_element(d, i).with_phase(1);
        const PauliElement b = basis_element(d, j);
        CHECK(max_abs_diff(matrix_of(tensor({a, b})),
                           kron(matrix_of(a), matrix_of(b))) < 1e-12);
      }
    }
  }

  CHECK_THROWS_AS(tensor(std::span<const PauliElement>()),
                  std::invalid_argument);
}

TEST_CASE("multi-qudit composition tracks matrix products") {
  for (int d : {2, 3}) {
    const auto basis = error_basis(d);
    for (int i = 0; i < d * d; ++i) {
      for (int j = 0; j < d * d; ++j) {
        const MultiPauli m1 = tensor({basis[i], basis[j]});
        const MultiPauli m2 = tensor({basis[j], basis[i]});
        CHECK(max_abs_diff(matrix_of(compose(m1, m2)),
                           matrix_of(m1) * matrix_of(m2)) < 1e-12);
        const int k = commutation_phase(m1, m2);
        CHECK(max_abs_diff(matrix_of(m1) * matrix_of(m2),
                           root_of_unity(d, k) * matrix_of(m2) *
                               matrix_of(m1)) < 1e-12);
      }
    }
    const MultiPauli m = tensor({basis[1], basis[d]});
    CHECK(compose(m, inverse(m)).is_identity_up_to_phase());
    CHECK(compose(m, inverse(m)).global_phase() == 0);
  }
}
