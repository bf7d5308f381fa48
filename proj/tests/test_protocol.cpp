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

#include "dcqd/protocol.hpp"

#include <map>
#include <random>
#include <set>

#include "doctest.h"

using namespace dcqd;

namespace {

ChiMatrix bit_flip(double p) {
  KrausSet set;
  set.d = 2;
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  set.operators = {std::sqrt(1.0 - p) * Matrix::Identity(2, 2),
                   std::sqrt(p) * x};
  return kraus_to_chi(set);
}

ChiMatrix dephasing(double p) {
  KrausSet set;
  set.d = 2;
  set.operators = {std::sqrt(1.0 - p) * Matrix::Identity(2, 2),
                   std::sqrt(p) * matrix_of(weyl_element(2, 0, 0, 1))};
  return kraus_to_chi(set);
}

/// Random chi that is diagonal in the error basis (a Weyl-twirled map).
ChiMatrix random_diagonal_chi(int d, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  ChiMatrix chi;
  chi.d = d;
  chi.n_qudits = 1;
  Eigen::VectorXd diag(d * d);
  for (int i = 0; i < d * d; ++i) diag(i) = unif(rng);
  diag /= diag.sum();
  chi.entries = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d * d; ++i) chi.entries(i, i) = diag(i);
  return chi;
}

}  // namespace

TEST_CASE("configuration enumeration") {
  SUBCASE("count is d^2") {
    CHECK(enumerate_configurations(2).size() == 4);
    CHECK(enumerate_configurations(3).size() == 9);
    CHECK(enumerate_configurations(5).size() == 25);
    CHECK_THROWS_AS(enumerate_configurations(4), std::invalid_argument);
  }

  SUBCASE("structure: one population + (d+1)(d-1) coherence") {
    for (int d : {2, 3, 5}) {
      const auto configs = enumerate_configurations(d);
      CHECK(configs[0].kind == ExperimentalConfiguration::Kind::population);
      CHECK(configs[0].probe.generators.size() == 2);
      std::set<int> families;
      for (size_t c = 1; c < configs.size(); ++c) {
        CHECK(configs[c].kind == ExperimentalConfiguration::Kind::coherence);
        CHECK(configs[c].probe.generators.size() == 1);
        CHECK(configs[c].measured_normalizers().size() ==
              static_cast<size_t>(d) - 1);
        families.insert(configs[c].stabilizer_index);
        // Measured normalizers commute with the probe generator and with
        // each other.
        const auto normalizers = configs[c].measured_normalizers();
        for (const auto& t : normalizers) {
          CHECK(commutation_phase(t, configs[c].probe.generators[0]) == 0);
          for (const auto& t2 : normalizers) {
            CHECK(commutation_phase(t, t2) == 0);
          }
        }
      }
      CHECK(families.size() == static_cast<size_t>(d) + 1);
    }
  }

  SUBCASE("repetitions of one family use distinct subgroups") {
    for (int d : {3, 5}) {
      const auto configs = enumerate_configurations(d);
      std::map<int, std::set<int>> subgroups_per_family;
      for (size_t c = 1; c < configs.size(); ++c) {
        subgroups_per_family[configs[c].stabilizer_index].insert(
            configs[c].subgroup_index);
      }
      for (const auto& [family, subgroups] : subgroups_per_family) {
        CHECK(subgroups.size() == static_cast<size_t>(d) - 1);
      }
    }
  }

  SUBCASE("deterministic for a fixed seed") {
    EnumerationOptions options;
    options.alphas.kind = AlphaPolicy::Kind::random;
    options.alphas.seed = 5;
    const auto a = enumerate_configurations(3, options);
    const auto b = enumerate_configurations(3, options);
    for (size_t c = 0; c < a.size(); ++c) {
      CHECK((a[c].probe.state - b[c].probe.state).norm() == 0.0);
    }
  }
}

TEST_CASE("population run") {
  SUBCASE("identity channel concentrates on outcome (0,0)") {
    for (int d : {2, 3}) {
      const auto record = run_population(ChiMatrix::identity_channel(d));
      CHECK(record.stabilizer_probs(0) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(record.stabilizer_probs.sum() ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(record.diagonal_estimate(0) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("bit flip lands on the X cell") {
    const auto record = run_population(bit_flip(0.3));
    const PauliElement x = weyl_element(2, 0, 1, 0);
    const PauliElement z = weyl_element(2, 0, 0, 1);
    const int k = commutation_phase(x, x);   // outcome of generator XX
    const int kp = commutation_phase(z, x);  // outcome of generator ZZ'
    CHECK(record.stabilizer_probs(k * 2 + kp) ==
          doctest::Approx(0.3).epsilon(1e-12));
    CHECK(record.stabilizer_probs(0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(record.diagonal_estimate(basis_index_of(x)) ==
          doctest::Approx(0.3).epsilon(1e-12));
  }

  SUBCASE("random diagonal chi is recovered exactly") {
    for (int d : {2, 3, 5}) {
      const ChiMatrix chi = random_diagonal_chi(d, 100 + d);
      const auto record = run_population(chi);
      for (int m = 0; m < d * d; ++m) {
        CHECK(std::abs(record.diagonal_estimate(m) -
                       chi.entries(m, m).real()) < 1e-10);
      }
    }
  }

  SUBCASE("diagonal of a generic chi is recovered") {
    for (int d : {2, 3, 5}) {
      const ChiMatrix chi = random_cp_map(d, 1, 3, true, 2026 + d);
      const auto record = run_population(chi);
      for (int m = 0; m < d * d; ++m) {
        CHECK(std::abs(record.diagonal_estimate(m) -
                       chi.entries(m, m).real()) < 1e-10);
      }
      CHECK(record.stabilizer_probs.sum() ==
            doctest::Approx(chi.entries.trace().real()).epsilon(1e-10));
    }
  }
}

TEST_CASE("coherence run") {
  SUBCASE("identity channel: all weight on outcome 0, probe expectations") {
    for (int d : {2, 3}) {
      const auto configs = enumerate_configurations(d);
      for (size_t c = 1; c < configs.size(); ++c) {
        const auto record =
            run_coherence(ChiMatrix::identity_channel(d), configs[c]);
        CHECK(record.stabilizer_probs(0) ==
              doctest::Approx(1.0).epsilon(1e-10));
        for (int k = 1; k < d; ++k) {
          CHECK(std::abs(record.stabilizer_probs(k)) < 1e-12);
          CHECK_FALSE(record.expectation_defined[k]);
        }
        CHECK(record.expectation_defined[0]);
        const Vector& probe = configs[c].probe.state;
        const auto normalizers = configs[c].measured_normalizers();
        for (size_t b = 0; b < normalizers.size(); ++b) {
          const Complex expected =
              probe.dot(matrix_of(normalizers[b]) * probe);
          CHECK(std::abs(record.normalizer_expectations(0, b) - expected) <
                1e-10);
          CHECK(std::abs(record.normalizer_expectations(0, b)) <= 1.0 + 1e-10);
        }
      }
    }
  }

  SUBCASE("unitary basis channel puts all weight on its commutation phase") {
    for (int d : {2, 3}) {
      const auto configs = enumerate_configurations(d);
      for (size_t c = 1; c < configs.size(); ++c) {
        const int i = configs[c].stabilizer_index;
        for (int j = 0; j < d * d; ++j) {
          ChiMatrix chi;
          chi.d = d;
          chi.n_qudits = 1;
          chi.entries = Matrix::Zero(d * d, d * d);
          chi.entries(j, j) = 1.0;
          const int expected_outcome =
              commutation_phase(basis_element(d, i), basis_element(d, j));
          const auto record = run_coherence(chi, configs[c]);
          CHECK(record.stabilizer_probs(expected_outcome) ==
                doctest::Approx(1.0).epsilon(1e-10));
        }
      }
    }
  }

  SUBCASE("dephasing leaves the computational-family probe undisturbed") {
    const auto configs = enumerate_configurations(2);
    // Find the coherence configuration whose stabilizer family is Z.
    const int z_index = basis_index_of(weyl_element(2, 0, 0, 1));
    for (size_t c = 1; c < configs.size(); ++c) {
      if (configs[c].stabilizer_index != z_index) continue;
      const auto record = run_coherence(dephasing(0.4), configs[c]);
      CHECK(record.stabilizer_probs(0) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(record.stabilizer_probs(1)) < 1e-12);
    }
  }

  SUBCASE("probabilities sum to the trace of the output state") {
    // Equals Tr chi (= 1) for trace-preserving maps; for general maps the
    // coherence probe's nonzero pair overlaps contribute, so the sum is
    // Tr E(rho), not Tr chi.
    for (int d : {2, 3}) {
      const auto configs = enumerate_configurations(d);
      const ChiMatrix tp = random_cp_map(d, 1, 2, true, 76);
      const ChiMatrix non_tp = random_cp_map(d, 1, 2, false, 77);
      for (size_t c = 1; c < configs.size(); ++c) {
        const auto record = run_coherence(tp, configs[c]);
        CHECK(record.stabilizer_probs.sum() ==
              doctest::Approx(tp.entries.trace().real()).epsilon(1e-10));

        const auto general = run_coherence(non_tp, configs[c]);
        const Matrix rho =
            configs[c].probe.state * configs[c].probe.state.adjoint();
        const double out_trace =
            apply_channel_to_first(non_tp, rho, d).trace().real();
        CHECK(general.stabilizer_probs.sum() ==
              doctest::Approx(out_trace).epsilon(1e-10));
      }
    }
  }

  SUBCASE("moments equal expectation times probability") {
    const ChiMatrix chi = random_cp_map(3, 1, 2, true, 555);
    const auto configs = enumerate_configurations(3);
    const auto record = run_coherence(chi, configs[1]);
    for (int k = 0; k < 3; ++k) {
      if (!record.expectation_defined[k]) continue;
      for (int b = 0; b < 2; ++b) {
        CHECK(std::abs(record.normalizer_moments(k, b) -
                       record.normalizer_expectations(k, b) *
                           record.stabilizer_probs(k)) < 1e-12);
      }
    }
  }

  SUBCASE("joint eigenvalue distributions are consistent") {
    const ChiMatrix chi = random_cp_map(3, 1, 2, true, 556);
    const auto configs = enumerate_configurations(3);
    for (size_t c = 1; c < configs.size(); ++c) {
      const auto record = run_coherence(chi, configs[c]);
      for (size_t b = 0; b < record.joint_probs.size(); ++b) {
        for (int k = 0; k < 3; ++k) {
          // Row sums reproduce the stabilizer probabilities, and the
          // eigenvalue-weighted sums reproduce the moments.
          CHECK(record.joint_probs[b].row(k).sum() ==
                doctest::Approx(record.stabilizer_probs(k)).epsilon(1e-10));
          Complex moment = 0.0;
          for (int j = 0; j < 3; ++j) {
            moment +=
                record.joint_eigenvalues[b](j) * record.joint_probs[b](k, j);
          }
          CHECK(std::abs(moment - record.normalizer_moments(k, b)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("post-measurement state structure") {
  // P_k E(rho) P_k is supported on the span of E_m rho E_n^dag with both
  // indices in the fixed-phase subset of outcome k.
  for (int d : {2, 3}) {
    const ChiMatrix chi = random_cp_map(d, 1, 3, true, 777 + d);
    const auto configs = enumerate_configurations(d);
    for (size_t c = 1; c < std::min<size_t>(configs.size(), 4); ++c) {
      const auto& config = configs[c];
      const Matrix rho = config.probe.state * config.probe.state.adjoint();
      const Matrix out = apply_channel_to_first(chi, rho, d);
      const MultiPauli& gen = config.probe.generators[0];
      for (int k = 0; k < d; ++k) {
        const Matrix pk = eigenprojector(gen, k);
        const Matrix post = pk * out * pk;

        const auto subset = commutation_subset(d, config.stabilizer_index, k);
        Eigen::MatrixXcd span(d * d * d * d,
                              static_cast<int>(subset.size() * subset.size()));
        int col = 0;
        for (int m : subset) {
          const Matrix em =
              kron(matrix_of(basis_element(d, m)), Matrix::Identity(d, d));
          for (int n : subset) {
            const Matrix en =
                kron(matrix_of(basis_element(d, n)), Matrix::Identity(d, d));
            const Matrix term = em * rho * en.adjoint();
            span.col(col++) = Eigen::Map<const Eigen::VectorXcd>(
                term.data(), term.size());
          }
        }
        const Eigen::VectorXcd target =
            Eigen::Map<const Eigen::VectorXcd>(post.data(), post.size());
        // Residual after projecting onto the span.
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(span);
        const Eigen::VectorXcd residual = target - span * cod.solve(target);
        CHECK(residual.norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("stabilizer probability expansion matches the dense simulation") {
  // Tr[P_k E(rho)] = sum_{m in W_k} chi_mm
  //                + 2 sum_{m<n in W_k} Re[chi_mn Tr(E_n^dag E_m rho)].
  for (int d : {2, 3}) {
    const ChiMatrix chi = random_cp_map(d, 1, 3, true, 999 + d);
    const auto configs = enumerate_configurations(d);
    for (size_t c = 1; c < configs.size(); ++c) {
      const auto& config = configs[c];
      const Matrix rho = config.probe.state * config.probe.state.adjoint();
      const auto record = run_coherence(chi, config);
      for (int k = 0; k < d; ++k) {
        const auto subset = commutation_subset(d, config.stabilizer_index, k);
        double expansion = 0.0;
        for (int m : subset) expansion += chi.entries(m, m).real();
        for (size_t mi = 0; mi < subset.size(); ++mi) {
          for (size_t ni = mi + 1; ni < subset.size(); ++ni) {
            const int m = subset[mi];
            const int n = subset[ni];
            const Matrix overlap_op =
                kron(matrix_of(basis_element(d, n)).adjoint() *
                         matrix_of(basis_element(d, m)),
                     Matrix::Identity(d, d));
            const Complex overlap = (overlap_op * rho).trace();
            expansion += 2.0 * (chi.entries(m, n) * overlap).real();
          }
        }
        CHECK(std::abs(record.stabilizer_probs(k) - expansion) < 1e-10);
      }
    }
  }
}

TEST_CASE("multi-qudit population run") {
  SUBCASE("two-pair identity") {
    const ChiMatrix chi = tensor_chi(
        {ChiMatrix::identity_channel(2), ChiMatrix::identity_channel(2)});
    const auto record = run_population_multiqudit(chi);
    CHECK(record.stabilizer_probs(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(record.stabilizer_probs.size() == 16);
  }

  SUBCASE("product of bit flips gives the product distribution") {
    const ChiMatrix chi = tensor_chi({bit_flip(0.3), bit_flip(0.1)});
    const auto record = run_population_multiqudit(chi);
    // Diagonal estimate indexed by (m1, m2) row-major.
    const int x_index = basis_index_of(weyl_element(2, 0, 1, 0));
    CHECK(record.diagonal_estimate(0) ==
          doctest::Approx(0.7 * 0.9).epsilon(1e-10));
    CHECK(record.diagonal_estimate(x_index) ==
          doctest::Approx(0.7 * 0.1).epsilon(1e-10));
    CHECK(record.diagonal_estimate(x_index * 4) ==
          doctest::Approx(0.3 * 0.9).epsilon(1e-10));
    CHECK(record.diagonal_estimate(x_index * 4 + x_index) ==
          doctest::Approx(0.3 * 0.1).epsilon(1e-10));
  }

  SUBCASE("generic two-qubit map: all 16 diagonals recovered") {
    const ChiMatrix chi = random_cp_map(2, 2, 3, true, 31337);
    const auto record = run_population_multiqudit(chi);
    for (int m = 0; m < 16; ++m) {
      CHECK(std::abs(record.diagonal_estimate(m) -
                     chi.entries(m, m).real()) < 1e-8);
    }
    CHECK(record.stabilizer_probs.sum() ==
          doctest::Approx(chi.entries.trace().real()).epsilon(1e-10));
  }

  SUBCASE("dimension cap") {
    const ChiMatrix chi = random_cp_map(5, 2, 1, true, 1);
    CHECK_THROWS_AS(run_population_multiqudit(chi, 100),
                    std::invalid_argument);
  }
}

TEST_CASE("shot sampling") {
  SUBCASE("deterministic per seed") {
    const auto record = run_population(bit_flip(0.3));
    const auto a = sample_outcomes(record, 1000, 99);
    const auto b = sample_outcomes(record, 1000, 99);
    CHECK((a.counts[0] - b.counts[0]).cwiseAbs().maxCoeff() == 0);
    const auto c = sample_outcomes(record, 1000, 100);
    CHECK((a.counts[0] - c.counts[0]).cwiseAbs().maxCoeff() > 0);
  }

  SUBCASE("identity channel puts every count on outcome zero") {
    const auto record = run_population(ChiMatrix::identity_channel(2));
    const auto sampled = sample_outcomes(record, 1000, 5);
    CHECK(sampled.counts[0](0, 0) == 1000);
    CHECK(sampled.stabilizer_probs(0) == doctest::Approx(1.0));
  }

  SUBCASE("large-ensemble frequencies approach exact probabilities") {
    const auto record = run_population(bit_flip(0.3));
    const auto sampled = sample_outcomes(record, 1000000, 12345);
    for (int cell = 0; cell < 4; ++cell) {
      CHECK(std::abs(sampled.stabilizer_probs(cell) -
                     record.stabilizer_probs(cell)) < 5e-3);
    }

    const auto configs = enumerate_configurations(2);
    const ChiMatrix chi = random_cp_map(2, 1, 2, true, 4242);
    const auto coherence = run_coherence(chi, configs[1]);
    const auto coherence_sampled = sample_outcomes(coherence, 1000000, 777);
    for (int k = 0; k < 2; ++k) {
      CHECK(std::abs(coherence_sampled.stabilizer_probs(k) -
                     coherence.stabilizer_probs(k)) < 5e-3);
      for (int b = 0; b < 1; ++b) {
        CHECK(std::abs(coherence_sampled.normalizer_moments(k, b) -
                       coherence.normalizer_moments(k, b)) < 5e-3);
      }
    }
  }

  SUBCASE("non-trace-preserving maps spill into the overflow cell") {
    const ChiMatrix chi = random_cp_map(2, 1, 2, false, 8);
    const auto record = run_population(chi);
    const auto sampled = sample_outcomes(record, 100000, 3);
    CHECK(sampled.counts[0](0, 4) > 0);  // undetected share
    CHECK(sampled.stabilizer_probs.sum() ==
          doctest::Approx(chi.entries.trace().real()).epsilon(0.01));
  }
}
