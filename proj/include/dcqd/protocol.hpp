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

#ifndef DCQD_PROTOCOL_HPP
#define DCQD_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dcqd/channels.hpp"
#include "dcqd/stabilizer.hpp"

namespace dcqd {

/// One probe-plus-measurement setting of the protocol.
///
/// The population configuration carries the two-generator code and no
/// normalizers. A coherence configuration carries the single-generator code
/// for one stabilizer family, plus the d-1 nontrivial members of one coset
/// of one Abelian subgroup of the normalizer as the jointly measured
/// operators.
struct ExperimentalConfiguration {
  enum class Kind { population, coherence };
  Kind kind = Kind::population;
  StabilizerCode probe;
  int stabilizer_index = 0;  // basis index of E_i (coherence only)
  int subgroup_index = 0;    // v in [1, d+1] (coherence only)
  int coset_label = 0;       // a0 (coherence only)
  NormalizerCoset coset;     // measured coset (coherence only)

  /// The b = 1..d-1 members of the coset.
  std::vector<MultiPauli> measured_normalizers() const;
};

/// Exact or sampled statistics of one configuration.
///
/// For the population configuration stabilizer_probs holds the joint
/// (k, k') grid flattened as k*d + k' (and, for the multi-pair run, the
/// per-pair tuples combined row-major); diagonal_estimate is the same data
/// reordered by error-basis index. For a coherence configuration
/// stabilizer_probs[k] = Tr[P_k E(rho)], normalizer_moments(k, b-1) =
/// Tr[T_b P_k E(rho) P_k], and normalizer_expectations holds the moments
/// divided by the outcome probability where that is defined.
struct OutcomeRecord {
  ExperimentalConfiguration config;

  Eigen::VectorXd stabilizer_probs;
  Eigen::VectorXd diagonal_estimate;  // population only

  Eigen::MatrixXcd normalizer_moments;       // d x (d-1)
  Eigen::MatrixXcd normalizer_expectations;  // d x (d-1)
  std::vector<bool> expectation_defined;     // per outcome k

  // Joint (outcome k, eigenvalue j) distribution for each measured
  // normalizer, and the normalizer's eigenvalues; these back the sampler.
  std::vector<Eigen::MatrixXd> joint_probs;
  std::vector<Eigen::VectorXcd> joint_eigenvalues;

  std::optional<long long> shots;
  // Tallies: population uses counts[0] (one row, cells + overflow cell for
  // non-trace-preserving maps); coherence has one d x (d+1) matrix per
  // measured normalizer, last column = undetected.
  std::vector<Eigen::MatrixXi> counts;
};

/// Probe-coefficient policy for coherence configurations. The geometric
/// profile alpha_l proportional to r^l advances r = 0.8/(1+t) across the
/// d-1 repetitions t of each stabilizer family; `random` draws seeded
/// complex Gaussian vectors. Either is resampled/perturbed until the coset
/// margin clears `tolerance`. `uniform` produces the maximally entangled
/// probe with validation off (useful only to demonstrate failure).
struct AlphaPolicy {
  enum class Kind { geometric, random, uniform };
  Kind kind = Kind::geometric;
  uint64_t seed = 0;
  double tolerance = 1e-6;
};

struct EnumerationOptions {
  AlphaPolicy alphas;
  /// Rotates which d-1 of the d two-sided Abelian subgroups are used.
  int subgroup_offset = 0;
  /// Coset label a0 measured in every coherence configuration.
  int coset_label = 0;
};

/// The d^2 configurations of a full run: one population configuration
/// followed by (d+1)(d-1) coherence configurations (d+1 stabilizer
/// families, each repeated d-1 times with a fresh probe superposition and a
/// coset from a different two-sided Abelian subgroup).
std::vector<ExperimentalConfiguration> enumerate_configurations(
    int d, const EnumerationOptions& options = {});

/// Exact statistics of the population configuration: applies the map to
/// qudit A of the maximally entangled pair and measures both generators.
OutcomeRecord run_population(const ChiMatrix& chi);

/// Population run on r entangled pairs for an r-qudit map; the joint
/// outcome grid recovers every diagonal element of chi at once. Throws if
/// the full 2r-qudit dimension exceeds max_dimension.
OutcomeRecord run_population_multiqudit(const ChiMatrix& chi,
                                        int max_dimension = 4096);

/// Exact statistics of one coherence configuration, computed by dense
/// linear algebra on the post-measurement states.
OutcomeRecord run_coherence(const ChiMatrix& chi,
                            const ExperimentalConfiguration& config);

/// Runs whichever procedure the configuration calls for.
OutcomeRecord run_configuration(const ChiMatrix& chi,
                                const ExperimentalConfiguration& config);

/// Finite-ensemble statistics: multinomial tallies of the exact record's
/// distributions. Coherence configurations split the budget evenly across
/// the d-1 measured normalizers, each measured jointly with the stabilizer
/// on its own sub-ensemble. Deterministic for fixed seed.
OutcomeRecord sample_outcomes(const OutcomeRecord& record, long long shots,
                              uint64_t seed);

/// Basis index of the unique element whose commutation phases against the
/// population generators match the outcome pair (k, k').
int population_outcome_basis_index(int d, int k, int k_prime);

}  // namespace dcqd

#endif  // DCQD_PROTOCOL_HPP
