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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace dcqd {

namespace {

constexpr double kUndefinedOutcomeTol = 1e-12;

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  // splitmix64 step over seed xor salt.
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int int_pow(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

bool nontrivial_on_both(const MultiPauli& m) {
  return !m.factor(0).is_identity_up_to_phase() &&
         !m.factor(1).is_identity_up_to_phase();
}

/// Subgroups all of whose nonidentity members act nontrivially on both
/// qudits; exactly d of the d+1 qualify.
std::vector<int> two_sided_subgroup_positions(
    const std::vector<std::vector<MultiPauli>>& subgroups) {
  std::vector<int> positions;
  for (size_t v = 0; v < subgroups.size(); ++v) {
    bool ok = true;
    for (const auto& m : subgroups[v]) {
      if (m.is_identity_up_to_phase()) continue;
      if (!nontrivial_on_both(m)) {
        ok = false;
        break;
      }
    }
    if (ok) positions.push_back(static_cast<int>(v));
  }
  return positions;
}

Vector geometric_alphas(int d, int repetition) {
  const double ratio = 0.8 / (1.0 + repetition);
  Vector a(d);
  double value = 1.0;
  for (int l = 0; l < d; ++l) {
    a(l) = value;
    value *= ratio;
  }
  a.normalize();
  return a;
}

Vector random_alphas(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector a(d);
  for (int l = 0; l < d; ++l) a(l) = Complex(normal(rng), normal(rng));
  a.normalize();
  return a;
}

Vector draw_alphas(int d, const AlphaPolicy& policy, int family, int repetition,
                   const NormalizerCoset& coset) {
  switch (policy.kind) {
    case AlphaPolicy::Kind::uniform: {
      Vector a = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
      return a;
    }
    case AlphaPolicy::Kind::geometric: {
      Vector a = geometric_alphas(d, repetition);
      if (validate_alphas(d, a, coset, policy.tolerance).ok) return a;
      break;  // fall through to seeded resampling
    }
    case AlphaPolicy::Kind::random:
      break;
  }
  std::mt19937_64 rng(mix_seed(policy.seed, 1000003ULL * family + repetition));
  for (int attempt = 0; attempt < 256; ++attempt) {
    Vector a = random_alphas(d, rng);
    if (validate_alphas(d, a, coset, policy.tolerance).ok) return a;
  }
  throw std::runtime_error(
      "enumerate_configurations: could not find probe coefficients with "
      "margin above tolerance");
}

/// Spectral decomposition of a phase-free normalizer: eigenvalues are
/// nu * w^j with nu^d the global phase of M^d; projector via matrix powers.
void spectral_projectors(const MultiPauli& m, Eigen::VectorXcd& eigenvalues,
                         std::vector<Matrix>& projectors) {
  const int d = m.dim();
  const MultiPauli md = pow(m, d);
  if (!md.is_identity_up_to_phase()) {
    throw std::logic_error("spectral_projectors: operator has order above d");
  }
  const int e = md.global_phase();

  const Matrix mat = matrix_of(m);
  std::vector<Matrix> powers(d);
  powers[0] = Matrix::Identity(mat.rows(), mat.cols());
  for (int l = 1; l < d; ++l) powers[l] = mat * powers[l - 1];

  eigenvalues.resize(d);
  projectors.assign(d, Matrix());
  for (int j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi *
                         (e + static_cast<double>(j) * d) /
                         (static_cast<double>(d) * d);
    const Complex lambda{std::cos(angle), std::sin(angle)};
    eigenvalues(j) = lambda;
    Matrix proj = Matrix::Zero(mat.rows(), mat.cols());
    Complex lambda_pow = 1.0;
    for (int l = 0; l < d; ++l) {
      proj += powers[l] / lambda_pow;
      lambda_pow *= lambda;
    }
    projectors[j] = proj / static_cast<double>(d);
  }
}

void multinomial_draw(const Eigen::VectorXd& probs, long long shots,
                      std::mt19937_64& rng, Eigen::VectorXi& counts_out,
                      int& overflow_out) {
  const int cells = static_cast<int>(probs.size());
  counts_out = Eigen::VectorXi::Zero(cells);
  double remaining_prob = 1.0;
  long long remaining = shots;
  for (int c = 0; c < cells && remaining > 0; ++c) {
    const double p = std::clamp(probs(c) / remaining_prob, 0.0, 1.0);
    std::binomial_distribution<long long> binom(remaining, p);
    const long long n = binom(rng);
    counts_out(c) = static_cast<int>(n);
    remaining -= n;
    remaining_prob -= probs(c);
    if (remaining_prob <= 0.0) break;
  }
  overflow_out = static_cast<int>(remaining);
}

}  // namespace

std::vector<MultiPauli> ExperimentalConfiguration::measured_normalizers()
    const {
  std::vector<MultiPauli> out;
  for (size_t b = 1; b < coset.members.size(); ++b) {
    out.push_back(coset.members[b]);
  }
  return out;
}

int population_outcome_basis_index(int d, int k, int k_prime) {
  const PauliElement x = weyl_element(d, 0, 1, 0);
  const PauliElement z = weyl_element(d, 0, 0, 1);
  for (int m = 0; m < d * d; ++m) {
    const PauliElement em = basis_element(d, m);
    if (commutation_phase(x, em) == k && commutation_phase(z, em) == k_prime) {
      return m;
    }
  }
  throw std::logic_error("population_outcome_basis_index: no match");
}

std::vector<ExperimentalConfiguration> enumerate_configurations(
    int d, const EnumerationOptions& options) {
  if (!is_prime(d)) {
    throw std::invalid_argument("enumerate_configurations: dimension " +
                                std::to_string(d) + " is not prime");
  }

  std::vector<ExperimentalConfiguration> configs;

  ExperimentalConfiguration population;
  population.kind = ExperimentalConfiguration::Kind::population;
  population.probe = population_probe(d);
  configs.push_back(std::move(population));

  const std::vector<int> reps = family_representatives(d);
  for (size_t f = 0; f < reps.size(); ++f) {
    // The subgroup/coset structure depends only on the family, not on the
    // probe coefficients; build it once from a reference probe.
    StabilizerCode reference =
        coherence_probe(d, reps[f], geometric_alphas(d, 0), false);
    const auto subgroups = abelian_subgroups(reference);
    const auto usable = two_sided_subgroup_positions(subgroups);
    if (static_cast<int>(usable.size()) != d) {
      throw std::logic_error(
          "enumerate_configurations: expected d two-sided subgroups");
    }

    for (int t = 0; t < d - 1; ++t) {
      const int position = usable[(t + options.subgroup_offset) % d];
      auto all_cosets =
          cosets(subgroups[position], reference, position + 1);
      NormalizerCoset coset = all_cosets.at(options.coset_label);

      ExperimentalConfiguration config;
      config.kind = ExperimentalConfiguration::Kind::coherence;
      config.stabilizer_index = reps[f];
      config.subgroup_index = position + 1;
      config.coset_label = options.coset_label;

      const Vector alphas = draw_alphas(d, options.alphas, static_cast<int>(f),
                                        t, coset);
      config.probe = coherence_probe(
          d, reps[f], alphas,
          options.alphas.kind != AlphaPolicy::Kind::uniform);
      config.coset = std::move(coset);
      configs.push_back(std::move(config));
    }
  }

  if (static_cast<int>(configs.size()) != d * d) {
    throw std::logic_error("enumerate_configurations: configuration count");
  }
  return configs;
}

OutcomeRecord run_population(const ChiMatrix& chi) {
  if (chi.n_qudits != 1) {
    throw std::invalid_argument("run_population: expected a single-qudit map");
  }
  return run_population_multiqudit(chi);
}

OutcomeRecord run_population_multiqudit(const ChiMatrix& chi,
                                        int max_dimension) {
  const int d = chi.d;
  const int r = chi.n_qudits;
  const long long total_dim = static_cast<long long>(int_pow(d, r)) *
                              int_pow(d, r);
  if (total_dim > max_dimension) {
    throw std::invalid_argument(
        "run_population_multiqudit: total dimension " +
        std::to_string(total_dim) + " exceeds cap " +
        std::to_string(max_dimension));
  }
  const auto validation = validate_chi(chi);
  if (!validation.valid()) {
    throw std::invalid_argument("run_population_multiqudit: invalid chi");
  }

  OutcomeRecord record;
  record.config.kind = ExperimentalConfiguration::Kind::population;
  record.config.probe = population_probe(d);

  // r pairs, qudits ordered (A_1 B_1)(A_2 B_2)...; the probe is the product
  // of maximally entangled pairs.
  const StabilizerCode& pair_probe = record.config.probe;
  Vector state = pair_probe.state;
  for (int s = 1; s < r; ++s) {
    Vector next(state.size() * pair_probe.state.size());
    for (Eigen::Index i = 0; i < state.size(); ++i) {
      next.segment(i * pair_probe.state.size(), pair_probe.state.size()) =
          state(i) * pair_probe.state;
    }
    state = std::move(next);
  }
  const Matrix rho = state * state.adjoint();

  // Apply the map to the principal qudits: basis element E_m lifted as
  // (x)_s (E_{m_s} (x) I_d).
  const int n = chi.basis_size();
  const int side = static_cast<int>(total_dim);
  std::vector<Matrix> lifted(n);
  const Matrix eye = Matrix::Identity(d, d);
  for (int m = 0; m < n; ++m) {
    const MultiPauli element = multi_basis_element(d, r, m);
    Matrix op = kron(matrix_of(element.factor(0)), eye);
    for (int s = 1; s < r; ++s) {
      op = kron(op, kron(matrix_of(element.factor(s)), eye));
    }
    lifted[m] = std::move(op);
  }
  Matrix out = Matrix::Zero(side, side);
  for (int m = 0; m < n; ++m) {
    const Matrix left = lifted[m] * rho;
    for (int nn = 0; nn < n; ++nn) {
      const Complex c = chi.entries(m, nn);
      if (c == Complex(0.0, 0.0)) continue;
      out.noalias() += c * left * lifted[nn].adjoint();
    }
  }

  // Per-pair projectors P_k P_k' combined over the r pairs.
  std::vector<Matrix> pair_proj(d * d);
  {
    std::vector<Matrix> proj_s(d), proj_sp(d);
    for (int k = 0; k < d; ++k) {
      proj_s[k] = eigenprojector(pair_probe.generators[0], k);
      proj_sp[k] = eigenprojector(pair_probe.generators[1], k);
    }
    for (int k = 0; k < d; ++k) {
      for (int kp = 0; kp < d; ++kp) {
        pair_proj[k * d + kp] = proj_s[k] * proj_sp[kp];
      }
    }
  }

  const int cells = int_pow(d * d, r);
  record.stabilizer_probs = Eigen::VectorXd::Zero(cells);
  record.diagonal_estimate = Eigen::VectorXd::Zero(n);
  for (int cell = 0; cell < cells; ++cell) {
    Matrix op = Matrix::Identity(1, 1);
    int rem = cell;
    int diag_index = 0;
    for (int s = 0; s < r; ++s) {
      const int scale = int_pow(d * d, r - 1 - s);
      const int pair_cell = rem / scale;
      rem %= scale;
      op = kron(op, pair_proj[pair_cell]);
      const int m0 =
          population_outcome_basis_index(d, pair_cell / d, pair_cell % d);
      diag_index = diag_index * (d * d) + m0;
    }
    const double p = (op * out).trace().real();
    record.stabilizer_probs(cell) = p;
    record.diagonal_estimate(diag_index) = p;
  }
  return record;
}

OutcomeRecord run_coherence(const ChiMatrix& chi,
                            const ExperimentalConfiguration& config) {
  if (config.kind != ExperimentalConfiguration::Kind::coherence) {
    throw std::invalid_argument("run_coherence: not a coherence configuration");
  }
  if (chi.n_qudits != 1 || chi.d != config.probe.d) {
    throw std::invalid_argument("run_coherence: chi/probe dimension mismatch");
  }
  const int d = chi.d;

  OutcomeRecord record;
  record.config = config;

  const Matrix rho = config.probe.state * config.probe.state.adjoint();
  const Matrix out = apply_channel_to_first(chi, rho, d);

  const MultiPauli& gen = config.probe.generators.at(0);
  std::vector<Matrix> projectors(d);
  for (int k = 0; k < d; ++k) projectors[k] = eigenprojector(gen, k);

  const auto normalizers = config.measured_normalizers();
  const int nb = static_cast<int>(normalizers.size());

  record.stabilizer_probs = Eigen::VectorXd::Zero(d);
  record.normalizer_moments = Eigen::MatrixXcd::Zero(d, nb);
  record.normalizer_expectations = Eigen::MatrixXcd::Zero(d, nb);
  record.expectation_defined.assign(d, false);
  record.joint_probs.assign(nb, Eigen::MatrixXd::Zero(d, d));
  record.joint_eigenvalues.assign(nb, Eigen::VectorXcd());

  std::vector<Matrix> post(d);
  for (int k = 0; k < d; ++k) {
    post[k] = projectors[k] * out * projectors[k];
    record.stabilizer_probs(k) = (projectors[k] * out).trace().real();
  }

  for (int b = 0; b < nb; ++b) {
    Eigen::VectorXcd eigenvalues;
    std::vector<Matrix> eig_proj;
    spectral_projectors(normalizers[b], eigenvalues, eig_proj);
    record.joint_eigenvalues[b] = eigenvalues;

    const Matrix tmat = matrix_of(normalizers[b]);
    for (int k = 0; k < d; ++k) {
      record.normalizer_moments(k, b) = (tmat * post[k]).trace();
      for (int j = 0; j < d; ++j) {
        record.joint_probs[b](k, j) = (eig_proj[j] * post[k]).trace().real();
      }
    }
  }

  for (int k = 0; k < d; ++k) {
    const double p = record.stabilizer_probs(k);
    if (p >= kUndefinedOutcomeTol) {
      record.expectation_defined[k] = true;
      for (int b = 0; b < nb; ++b) {
        record.normalizer_expectations(k, b) =
            record.normalizer_moments(k, b) / p;
      }
    }
  }
  return record;
}

OutcomeRecord run_configuration(const ChiMatrix& chi,
                                const ExperimentalConfiguration& config) {
  if (config.kind == ExperimentalConfiguration::Kind::population) {
    return run_population(chi);
  }
  return run_coherence(chi, config);
}

OutcomeRecord sample_outcomes(const OutcomeRecord& record, long long shots,
                              uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_outcomes: shots must be >= 1");
  OutcomeRecord sampled = record;
  sampled.shots = shots;
  sampled.counts.clear();

  std::mt19937_64 rng(mix_seed(seed, 0x5eedULL));

  if (record.config.kind == ExperimentalConfiguration::Kind::population) {
    const int d = record.config.probe.d;
    const int cells = static_cast<int>(record.stabilizer_probs.size());
    int npairs = 0;
    for (int size = cells; size > 1; size /= d * d) ++npairs;

    Eigen::VectorXi counts;
    int overflow = 0;
    multinomial_draw(record.stabilizer_probs, shots, rng, counts, overflow);

    Eigen::MatrixXi tally(1, cells + 1);
    tally.block(0, 0, 1, cells) = counts.transpose();
    tally(0, cells) = overflow;
    sampled.counts.push_back(tally);

    sampled.stabilizer_probs =
        counts.cast<double>() / static_cast<double>(shots);
    sampled.diagonal_estimate =
        Eigen::VectorXd::Zero(record.diagonal_estimate.size());
    for (int cell = 0; cell < cells; ++cell) {
      int rem = cell;
      int diag_index = 0;
      for (int s = 0; s < npairs; ++s) {
        int scale = 1;
        for (int j = 0; j < npairs - 1 - s; ++j) scale *= d * d;
        const int pair_cell = rem / scale;
        rem %= scale;
        diag_index =
            diag_index * (d * d) +
            population_outcome_basis_index(d, pair_cell / d, pair_cell % d);
      }
      sampled.diagonal_estimate(diag_index) = sampled.stabilizer_probs(cell);
    }
    return sampled;
  }

  // Coherence: each measured normalizer gets an equal share of the budget
  // and is measured jointly with the stabilizer on that share.
  const int d = record.config.probe.d;
  const int nb = static_cast<int>(record.joint_probs.size());
  const long long base_share = shots / nb;
  long long remainder = shots % nb;

  sampled.stabilizer_probs = Eigen::VectorXd::Zero(d);
  sampled.normalizer_moments = Eigen::MatrixXcd::Zero(d, nb);
  sampled.normalizer_expectations = Eigen::MatrixXcd::Zero(d, nb);
  sampled.expectation_defined.assign(d, false);

  std::vector<Eigen::MatrixXi> tallies;
  std::vector<std::vector<bool>> defined_per_b(nb, std::vector<bool>(d, false));
  for (int b = 0; b < nb; ++b) {
    const long long share = base_share + (b < remainder ? 1 : 0);
    Eigen::MatrixXi tally = Eigen::MatrixXi::Zero(d, d + 1);
    if (share > 0) {
      // Flatten the (k, j) grid for the multinomial draw.
      Eigen::VectorXd flat(d * d);
      for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) {
          flat(k * d + j) = record.joint_probs[b](k, j);
        }
      }
      Eigen::VectorXi counts;
      int overflow = 0;
      multinomial_draw(flat, share, rng, counts, overflow);
      for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) tally(k, j) = counts(k * d + j);
      }
      tally(0, d) = overflow;

      for (int k = 0; k < d; ++k) {
        long long row = 0;
        Complex moment = 0.0;
        for (int j = 0; j < d; ++j) {
          row += tally(k, j);
          moment += record.joint_eigenvalues[b](j) *
                    static_cast<double>(tally(k, j));
        }
        sampled.normalizer_moments(k, b) = moment / static_cast<double>(share);
        if (row > 0) {
          sampled.normalizer_expectations(k, b) =
              moment / static_cast<double>(row);
          defined_per_b[b][k] = true;
        }
        sampled.stabilizer_probs(k) += static_cast<double>(row);
      }
    }
    tallies.push_back(std::move(tally));
  }
  sampled.stabilizer_probs /= static_cast<double>(shots);
  for (int k = 0; k < d; ++k) {
    bool all = true;
    for (int b = 0; b < nb; ++b) all = all && defined_per_b[b][k];
    sampled.expectation_defined[k] = all;
  }
  sampled.counts = std::move(tallies);
  return sampled;
}

}  // namespace dcqd
