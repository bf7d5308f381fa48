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

#include "dcqd/cli_commands.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "dcqd/protocol.hpp"
#include "dcqd/reconstruction.hpp"
#include "dcqd/stabilizer.hpp"

namespace dcqd {

namespace {

struct CheckList {
  std::ostream& out;
  bool all_passed = true;

  void check(bool ok, const std::string& description) {
    out << (ok ? "PASS  " : "FAIL  ") << description << "\n";
    all_passed = all_passed && ok;
  }
};

std::string fmt(double value) {
  std::ostringstream s;
  s << std::setprecision(6) << value;
  return s.str();
}

AlphaPolicy::Kind parse_policy(const std::string& name) {
  if (name == "geometric") return AlphaPolicy::Kind::geometric;
  if (name == "random") return AlphaPolicy::Kind::random;
  throw ParseError("alphas policy must be \"geometric\" or \"random\"",
                   "alphas-policy");
}

}  // namespace

int cmd_reconstruct(const ReconstructOptions& options, std::ostream& out,
                    std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();

  ChannelSpec spec;
  try {
    spec = load_channel_spec(options.channel_file);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (options.expected_d && *options.expected_d != spec.d) {
    err << "error: channel file has d=" << spec.d << " but d="
        << *options.expected_d << " was requested\n";
    return kExitInputError;
  }
  if (spec.n_qudits != 1) {
    err << "error: reconstruct runs the single-qudit protocol; the channel "
           "file declares n_qudits="
        << spec.n_qudits << "\n";
    return kExitInputError;
  }

  EnumerationOptions enum_options;
  try {
    enum_options.alphas.kind = parse_policy(options.alphas_policy);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  enum_options.alphas.seed = options.seed;
  enum_options.subgroup_offset = options.subgroup_offset;
  enum_options.coset_label = options.coset_label;

  const auto configs = enumerate_configurations(spec.d, enum_options);
  std::vector<OutcomeRecord> records;
  records.reserve(configs.size());
  for (size_t c = 0; c < configs.size(); ++c) {
    OutcomeRecord record = run_configuration(spec.chi, configs[c]);
    if (options.shots) {
      record = sample_outcomes(record, *options.shots,
                               options.seed + 0x1000 * (c + 1));
    }
    records.push_back(std::move(record));
  }

  AssemblyOptions assembly;
  assembly.trace_preserving_rows = options.trace_preserving;
  const LinearSystem system = assemble_system(configs, records, assembly);
  const RankReport ranks = rank_report(system);

  SolveOptions solve_options;
  solve_options.require_full_rank = false;
  const SolveResult solution = solve_chi(system, solve_options);

  RunReport report;
  report.version = kToolVersion;
  report.seed = options.seed;
  report.d = spec.d;
  report.shots = options.shots;
  report.alphas_policy = options.alphas_policy;
  report.subgroup_offset = options.subgroup_offset;
  report.coset_label = options.coset_label;
  report.trace_preserving_rows = options.trace_preserving;
  for (size_t c = 0; c < configs.size(); ++c) {
    ConfigurationSummary summary;
    summary.kind = configs[c].kind == ExperimentalConfiguration::Kind::population
                       ? "population"
                       : "coherence";
    summary.stabilizer_index = configs[c].stabilizer_index;
    summary.subgroup_index = configs[c].subgroup_index;
    summary.coset_label = configs[c].coset_label;
    const auto& probs = records[c].stabilizer_probs;
    summary.stabilizer_probs.assign(probs.data(), probs.data() + probs.size());
    report.configurations.push_back(std::move(summary));
  }
  report.rank = ranks.rank;
  report.incremental_rank = ranks.incremental_rank;
  report.under_determined = solution.under_determined;
  report.null_space = solution.null_space_labels;
  report.residual_norm = solution.residual_norm;
  report.recovered_chi = matrix_to_pairs(solution.chi.entries);
  report.ground_truth_chi = matrix_to_pairs(spec.chi.entries);
  const double frobenius =
      (solution.chi.entries - spec.chi.entries).norm();
  report.frobenius_error = frobenius;
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (!options.output_file.empty()) save_report(report, options.output_file);

  out << "d = " << spec.d << ", configurations = " << configs.size()
      << ", rows = " << system.matrix.rows() << ", rank = " << ranks.rank
      << "/" << system.matrix.cols() << "\n";
  out << "statistics: "
      << (options.shots ? std::to_string(*options.shots) + " shots"
                        : std::string("exact"))
      << ", seed " << options.seed << "\n";
  out << "residual norm = " << fmt(solution.residual_norm)
      << ", frobenius error vs input = " << fmt(frobenius) << "\n";
  if (solution.under_determined) {
    out << "UNDER-DETERMINED: unconstrained directions:";
    for (const auto& label : solution.null_space_labels) out << " " << label;
    out << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_verify(int d, std::ostream& out, std::ostream& err) {
  if (!is_prime(d) || d > 11) {
    err << "error: verification supports prime dimensions up to 11, got " << d
        << "\n";
    return kExitInputError;
  }
  CheckList checks{out};

  {  // Unique p' solving p q' - q p' = k when q != 0; d total (q',p')
     // solutions per k either way.
    bool ok = true;
    for (int q = 0; q < d && ok; ++q) {
      for (int p = 0; p < d && ok; ++p) {
        if (q == 0 && p == 0) continue;
        for (int k = 0; k < d && ok; ++k) {
          int total = 0;
          for (int qp = 0; qp < d; ++qp) {
            int solutions = 0;
            for (int pp = 0; pp < d; ++pp) {
              if (((p * qp - q * pp) % d + d) % d == k) ++solutions;
            }
            if (q != 0 && solutions != 1) ok = false;
            total += solutions;
          }
          ok = ok && total == d;
        }
      }
    }
    checks.check(ok, "unique commutation partner for every target phase");
  }

  {  // Subset sizes and partition.
    bool ok = true;
    for (int i = 1; i < d * d && ok; ++i) {
      std::set<int> seen;
      for (int k = 0; k < d; ++k) {
        const auto subset = commutation_subset(d, i, k);
        ok = ok && static_cast<int>(subset.size()) == d;
        seen.insert(subset.begin(), subset.end());
      }
      ok = ok && static_cast<int>(seen.size()) == d * d;
    }
    checks.check(ok, "commutation subsets have size " + std::to_string(d) +
                         " and partition the basis");
  }

  {  // Basis orthogonality.
    const auto basis = error_basis(d);
    double worst = 0.0;
    for (int i = 0; i < d * d; ++i) {
      for (int j = 0; j < d * d; ++j) {
        const Complex tr =
            (matrix_of(basis[i]).adjoint() * matrix_of(basis[j])).trace();
        const Complex expected = i == j ? Complex(d, 0) : Complex(0, 0);
        worst = std::max(worst, std::abs(tr - expected));
      }
    }
    checks.check(worst < 1e-10, "basis orthogonality Tr(Ei^dag Ej) = " +
                                    std::to_string(d) + " delta_ij (worst " +
                                    fmt(worst) + ")");
  }

  const auto reps = family_representatives(d);

  {  // Families partition the nonidentity elements; eigenbases are MUB.
    std::set<int> covered;
    for (int rep : reps) {
      for (int a = 1; a < d; ++a) {
        covered.insert(basis_index_of(pow(basis_element(d, rep), a)));
      }
    }
    checks.check(static_cast<int>(covered.size()) == d * d - 1,
                 std::to_string(d + 1) +
                     " cyclic families partition the nonidentity basis");

    std::vector<Matrix> bases;
    for (int rep : reps) bases.push_back(eigenbasis_of(basis_element(d, rep)));
    checks.check(mub_check(bases),
                 "single-qudit eigenbases mutually unbiased, MUB overlap 1/" +
                     std::to_string(d));
  }

  // Normalizer structure, checked across every stabilizer family.
  bool normalizer_ok = true, subgroup_ok = true, coset_ok = true;
  bool phases_ok = true, code_mub_ok = true, projector_ok = true;
  long long normalizer_order = 0;
  int subgroup_count = 0;
  for (int rep : reps) {
    Vector alphas(d);
    double value = 1.0;
    for (int l = 0; l < d; ++l) {
      alphas(l) = value;
      value *= 0.8;
    }
    const StabilizerCode code = coherence_probe(d, rep, alphas, false);
    const MultiPauli& s = code.generators[0];

    const auto big = normalizer(code);
    normalizer_order = static_cast<long long>(big.size());
    normalizer_ok = normalizer_ok &&
                    normalizer_order == static_cast<long long>(d) * d * d;

    std::set<long long> stab_keys;
    for (int a = 0; a < d; ++a) stab_keys.insert(pow(s, a).phase_free_key());

    const auto subgroups = abelian_subgroups(code);
    subgroup_count = static_cast<int>(subgroups.size());
    subgroup_ok = subgroup_ok && subgroup_count == d + 1;
    for (size_t v = 0; v < subgroups.size() && subgroup_ok; ++v) {
      subgroup_ok = subgroup_ok &&
                    static_cast<int>(subgroups[v].size()) == d * d;
      for (const auto& m1 : subgroups[v]) {
        for (const auto& m2 : subgroups[v]) {
          if (commutation_phase(m1, m2) != 0) subgroup_ok = false;
        }
      }
      for (size_t w = v + 1; w < subgroups.size(); ++w) {
        std::set<long long> keys;
        for (const auto& m : subgroups[v]) keys.insert(m.phase_free_key());
        int common = 0;
        for (const auto& m : subgroups[w]) {
          if (keys.count(m.phase_free_key())) ++common;
        }
        subgroup_ok = subgroup_ok && common == d;
      }
    }

    const MultiPauli ei_a =
        tensor({s.factor(0).with_phase(0), PauliElement::identity(d)});
    std::vector<Matrix> code_bases;
    for (size_t v = 0; v < subgroups.size(); ++v) {
      const auto subgroup_cosets =
          cosets(subgroups[v], code, static_cast<int>(v) + 1);
      coset_ok = coset_ok && static_cast<int>(subgroup_cosets.size()) == d;
      for (const auto& coset : subgroup_cosets) {
        coset_ok = coset_ok && static_cast<int>(coset.members.size()) == d;
        std::set<int> phases;
        for (const auto& member : coset.members) {
          phases.insert(commutation_phase(ei_a, member));
        }
        // Distinct eigenvalues against E_i^A; the excluded one-sided
        // subgroup collapses them instead.
        bool two_sided = true;
        for (const auto& member : subgroups[v]) {
          if (member.is_identity_up_to_phase()) continue;
          if (member.factor(0).is_identity_up_to_phase() ||
              member.factor(1).is_identity_up_to_phase()) {
            two_sided = false;
          }
        }
        if (two_sided) {
          phases_ok = phases_ok && static_cast<int>(phases.size()) == d;
        }
      }

      // Logical eigenbasis of this subgroup on the code space.
      const Matrix iso = code_space_isometry(code);
      const MultiPauli* generator = nullptr;
      for (const auto& m : subgroups[v]) {
        if (!stab_keys.count(m.phase_free_key())) {
          generator = &m;
          break;
        }
      }
      Eigen::ComplexEigenSolver<Matrix> solver(iso.adjoint() *
                                               matrix_of(*generator) * iso);
      Matrix basis = solver.eigenvectors();
      for (int c = 0; c < basis.cols(); ++c) basis.col(c).normalize();
      code_bases.push_back(std::move(basis));
    }
    code_mub_ok = code_mub_ok && mub_check(code_bases);

    Matrix sum = Matrix::Zero(d * d, d * d);
    bool idem = true;
    for (int k = 0; k < d; ++k) {
      const Matrix pk = eigenprojector(s, k);
      sum += pk;
      idem = idem && (pk * pk - pk).cwiseAbs().maxCoeff() < 1e-12 &&
             (pk - pk.adjoint()).cwiseAbs().maxCoeff() < 1e-12;
    }
    projector_ok = projector_ok && idem &&
                   (sum - Matrix::Identity(d * d, d * d))
                           .cwiseAbs()
                           .maxCoeff() < 1e-12;
  }
  checks.check(normalizer_ok, "|N(S)| = " + std::to_string(normalizer_order) +
                                  " = d^3 for every stabilizer family");
  checks.check(subgroup_ok,
               std::to_string(subgroup_count) +
                   " Abelian subgroups of order d^2, pairwise intersecting "
                   "in the stabilizer group");
  checks.check(coset_ok, std::to_string(d) + " cosets of " + std::to_string(d) +
                             " members in every Abelian subgroup");
  checks.check(phases_ok,
               "coset members carry pairwise distinct commutation phases "
               "against E_i on the principal qudit");
  checks.check(code_mub_ok,
               "code-space eigenbases of the Abelian subgroups mutually "
               "unbiased, MUB overlap 1/" + std::to_string(d));
  checks.check(projector_ok,
               "eigenprojectors Hermitian, idempotent, and complete");

  {  // Distinct phases within each commutation subset.
    bool ok = true;
    for (int i = 1; i < d * d && ok; ++i) {
      for (int k = 1; k < d && ok; ++k) {
        const auto subset = commutation_subset(d, i, k);
        for (int r : subset) {
          std::set<int> phases;
          for (int m : subset) {
            phases.insert(
                commutation_phase(basis_element(d, r), basis_element(d, m)));
          }
          ok = ok && static_cast<int>(phases.size()) == d;
        }
      }
    }
    checks.check(ok,
                 "fixed-phase subsets see pairwise distinct phases from each "
                 "of their members");
  }

  {  // Quantum Hamming bound cases.
    const auto population_case = check_hamming_bound(2, 0, 1, 1, 1, d);
    const auto coherence_case = check_hamming_bound(2, 1, d, 1, 1, d);
    const auto single_case = check_hamming_bound(1, 0, d, 1, 1, d);
    bool impossible_ok = true;
    for (int g = 1; g < d * d; ++g) {
      impossible_ok = impossible_ok && !check_hamming_bound(1, 1, g, 1, 1, d).holds;
    }
    impossible_ok =
        impossible_ok && check_hamming_bound(1, 1, d * d, 1, 1, d).holds;
    checks.check(population_case.holds && population_case.equality,
                 "Hamming bound saturated by the two-generator code (lhs = "
                 "rhs = d^2)");
    checks.check(coherence_case.holds && coherence_case.equality,
                 "Hamming bound saturated by the degenerate code (lhs = rhs "
                 "= d^2)");
    checks.check(single_case.holds,
                 "single-qudit d-fold degenerate code fits the bound");
    checks.check(impossible_ok,
                 "unencoded variant admissible only at degeneracy d^2");
  }

  out << (checks.all_passed ? "all checks passed" : "CHECKS FAILED") << "\n";
  return checks.all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_resources(int d, int n, std::ostream& out, std::ostream& err) {
  if (d < 2 || n < 1) {
    err << "error: resources requires d >= 2 and n >= 1\n";
    return kExitInputError;
  }
  const auto table = resource_table(d, n);
  out << "required experimental resources, d = " << d << ", n = " << n
      << "\n";
  out << std::left << std::setw(14) << "scheme" << std::right << std::setw(12)
      << "dim(H)" << std::setw(12) << "inputs" << std::setw(14) << "configs"
      << "  " << std::left << std::setw(24) << "measurements"
      << "interactions\n";
  for (const auto& row : table) {
    out << std::left << std::setw(14) << row.scheme << std::right
        << std::setw(12) << row.hilbert_dim << std::setw(12) << row.inputs
        << std::setw(14) << row.configurations << "  " << std::left
        << std::setw(24) << row.measurements << row.interactions << "\n";
  }
  return kExitOk;
}

int cmd_population_demo(int d, const std::string& channel_file,
                        std::ostream& out, std::ostream& err) {
  if (!is_prime(d)) {
    err << "error: d must be prime\n";
    return kExitInputError;
  }
  ChiMatrix chi;
  if (channel_file.empty()) {
    chi = ChiMatrix::identity_channel(d);
  } else {
    try {
      const ChannelSpec spec = load_channel_spec(channel_file);
      if (spec.d != d) {
        err << "error: channel file has d=" << spec.d << "\n";
        return kExitInputError;
      }
      if (spec.n_qudits != 1) {
        err << "error: population demo expects a single-qudit channel\n";
        return kExitInputError;
      }
      chi = spec.chi;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitInputError;
    }
  }

  const OutcomeRecord record = run_population(chi);
  out << "joint outcome grid (rows k, columns k'):\n";
  out << std::fixed << std::setprecision(6);
  double total = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int kp = 0; kp < d; ++kp) {
      out << std::setw(10) << record.stabilizer_probs(k * d + kp);
      total += record.stabilizer_probs(k * d + kp);
    }
    out << "\n";
  }
  out << "sum = " << total << "\n";
  out << "diagonal elements by basis index:";
  for (int m = 0; m < d * d; ++m) {
    out << " " << record.diagonal_estimate(m);
  }
  out << "\n";
  out.unsetf(std::ios_base::floatfield);
  return kExitOk;
}

}  // namespace dcqd
