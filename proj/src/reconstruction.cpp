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

#include "dcqd/reconstruction.hpp"

#include <algorithm>
#include <string>

namespace dcqd {

namespace {

unsigned long long upow(unsigned long long base, int exp) {
  unsigned long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Per-configuration precomputation: the probe density matrix and the
/// measurement operators whose Hilbert-Schmidt pairings with E(rho) form
/// the statistics.
struct ConfigOperators {
  Matrix rho;
  // Population: one operator per grid cell. Coherence: the d stabilizer
  // projectors followed by the d*(d-1) sandwiched normalizers
  // P_k T_b P_k (b-major inner k? see row order below).
  std::vector<Matrix> probability_ops;  // real-valued statistics
  std::vector<Matrix> moment_ops;       // complex-valued statistics
};

ConfigOperators prepare_config(const ExperimentalConfiguration& config) {
  ConfigOperators ops;
  const StabilizerCode& probe = config.probe;
  const int d = probe.d;
  ops.rho = probe.state * probe.state.adjoint();

  if (config.kind == ExperimentalConfiguration::Kind::population) {
    std::vector<Matrix> proj_s(d), proj_sp(d);
    for (int k = 0; k < d; ++k) {
      proj_s[k] = eigenprojector(probe.generators[0], k);
      proj_sp[k] = eigenprojector(probe.generators[1], k);
    }
    for (int k = 0; k < d; ++k) {
      for (int kp = 0; kp < d; ++kp) {
        ops.probability_ops.push_back(proj_s[k] * proj_sp[kp]);
      }
    }
    return ops;
  }

  std::vector<Matrix> projectors(d);
  for (int k = 0; k < d; ++k) {
    projectors[k] = eigenprojector(probe.generators[0], k);
    ops.probability_ops.push_back(projectors[k]);
  }
  const auto normalizers = config.measured_normalizers();
  for (const auto& t : normalizers) {
    const Matrix tmat = matrix_of(t);
    for (int k = 0; k < d; ++k) {
      ops.moment_ops.push_back(projectors[k] * tmat * projectors[k]);
    }
  }
  return ops;
}

int rank_of_rows(const Eigen::MatrixXd& matrix, int rows, double threshold) {
  if (rows == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix.topRows(rows));
  svd.setThreshold(threshold);
  return static_cast<int>(svd.rank());
}

}  // namespace

ChiParametrization::ChiParametrization(int basis_size_in)
    : basis_size(basis_size_in), param_count(basis_size_in * basis_size_in) {}

int ChiParametrization::diag_index(int m) const { return m; }

int ChiParametrization::real_index(int m, int n) const {
  // Lexicographic position of (m, n), m < n.
  const int before = m * basis_size - m * (m + 1) / 2;
  return basis_size + before + (n - m - 1);
}

int ChiParametrization::imag_index(int m, int n) const {
  const int pairs = basis_size * (basis_size - 1) / 2;
  return real_index(m, n) + pairs;
}

std::string ChiParametrization::label(int param) const {
  const int pairs = basis_size * (basis_size - 1) / 2;
  if (param < basis_size) return "diag[" + std::to_string(param) + "]";
  int offset = param - basis_size;
  const bool imag = offset >= pairs;
  if (imag) offset -= pairs;
  for (int m = 0; m < basis_size; ++m) {
    const int row_len = basis_size - m - 1;
    if (offset < row_len) {
      const int n = m + 1 + offset;
      return std::string(imag ? "im[" : "re[") + std::to_string(m) + "," +
             std::to_string(n) + "]";
    }
    offset -= row_len;
  }
  return "param[" + std::to_string(param) + "]";
}

Eigen::VectorXd ChiParametrization::params_from_chi(const Matrix& chi) const {
  Eigen::VectorXd params(param_count);
  for (int m = 0; m < basis_size; ++m) params(diag_index(m)) = chi(m, m).real();
  for (int m = 0; m < basis_size; ++m) {
    for (int n = m + 1; n < basis_size; ++n) {
      params(real_index(m, n)) = chi(m, n).real();
      params(imag_index(m, n)) = chi(m, n).imag();
    }
  }
  return params;
}

Matrix ChiParametrization::chi_from_params(const Eigen::VectorXd& params) const {
  Matrix chi = Matrix::Zero(basis_size, basis_size);
  for (int m = 0; m < basis_size; ++m) chi(m, m) = params(diag_index(m));
  for (int m = 0; m < basis_size; ++m) {
    for (int n = m + 1; n < basis_size; ++n) {
      const Complex value(params(real_index(m, n)), params(imag_index(m, n)));
      chi(m, n) = value;
      chi(n, m) = std::conj(value);
    }
  }
  return chi;
}

std::string RowLabel::to_string() const {
  const std::string base = "config " + std::to_string(config_index);
  switch (kind) {
    case Kind::population_prob:
      return base + " grid cell " + std::to_string(outcome);
    case Kind::stabilizer_prob:
      return base + " outcome " + std::to_string(outcome);
    case Kind::moment_real:
      return base + " outcome " + std::to_string(outcome) + " normalizer b=" +
             std::to_string(normalizer_b) + " (re)";
    case Kind::moment_imag:
      return base + " outcome " + std::to_string(outcome) + " normalizer b=" +
             std::to_string(normalizer_b) + " (im)";
    case Kind::trace_constraint_real:
      return "trace constraint entry " + std::to_string(outcome) + " (re)";
    case Kind::trace_constraint_imag:
      return "trace constraint entry " + std::to_string(outcome) + " (im)";
  }
  return base;
}

LinearSystem assemble_coefficients(
    const std::vector<ExperimentalConfiguration>& configs,
    const AssemblyOptions& options) {
  if (configs.empty()) {
    throw std::invalid_argument("assemble_coefficients: no configurations");
  }
  const int d = configs[0].probe.d;
  const int n = d * d;
  const ChiParametrization par(n);

  LinearSystem system;
  system.d = d;
  system.basis_size = n;

  std::vector<ConfigOperators> prepared;
  prepared.reserve(configs.size());
  int total_rows = 0;
  for (const auto& config : configs) {
    prepared.push_back(prepare_config(config));
    total_rows += static_cast<int>(prepared.back().probability_ops.size()) +
                  2 * static_cast<int>(prepared.back().moment_ops.size());
  }
  const int trace_rows = options.trace_preserving_rows ? 2 * d * d : 0;
  system.matrix = Eigen::MatrixXd::Zero(total_rows + trace_rows,
                                        par.param_count);
  system.rhs = Eigen::VectorXd::Zero(total_rows + trace_rows);

  // Row labels and per-config ranges.
  int row = 0;
  for (size_t c = 0; c < configs.size(); ++c) {
    const int begin = row;
    const auto& ops = prepared[c];
    const bool population =
        configs[c].kind == ExperimentalConfiguration::Kind::population;
    for (size_t i = 0; i < ops.probability_ops.size(); ++i) {
      RowLabel label;
      label.kind = population ? RowLabel::Kind::population_prob
                              : RowLabel::Kind::stabilizer_prob;
      label.config_index = static_cast<int>(c);
      label.outcome = static_cast<int>(i);
      system.row_labels.push_back(label);
      ++row;
    }
    for (size_t i = 0; i < ops.moment_ops.size(); ++i) {
      RowLabel label;
      label.config_index = static_cast<int>(c);
      label.normalizer_b = static_cast<int>(i) / d + 1;
      label.outcome = static_cast<int>(i) % d;
      label.kind = RowLabel::Kind::moment_real;
      system.row_labels.push_back(label);
      label.kind = RowLabel::Kind::moment_imag;
      system.row_labels.push_back(label);
      row += 2;
    }
    system.config_row_ranges.emplace_back(begin, row);
  }

  for (int p = 0; p < par.param_count; ++p) {
    system.column_labels.push_back(par.label(p));
  }

  // Columns: evaluate every statistic on each Hermitian unit perturbation.
  // A perturbation touches one or two chi entries, so E(rho) needs at most
  // two E_m rho E_n^dag terms.
  std::vector<Matrix> basis_ops(n);
  for (int m = 0; m < n; ++m) {
    basis_ops[m] = kron(matrix_of(basis_element(d, m)), Matrix::Identity(d, d));
  }

  for (int p = 0; p < par.param_count; ++p) {
    // Decode the parameter into its (m, n, weight) entries.
    int m_idx = 0, n_idx = 0;
    Complex upper(0.0, 0.0);
    if (p < n) {
      m_idx = n_idx = p;
      upper = 1.0;
    } else {
      const int pairs = n * (n - 1) / 2;
      int offset = p - n;
      const bool imag = offset >= pairs;
      if (imag) offset -= pairs;
      for (int m = 0; m < n; ++m) {
        const int row_len = n - m - 1;
        if (offset < row_len) {
          m_idx = m;
          n_idx = m + 1 + offset;
          break;
        }
        offset -= row_len;
      }
      upper = imag ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    }

    row = 0;
    for (size_t c = 0; c < configs.size(); ++c) {
      const auto& ops = prepared[c];
      Matrix out;
      if (m_idx == n_idx) {
        out = basis_ops[m_idx] * ops.rho * basis_ops[m_idx].adjoint();
      } else {
        const Matrix term = upper * basis_ops[m_idx] * ops.rho *
                            basis_ops[n_idx].adjoint();
        out = term + term.adjoint();
      }
      for (const auto& op : ops.probability_ops) {
        system.matrix(row++, p) = (op * out).trace().real();
      }
      for (const auto& op : ops.moment_ops) {
        const Complex value = (op * out).trace();
        system.matrix(row++, p) = value.real();
        system.matrix(row++, p) = value.imag();
      }
    }
  }

  if (options.trace_preserving_rows) {
    // sum_mn chi_mn E_n^dag E_m = I, one complex row per matrix entry.
    std::vector<Matrix> small_ops(n);
    for (int m = 0; m < n; ++m) small_ops[m] = matrix_of(basis_element(d, m));
    int base = total_rows;
    for (int r = 0; r < d; ++r) {
      for (int col = 0; col < d; ++col) {
        const int entry = r * d + col;
        RowLabel label;
        label.kind = RowLabel::Kind::trace_constraint_real;
        label.outcome = entry;
        system.row_labels.push_back(label);
        label.kind = RowLabel::Kind::trace_constraint_imag;
        system.row_labels.push_back(label);

        for (int p = 0; p < par.param_count; ++p) {
          // Same decoding as above; factored small enough to repeat.
          Complex accum(0.0, 0.0);
          if (p < n) {
            accum = (small_ops[p].adjoint() * small_ops[p])(r, col);
          } else {
            const int pairs = n * (n - 1) / 2;
            int offset = p - n;
            const bool imag = offset >= pairs;
            if (imag) offset -= pairs;
            int m_idx = 0, n_idx = 0;
            for (int m = 0; m < n; ++m) {
              const int row_len = n - m - 1;
              if (offset < row_len) {
                m_idx = m;
                n_idx = m + 1 + offset;
                break;
              }
              offset -= row_len;
            }
            const Complex upper = imag ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
            accum = upper * (small_ops[n_idx].adjoint() * small_ops[m_idx])(r, col) +
                    std::conj(upper) *
                        (small_ops[m_idx].adjoint() * small_ops[n_idx])(r, col);
          }
          system.matrix(base, p) = accum.real();
          system.matrix(base + 1, p) = accum.imag();
        }
        system.rhs(base) = (r == col) ? 1.0 : 0.0;
        system.rhs(base + 1) = 0.0;
        base += 2;
      }
    }
  }

  return system;
}

LinearSystem assemble_system(
    const std::vector<ExperimentalConfiguration>& configs,
    const std::vector<OutcomeRecord>& records,
    const AssemblyOptions& options) {
  if (configs.size() != records.size()) {
    throw std::invalid_argument(
        "assemble_system: configuration/record count mismatch");
  }
  LinearSystem system = assemble_coefficients(configs, options);
  const int d = system.d;

  int row = 0;
  for (size_t c = 0; c < configs.size(); ++c) {
    const OutcomeRecord& record = records[c];
    if (record.config.kind != configs[c].kind) {
      throw std::invalid_argument("assemble_system: record does not match "
                                  "configuration kind");
    }
    if (configs[c].kind == ExperimentalConfiguration::Kind::population) {
      for (int cell = 0; cell < record.stabilizer_probs.size(); ++cell) {
        system.rhs(row++) = record.stabilizer_probs(cell);
      }
    } else {
      for (int k = 0; k < d; ++k) {
        system.rhs(row++) = record.stabilizer_probs(k);
      }
      const int nb = static_cast<int>(record.normalizer_moments.cols());
      for (int b = 0; b < nb; ++b) {
        for (int k = 0; k < d; ++k) {
          system.rhs(row++) = record.normalizer_moments(k, b).real();
          system.rhs(row++) = record.normalizer_moments(k, b).imag();
        }
      }
    }
  }
  return system;
}

RankReport rank_report(const LinearSystem& system, double threshold_rel) {
  RankReport report;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.matrix);
  report.sigma_max = svd.singularValues().size() > 0
                         ? svd.singularValues()(0)
                         : 0.0;
  svd.setThreshold(threshold_rel);
  report.rank = static_cast<int>(svd.rank());

  int previous = 0;
  for (const auto& range : system.config_row_ranges) {
    const int rank = rank_of_rows(system.matrix, range.second, threshold_rel);
    report.cumulative_rank.push_back(rank);
    report.incremental_rank.push_back(rank - previous);
    previous = rank;
  }
  return report;
}

LeastSquaresSolver::LeastSquaresSolver(const LinearSystem& system,
                                       double threshold_rel)
    : system_(system),
      svd_(system.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV) {
  svd_.setThreshold(threshold_rel);
  rank_ = static_cast<int>(svd_.rank());
}

SolveResult LeastSquaresSolver::solve(const Eigen::VectorXd& rhs,
                                      const SolveOptions& options) const {
  const int param_count = static_cast<int>(system_.matrix.cols());
  SolveResult result;
  result.rank = rank_;
  result.under_determined = rank_ < param_count;

  if (result.under_determined) {
    // Name the unconstrained directions by their dominant parameter.
    const auto& v = svd_.matrixV();
    for (int j = rank_; j < v.cols(); ++j) {
      int pivot = 0;
      for (int i = 1; i < v.rows(); ++i) {
        if (std::abs(v(i, j)) > std::abs(v(pivot, j))) pivot = i;
      }
      const std::string& label = system_.column_labels[pivot];
      if (std::find(result.null_space_labels.begin(),
                    result.null_space_labels.end(),
                    label) == result.null_space_labels.end()) {
        result.null_space_labels.push_back(label);
      }
    }
    if (options.require_full_rank) {
      std::string message =
          "solve_chi: system rank " + std::to_string(rank_) + " below " +
          std::to_string(param_count) + "; unconstrained directions:";
      for (const auto& label : result.null_space_labels) {
        message += " " + label;
      }
      throw UnderdeterminedError(message, result.null_space_labels);
    }
  }

  const Eigen::VectorXd params = svd_.solve(rhs);
  const ChiParametrization par(system_.basis_size);
  result.chi.d = system_.d;
  result.chi.n_qudits = 1;
  result.chi.entries = par.chi_from_params(params);
  result.residual_norm = (system_.matrix * params - rhs).norm();

  if (options.psd_projection) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(result.chi.entries);
    Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    result.chi.entries = es.eigenvectors() * clipped.asDiagonal() *
                         es.eigenvectors().adjoint();
  }
  return result;
}

SolveResult solve_chi(const LinearSystem& system, const SolveOptions& options) {
  LeastSquaresSolver solver(system, options.threshold_rel);
  return solver.solve(system.rhs, options);
}

std::vector<SchemeResources> resource_table(int d, int n) {
  if (d < 2 || n < 1) {
    throw std::invalid_argument("resource_table: need d >= 2, n >= 1");
  }
  const auto ud = static_cast<unsigned long long>(d);
  std::vector<SchemeResources> table;
  table.push_back({"SQPT", upow(ud, n), upow(ud, 2 * n), upow(ud, 4 * n),
                   "1-body", "single-body"});
  table.push_back({"AAPT", upow(ud, 2 * n), 1, upow(ud, 4 * n), "joint 1-body",
                   "single-body"});
  table.push_back({"AAPT (MUB)", upow(ud, 2 * n), 1, upow(ud, 2 * n) + 1,
                   "MUB", "many-body"});
  table.push_back({"AAPT (POVM)", upow(ud, 4 * n), 1, 1, "POVM", "many-body"});
  table.push_back({"DCQD", upow(ud, 2 * n), upow(ud + 2, n), upow(ud, 2 * n),
                   "stabilizer/normalizer", "single- and two-body"});
  return table;
}

}  // namespace dcqd
