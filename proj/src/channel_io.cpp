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

#include "dcqd/channel_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dcqd {

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson matrix_json(const Matrix& m) {
  OrderedJson rows = OrderedJson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const OrderedJson& rows, const std::string& field) {
  if (!rows.is_array() || rows.empty()) {
    throw ParseError("expected a non-empty array of rows", field);
  }
  const size_t nrows = rows.size();
  size_t ncols = 0;
  Matrix m;
  for (size_t r = 0; r < nrows; ++r) {
    const auto& row = rows[r];
    if (!row.is_array()) throw ParseError("row is not an array", field);
    if (r == 0) {
      ncols = row.size();
      m = Matrix::Zero(static_cast<Eigen::Index>(nrows),
                       static_cast<Eigen::Index>(ncols));
    } else if (row.size() != ncols) {
      throw ParseError("ragged matrix rows", field);
    }
    for (size_t c = 0; c < ncols; ++c) {
      const auto& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError("matrix entry is not a [real, imaginary] pair",
                         field);
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file " + path, "");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file " + path);
  out << text;
}

}  // namespace

ChannelSpec parse_channel_spec(const std::string& text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "");
  }
  if (!doc.is_object()) throw ParseError("top level must be an object", "");

  ChannelSpec spec;
  if (!doc.contains("d") || !doc["d"].is_number_integer()) {
    throw ParseError("missing or non-integer dimension", "d");
  }
  spec.d = doc["d"].get<int>();
  if (!is_prime(spec.d)) throw ParseError("dimension must be prime", "d");

  spec.n_qudits = 1;
  if (doc.contains("n_qudits")) {
    if (!doc["n_qudits"].is_number_integer() || doc["n_qudits"].get<int>() < 1) {
      throw ParseError("n_qudits must be a positive integer", "n_qudits");
    }
    spec.n_qudits = doc["n_qudits"].get<int>();
  }

  if (!doc.contains("representation") || !doc["representation"].is_string()) {
    throw ParseError("missing representation", "representation");
  }
  spec.representation = doc["representation"].get<std::string>();

  const int side = [&] {
    int out = 1;
    for (int i = 0; i < spec.n_qudits; ++i) out *= spec.d;
    return out;
  }();

  if (spec.representation == "kraus") {
    if (!doc.contains("kraus") || !doc["kraus"].is_array() ||
        doc["kraus"].empty()) {
      throw ParseError("missing Kraus operator list", "kraus");
    }
    KrausSet kraus;
    kraus.d = spec.d;
    kraus.n_qudits = spec.n_qudits;
    for (size_t i = 0; i < doc["kraus"].size(); ++i) {
      const std::string field = "kraus[" + std::to_string(i) + "]";
      Matrix k = matrix_from_json(doc["kraus"][i], field);
      if (k.rows() != side || k.cols() != side) {
        throw ParseError("Kraus operator must be " + std::to_string(side) +
                             "x" + std::to_string(side),
                         field);
      }
      kraus.operators.push_back(std::move(k));
    }
    // sum K^dag K <= I
    Matrix total = Matrix::Zero(side, side);
    for (const auto& k : kraus.operators) total += k.adjoint() * k;
    Eigen::SelfAdjointEigenSolver<Matrix> es(total, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().maxCoeff() > 1.0 + 1e-8) {
      throw ParseError("Kraus operators exceed trace preservation", "kraus");
    }
    spec.chi = kraus_to_chi(kraus);
  } else if (spec.representation == "chi") {
    if (!doc.contains("chi")) throw ParseError("missing chi matrix", "chi");
    spec.chi.d = spec.d;
    spec.chi.n_qudits = spec.n_qudits;
    spec.chi.entries = matrix_from_json(doc["chi"], "chi");
    const int basis = side * side;
    if (spec.chi.entries.rows() != basis || spec.chi.entries.cols() != basis) {
      throw ParseError("chi must be " + std::to_string(basis) + "x" +
                           std::to_string(basis),
                       "chi");
    }
    const auto report = validate_chi(spec.chi, 1e-8);
    if (!report.valid()) {
      throw ParseError("chi is not a valid process matrix (hermiticity " +
                           std::to_string(report.hermiticity_residual) +
                           ", min eigenvalue " +
                           std::to_string(report.min_eigenvalue) + ", trace " +
                           std::to_string(report.trace) + ")",
                       "chi");
    }
  } else {
    throw ParseError("representation must be \"kraus\" or \"chi\"",
                     "representation");
  }
  return spec;
}

ChannelSpec load_channel_spec(const std::string& path) {
  return parse_channel_spec(read_file(path));
}

std::string render_channel_spec_chi(const ChiMatrix& chi) {
  OrderedJson doc;
  doc["d"] = chi.d;
  doc["n_qudits"] = chi.n_qudits;
  doc["representation"] = "chi";
  doc["chi"] = matrix_json(chi.entries);
  return doc.dump(2) + "\n";
}

std::string render_channel_spec_kraus(const KrausSet& kraus) {
  OrderedJson doc;
  doc["d"] = kraus.d;
  doc["n_qudits"] = kraus.n_qudits;
  doc["representation"] = "kraus";
  OrderedJson list = OrderedJson::array();
  for (const auto& k : kraus.operators) list.push_back(matrix_json(k));
  doc["kraus"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::vector<std::vector<std::array<double, 2>>> matrix_to_pairs(
    const Matrix& m) {
  std::vector<std::vector<std::array<double, 2>>> out;
  out.reserve(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<std::array<double, 2>> row;
    row.reserve(m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    out.push_back(std::move(row));
  }
  return out;
}

Matrix pairs_to_matrix(
    const std::vector<std::vector<std::array<double, 2>>>& pairs) {
  if (pairs.empty()) return Matrix();
  Matrix m(static_cast<Eigen::Index>(pairs.size()),
           static_cast<Eigen::Index>(pairs[0].size()));
  for (size_t r = 0; r < pairs.size(); ++r) {
    for (size_t c = 0; c < pairs[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(pairs[r][c][0], pairs[r][c][1]);
    }
  }
  return m;
}

namespace {

OrderedJson pairs_json(
    const std::vector<std::vector<std::array<double, 2>>>& pairs) {
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : pairs) {
    OrderedJson jrow = OrderedJson::array();
    for (const auto& entry : row) jrow.push_back({entry[0], entry[1]});
    rows.push_back(std::move(jrow));
  }
  return rows;
}

std::vector<std::vector<std::array<double, 2>>> pairs_from_json(
    const OrderedJson& rows, const std::string& field) {
  std::vector<std::vector<std::array<double, 2>>> out;
  if (!rows.is_array()) throw ParseError("expected array", field);
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("expected row array", field);
    std::vector<std::array<double, 2>> orow;
    for (const auto& entry : row) {
      if (!entry.is_array() || entry.size() != 2) {
        throw ParseError("expected [real, imaginary] pair", field);
      }
      orow.push_back({entry[0].get<double>(), entry[1].get<double>()});
    }
    out.push_back(std::move(orow));
  }
  return out;
}

}  // namespace

std::string render_report(const RunReport& report) {
  OrderedJson doc;
  doc["tool"] = report.tool;
  doc["version"] = report.version;
  doc["seed"] = report.seed;
  doc["d"] = report.d;
  if (report.shots.has_value()) {
    doc["shots"] = *report.shots;
  } else {
    doc["shots"] = nullptr;
  }
  doc["alphas_policy"] = report.alphas_policy;
  doc["subgroup_offset"] = report.subgroup_offset;
  doc["coset_label"] = report.coset_label;
  doc["trace_preserving_rows"] = report.trace_preserving_rows;

  OrderedJson configs = OrderedJson::array();
  for (const auto& c : report.configurations) {
    OrderedJson jc;
    jc["kind"] = c.kind;
    jc["stabilizer_index"] = c.stabilizer_index;
    jc["subgroup_index"] = c.subgroup_index;
    jc["coset_label"] = c.coset_label;
    jc["stabilizer_probs"] = c.stabilizer_probs;
    configs.push_back(std::move(jc));
  }
  doc["configurations"] = std::move(configs);

  doc["rank"] = report.rank;
  doc["incremental_rank"] = report.incremental_rank;
  doc["under_determined"] = report.under_determined;
  doc["null_space"] = report.null_space;
  doc["residual_norm"] = report.residual_norm;
  doc["recovered_chi"] = pairs_json(report.recovered_chi);
  if (report.ground_truth_chi.has_value()) {
    doc["ground_truth_chi"] = pairs_json(*report.ground_truth_chi);
  } else {
    doc["ground_truth_chi"] = nullptr;
  }
  if (report.frobenius_error.has_value()) {
    doc["frobenius_error"] = *report.frobenius_error;
  } else {
    doc["frobenius_error"] = nullptr;
  }
  doc["duration_seconds"] = report.duration_seconds;
  return doc.dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), "");
  }
  RunReport report;
  report.tool = doc.at("tool").get<std::string>();
  report.version = doc.at("version").get<std::string>();
  report.seed = doc.at("seed").get<uint64_t>();
  report.d = doc.at("d").get<int>();
  if (!doc.at("shots").is_null()) {
    report.shots = doc.at("shots").get<long long>();
  }
  report.alphas_policy = doc.at("alphas_policy").get<std::string>();
  report.subgroup_offset = doc.at("subgroup_offset").get<int>();
  report.coset_label = doc.at("coset_label").get<int>();
  report.trace_preserving_rows = doc.at("trace_preserving_rows").get<bool>();
  for (const auto& jc : doc.at("configurations")) {
    ConfigurationSummary c;
    c.kind = jc.at("kind").get<std::string>();
    c.stabilizer_index = jc.at("stabilizer_index").get<int>();
    c.subgroup_index = jc.at("subgroup_index").get<int>();
    c.coset_label = jc.at("coset_label").get<int>();
    c.stabilizer_probs = jc.at("stabilizer_probs").get<std::vector<double>>();
    report.configurations.push_back(std::move(c));
  }
  report.rank = doc.at("rank").get<int>();
  report.incremental_rank =
      doc.at("incremental_rank").get<std::vector<int>>();
  report.under_determined = doc.at("under_determined").get<bool>();
  report.null_space = doc.at("null_space").get<std::vector<std::string>>();
  report.residual_norm = doc.at("residual_norm").get<double>();
  report.recovered_chi = pairs_from_json(doc.at("recovered_chi"),
                                         "recovered_chi");
  if (!doc.at("ground_truth_chi").is_null()) {
    report.ground_truth_chi =
        pairs_from_json(doc.at("ground_truth_chi"), "ground_truth_chi");
  }
  if (!doc.at("frobenius_error").is_null()) {
    report.frobenius_error = doc.at("frobenius_error").get<double>();
  }
  report.duration_seconds = doc.at("duration_seconds").get<double>();
  return report;
}

void save_report(const RunReport& report, const std::string& path) {
  write_file(path, render_report(report));
}

RunReport load_report(const std::string& path) {
  return parse_report(read_file(path));
}

}  // namespace dcqd
