// Copyright 2026 The qnd Authors
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

#include "qnd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qnd {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

int count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw ParseError(where + ": expected a positive integer");
  }
  return j.get<int>();
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  return j;
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [re, im]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

void check_schema(const json& j, const std::string& where) {
  if (j.is_object() && j.contains("schema") && j["schema"] != kSchema) {
    throw ParseError(where + ": unsupported schema " + j["schema"].dump() + ", expected \"" +
                     kSchema + "\"");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  array(j, where);
  if (j.empty()) throw ParseError(where + ": empty matrix");
  const std::size_t cols = array(j[0], where + "[0]").size();
  if (cols == 0) throw ParseError(where + "[0]: empty row");
  ComplexMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (array(j[r], row_where).size() != cols) throw ParseError(row_where + ": ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], row_where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

QuantumInstrument parse_instrument(const json& j) {
  const std::string where = "instrument";
  check_schema(j, where);
  const int dim_in = count(field(j, "dim_in", where), where + ".dim_in");
  const int dim_out = count(field(j, "dim_out", where), where + ".dim_out");
  const json& outcomes = array(field(j, "outcomes", where), where + ".outcomes");
  if (outcomes.empty()) throw ParseError(where + ".outcomes: no outcomes");

  std::vector<std::pair<std::string, std::vector<ComplexMatrix>>> raw;
  ComplexMatrix completeness = -ComplexMatrix::Identity(dim_in, dim_in);
  for (std::size_t m = 0; m < outcomes.size(); ++m) {
    const std::string ow = where + ".outcomes[" + std::to_string(m) + "]";
    const json& label = field(outcomes[m], "label", ow);
    if (!label.is_string()) throw ParseError(ow + ".label: expected a string");
    const json& kraus = array(field(outcomes[m], "kraus", ow), ow + ".kraus");
    if (kraus.empty()) throw ParseError(ow + ".kraus: no Kraus operators");
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < kraus.size(); ++k) {
      const std::string kw = ow + ".kraus[" + std::to_string(k) + "]";
      ComplexMatrix op = matrix_from_json(kraus[k], kw);
      if (op.rows() != dim_out || op.cols() != dim_in) {
        throw ParseError(kw + ": shape " + shape_string(op) + ", expected " +
                         std::to_string(dim_out) + "x" + std::to_string(dim_in));
      }
      completeness += op.adjoint() * op;
      ops.push_back(std::move(op));
    }
    raw.emplace_back(label.get<std::string>(), std::move(ops));
  }

  const double residual = infinity_norm(completeness);
  if (residual > QuantumInstrument::kCompletenessTolerance) {
    throw CompletenessError(
        where + ": Kraus operators violate completeness, ||sum K^dag K - 1|| = " +
            format_double(residual),
        residual);
  }
  std::vector<QuantumInstrument::Outcome> parsed;
  for (auto& [label, ops] : raw) parsed.push_back({label, CpMap(dim_in, dim_out, std::move(ops))});
  return QuantumInstrument(dim_in, dim_out, std::move(parsed));
}

QuantumInstrument load_instrument(const std::filesystem::path& path) {
  const json j = read_json(path);
  try {
    return parse_instrument(j);
  } catch (const CompletenessError& e) {
    throw CompletenessError(path.string() + ": " + e.what(), e.residual());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json instrument_to_json(const QuantumInstrument& inst, const std::string& id) {
  json outcomes = json::array();
  for (const auto& o : inst.outcomes()) {
    json kraus = json::array();
    for (const auto& k : o.branch.kraus()) kraus.push_back(matrix_to_json(k));
    outcomes.push_back({{"label", o.label}, {"kraus", std::move(kraus)}});
  }
  json j = {{"schema", kSchema},
            {"dim_in", inst.dim_in()},
            {"dim_out", inst.dim_out()},
            {"outcomes", std::move(outcomes)}};
  if (!id.empty()) j["id"] = id;
  return j;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text << '\n';
}

}  // namespace

void save_instrument(const QuantumInstrument& inst, const std::filesystem::path& path,
                     const std::string& id) {
  write_text(path, instrument_to_json(inst, id).dump(2));
}

Observable parse_observable(const json& j) {
  const std::string where = "observable";
  check_schema(j, where);
  const json& ev = array(field(j, "eigenvalues", where), where + ".eigenvalues");
  std::vector<double> eigenvalues;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    eigenvalues.push_back(number(ev[i], where + ".eigenvalues[" + std::to_string(i) + "]"));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : array(j["labels"], where + ".labels")) {
      if (!l.is_string()) throw ParseError(where + ".labels: expected strings");
      labels.push_back(l.get<std::string>());
    }
  }

  if (j.contains("projectors") == j.contains("vectors")) {
    throw ParseError(where + ": exactly one of 'projectors' or 'vectors' is required");
  }
  if (j.contains("projectors")) {
    const json& ps = array(j["projectors"], where + ".projectors");
    if (ps.size() != eigenvalues.size()) {
      throw ParseError(where + ": " + std::to_string(ps.size()) + " projectors for " +
                       std::to_string(eigenvalues.size()) + " eigenvalues");
    }
    std::vector<Observable::Branch> branches;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      branches.push_back(
          {eigenvalues[i], matrix_from_json(ps[i], where + ".projectors[" + std::to_string(i) + "]")});
    }
    return Observable(std::move(branches), std::move(labels));
  }

  const json& vs = array(j["vectors"], where + ".vectors");
  if (vs.size() != eigenvalues.size()) {
    throw ParseError(where + ": " + std::to_string(vs.size()) + " vectors for " +
                     std::to_string(eigenvalues.size()) + " eigenvalues");
  }
  std::vector<ComplexVector> vectors;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string vw = where + ".vectors[" + std::to_string(i) + "]";
    const json& v = array(vs[i], vw);
    ComplexVector vec(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
      vec[static_cast<Eigen::Index>(k)] = complex_from_json(v[k], vw + "[" + std::to_string(k) + "]");
    }
    vectors.push_back(std::move(vec));
  }
  return Observable::from_vectors(std::move(eigenvalues), std::move(vectors), std::move(labels));
}

Observable load_observable(const std::filesystem::path& path) {
  const json j = read_json(path);
  try {
    return parse_observable(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json observable_to_json(const Observable& obs) {
  json projectors = json::array();
  for (const auto& b : obs.branches()) projectors.push_back(matrix_to_json(b.projector));
  return {{"schema", kSchema},
          {"eigenvalues", obs.eigenvalues()},
          {"labels", obs.labels()},
          {"projectors", std::move(projectors)}};
}

void save_observable(const Observable& obs, const std::filesystem::path& path) {
  write_text(path, observable_to_json(obs).dump(2));
}

}  // namespace qnd
