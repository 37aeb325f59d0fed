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

#include "qnd/info.hpp"

#include <cmath>
#include <numbers>

namespace qnd {

namespace {

double clamp_probability(double p, const char* where) {
  if (!std::isfinite(p)) throw ValidationError(std::string(where) + ": non-finite probability");
  if (p < -kProbabilityClamp) {
    throw ValidationError(std::string(where) + ": negative probability " + std::to_string(p));
  }
  return p < 0.0 ? 0.0 : p;
}

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

JointTable::JointTable(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                       RealMatrix probs)
    : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)),
      probs_(std::move(probs)) {
  if (probs_.rows() < 1 || probs_.cols() < 1) throw DimensionError("JointTable: empty table");
  if (static_cast<Eigen::Index>(row_labels_.size()) != probs_.rows() ||
      static_cast<Eigen::Index>(col_labels_.size()) != probs_.cols()) {
    throw DimensionError("JointTable: label counts do not match table shape");
  }
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    probs_.data()[i] = clamp_probability(probs_.data()[i], "JointTable");
  }
  const double total = probs_.sum();
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw ValidationError("JointTable: entries sum to " + std::to_string(total));
  }
}

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  double h = 0.0;
  for (double raw : p) {
    const double q = clamp_probability(raw, "shannon_entropy");
    total += q;
    h += plogp(q);
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw ValidationError("shannon_entropy: probabilities sum to " + std::to_string(total));
  }
  return h;
}

double shannon_entropy(const RealVector& p) {
  return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

double binary_entropy(double p) {
  if (p < -kProbabilityClamp || p > 1.0 + kProbabilityClamp) {
    throw ValidationError("binary_entropy: argument outside [0,1]");
  }
  return plogp(p) + plogp(1.0 - p);
}

double conditional_entropy(const JointTable& t, Axis given) {
  const RealMatrix& p = t.probs();
  const double joint =
      shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
  const double marginal = shannon_entropy(given == Axis::Rows ? t.row_marginal() : t.col_marginal());
  return std::max(0.0, joint - marginal);
}

double map_error_probability(const JointTable& t, Axis given) {
  const RealMatrix& p = t.probs();
  double correct = 0.0;
  if (given == Axis::Rows) {
    for (int r = 0; r < t.rows(); ++r) correct += p.row(r).maxCoeff();
  } else {
    for (int c = 0; c < t.cols(); ++c) correct += p.col(c).maxCoeff();
  }
  return std::max(0.0, 1.0 - correct);
}

double spectral_entropy(const ComplexMatrix& h) {
  const RealVector spectrum = eigh(h).values;
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    if (spectrum[i] > kEigenClamp) s += plogp(spectrum[i]);
  }
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) { return spectral_entropy(rho.matrix()); }

double quantum_conditional_entropy(const DensityOperator& rho_ab, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho_ab.dim()) {
    throw DimensionError("quantum_conditional_entropy: " + std::to_string(dim_a) + "x" +
                         std::to_string(dim_b) + " does not match state dimension " +
                         std::to_string(rho_ab.dim()));
  }
  const ComplexMatrix rho_b = partial_trace(rho_ab.matrix(), {dim_a, dim_b}, {1});
  return spectral_entropy(rho_ab.matrix()) - spectral_entropy(rho_b);
}

FanoBounds fano_bounds(double p_e, int alphabet_size) {
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw ValidationError("fano_bounds: p_e outside [0,1]");
  if (alphabet_size < 2) throw ValidationError("fano_bounds: alphabet size must be >= 2");
  const double upper = binary_entropy(p_e) + p_e * std::log2(alphabet_size - 1.0);
  return {p_e, upper, 2.0 * p_e};
}

EntropyVarianceCheck entropy_variance_bound(std::span<const double> values,
                                            std::span<const double> probs, double spacing) {
  if (values.size() != probs.size() || values.empty()) {
    throw DimensionError("entropy_variance_bound: values and probabilities differ in length");
  }
  if (!(spacing > 0.0)) throw ValidationError("entropy_variance_bound: spacing must be positive");
  for (double v : values) {
    const double n = (v - values[0]) / spacing;
    if (std::abs(n - std::round(n)) * spacing > 1e-9) {
      throw ValidationError("entropy_variance_bound: value " + std::to_string(v) +
                            " is not on the lattice");
    }
  }
  const double h = shannon_entropy(probs);
  double mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) mean += probs[i] * values[i];
  double var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    var += probs[i] * (values[i] - mean) * (values[i] - mean);
  }
  const double bound =
      0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e *
                      (var / (spacing * spacing) + 1.0 / 12.0));
  return {h, var, bound, h <= bound + 1e-9};
}

}  // namespace qnd
