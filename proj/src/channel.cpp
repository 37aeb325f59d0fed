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

#include "qnd/channel.hpp"

#include <algorithm>
#include <set>

namespace qnd {

CpMap::CpMap(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ < 1 || dim_out_ < 1) throw DimensionError("CpMap: dimensions must be >= 1");
  if (kraus_.empty()) throw ValidationError("CpMap: no Kraus operators");
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw DimensionError("CpMap: Kraus operator has shape " + shape_string(k) + ", expected " +
                           std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
    }
    if (!all_finite(k)) throw ValidationError("CpMap: non-finite Kraus entry");
  }
  const double top = eigh(effect()).values.maxCoeff();
  if (top > 1.0 + kCompletenessTolerance) {
    throw ValidationError("CpMap: trace increasing (largest effect eigenvalue " +
                          std::to_string(top) + ")");
  }
}

CpMap CpMap::identity(int dim) { return CpMap(dim, dim, {ComplexMatrix::Identity(dim, dim)}); }

ComplexMatrix CpMap::effect() const {
  ComplexMatrix e = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) e.noalias() += k.adjoint() * k;
  return e;
}

ComplexMatrix CpMap::dual(const ComplexMatrix& a) const {
  if (a.rows() != dim_out_ || a.cols() != dim_out_) {
    throw DimensionError("CpMap::dual: operator has shape " + shape_string(a));
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * a * k;
  return out;
}

bool CpMap::is_trace_preserving(double tol) const {
  return (effect() - ComplexMatrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix CpMap::choi() const {
  ComplexMatrix j = ComplexMatrix::Zero(dim_in_ * dim_out_, dim_in_ * dim_out_);
  for (int a = 0; a < dim_in_; ++a) {
    for (int b = 0; b < dim_in_; ++b) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim_in_, dim_in_);
      unit(a, b) = 1.0;
      j.block(a * dim_out_, b * dim_out_, dim_out_, dim_out_) = apply_cp_map(*this, unit);
    }
  }
  return j;
}

ComplexMatrix apply_cp_map(const CpMap& map, const ComplexMatrix& rho) {
  if (rho.rows() != map.dim_in() || rho.cols() != map.dim_in()) {
    throw DimensionError("apply_cp_map: input has shape " + shape_string(rho) + ", map expects " +
                         std::to_string(map.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(map.dim_out(), map.dim_out());
  for (const auto& k : map.kraus()) out.noalias() += k * rho * k.adjoint();
  return out;
}

CpMap compose(const CpMap& after, const CpMap& before) {
  if (after.dim_in() != before.dim_out()) {
    throw DimensionError("compose: inner dimensions differ");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(after.kraus().size() * before.kraus().size());
  for (const auto& a : after.kraus()) {
    for (const auto& b : before.kraus()) kraus.push_back(a * b);
  }
  return CpMap(before.dim_in(), after.dim_out(), std::move(kraus));
}

QuantumInstrument::QuantumInstrument(int dim_in, int dim_out, std::vector<Outcome> outcomes)
    : dim_in_(dim_in), dim_out_(dim_out), outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw ValidationError("QuantumInstrument: no outcomes");
  std::set<std::string> seen;
  for (const auto& o : outcomes_) {
    if (!seen.insert(o.label).second) {
      throw ValidationError("QuantumInstrument: duplicate outcome label '" + o.label + "'");
    }
    if (o.branch.dim_in() != dim_in_ || o.branch.dim_out() != dim_out_) {
      throw DimensionError("QuantumInstrument: branch '" + o.label + "' has dimensions " +
                           std::to_string(o.branch.dim_in()) + "->" +
                           std::to_string(o.branch.dim_out()));
    }
  }
  const double residual = completeness_residual(dim_in_, outcomes_);
  if (residual > kCompletenessTolerance) {
    throw CompletenessError(
        "QuantumInstrument: branches do not sum to a trace-preserving map (residual norm " +
            std::to_string(residual) + ")",
        residual);
  }
}

double QuantumInstrument::completeness_residual(int dim_in, const std::vector<Outcome>& outcomes) {
  ComplexMatrix sum = -ComplexMatrix::Identity(dim_in, dim_in);
  for (const auto& o : outcomes) sum += o.branch.effect();
  return infinity_norm(sum);
}

std::vector<std::string> QuantumInstrument::labels() const {
  std::vector<std::string> out;
  for (const auto& o : outcomes_) out.push_back(o.label);
  return out;
}

int QuantumInstrument::max_kraus() const {
  std::size_t best = 0;
  for (const auto& o : outcomes_) best = std::max(best, o.branch.kraus().size());
  return static_cast<int>(best);
}

CpMap instrument_channel(const QuantumInstrument& inst) {
  const int n = inst.outcome_count();
  std::vector<ComplexMatrix> kraus;
  for (int m = 0; m < n; ++m) {
    const ComplexMatrix flag = basis_vector(n, m);
    for (const auto& k : inst.branch(m).kraus()) kraus.push_back(kron(k, flag));
  }
  return CpMap(inst.dim_in(), inst.dim_out() * n, std::move(kraus));
}

CpMap output_channel(const QuantumInstrument& inst) {
  std::vector<ComplexMatrix> kraus;
  for (const auto& o : inst.outcomes()) {
    kraus.insert(kraus.end(), o.branch.kraus().begin(), o.branch.kraus().end());
  }
  return CpMap(inst.dim_in(), inst.dim_out(), std::move(kraus));
}

CpMap discard_outcome(int dim_out, int outcome_count) {
  std::vector<ComplexMatrix> kraus;
  const ComplexMatrix id = ComplexMatrix::Identity(dim_out, dim_out);
  for (int m = 0; m < outcome_count; ++m) {
    kraus.push_back(kron(id, basis_vector(outcome_count, m).adjoint()));
  }
  return CpMap(dim_out * outcome_count, dim_out, std::move(kraus));
}

Isometry::Isometry(ComplexMatrix matrix, std::array<int, 4> factor_dims, int input_dim)
    : matrix_(std::move(matrix)), factor_dims_(factor_dims), input_dim_(input_dim) {
  if (product(factor_dims_) != matrix_.rows() || matrix_.cols() != input_dim_) {
    throw DimensionError("Isometry: factor dimensions do not match matrix shape " +
                         shape_string(matrix_));
  }
  if (factor_dims_[kOutcome] != factor_dims_[kOutcomeCopy]) {
    throw DimensionError("Isometry: outcome register and its copy differ in dimension");
  }
  const ComplexMatrix gram = matrix_.adjoint() * matrix_;
  if ((gram - ComplexMatrix::Identity(input_dim_, input_dim_)).cwiseAbs().maxCoeff() >
      kIsometryTolerance) {
    throw ValidationError("Isometry: V^dag V is not the identity");
  }
}

ComplexMatrix Isometry::conjugate(const ComplexMatrix& rho) const {
  if (rho.rows() != input_dim_ || rho.cols() != input_dim_) {
    throw DimensionError("Isometry::conjugate: input has shape " + shape_string(rho));
  }
  return matrix_ * rho * matrix_.adjoint();
}

Isometry stinespring_dilate(const QuantumInstrument& inst) {
  const int dout = inst.dim_out();
  const int n = inst.outcome_count();
  int e = 0;
  for (const auto& o : inst.outcomes()) e += static_cast<int>(o.branch.kraus().size());
  const int stride = n * e * n;
  ComplexMatrix v = ComplexMatrix::Zero(dout * stride, inst.dim_in());
  int j = 0;
  for (int m = 0; m < n; ++m) {
    for (const auto& k : inst.branch(m).kraus()) {
      // row of |s'> |m> |j> |m> in S' (x) M (x) E (x) Mbar
      const int offset = m * e * n + j * n + m;
      for (int s = 0; s < dout; ++s) v.row(s * stride + offset) = k.row(s);
      ++j;
    }
  }
  return Isometry(std::move(v), {dout, n, e, n}, inst.dim_in());
}

}  // namespace qnd
