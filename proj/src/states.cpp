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

#include "qnd/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qnd {

Ket::Ket(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw DimensionError("Ket: empty amplitude vector");
  if (!all_finite(amplitudes_)) throw ValidationError("Ket: non-finite amplitude");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw ValidationError("Ket: norm " + std::to_string(norm) + " is not 1");
  }
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw DimensionError("DensityOperator: matrix must be square, got " + shape_string(matrix_));
  }
  if (!all_finite(matrix_)) throw ValidationError("DensityOperator: non-finite entry");
  if (hermiticity_residual(matrix_) > kHermitianTolerance) {
    throw ValidationError("DensityOperator: not Hermitian");
  }
  const double tr = real_trace(matrix_);
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw ValidationError("DensityOperator: trace " + std::to_string(tr) + " is not 1");
  }
  const double smallest = eigh(matrix_).values[0];
  if (smallest < -kPsdTolerance) {
    throw ValidationError("DensityOperator: negative eigenvalue " + std::to_string(smallest));
  }
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

Ket maximally_entangled(int d) {
  if (d < 2) throw DimensionError("maximally_entangled: d must be >= 2");
  ComplexVector v = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  return Ket(std::move(v));
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
  const ComplexMatrix root = sqrt_psd(rho.matrix());
  const RealVector spectrum = eigh(root * sigma.matrix() * root).values;
  double tr = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    if (spectrum[i] > kEigenClamp) tr += std::sqrt(spectrum[i]);
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

Observable::Observable(std::vector<Branch> branches, std::vector<std::string> labels)
    : branches_(std::move(branches)), labels_(std::move(labels)) {
  if (branches_.empty()) throw ValidationError("Observable: no branches");
  dim_ = static_cast<int>(branches_.front().projector.rows());
  if (dim_ < 1) throw DimensionError("Observable: empty projector");

  if (labels_.empty()) {
    for (int i = 0; i < size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != size()) {
    throw ValidationError("Observable: label count does not match branch count");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw ValidationError("Observable: labels are not unique");
  }

  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (int i = 0; i < size(); ++i) {
    const ComplexMatrix& p = branches_[i].projector;
    if (p.rows() != dim_ || p.cols() != dim_) {
      throw DimensionError("Observable: projector " + std::to_string(i) + " has shape " +
                           shape_string(p));
    }
    if (!all_finite(p) || !std::isfinite(branches_[i].eigenvalue)) {
      throw ValidationError("Observable: non-finite entry in branch " + std::to_string(i));
    }
    if (hermiticity_residual(p) > kProjectorTolerance) {
      throw ValidationError("Observable: projector " + std::to_string(i) + " is not Hermitian");
    }
    if ((p * p - p).cwiseAbs().maxCoeff() > kProjectorTolerance) {
      throw ValidationError("Observable: projector " + std::to_string(i) + " is not idempotent");
    }
    for (int j = 0; j < i; ++j) {
      if (branches_[j].eigenvalue == branches_[i].eigenvalue) {
        throw ValidationError("Observable: repeated eigenvalue " +
                              std::to_string(branches_[i].eigenvalue));
      }
      if ((branches_[j].projector * p).cwiseAbs().maxCoeff() > kProjectorTolerance) {
        throw ValidationError("Observable: projectors " + std::to_string(j) + " and " +
                              std::to_string(i) + " are not orthogonal");
      }
    }
    if (rank(i) < 1) throw ValidationError("Observable: zero projector in branch " + std::to_string(i));
    sum += p;
  }
  if ((sum - ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > kProjectorTolerance) {
    throw ValidationError("Observable: projectors do not sum to the identity");
  }
}

Observable Observable::from_vectors(std::vector<double> eigenvalues,
                                    std::vector<ComplexVector> vectors,
                                    std::vector<std::string> labels) {
  if (eigenvalues.size() != vectors.size()) {
    throw ValidationError("Observable: eigenvalue count does not match vector count");
  }
  std::vector<Branch> branches;
  branches.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Ket ket(vectors[i]);
    branches.push_back({eigenvalues[i], ket.projector()});
  }
  return Observable(std::move(branches), std::move(labels));
}

Observable Observable::from_hermitian(const ComplexMatrix& h, double merge_tolerance) {
  if (h.rows() != h.cols()) throw DimensionError("Observable: matrix not square");
  if (hermiticity_residual(h) > kProjectorTolerance) {
    throw ValidationError("Observable: matrix is not Hermitian");
  }
  const HermitianEigen e = eigh(h);
  std::vector<Branch> branches;
  Eigen::Index start = 0;
  while (start < e.values.size()) {
    Eigen::Index stop = start + 1;
    while (stop < e.values.size() && e.values[stop] - e.values[stop - 1] <= merge_tolerance) ++stop;
    const ComplexMatrix block = e.vectors.middleCols(start, stop - start);
    branches.push_back({e.values.segment(start, stop - start).mean(), block * block.adjoint()});
    start = stop;
  }
  return Observable(std::move(branches));
}

std::vector<double> Observable::eigenvalues() const {
  std::vector<double> out;
  out.reserve(branches_.size());
  for (const auto& b : branches_) out.push_back(b.eigenvalue);
  return out;
}

int Observable::rank(int i) const {
  return static_cast<int>(std::lround(real_trace(projector(i))));
}

ComplexVector Observable::eigenvector(int i) const {
  if (rank(i) != 1) {
    throw ValidationError("Observable: branch " + std::to_string(i) + " is degenerate");
  }
  const ComplexMatrix& p = projector(i);
  Eigen::Index col = 0;
  p.colwise().norm().maxCoeff(&col);
  ComplexVector v = p.col(col);
  return v / v.norm();
}

ComplexMatrix Observable::matrix() const {
  ComplexMatrix m = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& b : branches_) m += b.eigenvalue * b.projector;
  return m;
}

}  // namespace qnd
