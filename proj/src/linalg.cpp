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

#include "qnd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qnd {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

int product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

namespace {

// Flat offsets contributed by every multi-index over the selected factors.
std::vector<Eigen::Index> factor_offsets(std::span<const int> dims,
                                         const std::vector<bool>& selected) {
  const int n = static_cast<int>(dims.size());
  std::vector<Eigen::Index> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * dims[i + 1];

  std::vector<Eigen::Index> offsets{0};
  for (int f = 0; f < n; ++f) {
    if (!selected[f]) continue;
    std::vector<Eigen::Index> next;
    next.reserve(offsets.size() * dims[f]);
    for (Eigen::Index base : offsets) {
      for (int v = 0; v < dims[f]; ++v) next.push_back(base + v * strides[f]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep) {
  if (m.rows() != m.cols()) {
    throw DimensionError("partial_trace: matrix is not square " + shape_string(m));
  }
  for (int d : dims) {
    if (d < 1) throw DimensionError("partial_trace: factor dimensions must be >= 1");
  }
  if (product(dims) != m.rows()) {
    throw DimensionError("partial_trace: factor dimensions multiply to " +
                         std::to_string(product(dims)) + " but matrix is " + shape_string(m));
  }
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size())) {
      throw DimensionError("partial_trace: factor index out of range");
    }
    kept[k] = true;
  }
  std::vector<bool> traced(kept.size());
  std::transform(kept.begin(), kept.end(), traced.begin(), [](bool b) { return !b; });

  const auto keep_off = factor_offsets(dims, kept);
  const auto trace_off = factor_offsets(dims, traced);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (Eigen::Index t : trace_off) acc += m(keep_off[a] + t, keep_off[b] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<int> dims,
                            std::initializer_list<int> keep) {
  return partial_trace(m, std::span<const int>(dims.begin(), dims.size()),
                       std::span<const int>(keep.begin(), keep.size()));
}

HermitianEigen eigh(const ComplexMatrix& h) {
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix sqrt_psd(const ComplexMatrix& h) {
  return hermitian_function(h, [](double v) { return v > kEigenClamp ? std::sqrt(v) : 0.0; });
}

ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& h) {
  return hermitian_function(h,
                            [](double v) { return v > kEigenClamp ? 1.0 / std::sqrt(v) : 0.0; });
}

ComplexMatrix support_projector(const ComplexMatrix& h) {
  return hermitian_function(h, [](double v) { return v > kEigenClamp ? 1.0 : 0.0; });
}

double infinity_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()[0];
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexVector basis_vector(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v[index] = 1.0;
  return v;
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) { return a * b.adjoint(); }

double trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr[ab] = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum().real();
}

std::string shape_string(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace qnd
