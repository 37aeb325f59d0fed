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

#ifndef QND_LINALG_HPP
#define QND_LINALG_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Eigenvalues below this are treated as exact zeros before logs, square roots
// and pseudo-inverses.
inline constexpr double kEigenClamp = 1e-12;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced matrix on the factors listed in `keep` (any order; the result
/// keeps the original factor ordering). `dims` lists the tensor factors of
/// the square matrix `m`, most significant first.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep);

ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<int> dims,
                            std::initializer_list<int> keep);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns
};

/// Spectral decomposition of the Hermitian part of `h`.
HermitianEigen eigh(const ComplexMatrix& h);

/// f applied to the spectrum of a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& h, F&& f) {
  const HermitianEigen e = eigh(h);
  RealVector mapped(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) mapped[i] = f(e.values[i]);
  return e.vectors * mapped.asDiagonal() * e.vectors.adjoint();
}

/// Square root of a PSD matrix; eigenvalues below kEigenClamp become 0.
ComplexMatrix sqrt_psd(const ComplexMatrix& h);

/// Moore-Penrose inverse square root on the support (eigenvalues > kEigenClamp).
ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& h);

/// Orthogonal projector onto the eigenvectors with eigenvalue > kEigenClamp.
ComplexMatrix support_projector(const ComplexMatrix& h);

/// Largest singular value.
double infinity_norm(const ComplexMatrix& m);

/// max_ij |m_ij - m_ji^*|
double hermiticity_residual(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

ComplexVector basis_vector(int dim, int index);

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

inline ComplexMatrix projector(const ComplexVector& v) { return outer(v, v); }

inline double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

/// Re Tr[a b] without forming the product.
double trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

int product(std::span<const int> dims);

std::string shape_string(const ComplexMatrix& m);

}  // namespace qnd

#endif  // QND_LINALG_HPP
