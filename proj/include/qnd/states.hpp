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

#ifndef QND_STATES_HPP
#define QND_STATES_HPP

#include <string>
#include <vector>

#include "qnd/linalg.hpp"

namespace qnd {

/// Unit vector in C^d.
class Ket {
 public:
  static constexpr double kNormTolerance = 1e-10;

  explicit Ket(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix projector() const { return qnd::projector(amplitudes_); }

 private:
  ComplexVector amplitudes_;
};

/// Validated density operator: Hermitian, PSD and unit trace.
class DensityOperator {
 public:
  static constexpr double kHermitianTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kPsdTolerance = 1e-9;

  explicit DensityOperator(ComplexMatrix matrix);
  static DensityOperator from_ket(const Ket& ket) { return DensityOperator(ket.projector()); }
  static DensityOperator maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// |Phi+> = d^{-1/2} sum_i |i>|i>, first factor is the reference.
Ket maximally_entangled(int d);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// Spectral decomposition of a Hermitian observable. Each branch carries a
/// distinct eigenvalue and its spectral projector; labels default to the
/// branch index.
class Observable {
 public:
  static constexpr double kProjectorTolerance = 1e-9;

  struct Branch {
    double eigenvalue;
    ComplexMatrix projector;
  };

  Observable(std::vector<Branch> branches, std::vector<std::string> labels = {});

  /// Nondegenerate observable from orthonormal eigenvectors.
  static Observable from_vectors(std::vector<double> eigenvalues,
                                 std::vector<ComplexVector> vectors,
                                 std::vector<std::string> labels = {});

  /// Eigenvalues of `h` closer than `merge_tolerance` share a branch.
  static Observable from_hermitian(const ComplexMatrix& h, double merge_tolerance = 1e-9);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(branches_.size()); }
  const std::vector<Branch>& branches() const { return branches_; }
  double eigenvalue(int i) const { return branches_.at(i).eigenvalue; }
  const ComplexMatrix& projector(int i) const { return branches_.at(i).projector; }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<double> eigenvalues() const;

  int rank(int i) const;
  bool is_nondegenerate() const { return size() == dim_; }

  /// Unit eigenvector of a rank-1 branch (phase arbitrary).
  ComplexVector eigenvector(int i) const;

  /// sum_i eigenvalue_i P_i
  ComplexMatrix matrix() const;

 private:
  int dim_ = 0;
  std::vector<Branch> branches_;
  std::vector<std::string> labels_;
};

}  // namespace qnd

#endif  // QND_STATES_HPP
