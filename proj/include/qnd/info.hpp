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

#ifndef QND_INFO_HPP
#define QND_INFO_HPP

#include <span>
#include <string>
#include <vector>

#include "qnd/linalg.hpp"
#include "qnd/states.hpp"

// Entropy functionals. Every logarithm is base 2.
namespace qnd {

inline constexpr double kProbabilityClamp = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-9;

/// Labelled joint distribution p(row, col).
class JointTable {
 public:
  JointTable(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
             RealMatrix probs);

  int rows() const { return static_cast<int>(probs_.rows()); }
  int cols() const { return static_cast<int>(probs_.cols()); }
  const RealMatrix& probs() const { return probs_; }
  double operator()(int r, int c) const { return probs_(r, c); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  RealVector row_marginal() const { return probs_.rowwise().sum(); }
  RealVector col_marginal() const { return probs_.colwise().sum().transpose(); }

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  RealMatrix probs_;
};

/// The conditioning variable of a conditional entropy.
enum class Axis { Rows, Cols };

double shannon_entropy(std::span<const double> p);
double shannon_entropy(const RealVector& p);

double binary_entropy(double p);

/// H(other | given) = H(joint) - H(given marginal).
double conditional_entropy(const JointTable& t, Axis given);

/// Error probability of the maximum a posteriori guess of the non-conditioned
/// variable from the conditioning one; ties resolve to the smallest index.
double map_error_probability(const JointTable& t, Axis given);

double von_neumann_entropy(const DensityOperator& rho);

/// -Tr[h log h] from the spectrum of a Hermitian PSD matrix; eigenvalues below
/// kEigenClamp count as zero.
double spectral_entropy(const ComplexMatrix& h);

/// H(A|B) = H(AB) - H(B) for a state on A (x) B.
double quantum_conditional_entropy(const DensityOperator& rho_ab, int dim_a, int dim_b);

struct FanoBounds {
  double p_e;
  /// h(p_e) + p_e log(|X| - 1): no guess with error p_e leaves more entropy.
  double fano_upper;
  /// 2 p_e: the conditional entropy must reach this for the Gallager/Hellman
  /// relation p_e <= N/2 to hold.
  double lower_ok_threshold;

  bool gallager_holds(double noise) const { return p_e <= noise / 2.0 + 1e-12; }
  bool fano_holds(double noise) const { return noise <= fano_upper + 1e-12; }
};

FanoBounds fano_bounds(double p_e, int alphabet_size);

struct EntropyVarianceCheck {
  double entropy;
  double variance;
  /// 0.5 log(2 pi e [Var/s^2 + 1/12])
  double bound;
  bool holds;
};

/// Entropy of a lattice-valued random variable against its variance bound.
/// Throws if some value is not of the form values[0] + spacing * n.
EntropyVarianceCheck entropy_variance_bound(std::span<const double> values,
                                            std::span<const double> probs, double spacing);

}  // namespace qnd

#endif  // QND_INFO_HPP
