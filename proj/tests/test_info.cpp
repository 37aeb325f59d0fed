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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qnd/info.hpp"
#include "test_util.hpp"

namespace qnd {
namespace {

using testing::Mt;

JointTable table_of(const RealMatrix& p) {
  std::vector<std::string> rows, cols;
  for (int i = 0; i < p.rows(); ++i) rows.push_back("r" + std::to_string(i));
  for (int j = 0; j < p.cols(); ++j) cols.push_back("c" + std::to_string(j));
  return JointTable(rows, cols, p);
}

RealMatrix random_table(int r, int c, Mt& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix p(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) p(i, j) = u(rng);
  return p / p.sum();
}

TEST(ShannonEntropy, Basics) {
  const std::vector<double> point{1.0, 0.0};
  EXPECT_EQ(shannon_entropy(point), 0.0);
  for (int d = 2; d <= 6; ++d) {
    const std::vector<double> uniform(d, 1.0 / d);
    EXPECT_NEAR(shannon_entropy(uniform), std::log2(d), 1e-14);
  }
  const std::vector<double> skew{0.9, 0.1};
  EXPECT_NEAR(shannon_entropy(skew), 0.46900, 1e-4);
  EXPECT_NEAR(shannon_entropy(skew), testing::entropy_oracle(skew), 1e-14);
  EXPECT_NEAR(binary_entropy(0.1), testing::binary_entropy_oracle(0.1), 1e-14);
}

TEST(JointTable, ClampsJitterAndRejectsNegatives) {
  RealMatrix p(2, 2);
  p << 0.5, -5e-13, 0.25, 0.25 + 5e-13;
  const JointTable t = table_of(p);
  EXPECT_EQ(t(0, 1), 0.0);
  p(0, 1) = -1e-6;
  EXPECT_THROW(table_of(p), ValidationError);
  RealMatrix q = RealMatrix::Constant(2, 2, 0.3);
  EXPECT_THROW(table_of(q), ValidationError);
}

TEST(ConditionalEntropy, DiagonalAndProduct) {
  for (int d = 2; d <= 4; ++d) {
    const RealMatrix diag = RealMatrix::Identity(d, d) / d;
    EXPECT_NEAR(conditional_entropy(table_of(diag), Axis::Rows), 0.0, 1e-14);
    EXPECT_NEAR(conditional_entropy(table_of(diag), Axis::Cols), 0.0, 1e-14);
    const RealMatrix prod = RealMatrix::Constant(d, d, 1.0 / (d * d));
    EXPECT_NEAR(conditional_entropy(table_of(prod), Axis::Rows), std::log2(d), 1e-13);
  }
}

TEST(ConditionalEntropy, ChainRuleOracle) {
  Mt rng(30);
  for (int t = 0; t < 20; ++t) {
    const RealMatrix p = random_table(3, 4, rng);
    double expected = 0.0;
    for (int m = 0; m < 3; ++m) {
      const double pm = p.row(m).sum();
      std::vector<double> cond;
      for (int x = 0; x < 4; ++x) cond.push_back(p(m, x) / pm);
      expected += pm * testing::entropy_oracle(cond);
    }
    EXPECT_NEAR(conditional_entropy(table_of(p), Axis::Rows), expected, 1e-12);
  }
}

TEST(ConditionalEntropy, BoundsAndMergingColumns) {
  Mt rng(31);
  for (int t = 0; t < 50; ++t) {
    const RealMatrix p = random_table(4, 3, rng);
    const double h = conditional_entropy(table_of(p), Axis::Cols);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(4.0) + 1e-12);
    // Merging the conditioning columns 1 and 2 coarsens the side information.
    RealMatrix merged(4, 2);
    merged.col(0) = p.col(0);
    merged.col(1) = p.col(1) + p.col(2);
    EXPECT_GE(conditional_entropy(table_of(merged), Axis::Cols), h - 1e-12);
  }
}

TEST(ConditionalEntropy, PermutationInvariance) {
  Mt rng(32);
  for (int t = 0; t < 20; ++t) {
    const RealMatrix p = random_table(3, 4, rng);
    std::vector<int> rp{0, 1, 2}, cp{0, 1, 2, 3};
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    RealMatrix q(3, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) q(i, j) = p(rp[i], cp[j]);
    EXPECT_NEAR(conditional_entropy(table_of(p), Axis::Rows), conditional_entropy(table_of(q), Axis::Rows), 1e-12);
    EXPECT_NEAR(conditional_entropy(table_of(p), Axis::Cols), conditional_entropy(table_of(q), Axis::Cols), 1e-12);
  }
}

TEST(MapErrorProbability, Basics) {
  const RealMatrix diag = RealMatrix::Identity(3, 3) / 3.0;
  EXPECT_NEAR(map_error_probability(table_of(diag), Axis::Rows), 0.0, 1e-15);
  const RealMatrix uniform = RealMatrix::Constant(2, 2, 0.25);
  EXPECT_NEAR(map_error_probability(table_of(uniform), Axis::Rows), 0.5, 1e-15);
  RealMatrix bsc(2, 2);
  bsc << 0.45, 0.05, 0.05, 0.45;
  EXPECT_NEAR(map_error_probability(table_of(bsc), Axis::Rows), 0.1, 1e-15);
}

TEST(VonNeumannEntropy, Basics) {
  Mt rng(33);
  const ComplexVector u = testing::random_unit_vector(3, rng);
  EXPECT_NEAR(von_neumann_entropy(DensityOperator(projector(u))), 0.0, 1e-10);
  for (int d = 2; d <= 5; ++d) {
    EXPECT_NEAR(von_neumann_entropy(DensityOperator::maximally_mixed(d)), std::log2(d), 1e-12);
  }
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> p(4);
  for (double& v : p) v = uni(rng);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) diag(i, i) = p[i] /= s;
  EXPECT_NEAR(von_neumann_entropy(DensityOperator(diag)), testing::entropy_oracle(p), 1e-12);
}

TEST(VonNeumannEntropy, MatchesSpectrumOracle) {
  Mt rng(34);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix rho = testing::random_state(4, rng);
    EXPECT_NEAR(von_neumann_entropy(DensityOperator(rho)), testing::von_neumann_oracle(rho), 1e-10);
  }
}

TEST(QuantumConditionalEntropy, ProductAndEntangled) {
  Mt rng(35);
  const ComplexMatrix a = testing::random_state(2, rng);
  const ComplexMatrix b = testing::random_state(3, rng);
  EXPECT_NEAR(quantum_conditional_entropy(DensityOperator(kron(a, b)), 2, 3), testing::von_neumann_oracle(a), 1e-10);
  for (int d = 2; d <= 4; ++d) {
    const DensityOperator phi(maximally_entangled(d).projector());
    EXPECT_NEAR(quantum_conditional_entropy(phi, d, d), -std::log2(d), 1e-10);
  }
}

TEST(QuantumConditionalEntropy, ClassicalQuantumStates) {
  Mt rng(36);
  // Orthogonal conditional states: X is determined by B.
  const ComplexMatrix u = testing::random_unitary(4, rng);
  const std::vector<double> px{0.2, 0.3, 0.5};
  ComplexMatrix cq = ComplexMatrix::Zero(12, 12);
  for (int x = 0; x < 3; ++x) {
    const ComplexMatrix sigma = projector(ComplexVector(u.col(x)));
    cq += px[x] * kron(projector(basis_vector(3, x)), sigma);
  }
  EXPECT_NEAR(quantum_conditional_entropy(DensityOperator(cq), 3, 4), 0.0, 1e-10);

  // Commuting conditional states: equals the classical conditional entropy.
  const RealMatrix p = [&] {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    RealMatrix q(3, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) q(i, j) = uni(rng);
    return RealMatrix(q / q.sum());
  }();
  ComplexMatrix cq2 = ComplexMatrix::Zero(12, 12);
  for (int x = 0; x < 3; ++x) {
    ComplexMatrix sigma = ComplexMatrix::Zero(4, 4);
    for (int b = 0; b < 4; ++b) sigma += p(x, b) * projector(ComplexVector(u.col(b)));
    cq2 += kron(projector(basis_vector(3, x)), sigma);
  }
  const double classical = conditional_entropy(table_of(p), Axis::Cols);
  EXPECT_NEAR(quantum_conditional_entropy(DensityOperator(cq2), 3, 4), classical, 1e-9);
}

TEST(FanoBounds, Values) {
  EXPECT_NEAR(fano_bounds(0.0, 2).fano_upper, 0.0, 1e-15);
  EXPECT_NEAR(fano_bounds(0.5, 2).fano_upper, 1.0, 1e-15);
  const FanoBounds b = fano_bounds(0.1, 3);
  EXPECT_NEAR(b.fano_upper, 0.56900, 1e-4);
  EXPECT_NEAR(b.fano_upper, testing::binary_entropy_oracle(0.1) + 0.1, 1e-14);
  EXPECT_NEAR(b.lower_ok_threshold, 0.2, 1e-15);
  EXPECT_THROW(fano_bounds(-0.1, 2), ValidationError);
  EXPECT_THROW(fano_bounds(0.1, 1), ValidationError);
}

TEST(EntropyVarianceBound, Values) {
  const std::vector<double> one{3.0};
  const std::vector<double> pone{1.0};
  const EntropyVarianceCheck point = entropy_variance_bound(one, pone, 1.0);
  EXPECT_EQ(point.entropy, 0.0);
  EXPECT_NEAR(point.bound, 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e / 12.0), 1e-14);
  EXPECT_NEAR(point.bound, 0.254, 1e-3);
  EXPECT_TRUE(point.holds);

  const std::vector<double> bits{0.0, 1.0};
  const std::vector<double> half{0.5, 0.5};
  const EntropyVarianceCheck coin = entropy_variance_bound(bits, half, 1.0);
  EXPECT_NEAR(coin.entropy, 1.0, 1e-15);
  EXPECT_NEAR(coin.bound, 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * (0.25 + 1.0 / 12.0)), 1e-14);
  EXPECT_NEAR(coin.bound, 1.2546, 1e-3);
  EXPECT_TRUE(coin.holds);

  const std::vector<double> off{0.0, 0.5};
  EXPECT_THROW(entropy_variance_bound(off, half, 1.0), ValidationError);
}

TEST(EntropyVarianceBound, GeometricDistributions) {
  std::vector<double> values(11);
  std::iota(values.begin(), values.end(), 0.0);
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    std::vector<double> p;
    for (int k = 0; k <= 10; ++k) p.push_back(std::pow(q, k));
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= s;
    const EntropyVarianceCheck c = entropy_variance_bound(values, p, 1.0);
    EXPECT_TRUE(c.holds) << "q=" << q;
    EXPECT_LE(c.entropy, c.bound);
  }
}

}  // namespace
}  // namespace qnd
