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

#include <cmath>

#include "qnd/noise_disturbance.hpp"
#include "qnd/zoo.hpp"
#include "test_util.hpp"

namespace qnd {
namespace {

using testing::Mt;

// p(m,x) = (1/d) sum_k <psi^x| K_{mk}^dag K_{mk} |psi^x>
RealMatrix noise_table_oracle(const QuantumInstrument& inst, const Observable& x) {
  const int d = inst.dim_in();
  RealMatrix p = RealMatrix::Zero(inst.outcome_count(), x.size());
  for (int m = 0; m < inst.outcome_count(); ++m)
    for (int i = 0; i < x.size(); ++i) {
      const ComplexVector v = x.eigenvector(i);
      for (const auto& k : inst.branch(m).kraus()) p(m, i) += (k * v).squaredNorm() / d;
    }
  return p;
}

// Outputs sigma_z on S' (x) M built directly from Kraus operators.
std::vector<ComplexMatrix> outputs_oracle(const QuantumInstrument& inst, const Observable& z) {
  const int n = inst.outcome_count();
  const int dout = inst.dim_out();
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < z.size(); ++i) {
    const ComplexVector phi = z.eigenvector(i);
    ComplexMatrix s = ComplexMatrix::Zero(dout * n, dout * n);
    for (int m = 0; m < n; ++m) {
      ComplexMatrix flag = ComplexMatrix::Zero(n, n);
      flag(m, m) = 1.0;
      for (const auto& k : inst.branch(m).kraus()) {
        const ComplexVector kv = k * phi;
        s += testing::kron_oracle(kv * kv.adjoint(), flag);
      }
    }
    out.push_back(s);
  }
  return out;
}

// H(Z|S'M) = H(Z S'M) - H(S'M) of the classical-quantum state.
double lower_bound_oracle(const QuantumInstrument& inst, const Observable& z) {
  const std::vector<ComplexMatrix> s = outputs_oracle(inst, z);
  const int d = inst.dim_in();
  double joint = 0.0;
  ComplexMatrix marginal = ComplexMatrix::Zero(s[0].rows(), s[0].cols());
  for (const auto& sigma : s) {
    joint += testing::von_neumann_oracle(sigma / static_cast<double>(d)) ;
    marginal += sigma / static_cast<double>(d);
  }
  return joint - testing::von_neumann_oracle(marginal);
}

GuessPovm guess_from(const std::vector<ComplexMatrix>& effects, const Observable& z) {
  std::vector<GuessPovm::Effect> e;
  for (std::size_t i = 0; i < effects.size(); ++i) e.push_back({z.label(static_cast<int>(i)), effects[i]});
  return GuessPovm(std::move(e));
}

GuessPovm z_measurement_on_output(const QuantumInstrument& inst, const Observable& z) {
  std::vector<ComplexMatrix> effects;
  for (int i = 0; i < z.size(); ++i)
    effects.push_back(kron(z.projector(i), ComplexMatrix::Identity(inst.outcome_count(), inst.outcome_count())));
  return guess_from(effects, z);
}

double h2(double p) { return testing::binary_entropy_oracle(p); }

TEST(OverlapConstant, PauliPairAndEqualObservables) {
  EXPECT_NEAR(overlap_constant(pauli_x(), pauli_z()), 0.5, 1e-15);
  EXPECT_NEAR(overlap_constant(pauli_x(), pauli_x()), 1.0, 1e-15);
  const auto [x, z] = random_basis_pair(3, 40);
  EXPECT_NEAR(overlap_constant(x, x), 1.0, 1e-12);
}

TEST(OverlapConstant, BruteForceQutrit) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [x, z] = random_basis_pair(3, seed);
    double best = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) best = std::max(best, std::norm(x.eigenvector(i).dot(z.eigenvector(j))));
    EXPECT_NEAR(overlap_constant(x, z), best, 1e-12);
    EXPECT_GE(overlap_constant(x, z), 1.0 / 3.0 - 1e-12);
    EXPECT_LE(overlap_constant(x, z), 1.0 + 1e-12);
  }
}

TEST(OverlapConstant, DegenerateVariant) {
  EXPECT_NEAR(overlap_constant_degenerate(pauli_x(), pauli_z()), 0.5, 1e-12);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto [x, z] = random_basis_pair(3, seed);
    EXPECT_NEAR(overlap_constant_degenerate(x, z), overlap_constant(x, z), 1e-12);
  }
  Mt rng(41);
  const ComplexMatrix u = testing::random_unitary(3, rng);
  const ComplexMatrix p0 = u.col(0) * u.col(0).adjoint() + u.col(1) * u.col(1).adjoint();
  const ComplexMatrix p1 = u.col(2) * u.col(2).adjoint();
  const Observable xd({{1.0, p0}, {0.0, p1}});
  EXPECT_NEAR(overlap_constant_degenerate(xd, xd), 1.0, 1e-12);
  const auto [unused, z] = random_basis_pair(3, 42);
  double best = 0.0;
  for (const auto& px : {p0, p1})
    for (int j = 0; j < 3; ++j) {
      Eigen::JacobiSVD<ComplexMatrix> svd(px * z.projector(j));
      best = std::max(best, svd.singularValues()(0) * svd.singularValues()(0));
    }
  EXPECT_NEAR(overlap_constant_degenerate(xd, z), best, 1e-12);
  EXPECT_NEAR(tradeoff_constant(xd, z), best, 1e-12);
}

TEST(NoiseTable, CanonicalInstruments) {
  const JointTable luders_table = noise_table(luders(pauli_x()), pauli_x());
  EXPECT_NEAR(luders_table(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(luders_table(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(luders_table(1, 1), 0.5, 1e-15);
  const JointTable trivial_table = noise_table(trivial_instrument(3), random_basis_pair(3, 1).first);
  for (int x = 0; x < 3; ++x) EXPECT_NEAR(trivial_table(0, x), 1.0 / 3.0, 1e-12);
  const JointTable flip = noise_table(noisy_luders(pauli_x(), 0.1), pauli_x());
  EXPECT_NEAR(flip(0, 0), 0.45, 1e-15);
  EXPECT_NEAR(flip(0, 1), 0.05, 1e-15);
  EXPECT_NEAR(flip(1, 0), 0.05, 1e-15);
  EXPECT_NEAR(flip(1, 1), 0.45, 1e-15);
}

TEST(NoiseTable, MatchesKrausOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const QuantumInstrument inst = random_instrument(3, 2, 2, seed);
    const Observable x = random_basis_pair(3, seed + 100).first;
    const RealMatrix expected = noise_table_oracle(inst, x);
    EXPECT_LT((noise_table(inst, x).probs() - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Noise, CanonicalValues) {
  EXPECT_NEAR(noise(luders(pauli_x()), pauli_x()), 0.0, 1e-12);
  for (int d = 2; d <= 4; ++d) {
    EXPECT_NEAR(noise(trivial_instrument(d), random_basis_pair(d, 3).first), std::log2(d), 1e-12);
  }
  EXPECT_NEAR(noise(noisy_luders(pauli_x(), 0.1), pauli_x()), 0.46900, 1e-4);
  EXPECT_NEAR(noise(noisy_luders(pauli_x(), 0.1), pauli_x()), h2(0.1), 1e-12);
}

TEST(DegenerateNoise, Values) {
  const auto [x, z] = random_basis_pair(3, 5);
  const QuantumInstrument inst = random_instrument(3, 3, 1, 6);
  EXPECT_NEAR(degenerate_noise(inst, x), noise(inst, x), 1e-12);

  ComplexMatrix p0 = ComplexMatrix::Zero(3, 3), p1 = ComplexMatrix::Zero(3, 3);
  p0(0, 0) = p0(1, 1) = 1.0;
  p1(2, 2) = 1.0;
  const Observable xd({{1.0, p0}, {-1.0, p1}});
  const double prior = testing::entropy_oracle({2.0 / 3.0, 1.0 / 3.0});
  EXPECT_NEAR(degenerate_noise(trivial_instrument(3), xd), prior, 1e-12);
  EXPECT_NEAR(prior, 0.9183, 1e-4);
  EXPECT_NEAR(degenerate_noise(luders(xd), xd), 0.0, 1e-12);
  EXPECT_THROW(noise(trivial_instrument(3), xd), ValidationError);
}

TEST(DisturbanceGivenGuess, CanonicalValues) {
  const Observable z = pauli_z();
  const QuantumInstrument id = trivial_instrument(2);
  EXPECT_NEAR(disturbance_given_guess(id, z, z_measurement_on_output(id, z)), 0.0, 1e-12);

  const QuantumInstrument inst = random_instrument(2, 2, 1, 7);
  const ComplexMatrix half = ComplexMatrix::Identity(4, 4) / 2.0;
  EXPECT_NEAR(disturbance_given_guess(inst, z, guess_from({half, half}, z)), 1.0, 1e-12);

  Mt rng(43);
  const QuantumInstrument lx = luders(pauli_x());
  for (int t = 0; t < 10; ++t) {
    const GuessPovm g = guess_from(testing::random_povm(2, 4, rng), z);
    EXPECT_NEAR(disturbance_given_guess(lx, z, g), 1.0, 1e-12);
  }
}

TEST(DisturbanceTable, MatchesTraceOracle) {
  Mt rng(44);
  const QuantumInstrument inst = random_instrument(3, 2, 1, 8);
  const Observable z = random_basis_pair(3, 9).second;
  const std::vector<ComplexMatrix> effects = testing::random_povm(3, 6, rng);
  const GuessPovm g = guess_from(effects, z);
  const std::vector<ComplexMatrix> s = outputs_oracle(inst, z);
  const JointTable t = disturbance_table(inst, z, g);
  for (int gz = 0; gz < 3; ++gz)
    for (int tz = 0; tz < 3; ++tz) EXPECT_NEAR(t(gz, tz), (effects[gz] * s[tz]).trace().real() / 3.0, 1e-12);
}

TEST(QuantumLowerBound, CanonicalValues) {
  EXPECT_NEAR(quantum_lower_bound(trivial_instrument(2), pauli_z()), 0.0, 1e-10);
  EXPECT_NEAR(quantum_lower_bound(trivial_instrument(3), random_basis_pair(3, 1).second), 0.0, 1e-10);
  EXPECT_NEAR(quantum_lower_bound(luders(pauli_x()), pauli_z()), 1.0, 1e-10);
}

TEST(QuantumLowerBound, MatchesEntropyOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuantumInstrument inst = random_instrument(3, 3, 2, seed);
    const Observable z = random_basis_pair(3, seed).second;
    EXPECT_NEAR(quantum_lower_bound(inst, z), lower_bound_oracle(inst, z), 1e-10);
  }
}

TEST(QuantumLowerBound, BelowEveryGuess) {
  Mt rng(45);
  const Observable z = pauli_z();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QuantumInstrument inst = random_instrument(2, 2, 1, seed);
    const double lower = quantum_lower_bound(inst, z);
    for (int t = 0; t < 50; ++t) {
      const GuessPovm g = guess_from(testing::random_povm(2, 4, rng), z);
      EXPECT_LE(lower, disturbance_given_guess(inst, z, g) + 1e-9);
    }
  }
}

TEST(PrettyGoodMeasurement, ValidAndAboveLowerBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuantumInstrument inst = random_instrument(3, 2, 2, seed);
    const Observable z = random_basis_pair(3, seed).second;
    const GuessPovm g = pgm_guess(inst, z);
    ComplexMatrix sum = ComplexMatrix::Zero(g.dim(), g.dim());
    for (const auto& e : g.effects()) {
      sum += e.effect;
      EXPECT_GE(testing::spectrum_oracle(e.effect).front(), -1e-9);
    }
    EXPECT_LT(testing::max_abs_diff(sum, ComplexMatrix::Identity(g.dim(), g.dim())), 1e-9);
    EXPECT_GE(pgm_upper_bound(inst, z), quantum_lower_bound(inst, z) - 1e-9);
  }
}

TEST(PrettyGoodMeasurement, RankDeficientEnsemble) {
  // Lueders outputs live on a 2-dimensional subspace of S' (x) M.
  const GuessPovm g = pgm_guess(luders(pauli_x()), pauli_z());
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& e : g.effects()) sum += e.effect;
  EXPECT_LT(testing::max_abs_diff(sum, ComplexMatrix::Identity(4, 4)), 1e-9);
}

TEST(GuessPovm, Validation) {
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  EXPECT_THROW(GuessPovm({{"a", half}}), ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = 1.0;
  ComplexMatrix rest = ComplexMatrix::Zero(2, 2);
  rest(0, 0) = -0.5;
  EXPECT_THROW(GuessPovm({{"a", neg}, {"b", rest}}), ValidationError);
}

TEST(PetzCorrection, UnitaryIsInverted) {
  Mt rng(46);
  const ComplexMatrix u = testing::random_unitary(3, rng);
  const CpMap r = petz_correction(unitary_instrument(u));
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix rho = testing::random_state(3, rng);
    EXPECT_LT(testing::max_abs_diff(apply_cp_map(r, u * rho * u.adjoint()), rho), 1e-10);
  }
}

TEST(PetzCorrection, IdentityInstrument) {
  Mt rng(47);
  const CpMap r = petz_correction(trivial_instrument(2));
  const ComplexMatrix rho = testing::random_state(2, rng);
  EXPECT_LT(testing::max_abs_diff(apply_cp_map(r, rho), rho), 1e-10);
}

TEST(PetzCorrection, FixedPointAndTracePreserving) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuantumInstrument inst = random_instrument(3, 2, 1, seed);
    const CpMap r = petz_correction(inst);
    EXPECT_TRUE(r.is_trace_preserving());
    const ComplexMatrix mixed = ComplexMatrix::Identity(3, 3) / 3.0;
    const ComplexMatrix back = apply_cp_map(r, apply_cp_map(instrument_channel(inst), mixed));
    EXPECT_LT(testing::max_abs_diff(back, mixed), 1e-9);
  }
}

TEST(OptimizeDisturbance, CanonicalBrackets) {
  const DisturbanceBracket id = optimize_disturbance(trivial_instrument(2), pauli_z(), 4, 0);
  EXPECT_NEAR(id.lower, 0.0, 1e-9);
  EXPECT_NEAR(id.upper, 0.0, 1e-9);

  const DisturbanceBracket lx = optimize_disturbance(luders(pauli_x()), pauli_z(), 32, 0);
  EXPECT_NEAR(lx.lower, 1.0, 1e-9);
  EXPECT_NEAR(lx.upper, 1.0, 1e-6);

  Mt rng(48);
  const ComplexMatrix u = testing::random_unitary(3, rng);
  const Observable z = random_basis_pair(3, 3).second;
  OptimizeOptions petz_only;
  petz_only.restarts = 0;
  petz_only.use_pgm = false;
  const DisturbanceBracket un = optimize_disturbance(unitary_instrument(u), z, petz_only);
  EXPECT_NEAR(un.lower, 0.0, 1e-9);
  EXPECT_NEAR(un.upper, 0.0, 1e-9);
  EXPECT_EQ(un.witness_source, "petz");
}

TEST(OptimizeDisturbance, DeterministicAndOrdered) {
  const QuantumInstrument inst = random_instrument(2, 2, 1, 11);
  const Observable z = pauli_z();
  const DisturbanceBracket a = optimize_disturbance(inst, z, 8, 5);
  const DisturbanceBracket b = optimize_disturbance(inst, z, 8, 5);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(a.witness_source, b.witness_source);
  EXPECT_LE(a.lower, a.upper + 1e-9);
  EXPECT_GE(a.lower, -1e-12);
  EXPECT_LE(a.upper, 1.0 + 1e-9);
  EXPECT_NEAR(disturbance_given_guess(inst, z, a.witness), a.upper, 1e-12);
  EXPECT_LE(a.upper, pgm_upper_bound(inst, z) + 1e-12);
  EXPECT_THROW(optimize_disturbance(inst, z, -1, 0), ValidationError);
}

TEST(TradeoffCheck, SandwichAndIdentity) {
  const QuantumInstrument lx = luders(pauli_x());
  const TradeoffReport r = tradeoff_check(lx, pauli_x(), pauli_z(), optimize_disturbance(lx, pauli_z(), 8, 0));
  EXPECT_NEAR(r.noise, 0.0, 1e-9);
  EXPECT_NEAR(r.disturbance_lower, 1.0, 1e-9);
  EXPECT_NEAR(r.neg_log_c, 1.0, 1e-12);
  EXPECT_NEAR(r.certified.margin, 0.0, 1e-9);
  EXPECT_TRUE(r.certified.passed());
  EXPECT_TRUE(r.implied.passed());

  for (int d = 2; d <= 3; ++d) {
    const auto [x, z] = random_basis_pair(d, 12);
    const QuantumInstrument id = trivial_instrument(d);
    const TradeoffReport t = tradeoff_check(id, x, z, optimize_disturbance(id, z, 2, 0));
    EXPECT_NEAR(t.noise, std::log2(d), 1e-12);
    EXPECT_TRUE(t.certified.passed());
  }
}

TEST(JointNoiseCheck, CanonicalInstruments) {
  const JointNoiseReport r = joint_noise_check(luders(pauli_x()), pauli_x(), pauli_z());
  EXPECT_NEAR(r.noise_x, 0.0, 1e-12);
  EXPECT_NEAR(r.noise_z, 1.0, 1e-12);
  EXPECT_NEAR(r.check.margin, 0.0, 1e-12);
  const JointNoiseReport t = joint_noise_check(trivial_instrument(2), pauli_x(), pauli_z());
  EXPECT_NEAR(t.noise_x + t.noise_z, 2.0, 1e-12);
  EXPECT_TRUE(t.check.passed());
}

TEST(MemoryCheck, CanonicalInstruments) {
  const MemoryReport id = memory_eur_check(trivial_instrument(2), pauli_x(), pauli_z());
  EXPECT_NEAR(id.h_z_given_output, 0.0, 1e-10);
  EXPECT_NEAR(id.h_x_given_env, 1.0, 1e-10);
  EXPECT_TRUE(id.uncertainty.passed());
  EXPECT_TRUE(id.data_processing.passed());
  const MemoryReport lx = memory_eur_check(luders(pauli_x()), pauli_x(), pauli_z());
  EXPECT_NEAR(lx.h_z_given_output, 1.0, 1e-10);
  EXPECT_GE(lx.h_x_given_env, -1e-10);
  EXPECT_TRUE(lx.uncertainty.passed());
}

TEST(MemoryCheck, EnvironmentEntropyMatchesDilationOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QuantumInstrument inst = random_instrument(2, 2, 2, seed);
    const auto [x, z] = random_basis_pair(2, seed);
    const Isometry v = stinespring_dilate(inst);
    const auto& f = v.factor_dims();
    const int keep = f[0] * f[1];
    const int env = f[2] * f[3];
    double joint = 0.0;
    ComplexMatrix marginal = ComplexMatrix::Zero(env, env);
    for (int i = 0; i < 2; ++i) {
      const ComplexMatrix rho = testing::trace_first_oracle(v.conjugate(x.projector(i)), keep, env) / 2.0;
      joint += testing::von_neumann_oracle(rho);
      marginal += rho;
    }
    const MemoryReport r = memory_eur_check(inst, x, z);
    EXPECT_NEAR(r.h_x_given_env, joint - testing::von_neumann_oracle(marginal), 1e-9);
  }
}

TEST(FidelityIdentity, CanonicalInstruments) {
  const FidelityReport id = fidelity_error_identity(trivial_instrument(2), pauli_z(), CpMap::identity(2));
  EXPECT_NEAR(id.success_probability, 1.0, 1e-12);
  EXPECT_NEAR(id.average_fidelity, 1.0, 1e-12);
  const FidelityReport lx = fidelity_error_identity(luders(pauli_x()), pauli_z(), discard_outcome(2, 2));
  EXPECT_NEAR(lx.success_probability, 0.5, 1e-12);
  EXPECT_NEAR(lx.average_fidelity, 0.5, 1e-12);
}

TEST(FidelityIdentity, PetzCorrectionOnRandomInstruments) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuantumInstrument inst = random_instrument(3, 3, 1, seed);
    const Observable z = random_basis_pair(3, seed).second;
    const FidelityReport r = fidelity_error_identity(inst, z, petz_correction(inst));
    EXPECT_NEAR(r.success_probability, r.average_fidelity, 1e-9);
    EXPECT_TRUE(r.identity.passed());
  }
}

TEST(Ricochet, CanonicalAndRandom) {
  const RicochetReport l = ricochet_equivalence(luders(pauli_x()), pauli_x());
  EXPECT_LT(l.max_deviation, 1e-12);
  const JointTable t = entangled_noise_table(trivial_instrument(2), pauli_x());
  EXPECT_NEAR(t(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(t(0, 1), 0.5, 1e-12);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuantumInstrument inst = random_instrument(3, 3, 2, seed);
    const RicochetReport r = ricochet_equivalence(inst, random_basis_pair(3, seed).first);
    EXPECT_LT(r.max_deviation, 1e-12);
  }
}

TEST(Check, MarginConvention) {
  EXPECT_EQ(Check::inequality("a", -5e-10).status, CheckStatus::Pass);
  EXPECT_EQ(Check::inequality("a", -2e-9).status, CheckStatus::Fail);
  EXPECT_EQ(Check::skipped("a").status, CheckStatus::Skipped);
  EXPECT_TRUE(Check::skipped("a").passed());
  EXPECT_EQ(to_string(CheckStatus::Skipped), "skipped");
}

}  // namespace
}  // namespace qnd
