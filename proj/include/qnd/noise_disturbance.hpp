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

#ifndef QND_NOISE_DISTURBANCE_HPP
#define QND_NOISE_DISTURBANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qnd/channel.hpp"
#include "qnd/info.hpp"
#include "qnd/states.hpp"

namespace qnd {

inline constexpr double kCheckTolerance = 1e-9;

/// POVM on the apparatus output S' (x) M whose outcomes are guesses of Z.
class GuessPovm {
 public:
  static constexpr double kTolerance = 1e-9;

  struct Effect {
    std::string label;
    ComplexMatrix effect;
  };

  explicit GuessPovm(std::vector<Effect> effects);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(effects_.size()); }
  const std::vector<Effect>& effects() const { return effects_; }
  const ComplexMatrix& effect(int i) const { return effects_.at(i).effect; }
  const std::string& label(int i) const { return effects_.at(i).label; }

 private:
  int dim_ = 0;
  std::vector<Effect> effects_;
};

/// Certified lower bound H(Z|S'M) and heuristic upper bound on the
/// information-theoretic disturbance, with the POVM that attains the upper.
struct DisturbanceBracket {
  double lower;
  double upper;
  GuessPovm witness;
  int restarts_used;
  std::string witness_source;  // "pgm", "petz" or "restart:<i>"
};

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus s);

/// One verified inequality: `margin` is lhs - rhs (or -|difference| for an
/// identity) and the check passes when margin >= -tolerance.
struct Check {
  std::string name;
  CheckStatus status;
  double margin;

  static Check inequality(std::string name, double margin, double tol = kCheckTolerance);
  static Check skipped(std::string name);
  bool passed() const { return status != CheckStatus::Fail; }
  bool operator==(const Check&) const = default;
};

/// max_{x,z} |<psi^x|phi^z>|^2 for nondegenerate observables.
double overlap_constant(const Observable& x, const Observable& z);

/// max_{x,z} ||X_x Z_z||_inf^2 over spectral projectors.
double overlap_constant_degenerate(const Observable& x, const Observable& z);

/// Constant of the tradeoff bound: c when both observables are nondegenerate,
/// c' otherwise.
double tradeoff_constant(const Observable& x, const Observable& z);

/// p(m,x) = (1/d) Tr[M^m(X_x)]; rows are outcomes, columns eigenvalues of X.
/// Requires a nondegenerate X.
JointTable noise_table(const QuantumInstrument& inst, const Observable& x);

/// Same table for any X: the branch with degeneracy d_x is fed X_x/d_x with
/// prior d_x/d.
JointTable degenerate_noise_table(const QuantumInstrument& inst, const Observable& x);

/// N(M,X) = H(X|M).
double noise(const QuantumInstrument& inst, const Observable& x);

double degenerate_noise(const QuantumInstrument& inst, const Observable& x);

/// Channel outputs sigma_z = M(|phi^z><phi^z|) on S' (x) M.
std::vector<ComplexMatrix> conditional_outputs(const QuantumInstrument& inst, const Observable& z);

/// p(zhat, z) = (1/d) Tr[Pi^zhat M(|phi^z><phi^z|)]; rows are guesses.
JointTable disturbance_table(const QuantumInstrument& inst, const Observable& z,
                             const GuessPovm& g);

/// H(Z|Zhat) for the guess POVM g.
double disturbance_given_guess(const QuantumInstrument& inst, const Observable& z,
                               const GuessPovm& g);

/// H(Z|S'M) of sum_z (1/d)|z><z| (x) M(|phi^z><phi^z|).
double quantum_lower_bound(const QuantumInstrument& inst, const Observable& z);

/// Pretty good measurement S^{-1/2} p_z sigma_z S^{-1/2}; the kernel of S is
/// shared equally among the outcomes.
GuessPovm pretty_good_measurement(std::span<const ComplexMatrix> states,
                                  std::span<const double> priors,
                                  std::vector<std::string> labels);

/// Pretty good measurement for the ensemble {(1/d), M(|phi^z><phi^z|)}.
GuessPovm pgm_guess(const QuantumInstrument& inst, const Observable& z);

/// H(Z|Zhat) of the pretty good measurement.
double pgm_upper_bound(const QuantumInstrument& inst, const Observable& z);

/// Transpose-channel recovery of instrument_channel relative to I/d, mapping
/// S' (x) M back to S. Outside the support of M(I/d) the map prepares I/d, so
/// the result is trace preserving everywhere.
CpMap petz_correction(const QuantumInstrument& inst);

/// Guess POVM of "apply `correction`, then measure Z": Pi^z = E^*(|phi^z><phi^z|).
GuessPovm correction_guess(const CpMap& correction, const Observable& z);

struct OptimizeOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
  bool use_pgm = true;
  bool use_petz = true;
  int max_iterations = 500;
  double improvement_tolerance = 1e-8;
};

/// Bracket on D(M,Z): lower = H(Z|S'M), upper = the best H(Z|Zhat) among the
/// pretty good measurement, the Petz-then-measure POVM and `restarts` random
/// POVMs refined by derivative-free local descent. Deterministic given seed.
DisturbanceBracket optimize_disturbance(const QuantumInstrument& inst, const Observable& z,
                                        const OptimizeOptions& options);

DisturbanceBracket optimize_disturbance(const QuantumInstrument& inst, const Observable& z,
                                        int restarts, std::uint64_t seed);

struct TradeoffReport {
  double noise;
  double disturbance_lower;
  double disturbance_upper;
  double neg_log_c;
  Check certified;  // N + H(Z|S'M) >= -log c
  Check implied;    // N + upper >= -log c
};

TradeoffReport tradeoff_check(const QuantumInstrument& inst, const Observable& x,
                              const Observable& z, const DisturbanceBracket& bracket);

struct JointNoiseReport {
  double noise_x;
  double noise_z;
  double neg_log_c;
  Check check;
};

JointNoiseReport joint_noise_check(const QuantumInstrument& inst, const Observable& x,
                                   const Observable& z);

struct MemoryReport {
  double h_z_given_output;  // H(Z|S'M)
  double h_x_given_env;     // H(X|E Mbar)
  double noise_x;           // H(X|M)
  double neg_log_c;
  Check uncertainty;       // H(Z|S'M) + H(X|E Mbar) >= -log c
  Check data_processing;   // H(X|E Mbar) <= H(X|M)
};

MemoryReport memory_eur_check(const QuantumInstrument& inst, const Observable& x,
                              const Observable& z);

struct FidelityReport {
  double success_probability;  // 1 - p_e with Zhat measured after correction
  double average_fidelity;
  Check identity;
};

FidelityReport fidelity_error_identity(const QuantumInstrument& inst, const Observable& z,
                                       const CpMap& correction);

struct RicochetReport {
  double max_deviation;
  Check identity;
};

/// Joint table obtained by preparing |Phi+>_{RS}, measuring X^T on R and the
/// instrument on S.
JointTable entangled_noise_table(const QuantumInstrument& inst, const Observable& x);

RicochetReport ricochet_equivalence(const QuantumInstrument& inst, const Observable& x);

}  // namespace qnd

#endif  // QND_NOISE_DISTURBANCE_HPP
