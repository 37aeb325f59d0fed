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

#ifndef QND_CHANNEL_HPP
#define QND_CHANNEL_HPP

#include <array>
#include <string>
#include <vector>

#include "qnd/linalg.hpp"

namespace qnd {

/// Completely positive, trace-nonincreasing map in Kraus form.
class CpMap {
 public:
  static constexpr double kCompletenessTolerance = 1e-9;

  CpMap(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus);

  static CpMap identity(int dim);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// sum_k K_k^dag K_k
  ComplexMatrix effect() const;
  /// Adjoint map A -> sum_k K_k^dag A K_k.
  ComplexMatrix dual(const ComplexMatrix& a) const;
  bool is_trace_preserving(double tol = kCompletenessTolerance) const;

  /// Choi matrix sum_ij |i><j| (x) Phi(|i><j|), input factor first.
  ComplexMatrix choi() const;

 private:
  int dim_in_;
  int dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// sum_k K_k rho K_k^dag
ComplexMatrix apply_cp_map(const CpMap& map, const ComplexMatrix& rho);

/// Kraus-level composition `after` o `before`.
CpMap compose(const CpMap& after, const CpMap& before);

/// Thrown when the branches of an instrument do not sum to a channel.
class CompletenessError : public ValidationError {
 public:
  CompletenessError(const std::string& what, double residual)
      : ValidationError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Outcome-labelled family of CP maps whose sum is trace preserving.
class QuantumInstrument {
 public:
  static constexpr double kCompletenessTolerance = 1e-9;

  struct Outcome {
    std::string label;
    CpMap branch;
  };

  QuantumInstrument(int dim_in, int dim_out, std::vector<Outcome> outcomes);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int outcome_count() const { return static_cast<int>(outcomes_.size()); }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const CpMap& branch(int m) const { return outcomes_.at(m).branch; }
  const std::string& label(int m) const { return outcomes_.at(m).label; }
  std::vector<std::string> labels() const;

  /// POVM element E_m = (M^m)^*(1).
  ComplexMatrix effect(int m) const { return branch(m).effect(); }
  /// Largest Kraus count across outcomes.
  int max_kraus() const;

  /// Spectral norm of sum_m E_m - 1.
  static double completeness_residual(int dim_in, const std::vector<Outcome>& outcomes);

 private:
  int dim_in_;
  int dim_out_;
  std::vector<Outcome> outcomes_;
};

/// The instrument as one channel S -> S' (x) M with orthonormal outcome flags:
/// rho -> sum_m M^m(rho) (x) |m><m|.
CpMap instrument_channel(const QuantumInstrument& inst);

/// Channel S -> S' that forgets the outcome (Tr_M o instrument_channel).
CpMap output_channel(const QuantumInstrument& inst);

/// Map S' (x) M -> S' tracing out the outcome register.
CpMap discard_outcome(int dim_out, int outcome_count);

/// Stinespring isometry H_S -> H_S' (x) H_M (x) H_E (x) H_Mbar.
class Isometry {
 public:
  static constexpr double kIsometryTolerance = 1e-10;

  enum Factor { kOutput = 0, kOutcome = 1, kEnvironment = 2, kOutcomeCopy = 3 };

  Isometry(ComplexMatrix matrix, std::array<int, 4> factor_dims, int input_dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::array<int, 4>& factor_dims() const { return factor_dims_; }
  int input_dim() const { return input_dim_; }

  /// V rho V^dag on S' M E Mbar.
  ComplexMatrix conjugate(const ComplexMatrix& rho) const;

 private:
  ComplexMatrix matrix_;
  std::array<int, 4> factor_dims_;
  int input_dim_;
};

/// V|psi> = sum_{m,k} (K_{m,k}|psi>) (x) |m> (x) |j(m,k)> (x) |m>, where j
/// enumerates all Kraus operators of the instrument in order.
Isometry stinespring_dilate(const QuantumInstrument& inst);

}  // namespace qnd

#endif  // QND_CHANNEL_HPP
