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

#ifndef QND_MSD_HPP
#define QND_MSD_HPP

#include <map>
#include <optional>
#include <string>

#include "qnd/channel.hpp"
#include "qnd/info.hpp"
#include "qnd/noise_disturbance.hpp"
#include "qnd/states.hpp"

// Mean-square-deviation noise and disturbance and their tradeoff.
namespace qnd {

enum class EstimatorKind { MapGuess, ConditionalMean, Custom };

/// Estimate f(m) of an eigenvalue for every outcome label.
struct EstimatorMap {
  EstimatorKind kind = EstimatorKind::Custom;
  std::map<std::string, double> values;

  double at(const std::string& label) const;
};

/// f(m) = eigenvalue of argmax_x p(m,x), smallest index on ties. Outcomes that
/// never occur get the first eigenvalue.
EstimatorMap map_guess(const JointTable& t, std::span<const double> eigenvalues);

/// f(m) = sum_x x p(x|m); zero-probability outcomes get 0.
EstimatorMap conditional_mean(const JointTable& t, std::span<const double> eigenvalues);

/// V_N = sum_{m,x} p(m,x) [f(m) - xi_x]^2 over a table with outcome rows.
double v_noise(const JointTable& t, const EstimatorMap& f, std::span<const double> eigenvalues);

/// V_D = sum p(zhat,z)[zeta_zhat - zeta_z]^2 with zhat the Z outcome measured
/// after `correction` (S' (x) M -> S).
double v_disturbance(const QuantumInstrument& inst, const Observable& z, const CpMap& correction);

/// V_D with the outcome discarded and S' measured directly.
double v_disturbance(const QuantumInstrument& inst, const Observable& z);

/// (1/d)[sum_m f(m)^2 Tr E_m - 2 sum_m f(m) Tr(E_m X) + Tr X^2]
double ozawa_epsilon_sq(const QuantumInstrument& inst, const Observable& x,
                        const EstimatorMap& f);

/// (1/d)[Tr Phi^*(Z^2) - 2 Tr(Z Phi^*(Z)) + Tr Z^2], Phi = Tr_M o instrument.
double ozawa_eta_sq(const QuantumInstrument& inst, const Observable& z);

/// Largest s > 0 with every eigenvalue difference an integer multiple of s.
std::optional<double> eigenvalue_spacing(const Observable& obs);
std::optional<double> eigenvalue_spacing(std::span<const double> eigenvalues);

struct MsdReport {
  double v_n;
  double v_d;
  std::optional<double> s_x;
  std::optional<double> s_z;
  double lhs;  // (V_N + s_x^2/12)(V_D + s_z^2/12)
  double rhs;  // (s_x s_z / (2 pi e c))^2
  Check check;
};

/// Skipped when a spectrum has no lattice or the apparatus changes dimension.
MsdReport msd_tradeoff_check(const QuantumInstrument& inst, const Observable& x,
                             const Observable& z, const EstimatorMap& f);

}  // namespace qnd

#endif  // QND_MSD_HPP
