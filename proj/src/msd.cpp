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

#include "qnd/msd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qnd {

namespace {

constexpr double kLatticeTolerance = 1e-9;
constexpr long kMaxDenominator = 10000;

void require_eigenvalue_count(const JointTable& t, std::span<const double> eigenvalues) {
  if (static_cast<int>(eigenvalues.size()) != t.cols()) {
    throw DimensionError("estimator: " + std::to_string(eigenvalues.size()) +
                         " eigenvalues for a table with " + std::to_string(t.cols()) +
                         " columns");
  }
}

// First continued-fraction convergent p/q of r within tol, q <= max_den.
std::optional<std::pair<long, long>> rationalize(double r, double tol, long max_den) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = r;
  for (int i = 0; i < 64; ++i) {
    const double a_real = std::floor(rest);
    if (std::abs(a_real) > 1e12) break;
    const auto a = static_cast<long>(a_real);
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    if (std::abs(r - static_cast<double>(p2) / static_cast<double>(q2)) <= tol) {
      return std::make_pair(p2, q2);
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = rest - a_real;
    if (frac < 1e-15) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

double EstimatorMap::at(const std::string& label) const {
  const auto it = values.find(label);
  if (it == values.end()) throw ValidationError("estimator has no value for outcome '" + label + "'");
  return it->second;
}

EstimatorMap map_guess(const JointTable& t, std::span<const double> eigenvalues) {
  require_eigenvalue_count(t, eigenvalues);
  EstimatorMap f{EstimatorKind::MapGuess, {}};
  for (int m = 0; m < t.rows(); ++m) {
    int best = 0;
    for (int x = 1; x < t.cols(); ++x) {
      if (t(m, x) > t(m, best)) best = x;
    }
    f.values[t.row_labels()[m]] = eigenvalues[best];
  }
  return f;
}

EstimatorMap conditional_mean(const JointTable& t, std::span<const double> eigenvalues) {
  require_eigenvalue_count(t, eigenvalues);
  EstimatorMap f{EstimatorKind::ConditionalMean, {}};
  for (int m = 0; m < t.rows(); ++m) {
    double mass = 0.0;
    double first = 0.0;
    for (int x = 0; x < t.cols(); ++x) {
      mass += t(m, x);
      first += t(m, x) * eigenvalues[x];
    }
    f.values[t.row_labels()[m]] = mass > 0.0 ? first / mass : 0.0;
  }
  return f;
}

double v_noise(const JointTable& t, const EstimatorMap& f, std::span<const double> eigenvalues) {
  require_eigenvalue_count(t, eigenvalues);
  double v = 0.0;
  for (int m = 0; m < t.rows(); ++m) {
    const double estimate = f.at(t.row_labels()[m]);
    for (int x = 0; x < t.cols(); ++x) {
      const double dev = estimate - eigenvalues[x];
      v += t(m, x) * dev * dev;
    }
  }
  return v;
}

double v_disturbance(const QuantumInstrument& inst, const Observable& z, const CpMap& correction) {
  const JointTable t = disturbance_table(inst, z, correction_guess(correction, z));
  double v = 0.0;
  for (int guess = 0; guess < t.rows(); ++guess) {
    for (int truth = 0; truth < t.cols(); ++truth) {
      const double dev = z.eigenvalue(guess) - z.eigenvalue(truth);
      v += t(guess, truth) * dev * dev;
    }
  }
  return v;
}

double v_disturbance(const QuantumInstrument& inst, const Observable& z) {
  if (inst.dim_out() != inst.dim_in()) {
    throw DimensionError("v_disturbance: the output space differs from the input space");
  }
  return v_disturbance(inst, z, discard_outcome(inst.dim_out(), inst.outcome_count()));
}

double ozawa_epsilon_sq(const QuantumInstrument& inst, const Observable& x,
                        const EstimatorMap& f) {
  if (inst.dim_in() != x.dim()) throw DimensionError("ozawa_epsilon_sq: dimension mismatch");
  const ComplexMatrix xm = x.matrix();
  double acc = real_trace(xm * xm);
  for (int m = 0; m < inst.outcome_count(); ++m) {
    const double fm = f.at(inst.label(m));
    const ComplexMatrix e = inst.effect(m);
    acc += fm * fm * real_trace(e) - 2.0 * fm * trace_of_product(e, xm);
  }
  return acc / inst.dim_in();
}

double ozawa_eta_sq(const QuantumInstrument& inst, const Observable& z) {
  if (inst.dim_in() != z.dim() || inst.dim_out() != z.dim()) {
    throw DimensionError("ozawa_eta_sq: dimension mismatch");
  }
  const CpMap phi = output_channel(inst);
  const ComplexMatrix zm = z.matrix();
  const ComplexMatrix z2 = zm * zm;
  const double value =
      real_trace(phi.dual(z2)) - 2.0 * trace_of_product(zm, phi.dual(zm)) + real_trace(z2);
  return value / inst.dim_in();
}

std::optional<double> eigenvalue_spacing(std::span<const double> eigenvalues) {
  if (eigenvalues.size() < 2) return std::nullopt;
  const double lowest = *std::min_element(eigenvalues.begin(), eigenvalues.end());
  std::vector<double> gaps;
  for (double v : eigenvalues) {
    if (v - lowest > kLatticeTolerance) gaps.push_back(v - lowest);
  }
  if (gaps.empty()) return std::nullopt;
  const double base = *std::min_element(gaps.begin(), gaps.end());

  // gap_i / base = p_i / q_i; the lattice unit is base * gcd(n_i) / L with
  // L = lcm(q_i) and n_i = p_i L / q_i.
  std::vector<std::pair<long, long>> ratios;
  long lcm = 1;
  for (double g : gaps) {
    const auto r = rationalize(g / base, kLatticeTolerance, kMaxDenominator);
    if (!r) return std::nullopt;
    ratios.push_back(*r);
    lcm = std::lcm(lcm, r->second);
    if (lcm > kMaxDenominator) return std::nullopt;
  }
  long common = 0;
  for (const auto& [p, q] : ratios) common = std::gcd(common, p * (lcm / q));
  const double spacing = base * static_cast<double>(common) / static_cast<double>(lcm);

  for (double g : gaps) {
    const double n = std::round(g / spacing);
    if (std::abs(g - n * spacing) > kLatticeTolerance * std::max(1.0, std::abs(g))) {
      return std::nullopt;
    }
  }
  return spacing;
}

std::optional<double> eigenvalue_spacing(const Observable& obs) {
  const auto values = obs.eigenvalues();
  return eigenvalue_spacing(std::span<const double>(values));
}

MsdReport msd_tradeoff_check(const QuantumInstrument& inst, const Observable& x,
                             const Observable& z, const EstimatorMap& f) {
  const auto xs = x.eigenvalues();
  MsdReport report{};
  report.v_n = v_noise(degenerate_noise_table(inst, x), f, xs);
  report.s_x = eigenvalue_spacing(x);
  report.s_z = eigenvalue_spacing(z);
  const bool same_space = inst.dim_out() == inst.dim_in();
  report.v_d = same_space ? v_disturbance(inst, z) : 0.0;
  if (!report.s_x || !report.s_z || !same_space) {
    report.check = Check::skipped("msd_tradeoff");
    return report;
  }
  const double sx = *report.s_x;
  const double sz = *report.s_z;
  const double c = tradeoff_constant(x, z);
  report.lhs = (report.v_n + sx * sx / 12.0) * (report.v_d + sz * sz / 12.0);
  const double root = sx * sz / (2.0 * std::numbers::pi * std::numbers::e * c);
  report.rhs = root * root;
  report.check = Check::inequality("msd_tradeoff", report.lhs - report.rhs);
  return report;
}

}  // namespace qnd
