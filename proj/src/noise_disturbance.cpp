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

#include "qnd/noise_disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qnd {

GuessPovm::GuessPovm(std::vector<Effect> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("GuessPovm: no effects");
  dim_ = static_cast<int>(effects_.front().effect.rows());
  std::set<std::string> seen;
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : effects_) {
    if (!seen.insert(e.label).second) {
      throw ValidationError("GuessPovm: duplicate label '" + e.label + "'");
    }
    if (e.effect.rows() != dim_ || e.effect.cols() != dim_) {
      throw DimensionError("GuessPovm: effect '" + e.label + "' has shape " +
                           shape_string(e.effect));
    }
    if (hermiticity_residual(e.effect) > kTolerance) {
      throw ValidationError("GuessPovm: effect '" + e.label + "' is not Hermitian");
    }
    if (eigh(e.effect).values[0] < -kTolerance) {
      throw ValidationError("GuessPovm: effect '" + e.label + "' is not positive");
    }
    sum += e.effect;
  }
  if ((sum - ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > kTolerance) {
    throw ValidationError("GuessPovm: effects do not sum to the identity");
  }
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

Check Check::inequality(std::string name, double margin, double tol) {
  return {std::move(name), margin >= -tol ? CheckStatus::Pass : CheckStatus::Fail, margin};
}

Check Check::skipped(std::string name) {
  return {std::move(name), CheckStatus::Skipped, 0.0};
}

namespace {

void require_same_dim(const Observable& a, const Observable& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(where) + ": observables act on dimensions " +
                         std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

void require_nondegenerate(const Observable& o, const char* where) {
  if (!o.is_nondegenerate()) {
    throw ValidationError(std::string(where) +
                          ": observable is degenerate (use the degenerate variant)");
  }
}

void require_input_dim(const QuantumInstrument& inst, const Observable& o, const char* where) {
  if (inst.dim_in() != o.dim()) {
    throw DimensionError(std::string(where) + ": instrument input dimension " +
                         std::to_string(inst.dim_in()) + " differs from observable dimension " +
                         std::to_string(o.dim()));
  }
}

// sum_z (1/d)|z><z| (x) blocks[z]
ComplexMatrix classical_quantum_state(const std::vector<ComplexMatrix>& blocks, double weight) {
  const auto n = static_cast<Eigen::Index>(blocks.size());
  const Eigen::Index b = blocks.front().rows();
  ComplexMatrix out = ComplexMatrix::Zero(n * b, n * b);
  for (Eigen::Index i = 0; i < n; ++i) out.block(i * b, i * b, b, b) = weight * blocks[i];
  return out;
}

}  // namespace

double overlap_constant(const Observable& x, const Observable& z) {
  require_same_dim(x, z, "overlap_constant");
  require_nondegenerate(x, "overlap_constant");
  require_nondegenerate(z, "overlap_constant");
  double c = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const ComplexVector psi = x.eigenvector(i);
    for (int j = 0; j < z.size(); ++j) c = std::max(c, std::norm(psi.dot(z.eigenvector(j))));
  }
  return c;
}

double overlap_constant_degenerate(const Observable& x, const Observable& z) {
  require_same_dim(x, z, "overlap_constant_degenerate");
  double c = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    for (int j = 0; j < z.size(); ++j) {
      const double n = infinity_norm(x.projector(i) * z.projector(j));
      c = std::max(c, n * n);
    }
  }
  return c;
}

double tradeoff_constant(const Observable& x, const Observable& z) {
  if (x.is_nondegenerate() && z.is_nondegenerate()) return overlap_constant(x, z);
  return overlap_constant_degenerate(x, z);
}

JointTable degenerate_noise_table(const QuantumInstrument& inst, const Observable& x) {
  require_input_dim(inst, x, "noise_table");
  const double d = inst.dim_in();
  RealMatrix p(inst.outcome_count(), x.size());
  for (int m = 0; m < inst.outcome_count(); ++m) {
    const ComplexMatrix e = inst.effect(m);
    for (int i = 0; i < x.size(); ++i) p(m, i) = trace_of_product(e, x.projector(i)) / d;
  }
  return JointTable(inst.labels(), x.labels(), std::move(p));
}

JointTable noise_table(const QuantumInstrument& inst, const Observable& x) {
  require_nondegenerate(x, "noise_table");
  return degenerate_noise_table(inst, x);
}

double noise(const QuantumInstrument& inst, const Observable& x) {
  return conditional_entropy(noise_table(inst, x), Axis::Rows);
}

double degenerate_noise(const QuantumInstrument& inst, const Observable& x) {
  return conditional_entropy(degenerate_noise_table(inst, x), Axis::Rows);
}

std::vector<ComplexMatrix> conditional_outputs(const QuantumInstrument& inst, const Observable& z) {
  require_input_dim(inst, z, "conditional_outputs");
  require_nondegenerate(z, "conditional_outputs");
  const CpMap channel = instrument_channel(inst);
  std::vector<ComplexMatrix> out;
  out.reserve(z.size());
  for (int i = 0; i < z.size(); ++i) out.push_back(apply_cp_map(channel, z.projector(i)));
  return out;
}

namespace {

JointTable table_from_outputs(const std::vector<ComplexMatrix>& outputs, const Observable& z,
                              const GuessPovm& g) {
  const double d = z.dim();
  if (g.size() != z.size()) {
    throw DimensionError("disturbance table: guess has " + std::to_string(g.size()) +
                         " outcomes, observable has " + std::to_string(z.size()));
  }
  if (g.dim() != outputs.front().rows()) {
    throw DimensionError("disturbance table: guess acts on dimension " + std::to_string(g.dim()) +
                         ", apparatus output has " + std::to_string(outputs.front().rows()));
  }
  std::vector<std::string> guess_labels;
  for (int i = 0; i < g.size(); ++i) {
    if (g.label(i) != z.label(i)) {
      throw ValidationError("disturbance table: guess label '" + g.label(i) +
                            "' does not match observable label '" + z.label(i) + "'");
    }
    guess_labels.push_back(g.label(i));
  }
  RealMatrix p(g.size(), z.size());
  for (int guess = 0; guess < g.size(); ++guess) {
    for (int truth = 0; truth < z.size(); ++truth) {
      p(guess, truth) = trace_of_product(g.effect(guess), outputs[truth]) / d;
    }
  }
  return JointTable(std::move(guess_labels), z.labels(), std::move(p));
}

}  // namespace

JointTable disturbance_table(const QuantumInstrument& inst, const Observable& z,
                             const GuessPovm& g) {
  return table_from_outputs(conditional_outputs(inst, z), z, g);
}

double disturbance_given_guess(const QuantumInstrument& inst, const Observable& z,
                               const GuessPovm& g) {
  return conditional_entropy(disturbance_table(inst, z, g), Axis::Rows);
}

double quantum_lower_bound(const QuantumInstrument& inst, const Observable& z) {
  const auto outputs = conditional_outputs(inst, z);
  const int d = z.dim();
  const DensityOperator rho(classical_quantum_state(outputs, 1.0 / d));
  const double h = quantum_conditional_entropy(rho, d, static_cast<int>(outputs.front().rows()));
  return std::max(0.0, h);
}

GuessPovm pretty_good_measurement(std::span<const ComplexMatrix> states,
                                  std::span<const double> priors,
                                  std::vector<std::string> labels) {
  if (states.empty() || states.size() != priors.size() || states.size() != labels.size()) {
    throw DimensionError("pretty_good_measurement: ensemble sizes disagree");
  }
  const Eigen::Index dim = states.front().rows();
  ComplexMatrix average = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) average += priors[i] * states[i];
  const ComplexMatrix root = inverse_sqrt_psd(average);
  const ComplexMatrix kernel =
      (ComplexMatrix::Identity(dim, dim) - support_projector(average)) /
      static_cast<double>(states.size());

  std::vector<GuessPovm::Effect> effects;
  for (std::size_t i = 0; i < states.size(); ++i) {
    ComplexMatrix e = root * (priors[i] * states[i]) * root + kernel;
    effects.push_back({labels[i], 0.5 * (e + e.adjoint())});
  }
  return GuessPovm(std::move(effects));
}

GuessPovm pgm_guess(const QuantumInstrument& inst, const Observable& z) {
  const auto outputs = conditional_outputs(inst, z);
  const std::vector<double> priors(outputs.size(), 1.0 / z.dim());
  return pretty_good_measurement(outputs, priors, z.labels());
}

double pgm_upper_bound(const QuantumInstrument& inst, const Observable& z) {
  return disturbance_given_guess(inst, z, pgm_guess(inst, z));
}

CpMap petz_correction(const QuantumInstrument& inst) {
  const CpMap channel = instrument_channel(inst);
  const int d = inst.dim_in();
  const int out_dim = channel.dim_out();
  const ComplexMatrix image =
      apply_cp_map(channel, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  const ComplexMatrix root = inverse_sqrt_psd(image);

  // R(s) = (1/d) Phi^*(W s W), W = Phi(I/d)^{-1/2}
  std::vector<ComplexMatrix> kraus;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (const auto& k : channel.kraus()) kraus.push_back(scale * k.adjoint() * root);

  // On the kernel of Phi(I/d): trace and prepare I/d.
  const HermitianEigen e = eigh(image);
  for (Eigen::Index j = 0; j < e.values.size(); ++j) {
    if (e.values[j] > kEigenClamp) continue;
    const ComplexVector kernel_vec = e.vectors.col(j);
    for (int i = 0; i < d; ++i) kraus.push_back(scale * outer(basis_vector(d, i), kernel_vec));
  }
  return CpMap(out_dim, d, std::move(kraus));
}

GuessPovm correction_guess(const CpMap& correction, const Observable& z) {
  require_nondegenerate(z, "correction_guess");
  if (correction.dim_out() != z.dim()) {
    throw DimensionError("correction_guess: correction output dimension " +
                         std::to_string(correction.dim_out()) + " differs from observable");
  }
  std::vector<GuessPovm::Effect> effects;
  for (int i = 0; i < z.size(); ++i) {
    const ComplexMatrix e = correction.dual(z.projector(i));
    effects.push_back({z.label(i), 0.5 * (e + e.adjoint())});
  }
  return GuessPovm(std::move(effects));
}

TradeoffReport tradeoff_check(const QuantumInstrument& inst, const Observable& x,
                              const Observable& z, const DisturbanceBracket& bracket) {
  const double n = degenerate_noise(inst, x);
  const double bound = -std::log2(tradeoff_constant(x, z));
  return {n,
          bracket.lower,
          bracket.upper,
          bound,
          Check::inequality("noise_disturbance_certified", n + bracket.lower - bound),
          Check::inequality("noise_disturbance_upper", n + bracket.upper - bound)};
}

JointNoiseReport joint_noise_check(const QuantumInstrument& inst, const Observable& x,
                                   const Observable& z) {
  const double nx = degenerate_noise(inst, x);
  const double nz = degenerate_noise(inst, z);
  const double bound = -std::log2(tradeoff_constant(x, z));
  return {nx, nz, bound, Check::inequality("joint_noise", nx + nz - bound)};
}

MemoryReport memory_eur_check(const QuantumInstrument& inst, const Observable& x,
                              const Observable& z) {
  require_input_dim(inst, x, "memory_eur_check");
  const Isometry v = stinespring_dilate(inst);
  const auto& f = v.factor_dims();
  const std::array<int, 4> dims = f;
  const std::array<int, 2> env{Isometry::kEnvironment, Isometry::kOutcomeCopy};
  const int env_dim = f[Isometry::kEnvironment] * f[Isometry::kOutcomeCopy];
  const double d = inst.dim_in();

  // sum_x p(x) |x><x| (x) Tr_{S'M}[V (X_x/d_x) V^dag], p(x) = d_x/d
  std::vector<ComplexMatrix> blocks;
  for (int i = 0; i < x.size(); ++i) {
    blocks.push_back(partial_trace(v.conjugate(x.projector(i)), dims, env));
  }
  const DensityOperator rho_xe(classical_quantum_state(blocks, 1.0 / d));
  const double h_x_env = quantum_conditional_entropy(rho_xe, x.size(), env_dim);

  const double h_z_out = quantum_lower_bound(inst, z);
  const double nx = degenerate_noise(inst, x);
  const double bound = -std::log2(tradeoff_constant(x, z));
  return {h_z_out,
          h_x_env,
          nx,
          bound,
          Check::inequality("memory_uncertainty", h_z_out + h_x_env - bound),
          Check::inequality("memory_data_processing", nx - h_x_env)};
}

FidelityReport fidelity_error_identity(const QuantumInstrument& inst, const Observable& z,
                                       const CpMap& correction) {
  require_nondegenerate(z, "fidelity_error_identity");
  const CpMap channel = instrument_channel(inst);
  const CpMap recovered = compose(correction, channel);
  if (recovered.dim_out() != z.dim()) {
    throw DimensionError("fidelity_error_identity: correction does not return to the input space");
  }
  const double d = z.dim();
  double success = 0.0;
  double fid = 0.0;
  for (int i = 0; i < z.size(); ++i) {
    const ComplexMatrix out = apply_cp_map(recovered, z.projector(i));
    success += trace_of_product(z.projector(i), out) / d;
    fid += fidelity(DensityOperator(out), DensityOperator(z.projector(i))) / d;
  }
  return {success, fid, Check::inequality("fidelity_identity", -std::abs(success - fid))};
}

JointTable entangled_noise_table(const QuantumInstrument& inst, const Observable& x) {
  require_input_dim(inst, x, "entangled_noise_table");
  const int d = inst.dim_in();
  const ComplexMatrix phi = maximally_entangled(d).projector();
  const ComplexMatrix id_r = ComplexMatrix::Identity(d, d);
  const ComplexMatrix id_out = ComplexMatrix::Identity(inst.dim_out(), inst.dim_out());

  RealMatrix p(inst.outcome_count(), x.size());
  for (int m = 0; m < inst.outcome_count(); ++m) {
    // (id_R (x) M^m)(|Phi+><Phi+|) on R (x) S'
    ComplexMatrix omega = ComplexMatrix::Zero(d * inst.dim_out(), d * inst.dim_out());
    for (const auto& k : inst.branch(m).kraus()) {
      const ComplexMatrix lifted = kron(id_r, k);
      omega += lifted * phi * lifted.adjoint();
    }
    for (int i = 0; i < x.size(); ++i) {
      const ComplexMatrix reference_effect = kron(x.projector(i).transpose(), id_out);
      p(m, i) = trace_of_product(reference_effect, omega);
    }
  }
  return JointTable(inst.labels(), x.labels(), std::move(p));
}

RicochetReport ricochet_equivalence(const QuantumInstrument& inst, const Observable& x) {
  const JointTable direct = degenerate_noise_table(inst, x);
  const JointTable entangled = entangled_noise_table(inst, x);
  const double dev = (direct.probs() - entangled.probs()).cwiseAbs().maxCoeff();
  return {dev, Check::inequality("ricochet", -dev, 1e-12)};
}

}  // namespace qnd
