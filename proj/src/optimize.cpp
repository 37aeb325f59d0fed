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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "qnd/noise_disturbance.hpp"
#include "qnd/rng.hpp"

namespace qnd {

namespace {

constexpr int kCoordinatesPerIteration = 64;
constexpr double kInitialStep = 0.5;
constexpr double kMinimumStep = 1e-4;

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Guess POVMs parameterized by an unconstrained (n*D) x D matrix G through the
// isometry A = G (G^dag G)^{-1/2}; effect i is A_i^dag A_i for the i-th D x D
// row block of A.
class NaimarkObjective {
 public:
  NaimarkObjective(std::vector<ComplexMatrix> outputs, int input_dim)
      : outputs_(std::move(outputs)),
        dim_(static_cast<int>(outputs_.front().rows())),
        n_(static_cast<int>(outputs_.size())),
        weight_(1.0 / input_dim) {}

  int dim() const { return dim_; }
  int outcomes() const { return n_; }

  ComplexMatrix isometry(const ComplexMatrix& g) const {
    return g * inverse_sqrt_psd(g.adjoint() * g);
  }

  std::vector<ComplexMatrix> effects(const ComplexMatrix& g) const {
    const ComplexMatrix a = isometry(g);
    std::vector<ComplexMatrix> out;
    for (int i = 0; i < n_; ++i) {
      const auto block = a.middleRows(static_cast<Eigen::Index>(i) * dim_, dim_);
      ComplexMatrix e = block.adjoint() * block;
      out.push_back(0.5 * (e + e.adjoint()));
    }
    return out;
  }

  // H(Z|Zhat) without table validation.
  double operator()(const ComplexMatrix& g) const {
    const ComplexMatrix a = isometry(g);
    double joint = 0.0;
    double guesses = 0.0;
    for (int i = 0; i < n_; ++i) {
      const auto block = a.middleRows(static_cast<Eigen::Index>(i) * dim_, dim_);
      double row = 0.0;
      for (int j = 0; j < n_; ++j) {
        const double p =
            std::max(0.0, weight_ * ((block * outputs_[j]).array() * block.conjugate().array())
                                        .sum()
                                        .real());
        joint += plogp(p);
        row += p;
      }
      guesses += plogp(row);
    }
    return std::max(0.0, joint - guesses);
  }

 private:
  std::vector<ComplexMatrix> outputs_;
  int dim_;
  int n_;
  double weight_;
};

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

// Derivative-free coordinate descent on the real and imaginary parts of G.
// Each iteration tries +-step on up to kCoordinatesPerIteration coordinates;
// an iteration gaining less than the tolerance halves the step, and descent
// stops once the step falls below kMinimumStep.
double refine(const NaimarkObjective& objective, ComplexMatrix& g, CounterRng& rng,
              const OptimizeOptions& options) {
  const auto coords = static_cast<std::size_t>(2 * g.size());
  std::vector<std::size_t> order(coords);
  std::iota(order.begin(), order.end(), 0);

  double best = objective(g);
  double step = kInitialStep;
  for (int it = 0; it < options.max_iterations && best > 0.0; ++it) {
    const double before = best;
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t count = std::min<std::size_t>(coords, kCoordinatesPerIteration);
    for (std::size_t c = 0; c < count; ++c) {
      const std::size_t coord = order[c];
      Complex& entry = g.data()[coord / 2];
      const Complex saved = entry;
      const Complex delta = (coord % 2 == 0) ? Complex(step, 0.0) : Complex(0.0, step);
      bool moved = false;
      for (double sign : {1.0, -1.0}) {
        entry = saved + sign * delta;
        const double value = objective(g);
        if (value < best) {
          best = value;
          moved = true;
          break;
        }
      }
      if (!moved) entry = saved;
    }
    if (before - best < options.improvement_tolerance) {
      step *= 0.5;
      if (step < kMinimumStep) break;
    }
  }
  return best;
}

}  // namespace

DisturbanceBracket optimize_disturbance(const QuantumInstrument& inst, const Observable& z,
                                        const OptimizeOptions& options) {
  if (options.restarts < 0) throw ValidationError("optimize_disturbance: negative restarts");
  if (options.restarts == 0 && !options.use_pgm && !options.use_petz) {
    throw ValidationError("optimize_disturbance: no candidate strategies enabled");
  }
  const double lower = quantum_lower_bound(inst, z);

  double upper = std::numeric_limits<double>::infinity();
  std::optional<GuessPovm> witness;
  std::string source;
  auto consider = [&](GuessPovm g, std::string name) {
    const double value = disturbance_given_guess(inst, z, g);
    if (value < upper) {
      upper = value;
      witness = std::move(g);
      source = std::move(name);
    }
  };

  if (options.use_pgm) consider(pgm_guess(inst, z), "pgm");
  if (options.use_petz) consider(correction_guess(petz_correction(inst), z), "petz");

  if (options.restarts > 0) {
    const NaimarkObjective objective(conditional_outputs(inst, z), inst.dim_in());
    const Eigen::Index rows = static_cast<Eigen::Index>(objective.outcomes()) * objective.dim();
    for (int r = 0; r < options.restarts; ++r) {
      CounterRng rng(options.seed, static_cast<std::uint64_t>(r) + 1);
      ComplexMatrix g = gaussian_matrix(rows, objective.dim(), rng);
      refine(objective, g, rng, options);
      const auto effects = objective.effects(g);
      std::vector<GuessPovm::Effect> labelled;
      for (int i = 0; i < z.size(); ++i) labelled.push_back({z.label(i), effects[i]});
      consider(GuessPovm(std::move(labelled)), "restart:" + std::to_string(r));
    }
  }

  return {lower, upper, std::move(*witness), options.restarts, source};
}

DisturbanceBracket optimize_disturbance(const QuantumInstrument& inst, const Observable& z,
                                        int restarts, std::uint64_t seed) {
  OptimizeOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return optimize_disturbance(inst, z, options);
}

}  // namespace qnd
