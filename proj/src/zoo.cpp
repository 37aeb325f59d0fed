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

#include "qnd/zoo.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qnd {

namespace {

ComplexMatrix gaussian(int rows, int cols, CounterRng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

Observable basis_observable(const ComplexMatrix& u) {
  std::vector<double> values;
  std::vector<ComplexVector> vectors;
  for (int i = 0; i < u.cols(); ++i) {
    values.push_back(i);
    vectors.emplace_back(u.col(i));
  }
  return Observable::from_vectors(std::move(values), std::move(vectors));
}

}  // namespace

QuantumInstrument luders(const Observable& obs) {
  std::vector<QuantumInstrument::Outcome> outcomes;
  for (int i = 0; i < obs.size(); ++i) {
    outcomes.push_back({obs.label(i), CpMap(obs.dim(), obs.dim(), {obs.projector(i)})});
  }
  return QuantumInstrument(obs.dim(), obs.dim(), std::move(outcomes));
}

QuantumInstrument trivial_instrument(int d) {
  if (d < 2) throw DimensionError("trivial_instrument: d must be >= 2");
  return QuantumInstrument(d, d, {{"0", CpMap::identity(d)}});
}

QuantumInstrument weak_measurement(const Observable& obs, double strength) {
  if (obs.dim() != 2 || obs.size() != 2) {
    throw DimensionError("weak_measurement: needs a nondegenerate qubit observable");
  }
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw ValidationError("weak_measurement: strength outside [0,1]");
  }
  const double hi = std::sqrt((1.0 + strength) / 2.0);
  const double lo = std::sqrt((1.0 - strength) / 2.0);
  const ComplexMatrix plus = hi * obs.projector(0) + lo * obs.projector(1);
  const ComplexMatrix minus = lo * obs.projector(0) + hi * obs.projector(1);
  return QuantumInstrument(2, 2, {{"+", CpMap(2, 2, {plus})}, {"-", CpMap(2, 2, {minus})}});
}

QuantumInstrument noisy_luders(const Observable& obs, double flip) {
  if (!(flip >= 0.0 && flip <= 1.0)) throw ValidationError("noisy_luders: flip outside [0,1]");
  const int n = obs.size();
  if (n < 2) throw DimensionError("noisy_luders: needs at least two branches");
  std::vector<QuantumInstrument::Outcome> outcomes;
  for (int m = 0; m < n; ++m) {
    std::vector<ComplexMatrix> kraus;
    for (int x = 0; x < n; ++x) {
      const double weight = (x == m) ? 1.0 - flip : flip / (n - 1);
      if (weight > 0.0) kraus.push_back(std::sqrt(weight) * obs.projector(x));
    }
    if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(obs.dim(), obs.dim()));
    outcomes.push_back({obs.label(m), CpMap(obs.dim(), obs.dim(), std::move(kraus))});
  }
  return QuantumInstrument(obs.dim(), obs.dim(), std::move(outcomes));
}

QuantumInstrument unitary_instrument(const ComplexMatrix& u) {
  const int d = static_cast<int>(u.rows());
  return QuantumInstrument(d, d, {{"0", CpMap(d, d, {u})}});
}

ComplexMatrix haar_isometry(int rows, int cols, CounterRng& rng) {
  if (rows < cols) throw DimensionError("haar_isometry: more columns than rows");
  const ComplexMatrix g = gaussian(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int i = 0; i < cols; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0.0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

ComplexMatrix haar_unitary(int d, CounterRng& rng) { return haar_isometry(d, d, rng); }

QuantumInstrument random_instrument(int d, int outcomes, int kraus_per_outcome,
                                    std::uint64_t seed) {
  if (d < 1 || outcomes < 1 || kraus_per_outcome < 1) {
    throw DimensionError("random_instrument: all counts must be >= 1");
  }
  CounterRng rng(seed, 0x1a5);
  const ComplexMatrix v = haar_isometry(d * outcomes * kraus_per_outcome, d, rng);
  std::vector<QuantumInstrument::Outcome> out;
  for (int m = 0; m < outcomes; ++m) {
    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < kraus_per_outcome; ++k) {
      kraus.push_back(v.middleRows((m * kraus_per_outcome + k) * d, d));
    }
    out.push_back({std::to_string(m), CpMap(d, d, std::move(kraus))});
  }
  return QuantumInstrument(d, d, std::move(out));
}

ComplexMatrix random_density(int d, CounterRng& rng) {
  const ComplexMatrix g = gaussian(d, d, rng);
  const ComplexMatrix rho = g * g.adjoint();
  return rho / real_trace(rho);
}

std::pair<Observable, Observable> random_basis_pair(int d, std::uint64_t seed, bool mub) {
  if (d < 2) throw DimensionError("random_basis_pair: d must be >= 2");
  CounterRng rng(seed, 0xba5e);
  if (!mub) {
    const ComplexMatrix u = haar_unitary(d, rng);
    const ComplexMatrix v = haar_unitary(d, rng);
    return {basis_observable(u), basis_observable(v)};
  }
  ComplexMatrix fourier(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      fourier(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                 2.0 * std::numbers::pi * j * k / d);
    }
  }
  const ComplexMatrix w = haar_unitary(d, rng);
  return {basis_observable(w * fourier), basis_observable(w)};
}

Observable pauli_x() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2);
  plus << s, s;
  minus << s, -s;
  return Observable::from_vectors({1.0, -1.0}, {plus, minus}, {"+", "-"});
}

Observable pauli_z() {
  return Observable::from_vectors({1.0, -1.0}, {basis_vector(2, 0), basis_vector(2, 1)},
                                  {"+", "-"});
}

}  // namespace qnd
