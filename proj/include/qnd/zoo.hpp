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

#ifndef QND_ZOO_HPP
#define QND_ZOO_HPP

#include <cstdint>
#include <utility>

#include "qnd/channel.hpp"
#include "qnd/rng.hpp"
#include "qnd/states.hpp"

// Canonical and random instruments and observables.
namespace qnd {

/// Projective measurement: one outcome per branch with Kraus operator P.
QuantumInstrument luders(const Observable& obs);

/// One outcome, identity Kraus.
QuantumInstrument trivial_instrument(int d);

/// Qubit family K_+- = sqrt((1+-s)/2) P_0 + sqrt((1-+s)/2) P_1 with outcome
/// labels "+" and "-". s = 1 is the Luders measurement, s = 0 a fair coin.
QuantumInstrument weak_measurement(const Observable& obs, double strength);

/// Luders measurement whose reported outcome is replaced by one of the other
/// d-1 outcomes with total probability `flip`.
QuantumInstrument noisy_luders(const Observable& obs, double flip);

/// Single-outcome instrument applying a unitary.
QuantumInstrument unitary_instrument(const ComplexMatrix& u);

/// Haar-random d x d unitary (QR of a complex Gaussian matrix with the phases
/// of R's diagonal removed).
ComplexMatrix haar_unitary(int d, CounterRng& rng);

/// Haar-random isometry C^cols -> C^rows.
ComplexMatrix haar_isometry(int rows, int cols, CounterRng& rng);

/// Instrument sliced from a Haar isometry d -> d * outcomes * kraus_per_outcome.
QuantumInstrument random_instrument(int d, int outcomes, int kraus_per_outcome,
                                    std::uint64_t seed);

/// Random density matrix of full rank (Hilbert-Schmidt measure).
ComplexMatrix random_density(int d, CounterRng& rng);

/// Two random orthonormal eigenbases with eigenvalues 0..d-1. With `mub` the
/// pair is the computational and Fourier basis under a common Haar rotation,
/// so every squared overlap is exactly 1/d.
std::pair<Observable, Observable> random_basis_pair(int d, std::uint64_t seed, bool mub = false);

/// Pauli X and Z as observables with eigenvalues +1 (branch 0) and -1.
Observable pauli_x();
Observable pauli_z();

}  // namespace qnd

#endif  // QND_ZOO_HPP
