// Copyright 2026 The qcoord Authors
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

#pragma once

#include <vector>

#include "qcoord/circuit.hpp"
#include "qcoord/rotation_oracle.hpp"

namespace qcoord {

// Grover operator Q = A S_0 A^dag S_X for an operator A that marks good
// states with ancilla |1>. Applied as a circuit the order is S_X, A^dag, S_0,
// A. With S_0 = 2|0><0| - I the operator is a proper rotation by 2 theta in
// the good/bad plane (eigenvalues e^{+-2i theta}), so Q^k A |0...0> puts the
// ancilla at P(1) = sin^2((2k+1) theta) and controlled powers feed phase
// estimation without a parasitic pi offset.
inline Circuit build_grover(const Circuit& a_circuit, std::uint32_t ancilla) {
    const std::size_t n = a_circuit.n_qubits();
    detail::require_range(ancilla < n, "ancilla index outside the circuit");

    Circuit q(n);
    // S_X: phase flip on ancilla = |1>.
    q.z(ancilla);
    // A^dag
    q.append(a_circuit.inverted());
    // -(2|0><0| - I): phase flip on |0...0>, built as X - (controls-on-zero)
    // Z - X on qubit 0.
    q.x(0);
    std::vector<Control> zeros;
    zeros.reserve(n - 1);
    for (std::uint32_t qb = 1; qb < n; ++qb) zeros.push_back(Control{qb, false});
    if (zeros.empty())
        q.z(0);
    else
        q.mcz(std::move(zeros), 0);
    q.x(0);
    // Global -1 (Z X Z X = -I on one qubit) completes S_0 = 2|0><0| - I.
    q.z(0);
    q.x(0);
    q.z(0);
    q.x(0);
    // A
    q.append(a_circuit);
    return q;
}

inline Circuit build_grover(const RotationOracle& oracle) {
    return build_grover(oracle.full, oracle.ancilla);
}

}  // namespace qcoord
