// Copyright 2026 The collmem Authors
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

// Lowering to the native gate set {RZ, SX, X, ECR}.

#pragma once

#include <string>
#include <vector>

#include "collmem/circuit.hpp"

namespace collmem {

// u = e^{i phase} (a0 (x) a1) exp(i(x XX + y YY + z ZZ)) (b0 (x) b1)
struct KakDecomposition {
  ComplexMatrix a0, a1;
  ComplexMatrix b0, b1;
  double x = 0.0, y = 0.0, z = 0.0;
  double phase = 0.0;
};

KakDecomposition kak_decompose(const ComplexMatrix& u);
ComplexMatrix kak_core(double x, double y, double z);
ComplexMatrix kak_reconstruct(const KakDecomposition& k);

// RZ/SX/X sequence for a single-qubit unitary; the circuit's global phase
// makes its unitary equal to `u`.
Circuit synthesize_single_qubit(const ComplexMatrix& u, const std::string& qubit);

// Splits a unitary on up to three qubits into X, CX and one- or two-qubit
// Unitary gates (two-level decomposition along a Gray-code ordering).
Circuit decompose_unitary(const ComplexMatrix& u, const std::vector<std::string>& qubits);

// Native circuit equal to `c` including global phase. Unitary gates on more
// than two qubits must be decomposed first. Registers of up to
// kMaxUnitaryQubits qubits are verified by unitary comparison within 1e-8.
Circuit transpile(const Circuit& c);

}  // namespace collmem
