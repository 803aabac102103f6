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

#include "collmem/transpile.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace collmem {
namespace {

using testing::max_abs;
constexpr double kPi = std::numbers::pi;

ComplexMatrix exchange(double gdt) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 1) = u(2, 2) = std::cos(gdt);
  u(1, 2) = u(2, 1) = Complex(0, -std::sin(gdt));
  return u;
}

void expect_exact(const Circuit& native, const ComplexMatrix& target, double tol = 1e-8) {
  ASSERT_TRUE(native.is_native());
  const auto m = equivalent_up_to_global_phase(unitary_of_circuit(native), target, tol);
  EXPECT_TRUE(m.equivalent) << "deviation " << m.max_deviation;
  EXPECT_NEAR(std::remainder(m.phase, 2 * kPi), 0.0, tol);
}

TEST(Kak, ReconstructsRandomAndSpecialUnitaries) {
  std::mt19937_64 rng(51);
  std::vector<ComplexMatrix> cases = {ComplexMatrix::Identity(4, 4), cnot_matrix(), swap_matrix(),
                                      ecr_matrix(), exchange(kPi / 4), exchange(0.3),
                                      kron(testing::random_unitary(2, rng),
                                           testing::random_unitary(2, rng))};
  for (int i = 0; i < 100; ++i) cases.push_back(testing::random_unitary(4, rng));
  for (const auto& u : cases) {
    const auto k = kak_decompose(u);
    EXPECT_LT(max_abs(kak_reconstruct(k) - u), 1e-10);
    EXPECT_TRUE(is_unitary(k.a0, 1e-10));
    EXPECT_TRUE(is_unitary(k.b1, 1e-10));
  }
}

TEST(SingleQubit, SynthesisIsExactIncludingPhase) {
  std::mt19937_64 rng(52);
  std::vector<ComplexMatrix> cases = {pauli::I(), pauli::X(), pauli::Y(), pauli::Z(), h_matrix(),
                                      sx_matrix(), rz_matrix(0.4)};
  for (int i = 0; i < 200; ++i) cases.push_back(testing::random_unitary(2, rng));
  for (const auto& u : cases) {
    const Circuit c = synthesize_single_qubit(u, "q");
    expect_exact(c, u, 1e-10);
    EXPECT_LE(c.gates().size(), 5u);
  }
  // Hadamard needs a single SX.
  EXPECT_EQ(gate_count(synthesize_single_qubit(h_matrix(), "q")).at("SX"), 1u);
}

TEST(Transpile, BellPreparationUsesOneEcr) {
  Circuit c(QubitRegister({"A", "S"}));
  c.add(Gate::h("A")).add(Gate::cnot("A", "S"));
  const Circuit native = transpile(c);
  expect_exact(native, unitary_of_circuit(c));
  EXPECT_EQ(gate_count(native).at("ECR"), 1u);
}

TEST(Transpile, ExchangeCollisionUsesTwoEcr) {
  Circuit c(QubitRegister({"S", "E"}));
  c.add(Gate::unitary({"S", "E"}, exchange(kPi / 4)));
  const Circuit native = transpile(c);
  expect_exact(native, exchange(kPi / 4));
  EXPECT_EQ(gate_count(native).at("ECR"), 2u);
}

TEST(Transpile, CnotClassUsesOneEcrAndSwapThree) {
  for (const auto& [u, ecrs] : std::vector<std::pair<ComplexMatrix, std::size_t>>{
           {cnot_matrix(), 1}, {swap_matrix(), 3}, {ecr_matrix(), 1}}) {
    Circuit c(QubitRegister({"a", "b"}));
    c.add(Gate::unitary({"b", "a"}, u));
    const Circuit native = transpile(c);
    expect_exact(native, unitary_of_circuit(c));
    EXPECT_EQ(gate_count(native)["ECR"], ecrs);
  }
}

TEST(Transpile, RandomTwoQubitCircuits) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c(QubitRegister({"a", "b", "c"}), angle(rng));
    std::uniform_int_distribution<int> pick(0, 5);
    const std::vector<std::string> q = {"a", "b", "c"};
    for (int g = 0; g < 8; ++g) {
      const std::string x = q[rng() % 3];
      std::string y = q[rng() % 3];
      while (y == x) y = q[rng() % 3];
      switch (pick(rng)) {
        case 0: c.add(Gate::h(x)); break;
        case 1: c.add(Gate::rz(x, angle(rng))); break;
        case 2: c.add(Gate::cnot(x, y)); break;
        case 3: c.add(Gate::ecr(x, y)); break;
        case 4: c.add(Gate::unitary({x, y}, testing::random_unitary(4, rng))); break;
        default: c.add(Gate::unitary({x}, testing::random_unitary(2, rng))); break;
      }
    }
    expect_exact(transpile(c), unitary_of_circuit(c));
  }
}

TEST(Transpile, RejectsWideUnitary) {
  std::mt19937_64 rng(54);
  Circuit c(QubitRegister({"a", "b", "c"}));
  c.add(Gate::unitary({"a", "b", "c"}, testing::random_unitary(8, rng)));
  EXPECT_THROW(transpile(c), std::invalid_argument);
}

TEST(Decompose, ThreeQubitUnitaryThenTranspile) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix u = testing::random_unitary(8, rng);
    const Circuit parts = decompose_unitary(u, {"a", "b", "c"});
    for (const auto& g : parts.gates()) EXPECT_LE(g.qubits.size(), 2u);
    EXPECT_LT(max_abs(unitary_of_circuit(parts) - u), 1e-9);
    expect_exact(transpile(parts), u);
  }
  EXPECT_THROW(decompose_unitary(testing::random_unitary(16, rng), testing::labels(4)),
               std::invalid_argument);
}

TEST(Transpile, ReconcilesPublishedBellSequence) {
  const Circuit c = native_bell_preparation("A", "S");
  expect_exact(transpile(c), unitary_of_circuit(c));
}

}  // namespace
}  // namespace collmem
