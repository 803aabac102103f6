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

#include "collmem/circuit.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace collmem {
namespace {

using testing::max_abs;
constexpr double kPi = std::numbers::pi;

TEST(Gates, EcrMatchesReferenceMatrix) {
  // Reference ECR written with the target as the most significant qubit.
  const Complex i(0, 1);
  ComplexMatrix ref(4, 4);
  ref << 0, 1, 0, i,
         1, 0, -i, 0,
         0, i, 0, 1,
         -i, 0, 1, 0;
  ref /= std::sqrt(2.0);
  const ComplexMatrix ours = permute_qubits(ecr_matrix(), {1, 0});
  EXPECT_LT(max_abs(ours - std::polar(1.0, -kPi / 4) * ref), 1e-15);
  EXPECT_TRUE(is_unitary(ecr_matrix(), 1e-15));
}

TEST(Gates, SqrtXSquaresToX) {
  EXPECT_LT(max_abs(sx_matrix() * sx_matrix() - pauli::X()), 1e-15);
  EXPECT_LT(max_abs(rz_matrix(kPi / 3) * rz_matrix(-kPi / 3) - pauli::I()), 1e-15);
}

TEST(Circuit, RejectsUnknownOrRepeatedQubits) {
  Circuit c(QubitRegister({"A", "S"}));
  EXPECT_THROW(c.add(Gate::h("E")), std::invalid_argument);
  EXPECT_THROW(c.add(Gate::cnot("A", "A")), std::invalid_argument);
  EXPECT_THROW(Gate::unitary({"A"}, ComplexMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST(Circuit, UnitaryMatchesKroneckerOracle) {
  Circuit c(QubitRegister({"A", "S"}), 0.3);
  c.add(Gate::h("A")).add(Gate::cnot("A", "S")).add(Gate::rz("S", 0.7)).add(Gate::sx("A"));
  const ComplexMatrix id = pauli::I();
  const ComplexMatrix expect = std::polar(1.0, 0.3) * kron(sx_matrix(), rz_matrix(0.7)) *
                               cnot_matrix() * kron(h_matrix(), id);
  EXPECT_LT(max_abs(unitary_of_circuit(c) - expect), 1e-15);
}

TEST(Circuit, RegisterLimit) {
  Circuit c(QubitRegister(testing::labels(9)));
  EXPECT_THROW(unitary_of_circuit(c), std::invalid_argument);
}

TEST(Equivalence, DetectsPhaseAndPerturbation) {
  std::mt19937_64 rng(41);
  const ComplexMatrix u = testing::random_unitary(4, rng);
  const auto same = equivalent_up_to_global_phase(std::polar(1.0, 1.1) * u, u);
  EXPECT_TRUE(same.equivalent);
  EXPECT_NEAR(same.phase, 1.1, 1e-12);
  const ComplexMatrix shifted = u * kron(rz_matrix(1e-3), pauli::I());
  EXPECT_FALSE(equivalent_up_to_global_phase(shifted, u).equivalent);
  EXPECT_THROW(equivalent_up_to_global_phase(ComplexMatrix::Zero(2, 2), pauli::I()),
               std::invalid_argument);
}

TEST(NativeSequences, BellPreparationVerifiesWithPhasePi) {
  const Circuit c = native_bell_preparation("A", "S");
  ASSERT_TRUE(c.is_native());
  Circuit ideal(c.reg());
  ideal.add(Gate::h("A")).add(Gate::cnot("A", "S"));
  const ComplexMatrix target = unitary_of_circuit(ideal);
  const auto with_phase = equivalent_up_to_global_phase(unitary_of_circuit(c), target);
  EXPECT_TRUE(with_phase.equivalent);
  EXPECT_NEAR(with_phase.phase, 0.0, 1e-12);
  Circuit gates_only(c.reg());
  for (const auto& g : c.gates()) gates_only.add(g);
  const auto match = equivalent_up_to_global_phase(unitary_of_circuit(gates_only), target);
  EXPECT_TRUE(match.equivalent);
  EXPECT_NEAR(std::abs(match.phase), kPi, 1e-12);
}

TEST(NativeSequences, GateCounts) {
  const auto bell = gate_count(native_bell_preparation("A", "S"));
  EXPECT_EQ(bell.at("RZ"), 7u);
  EXPECT_EQ(bell.at("SX"), 2u);
  EXPECT_EQ(bell.at("ECR"), 1u);
  EXPECT_EQ(bell.at("X"), 1u);
  const auto exch = gate_count(native_exchange_quarter("S", "E"));
  EXPECT_EQ(exch.at("RZ"), 10u);
  EXPECT_EQ(exch.at("SX"), 8u);
  EXPECT_EQ(exch.at("ECR"), 2u);
}

TEST(TextFormat, RoundTripIsExact) {
  std::mt19937_64 rng(42);
  Circuit c(QubitRegister({"A", "S", "E"}), -0.123456789);
  c.add(Gate::rz("S", 0.1 + 1e-13)).add(Gate::sx("A")).add(Gate::ecr("A", "S")).add(Gate::x("E"));
  c.add(Gate::h("E")).add(Gate::cnot("S", "E"));
  c.add(Gate::unitary({"E", "A"}, testing::random_unitary(4, rng)));
  const std::string text = to_text(c);
  const Circuit back = from_text(text);
  EXPECT_EQ(to_text(back), text);
  EXPECT_EQ(back.reg(), c.reg());
  EXPECT_EQ(max_abs(unitary_of_circuit(back) - unitary_of_circuit(c)), 0.0);
}

TEST(TextFormat, ParsesWithoutRegisterHeaderAndRejectsJunk) {
  const Circuit c = from_text("# bell\nphase 3.141592653589793\nH A\nCX A,S\n");
  EXPECT_EQ(c.reg().labels(), (std::vector<std::string>{"A", "S"}));
  EXPECT_EQ(c.gates().size(), 2u);
  EXPECT_THROW(from_text("RZ A\n"), std::invalid_argument);
  EXPECT_THROW(from_text("FOO A\n"), std::invalid_argument);
  EXPECT_THROW(from_text("RZ A abc\n"), std::invalid_argument);
  EXPECT_THROW(from_text("CX A\n"), std::invalid_argument);
}

}  // namespace
}  // namespace collmem
