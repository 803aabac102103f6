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

// Gate-level circuits over labelled qubits.
//
// Conventions:
//   RZ(t)  = diag(e^{-it/2}, e^{it/2})
//   SX     = (1/2) [[1+i, 1-i], [1-i, 1+i]]
//   ECR    = e^{-i pi/4} (X (x) I - Y (x) X) / sqrt(2), first qubit is the
//            control. The phase is fixed so that the native Bell preparation
//            sequence reproduces H-then-CNOT with global phase pi.
// A circuit's unitary is e^{i phase} G_m ... G_1 for gates applied in order.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "collmem/qmat.hpp"

namespace collmem {

enum class GateKind { H, X, SqrtX, RZ, CNOT, ECR, Unitary };

struct Gate {
  GateKind kind;
  std::vector<std::string> qubits;
  double theta = 0.0;     // RZ only
  ComplexMatrix matrix;   // Unitary only, in `qubits` order

  static Gate h(std::string q);
  static Gate x(std::string q);
  static Gate sx(std::string q);
  static Gate rz(std::string q, double theta);
  static Gate cnot(std::string control, std::string target);
  static Gate ecr(std::string control, std::string target);
  static Gate unitary(std::vector<std::string> qubits, ComplexMatrix m);
};

// Text-format mnemonic: H, X, SX, RZ, CX, ECR, UNITARY.
std::string gate_name(GateKind kind);
bool is_native(GateKind kind);
ComplexMatrix gate_matrix(const Gate& g);
ComplexMatrix rz_matrix(double theta);
ComplexMatrix sx_matrix();
ComplexMatrix h_matrix();
ComplexMatrix ecr_matrix();
ComplexMatrix cnot_matrix();
ComplexMatrix swap_matrix();

class Circuit {
 public:
  explicit Circuit(QubitRegister reg, double global_phase = 0.0);

  // Checks labels belong to the register and are distinct.
  Circuit& add(Gate g);
  // Appends another circuit over a subset of this register; phases add.
  Circuit& append(const Circuit& other);
  void add_phase(double phi) { global_phase_ += phi; }

  const QubitRegister& reg() const { return reg_; }
  const std::vector<Gate>& gates() const { return gates_; }
  double global_phase() const { return global_phase_; }
  bool is_native() const;

 private:
  QubitRegister reg_;
  std::vector<Gate> gates_;
  double global_phase_ = 0.0;
};

inline constexpr std::size_t kMaxUnitaryQubits = 8;

ComplexMatrix unitary_of_circuit(const Circuit& c);

struct PhaseMatch {
  bool equivalent = false;
  double phase = 0.0;          // u ~= e^{i phase} v
  double max_deviation = 0.0;  // max |u - e^{i phase} v|
};

PhaseMatch equivalent_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v,
                                         double tol = 1e-8);

std::map<std::string, std::size_t> gate_count(const Circuit& c);

// Line format: "qubits a,b,..." and "phase <radians>" headers, then one
// "NAME q0[,q1] [theta]" per gate. UNITARY lines carry row-major re/im pairs.
std::string to_text(const Circuit& c);
Circuit from_text(std::string_view text);

// Published native sequences.
// H on `ancilla` then CNOT(ancilla -> system), global phase pi.
Circuit native_bell_preparation(const std::string& ancilla, const std::string& system);
// Two-ECR sequence quoted for the exchange collision at g dt = pi/4.
Circuit native_exchange_quarter(const std::string& system, const std::string& environment);

}  // namespace collmem
