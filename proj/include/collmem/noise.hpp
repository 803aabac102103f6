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

// Gate-level noise: depolarizing plus thermal relaxation per native gate,
// virtual (noiseless) RZ, and per-qubit readout flips.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "collmem/channel.hpp"
#include "collmem/circuit.hpp"

namespace collmem {

struct ReadoutError {
  double p01 = 0.0;  // P(read 1 | prepared 0)
  double p10 = 0.0;  // P(read 0 | prepared 1)

  bool operator==(const ReadoutError&) const = default;
};

struct NoiseConfig {
  double t1_us = 280.0;
  double t2_us = 180.0;
  // Keys SX, X, ECR, MEASURE. RZ is virtual and takes no time.
  std::map<std::string, double> duration_ns = {
      {"SX", 57.0}, {"X", 57.0}, {"ECR", 533.0}, {"MEASURE", 1216.0}};
  double depol_1q = 2e-4;
  double depol_2q = 7e-3;
  // Per-pair two-qubit depolarizing overrides, keyed "a,b" (unordered).
  std::map<std::string, double> depol_2q_pair;
  ReadoutError readout_default{0.01, 0.02};
  std::map<std::string, ReadoutError> readout;
  std::uint64_t seed = 0;

  // No decoherence, no depolarizing, perfect readout.
  static NoiseConfig ideal();

  // Throws std::invalid_argument when fields are out of range or t2 > 2 t1.
  void validate() const;
  double duration(GateKind kind) const;
  double measurement_duration() const;
  double two_qubit_depol(const std::string& a, const std::string& b) const;
  ReadoutError readout_for(const std::string& qubit) const;
  // Copy with every two-qubit depolarizing strength multiplied by `factor`.
  NoiseConfig scaled_two_qubit(double factor) const;

  bool operator==(const NoiseConfig&) const = default;
};

NoiseConfig parse_noise_config(std::string_view text);
std::string to_text(const NoiseConfig& config);
NoiseConfig load_noise_config(const std::filesystem::path& path);

KrausChannel depolarizing_channel(std::size_t num_qubits, double p);
// Amplitude damping with 1 - exp(-t/T1) followed by pure dephasing at rate
// 1/T2 - 1/(2 T1), so that coherences decay as exp(-t/T2).
KrausChannel thermal_relaxation_channel(double duration_ns, double t1_us, double t2_us);
// Ideal gate followed by depolarizing and relaxation on the gate's qubits.
// Requires a native gate.
KrausChannel noisy_gate_channel(const Gate& g, const NoiseConfig& config);

// Runs a native circuit gate by gate on `input`, whose register must contain
// the circuit's labels.
DensityMatrix run_noisy_circuit(const Circuit& c, const NoiseConfig& config,
                                const DensityMatrix& input);
// Whole-circuit channel (up to 4 qubits) obtained from its Choi state.
KrausChannel noisy_channel_of_circuit(const Circuit& c, const NoiseConfig& config);

}  // namespace collmem
