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

// Concurrence quantities and the quantum-memory witness comparing the
// assistance at an earlier time with the concurrence at a later one.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "collmem/qmat.hpp"

namespace collmem {

// Strict-inequality margin required for a positive verdict.
inline constexpr double kWitnessThreshold = 1e-9;

// Descending square roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y),
// obtained as singular values of sqrt(rho) (Y(x)Y) sqrt(rho)*.
std::array<double, 4> wootters_roots(const DensityMatrix& rho);
double concurrence_2q(const DensityMatrix& rho);
double assistance_2q(const DensityMatrix& rho);

// sqrt(2 (1 - tr rho_S^2)) with rho_S the marginal on `system`.
double assistance_upper(const DensityMatrix& rho, const std::vector<std::string>& system);
// m~ max(||rho^{T_S}||_1 - 1, ||rho^{T_A}||_1 - 1), m~ = sqrt(2 / (m (m - 1)))
// with m the smaller party dimension.
double concurrence_lower(const DensityMatrix& rho, const std::vector<std::string>& system);

struct WitnessReport {
  std::size_t t1_id = 0;
  std::size_t t2_id = 0;
  // Exact pair, used when both parties are single qubits.
  std::optional<double> c_sharp_t1;
  std::optional<double> c_t2;
  // Bound pair, used otherwise.
  std::optional<double> c_sharp_upper_t1;
  std::optional<double> c_lower_t2;
  double margin = 0.0;  // right side minus left side
  bool quantum_memory = false;
  std::optional<double> margin_stderr;

  bool exact() const { return c_sharp_t1.has_value(); }
  double left() const { return exact() ? *c_sharp_t1 : *c_sharp_upper_t1; }
  double right() const { return exact() ? *c_t2 : *c_lower_t2; }
};

WitnessReport witness(const DensityMatrix& rho_t1, const DensityMatrix& rho_t2,
                      const std::vector<std::string>& system, std::size_t t1_id = 0,
                      std::size_t t2_id = 0);
// Verdict from precomputed quantities.
WitnessReport witness_from_values(double left, double right, bool exact, std::size_t t1_id = 0,
                                  std::size_t t2_id = 0);

}  // namespace collmem
