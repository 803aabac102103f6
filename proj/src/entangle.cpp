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

#include "collmem/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collmem {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument(std::string(what) + ": two-qubit state required");
  }
}

std::vector<std::string> complement(const DensityMatrix& rho,
                                    const std::vector<std::string>& system) {
  if (system.empty()) throw std::invalid_argument("system party must not be empty");
  for (const auto& s : system) rho.reg().require_index(s);
  std::vector<std::string> rest;
  for (const auto& l : rho.reg().labels()) {
    if (std::find(system.begin(), system.end(), l) == system.end()) rest.push_back(l);
  }
  if (rest.empty() || rest.size() + system.size() != rho.num_qubits()) {
    throw std::invalid_argument("labels do not form a bipartition of the register");
  }
  return rest;
}

}  // namespace

std::array<double, 4> wootters_roots(const DensityMatrix& rho) {
  require_two_qubits(rho, "wootters_roots");
  const ComplexMatrix yy = kron(pauli::Y(), pauli::Y());
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  const ComplexMatrix factor = root * yy * root.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(factor);
  const RealVector s = svd.singularValues();  // descending
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = s[i] < 1e-12 ? 0.0 : s[i];
  return out;
}

double concurrence_2q(const DensityMatrix& rho) {
  const auto l = wootters_roots(rho);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double assistance_2q(const DensityMatrix& rho) {
  const auto l = wootters_roots(rho);
  return std::clamp(l[0] + l[1] + l[2] + l[3], 0.0, 1.0);
}

double assistance_upper(const DensityMatrix& rho, const std::vector<std::string>& system) {
  complement(rho, system);
  return std::sqrt(2.0 * partial_trace(rho, system).linear_entropy());
}

double concurrence_lower(const DensityMatrix& rho, const std::vector<std::string>& system) {
  const auto other = complement(rho, system);
  const std::size_t m = std::size_t{1} << std::min(system.size(), other.size());
  const double m_tilde = std::sqrt(2.0 / static_cast<double>(m * (m - 1)));
  const double ns = trace_norm(partial_transpose(rho, system));
  const double na = trace_norm(partial_transpose(rho, other));
  return std::max(0.0, m_tilde * std::max(ns - 1.0, na - 1.0));
}

WitnessReport witness(const DensityMatrix& rho_t1, const DensityMatrix& rho_t2,
                      const std::vector<std::string>& system, std::size_t t1_id,
                      std::size_t t2_id) {
  if (!(rho_t1.reg() == rho_t2.reg())) {
    throw std::invalid_argument("witness: states live on different registers");
  }
  const auto other = complement(rho_t1, system);
  if (system.size() == 1 && other.size() == 1) {
    return witness_from_values(assistance_2q(rho_t1), concurrence_2q(rho_t2), true, t1_id, t2_id);
  }
  return witness_from_values(assistance_upper(rho_t1, system), concurrence_lower(rho_t2, system),
                             false, t1_id, t2_id);
}

WitnessReport witness_from_values(double left, double right, bool exact, std::size_t t1_id,
                                  std::size_t t2_id) {
  WitnessReport r;
  r.t1_id = t1_id;
  r.t2_id = t2_id;
  if (exact) {
    r.c_sharp_t1 = left;
    r.c_t2 = right;
  } else {
    r.c_sharp_upper_t1 = left;
    r.c_lower_t2 = right;
  }
  r.margin = right - left;
  r.quantum_memory = r.margin > kWitnessThreshold;
  return r;
}

}  // namespace collmem
