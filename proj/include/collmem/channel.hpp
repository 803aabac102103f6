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

// Quantum channels in Kraus, Choi and Pauli-transfer form.

#pragma once

#include <string>
#include <vector>

#include "collmem/qmat.hpp"

namespace collmem {

// Choi states whose reference marginal deviates from I/d by more than this
// (max-entry) are rejected as not trace preserving.
inline constexpr double kChoiTpTolerance = 1e-3;
inline constexpr double kChoiMarginalTol = 1e-9;
inline constexpr double kKrausCutoff = 1e-10;

class KrausChannel {
 public:
  // Checks sum_k K^dagger K = I within `tol`.
  explicit KrausChannel(std::vector<ComplexMatrix> ops, double tol = 1e-9);

  static KrausChannel identity(std::size_t num_qubits);
  static KrausChannel unitary(const ComplexMatrix& u);

  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  std::size_t in_dim() const { return static_cast<std::size_t>(ops_.front().cols()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(ops_.front().rows()); }
  std::size_t num_qubits() const;
  // Acts on an arbitrary operator, not only on states.
  ComplexMatrix act(const ComplexMatrix& m) const;
  // Minimal Kraus set through the Choi eigendecomposition.
  KrausChannel compressed() const;

 private:
  std::vector<ComplexMatrix> ops_;
};

// Normalized Choi state with register (out..., ref...). The reference
// marginal is I/d within kChoiMarginalTol after construction.
class ChoiState {
 public:
  // `joint` may list the labels in any order. Marginal deviations up to
  // `tp_tolerance` are corrected by a congruence on the reference and the
  // trace-norm change is recorded; larger ones throw.
  ChoiState(const DensityMatrix& joint, std::vector<std::string> out_labels,
            std::vector<std::string> ref_labels, double tp_tolerance = kChoiTpTolerance);

  const DensityMatrix& state() const { return state_; }
  const std::vector<std::string>& out_labels() const { return out_labels_; }
  const std::vector<std::string>& ref_labels() const { return ref_labels_; }
  std::size_t in_dim() const { return std::size_t{1} << ref_labels_.size(); }
  std::size_t out_dim() const { return std::size_t{1} << out_labels_.size(); }
  double projection_distance() const { return projection_distance_; }

 private:
  // Declared first: the state initializer writes it.
  double projection_distance_ = 0.0;
  DensityMatrix state_;
  std::vector<std::string> out_labels_;
  std::vector<std::string> ref_labels_;
};

// Pauli transfer matrix M_ab = tr(P_a E[P_b]) / d over unnormalized Pauli
// strings ordered I < X < Y < Z with the first qubit most significant.
class TransferMatrix {
 public:
  TransferMatrix(RealMatrix m, std::size_t num_qubits);

  const RealMatrix& matrix() const { return m_; }
  std::size_t num_qubits() const { return num_qubits_; }
  // Single-qubit views: r' = block * r + translation.
  Eigen::Matrix3d block() const;
  Eigen::Vector3d translation() const;
  BlochVector apply(const BlochVector& r) const;

 private:
  RealMatrix m_;
  std::size_t num_qubits_;
};

std::vector<std::string> default_labels(const std::string& prefix, std::size_t n);

ChoiState choi_of_channel(const KrausChannel& ch, std::vector<std::string> out_labels,
                          std::vector<std::string> ref_labels);
// Labels S / A for one qubit, S0.. / A0.. otherwise.
ChoiState choi_of_channel(const KrausChannel& ch);
KrausChannel channel_of_choi(const ChoiState& choi);
TransferMatrix transfer_of_channel(const KrausChannel& ch);
// `first` is applied before `second`.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);
// Applies the channel to `targets` (in channel qubit order) of a larger state.
DensityMatrix apply_extended(const KrausChannel& ch, const DensityMatrix& rho,
                             const std::vector<std::string>& targets);
// Pauli string for index a in 0..4^n-1, base-4 digits I,X,Y,Z.
std::string pauli_label(std::size_t a, std::size_t num_qubits);

}  // namespace collmem
