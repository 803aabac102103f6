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

// Labelled qubit registers, density matrices and the basic linear-algebra
// primitives on them. Basis convention: the first label of a register is the
// most significant bit of the computational-basis index.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace collmem {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kMinEigenvalueTol = -1e-9;
// Eigenvalues of a PSD matrix below this are treated as round-off zeros
// before square roots are taken.
inline constexpr double kRoundoffZero = 1e-14;

// Raised when a computed quantity violates a numerical invariant. The CLI
// maps it to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QubitRegister {
 public:
  QubitRegister() = default;
  explicit QubitRegister(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return std::size_t{1} << labels_.size(); }
  bool contains(std::string_view label) const;
  std::optional<std::size_t> index_of(std::string_view label) const;
  std::size_t require_index(std::string_view label) const;
  std::vector<std::size_t> positions_of(const std::vector<std::string>& labels) const;
  QubitRegister concat(const QubitRegister& other) const;
  // Labels of `keep` in this register's order.
  QubitRegister subset(const std::vector<std::string>& keep) const;

  bool operator==(const QubitRegister& other) const = default;

 private:
  std::vector<std::string> labels_;
};

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns
};

HermitianEigen hermitian_eigen(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// exp(factor * h) for Hermitian h.
ComplexMatrix hermitian_exp(const ComplexMatrix& h, Complex factor);
// PSD square root with eigenvalues below kRoundoffZero dropped.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);
// Singular values (sum) of an arbitrary matrix.
double nuclear_norm(const ComplexMatrix& m);

// Operator on `positions` (in the given order) of an n-qubit space, lifted
// to the full space.
ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::size_t>& positions,
                             std::size_t num_qubits);
// In-place op * m and m * op^dagger for an operator acting on `positions`.
void left_apply_local(ComplexMatrix& m, const ComplexMatrix& op,
                      const std::vector<std::size_t>& positions,
                      std::size_t num_qubits);
void right_apply_local_adjoint(ComplexMatrix& m, const ComplexMatrix& op,
                               const std::vector<std::size_t>& positions,
                               std::size_t num_qubits);
// Reorders tensor factors: new qubit i is old qubit perm[i].
ComplexMatrix permute_qubits(const ComplexMatrix& m,
                             const std::vector<std::size_t>& perm);
ComplexVector permute_qubits(const ComplexVector& v,
                             const std::vector<std::size_t>& perm);
ComplexMatrix partial_trace_positions(const ComplexMatrix& m,
                                      std::size_t num_qubits,
                                      const std::vector<std::size_t>& keep);
ComplexMatrix partial_transpose_positions(const ComplexMatrix& m,
                                          std::size_t num_qubits,
                                          const std::vector<std::size_t>& part);

class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace and positivity within the package
  // tolerances; throws std::invalid_argument otherwise.
  DensityMatrix(QubitRegister reg, ComplexMatrix matrix);

  static DensityMatrix from_pure(QubitRegister reg, const ComplexVector& psi);
  static DensityMatrix basis_state(QubitRegister reg, std::size_t index);
  static DensityMatrix maximally_mixed(QubitRegister reg);
  // Closest unit-trace PSD matrix in Frobenius norm (eigenvalue simplex
  // projection). `distance` receives the trace-norm distance moved.
  static DensityMatrix project(QubitRegister reg, const ComplexMatrix& m,
                               double* distance = nullptr);

  const QubitRegister& reg() const { return reg_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t num_qubits() const { return reg_.size(); }
  double purity() const;
  // 1 - tr(rho^2) computed from 2x2 principal minors, never negative.
  double linear_entropy() const;
  DensityMatrix reordered(const std::vector<std::string>& order) const;
  DensityMatrix relabeled(QubitRegister reg) const;

 private:
  QubitRegister reg_;
  ComplexMatrix matrix_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep);
ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                const std::vector<std::string>& part);
double trace_norm(const ComplexMatrix& m);
// Unnormalized: ||rho - sigma||_1, in [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
// Squared convention: (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

class BlochVector {
 public:
  BlochVector(double x, double y, double z);
  explicit BlochVector(const Eigen::Vector3d& r) : BlochVector(r.x(), r.y(), r.z()) {}

  double x() const { return r_.x(); }
  double y() const { return r_.y(); }
  double z() const { return r_.z(); }
  const Eigen::Vector3d& vec() const { return r_; }
  double norm() const { return r_.norm(); }

 private:
  Eigen::Vector3d r_;
};

DensityMatrix bloch_to_state(const BlochVector& r, std::string label = "S");
BlochVector state_to_bloch(const DensityMatrix& rho);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
// Single-qubit Pauli by index 0..3 = I, X, Y, Z.
ComplexMatrix by_index(int i);
// Tensor product for a string over {I,X,Y,Z}; first character is the most
// significant qubit.
ComplexMatrix from_string(std::string_view s);
}  // namespace pauli

}  // namespace collmem
