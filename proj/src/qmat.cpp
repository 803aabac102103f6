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

#include "collmem/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace collmem {

namespace {

// Bit of qubit `pos` (0 = most significant) in an n-qubit basis index.
inline std::size_t bit_of(std::size_t pos, std::size_t n) {
  return std::size_t{1} << (n - 1 - pos);
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
}

void check_positions(const std::vector<std::size_t>& positions, std::size_t n,
                     const char* what) {
  std::set<std::size_t> seen;
  for (auto p : positions) {
    if (p >= n || !seen.insert(p).second) {
      throw std::invalid_argument(std::string(what) + ": bad qubit position list");
    }
  }
}

// Basis indices of the local subspace for a given base index, ordered so
// that local index j has positions[0] as its most significant bit.
std::vector<std::size_t> local_offsets(const std::vector<std::size_t>& positions,
                                       std::size_t n) {
  const std::size_t k = positions.size();
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    std::size_t off = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (j & (std::size_t{1} << (k - 1 - a))) off |= bit_of(positions[a], n);
    }
    offsets[j] = off;
  }
  return offsets;
}

std::vector<std::size_t> base_indices(const std::vector<std::size_t>& positions,
                                      std::size_t n) {
  std::size_t mask = 0;
  for (auto p : positions) mask |= bit_of(p, n);
  std::vector<std::size_t> bases;
  const std::size_t d = std::size_t{1} << n;
  bases.reserve(d >> positions.size());
  for (std::size_t i = 0; i < d; ++i) {
    if ((i & mask) == 0) bases.push_back(i);
  }
  return bases;
}

// Euclidean projection of v onto the probability simplex.
RealVector project_to_simplex(const RealVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) tau = t;
  }
  RealVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- register

QubitRegister::QubitRegister(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("QubitRegister: empty label");
    if (!seen.insert(l).second) {
      throw std::invalid_argument("QubitRegister: duplicate label '" + l + "'");
    }
  }
}

bool QubitRegister::contains(std::string_view label) const {
  return index_of(label).has_value();
}

std::optional<std::size_t> QubitRegister::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t QubitRegister::require_index(std::string_view label) const {
  auto idx = index_of(label);
  if (!idx) throw std::invalid_argument("unknown qubit label '" + std::string(label) + "'");
  return *idx;
}

std::vector<std::size_t> QubitRegister::positions_of(
    const std::vector<std::string>& labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(require_index(l));
  return out;
}

QubitRegister QubitRegister::concat(const QubitRegister& other) const {
  std::vector<std::string> all = labels_;
  all.insert(all.end(), other.labels_.begin(), other.labels_.end());
  return QubitRegister(std::move(all));
}

QubitRegister QubitRegister::subset(const std::vector<std::string>& keep) const {
  for (const auto& k : keep) require_index(k);
  std::vector<std::string> out;
  for (const auto& l : labels_) {
    if (std::find(keep.begin(), keep.end(), l) != keep.end()) out.push_back(l);
  }
  return QubitRegister(std::move(out));
}

// ---------------------------------------------------------------- helpers

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  check_square(m, "hermitian_eigen");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigen: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix hermitian_exp(const ComplexMatrix& h, Complex factor) {
  if (!is_hermitian(h, 1e-9)) throw std::invalid_argument("hermitian_exp: not Hermitian");
  const auto eig = hermitian_eigen(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::exp(factor * eig.values[i]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eigen(m);
  RealVector s(eig.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s[i] = eig.values[i] > kRoundoffZero ? std::sqrt(eig.values[i]) : 0.0;
  }
  return eig.vectors * s.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double nuclear_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::size_t>& positions,
                             std::size_t num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  ComplexMatrix out = ComplexMatrix::Identity(d, d);
  left_apply_local(out, op, positions, num_qubits);
  return out;
}

void left_apply_local(ComplexMatrix& m, const ComplexMatrix& op,
                      const std::vector<std::size_t>& positions,
                      std::size_t num_qubits) {
  check_positions(positions, num_qubits, "left_apply_local");
  const std::size_t k = positions.size();
  if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
    throw std::invalid_argument("left_apply_local: operator size does not match positions");
  }
  if (m.rows() != (Eigen::Index{1} << num_qubits)) {
    throw std::invalid_argument("left_apply_local: matrix size does not match register");
  }
  const auto offsets = local_offsets(positions, num_qubits);
  const auto bases = base_indices(positions, num_qubits);
  const Eigen::Index ld = op.rows();
  ComplexVector buf(ld), res(ld);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (auto b : bases) {
      for (Eigen::Index j = 0; j < ld; ++j) buf[j] = m(b + offsets[j], c);
      res.noalias() = op * buf;
      for (Eigen::Index j = 0; j < ld; ++j) m(b + offsets[j], c) = res[j];
    }
  }
}

void right_apply_local_adjoint(ComplexMatrix& m, const ComplexMatrix& op,
                               const std::vector<std::size_t>& positions,
                               std::size_t num_qubits) {
  check_positions(positions, num_qubits, "right_apply_local_adjoint");
  const std::size_t k = positions.size();
  if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
    throw std::invalid_argument("right_apply_local_adjoint: operator size does not match positions");
  }
  if (m.cols() != (Eigen::Index{1} << num_qubits)) {
    throw std::invalid_argument("right_apply_local_adjoint: matrix size does not match register");
  }
  const auto offsets = local_offsets(positions, num_qubits);
  const auto bases = base_indices(positions, num_qubits);
  const Eigen::Index ld = op.rows();
  // (m op^dagger)(r, j) = sum_l m(r, l) conj(op(j, l))
  const ComplexMatrix opc = op.conjugate();
  Eigen::RowVectorXcd buf(ld), res(ld);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (auto b : bases) {
      for (Eigen::Index j = 0; j < ld; ++j) buf[j] = m(r, b + offsets[j]);
      res.noalias() = buf * opc.transpose();
      for (Eigen::Index j = 0; j < ld; ++j) m(r, b + offsets[j]) = res[j];
    }
  }
}

namespace {

std::vector<std::size_t> permuted_index_map(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  check_positions(perm, n, "permute_qubits");
  const std::size_t d = std::size_t{1} << n;
  std::vector<std::size_t> map(d, 0);
  for (std::size_t old_idx = 0; old_idx < d; ++old_idx) {
    std::size_t new_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (old_idx & bit_of(perm[i], n)) new_idx |= bit_of(i, n);
    }
    map[old_idx] = new_idx;
  }
  return map;
}

}  // namespace

ComplexMatrix permute_qubits(const ComplexMatrix& m, const std::vector<std::size_t>& perm) {
  const auto map = permuted_index_map(perm);
  if (static_cast<std::size_t>(m.rows()) != map.size() || m.cols() != m.rows()) {
    throw std::invalid_argument("permute_qubits: matrix size does not match permutation");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(map[r], map[c]) = m(r, c);
  }
  return out;
}

ComplexVector permute_qubits(const ComplexVector& v, const std::vector<std::size_t>& perm) {
  const auto map = permuted_index_map(perm);
  if (static_cast<std::size_t>(v.size()) != map.size()) {
    throw std::invalid_argument("permute_qubits: vector size does not match permutation");
  }
  ComplexVector out(v.size());
  for (Eigen::Index r = 0; r < v.size(); ++r) out[map[r]] = v[r];
  return out;
}

ComplexMatrix partial_trace_positions(const ComplexMatrix& m, std::size_t num_qubits,
                                      const std::vector<std::size_t>& keep) {
  check_positions(keep, num_qubits, "partial_trace");
  if (m.rows() != (Eigen::Index{1} << num_qubits) || m.cols() != m.rows()) {
    throw std::invalid_argument("partial_trace: matrix size does not match register");
  }
  std::vector<std::size_t> traced;
  for (std::size_t p = 0; p < num_qubits; ++p) {
    if (std::find(keep.begin(), keep.end(), p) == keep.end()) traced.push_back(p);
  }
  const auto keep_off = local_offsets(keep, num_qubits);
  const auto trace_off = local_offsets(traced, num_qubits);
  const Eigen::Index dk = static_cast<Eigen::Index>(keep_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (auto t : trace_off) acc += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose_positions(const ComplexMatrix& m, std::size_t num_qubits,
                                          const std::vector<std::size_t>& part) {
  check_positions(part, num_qubits, "partial_transpose");
  if (m.rows() != (Eigen::Index{1} << num_qubits) || m.cols() != m.rows()) {
    throw std::invalid_argument("partial_transpose: matrix size does not match register");
  }
  std::size_t mask = 0;
  for (auto p : part) mask |= bit_of(p, num_qubits);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const std::size_t ru = static_cast<std::size_t>(r), cu = static_cast<std::size_t>(c);
      const std::size_t nr = (ru & ~mask) | (cu & mask);
      const std::size_t nc = (cu & ~mask) | (ru & mask);
      out(nr, nc) = m(r, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------- density

DensityMatrix::DensityMatrix(QubitRegister reg, ComplexMatrix matrix)
    : reg_(std::move(reg)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() ||
      static_cast<std::size_t>(matrix_.rows()) != reg_.dim()) {
    throw std::invalid_argument("DensityMatrix: dimension does not match register");
  }
  if (!matrix_.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (!is_hermitian(matrix_, kHermitianTol)) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace is not one");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  if (hermitian_eigen(matrix_).values.minCoeff() < kMinEigenvalueTol) {
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(QubitRegister reg, const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0 || !std::isfinite(norm)) {
    throw std::invalid_argument("DensityMatrix::from_pure: zero or non-finite vector");
  }
  const ComplexVector v = psi / norm;
  return DensityMatrix(std::move(reg), v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(QubitRegister reg, std::size_t index) {
  const std::size_t d = reg.dim();
  if (index >= d) throw std::invalid_argument("DensityMatrix::basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(reg), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(QubitRegister reg) {
  const std::size_t d = reg.dim();
  return DensityMatrix(std::move(reg),
                       ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::project(QubitRegister reg, const ComplexMatrix& m,
                                     double* distance) {
  check_square(m, "DensityMatrix::project");
  const auto eig = hermitian_eigen(m);
  const RealVector p = project_to_simplex(eig.values);
  ComplexMatrix out = eig.vectors * p.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  if (distance) *distance = trace_norm(out - m);
  // Absorb round-off in the trace before validation.
  out /= out.trace().real();
  return DensityMatrix(std::move(reg), std::move(out));
}

double DensityMatrix::purity() const {
  return (matrix_ * matrix_).trace().real();
}

double DensityMatrix::linear_entropy() const {
  double acc = 0.0;
  const Eigen::Index d = matrix_.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      acc += matrix_(i, i).real() * matrix_(j, j).real() - std::norm(matrix_(i, j));
    }
  }
  return std::max(0.0, 2.0 * acc);
}

DensityMatrix DensityMatrix::reordered(const std::vector<std::string>& order) const {
  if (order.size() != reg_.size()) {
    throw std::invalid_argument("DensityMatrix::reordered: order must name every qubit");
  }
  const auto perm = reg_.positions_of(order);
  return DensityMatrix(QubitRegister(order), permute_qubits(matrix_, perm));
}

DensityMatrix DensityMatrix::relabeled(QubitRegister reg) const {
  return DensityMatrix(std::move(reg), matrix_);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.reg().concat(b.reg()), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  const QubitRegister kept = rho.reg().subset(keep);
  const auto positions = rho.reg().positions_of(kept.labels());
  return DensityMatrix(kept, partial_trace_positions(rho.matrix(), rho.num_qubits(), positions));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& part) {
  const auto positions = rho.reg().positions_of(part);
  return partial_transpose_positions(rho.matrix(), rho.num_qubits(), positions);
}

double trace_norm(const ComplexMatrix& m) {
  check_square(m, "trace_norm");
  if (is_hermitian(m, 1e-12)) {
    return hermitian_eigen(m).values.cwiseAbs().sum();
  }
  return nuclear_norm(m);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.reg() != sigma.reg()) {
    throw std::invalid_argument("trace_distance: registers differ");
  }
  return trace_norm(rho.matrix() - sigma.matrix());
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.reg() != sigma.reg()) {
    throw std::invalid_argument("state_fidelity: registers differ");
  }
  const double s = nuclear_norm(psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix()));
  return std::min(1.0, s * s);
}

// ---------------------------------------------------------------- Bloch

BlochVector::BlochVector(double x, double y, double z) : r_(x, y, z) {
  if (!r_.allFinite()) throw std::invalid_argument("BlochVector: non-finite component");
  if (r_.norm() > 1.0 + 1e-9) throw std::invalid_argument("BlochVector: length exceeds one");
}

DensityMatrix bloch_to_state(const BlochVector& r, std::string label) {
  const ComplexMatrix m =
      0.5 * (pauli::I() + r.x() * pauli::X() + r.y() * pauli::Y() + r.z() * pauli::Z());
  return DensityMatrix(QubitRegister({std::move(label)}), m);
}

BlochVector state_to_bloch(const DensityMatrix& rho) {
  if (rho.num_qubits() != 1) {
    throw std::invalid_argument("state_to_bloch: state is not a single qubit");
  }
  const auto& m = rho.matrix();
  return BlochVector(2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
                     (m(0, 0) - m(1, 1)).real());
}

// ---------------------------------------------------------------- Pauli

namespace pauli {

ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix X() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix Y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix Z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix by_index(int i) {
  switch (i) {
    case 0: return I();
    case 1: return X();
    case 2: return Y();
    case 3: return Z();
    default: throw std::invalid_argument("pauli::by_index: index out of range");
  }
}

ComplexMatrix from_string(std::string_view s) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : s) {
    switch (c) {
      case 'I': out = kron(out, I()); break;
      case 'X': out = kron(out, X()); break;
      case 'Y': out = kron(out, Y()); break;
      case 'Z': out = kron(out, Z()); break;
      default: throw std::invalid_argument("pauli::from_string: bad character");
    }
  }
  return out;
}

}  // namespace pauli

}  // namespace collmem
