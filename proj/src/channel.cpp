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

#include "collmem/channel.hpp"

#include <cmath>

namespace collmem {

namespace {

std::size_t log2_exact(std::size_t d) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  if ((std::size_t{1} << n) != d) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, double tol) : ops_(std::move(ops)) {
  if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
  const auto rows = ops_.front().rows();
  const auto cols = ops_.front().cols();
  ComplexMatrix acc = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : ops_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw std::invalid_argument("KrausChannel: operator shapes differ");
    }
    acc += k.adjoint() * k;
  }
  log2_exact(static_cast<std::size_t>(rows));
  log2_exact(static_cast<std::size_t>(cols));
  const double err = (acc - ComplexMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    throw std::invalid_argument("KrausChannel: operators are not trace preserving");
  }
}

KrausChannel KrausChannel::identity(std::size_t num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  return KrausChannel({ComplexMatrix::Identity(d, d)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) {
  if (!is_unitary(u, 1e-9)) throw std::invalid_argument("KrausChannel::unitary: not unitary");
  return KrausChannel({u});
}

std::size_t KrausChannel::num_qubits() const { return log2_exact(in_dim()); }

ComplexMatrix KrausChannel::act(const ComplexMatrix& m) const {
  if (static_cast<std::size_t>(m.rows()) != in_dim() || m.cols() != m.rows()) {
    throw std::invalid_argument("KrausChannel::act: operator dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(out_dim(), out_dim());
  for (const auto& k : ops_) out.noalias() += k * m * k.adjoint();
  return out;
}

KrausChannel KrausChannel::compressed() const {
  return channel_of_choi(choi_of_channel(*this));
}

// ---------------------------------------------------------------- Choi

namespace {

DensityMatrix normalized_choi(const DensityMatrix& joint, const std::vector<std::string>& out_labels,
                              const std::vector<std::string>& ref_labels, double tp_tolerance,
                              double& projection_distance) {
  if (out_labels.empty() || ref_labels.empty()) {
    throw std::invalid_argument("ChoiState: output and reference labels are required");
  }
  std::vector<std::string> order = out_labels;
  order.insert(order.end(), ref_labels.begin(), ref_labels.end());
  if (order.size() != joint.num_qubits()) {
    throw std::invalid_argument("ChoiState: labels must cover the joint register exactly");
  }
  DensityMatrix ordered = joint.reordered(order);

  const std::size_t n_out = out_labels.size();
  const std::size_t n = order.size();
  std::vector<std::size_t> ref_pos;
  for (std::size_t i = n_out; i < n; ++i) ref_pos.push_back(i);
  const double d_in = static_cast<double>(std::size_t{1} << ref_labels.size());
  const ComplexMatrix marginal = partial_trace_positions(ordered.matrix(), n, ref_pos);
  const ComplexMatrix target = ComplexMatrix::Identity(marginal.rows(), marginal.cols()) / d_in;
  const double deviation = (marginal - target).cwiseAbs().maxCoeff();
  if (deviation > tp_tolerance) {
    throw std::invalid_argument("ChoiState: reference marginal deviates from I/d; map is not "
                                "trace preserving");
  }
  projection_distance = 0.0;
  if (deviation <= kChoiMarginalTol) return ordered;

  // rho -> (I (x) X^{-1/2}) rho (I (x) X^{-1/2}) with X = d * marginal.
  const auto eig = hermitian_eigen(d_in * marginal);
  if (eig.values.minCoeff() < 1e-6) throw NumericalError("ChoiState: reference marginal is singular");
  const RealVector inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix x = eig.vectors * inv_sqrt.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  const std::size_t d_out = std::size_t{1} << n_out;
  const ComplexMatrix lift = kron(ComplexMatrix::Identity(d_out, d_out), x);
  ComplexMatrix corrected = lift * ordered.matrix() * lift;
  corrected /= corrected.trace().real();
  projection_distance = trace_norm(corrected - ordered.matrix());
  return DensityMatrix(ordered.reg(), corrected);
}

}  // namespace

ChoiState::ChoiState(const DensityMatrix& joint, std::vector<std::string> out_labels,
                     std::vector<std::string> ref_labels, double tp_tolerance)
    : state_(normalized_choi(joint, out_labels, ref_labels, tp_tolerance, projection_distance_)),
      out_labels_(std::move(out_labels)),
      ref_labels_(std::move(ref_labels)) {}

std::vector<std::string> default_labels(const std::string& prefix, std::size_t n) {
  if (n == 1) return {prefix};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

ChoiState choi_of_channel(const KrausChannel& ch, std::vector<std::string> out_labels,
                          std::vector<std::string> ref_labels) {
  const std::size_t d_in = ch.in_dim();
  const std::size_t d_out = ch.out_dim();
  if ((std::size_t{1} << ref_labels.size()) != d_in ||
      (std::size_t{1} << out_labels.size()) != d_out) {
    throw std::invalid_argument("choi_of_channel: label counts do not match channel");
  }
  // sum_k vec(K_k) vec(K_k)^dagger / d_in with vec index (out, ref).
  ComplexMatrix m = ComplexMatrix::Zero(d_out * d_in, d_out * d_in);
  for (const auto& k : ch.operators()) {
    ComplexVector v(d_out * d_in);
    for (std::size_t o = 0; o < d_out; ++o) {
      for (std::size_t r = 0; r < d_in; ++r) v[o * d_in + r] = k(o, r);
    }
    m.noalias() += v * v.adjoint();
  }
  m /= static_cast<double>(d_in);
  std::vector<std::string> labels = out_labels;
  labels.insert(labels.end(), ref_labels.begin(), ref_labels.end());
  return ChoiState(DensityMatrix(QubitRegister(labels), m), std::move(out_labels),
                   std::move(ref_labels));
}

ChoiState choi_of_channel(const KrausChannel& ch) {
  return choi_of_channel(ch, default_labels("S", log2_exact(ch.out_dim())),
                         default_labels("A", log2_exact(ch.in_dim())));
}

KrausChannel channel_of_choi(const ChoiState& choi) {
  const std::size_t d_in = choi.in_dim();
  const std::size_t d_out = choi.out_dim();
  const auto eig = hermitian_eigen(choi.state().matrix());
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
    const double lambda = eig.values[i];
    if (lambda <= kKrausCutoff) continue;
    const double scale = std::sqrt(static_cast<double>(d_in) * lambda);
    ComplexMatrix k(d_out, d_in);
    for (std::size_t o = 0; o < d_out; ++o) {
      for (std::size_t r = 0; r < d_in; ++r) k(o, r) = scale * eig.vectors(o * d_in + r, i);
    }
    ops.push_back(std::move(k));
  }
  if (ops.empty()) throw NumericalError("channel_of_choi: Choi state has no support");
  // Truncated eigenvalues shift completeness by at most d * cutoff.
  return KrausChannel(std::move(ops), 1e-8);
}

// ---------------------------------------------------------------- transfer

std::string pauli_label(std::size_t a, std::size_t num_qubits) {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string s(num_qubits, 'I');
  for (std::size_t i = 0; i < num_qubits; ++i) {
    s[num_qubits - 1 - i] = kNames[a % 4];
    a /= 4;
  }
  return s;
}

TransferMatrix::TransferMatrix(RealMatrix m, std::size_t num_qubits)
    : m_(std::move(m)), num_qubits_(num_qubits) {
  const Eigen::Index size = Eigen::Index{1} << (2 * num_qubits);
  if (m_.rows() != size || m_.cols() != size) {
    throw std::invalid_argument("TransferMatrix: size does not match qubit count");
  }
  if (std::abs(m_(0, 0) - 1.0) > 1e-9 || m_.row(0).tail(size - 1).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("TransferMatrix: first row must be (1, 0, ..., 0)");
  }
}

Eigen::Matrix3d TransferMatrix::block() const {
  if (num_qubits_ != 1) throw std::invalid_argument("TransferMatrix::block: not a qubit map");
  return m_.block<3, 3>(1, 1);
}

Eigen::Vector3d TransferMatrix::translation() const {
  if (num_qubits_ != 1) throw std::invalid_argument("TransferMatrix::translation: not a qubit map");
  return m_.block<3, 1>(1, 0);
}

BlochVector TransferMatrix::apply(const BlochVector& r) const {
  return BlochVector(block() * r.vec() + translation());
}

TransferMatrix transfer_of_channel(const KrausChannel& ch) {
  if (ch.in_dim() != ch.out_dim()) {
    throw std::invalid_argument("transfer_of_channel: channel is not square");
  }
  const std::size_t n = ch.num_qubits();
  const std::size_t size = std::size_t{1} << (2 * n);
  const double d = static_cast<double>(ch.in_dim());
  std::vector<ComplexMatrix> paulis;
  paulis.reserve(size);
  for (std::size_t a = 0; a < size; ++a) paulis.push_back(pauli::from_string(pauli_label(a, n)));
  RealMatrix m(size, size);
  for (std::size_t b = 0; b < size; ++b) {
    const ComplexMatrix image = ch.act(paulis[b]);
    for (std::size_t a = 0; a < size; ++a) {
      m(a, b) = (paulis[a] * image).trace().real() / d;
    }
  }
  return TransferMatrix(std::move(m), n);
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.out_dim() != second.in_dim()) {
    throw std::invalid_argument("compose: dimension mismatch");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.operators().size() * second.operators().size());
  for (const auto& b : second.operators()) {
    for (const auto& a : first.operators()) ops.push_back(b * a);
  }
  KrausChannel out(std::move(ops), 1e-8);
  const std::size_t d = first.in_dim() * second.out_dim();
  if (out.operators().size() > d && d <= 256) return out.compressed();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.in_dim() != rho.dim() || ch.out_dim() != rho.dim()) {
    throw std::invalid_argument("apply: channel does not match state dimension");
  }
  ComplexMatrix out = ch.act(rho.matrix());
  out /= out.trace().real();
  return DensityMatrix(rho.reg(), std::move(out));
}

DensityMatrix apply_extended(const KrausChannel& ch, const DensityMatrix& rho,
                             const std::vector<std::string>& targets) {
  if (ch.in_dim() != ch.out_dim() || (std::size_t{1} << targets.size()) != ch.in_dim()) {
    throw std::invalid_argument("apply_extended: channel does not match target qubits");
  }
  const auto positions = rho.reg().positions_of(targets);
  const std::size_t n = rho.num_qubits();
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : ch.operators()) {
    ComplexMatrix term = rho.matrix();
    left_apply_local(term, k, positions, n);
    right_apply_local_adjoint(term, k, positions, n);
    out += term;
  }
  out /= out.trace().real();
  return DensityMatrix(rho.reg(), std::move(out));
}

}  // namespace collmem
