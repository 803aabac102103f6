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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <tuple>

#include <Eigen/SVD>

namespace collmem {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBlockTol = 1e-9;

ComplexMatrix ry_matrix(double theta) {
  ComplexMatrix m(2, 2);
  m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return m;
}

// exp(i t X)
ComplexMatrix exp_ix(double t) {
  return std::cos(t) * pauli::I() + Complex(0, std::sin(t)) * pauli::X();
}

ComplexMatrix s_matrix() {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(1, 1) = Complex(0, 1);
  return m;
}

double wrap_angle(double a) {
  a = std::remainder(a, 2 * kPi);
  if (a <= -kPi) a += 2 * kPi;
  return a;
}

ComplexMatrix magic_basis() {
  ComplexMatrix b(4, 4);
  const Complex i(0, 1);
  b << 1, 0, 0, i,
       0, i, 1, 0,
       0, i, -1, 0,
       1, 0, 0, -i;
  return b / std::sqrt(2.0);
}

// a (x) b = m, both unitary up to the shared scalar.
std::pair<ComplexMatrix, ComplexMatrix> factor_local(const ComplexMatrix& m) {
  ComplexMatrix r(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = m(2 * i + j, 2 * k + l);
  Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s = std::sqrt(svd.singularValues()[0]);
  ComplexMatrix a(2, 2), b(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      a(i, k) = s * svd.matrixU()(2 * i + k, 0);
      b(i, k) = s * std::conj(svd.matrixV()(2 * i + k, 0));
    }
  }
  if ((kron(a, b) - m).cwiseAbs().maxCoeff() > 1e-9) {
    throw NumericalError("kak_decompose: local factor is not a tensor product");
  }
  return {a, b};
}

// ---------------------------------------------------------------- 1q synthesis

struct SingleQubitSequence {
  std::vector<std::pair<GateKind, double>> gates;  // time order
  double phase = 0.0;
};

SingleQubitSequence synthesize_1q(const ComplexMatrix& u) {
  const Complex det = u.determinant();
  const ComplexMatrix v = u / std::sqrt(det);
  const double abs00 = std::abs(v(0, 0));
  const double abs10 = std::abs(v(1, 0));
  const double theta = 2 * std::atan2(abs10, abs00);

  SingleQubitSequence seq;
  auto rz = [&seq](double a) {
    a = wrap_angle(a);
    if (std::abs(a) > 1e-12) seq.gates.emplace_back(GateKind::RZ, a);
  };
  if (abs10 < 1e-12) {
    rz(2 * std::arg(v(1, 1)));
  } else if (abs00 < 1e-12) {
    rz(std::arg(v(0, 1)) - std::arg(v(1, 0)));
    seq.gates.emplace_back(GateKind::X, 0.0);
  } else {
    const double sum = 2 * std::arg(v(1, 1));   // phi + lambda
    const double diff = 2 * std::arg(v(1, 0));  // phi - lambda
    const double phi = (sum + diff) / 2;
    const double lambda = (sum - diff) / 2;
    if (std::abs(theta - kPi / 2) < 1e-10) {
      rz(lambda - kPi / 2);
      seq.gates.emplace_back(GateKind::SqrtX, 0.0);
      rz(phi + kPi / 2);
    } else {
      rz(lambda);
      seq.gates.emplace_back(GateKind::SqrtX, 0.0);
      rz(theta + kPi);
      seq.gates.emplace_back(GateKind::SqrtX, 0.0);
      rz(phi + kPi);
    }
  }
  ComplexMatrix prod = ComplexMatrix::Identity(2, 2);
  for (const auto& [kind, angle] : seq.gates) {
    Gate g{kind, {"q"}, angle, {}};
    prod = gate_matrix(g) * prod;
  }
  const auto match = equivalent_up_to_global_phase(u, prod, kBlockTol);
  if (!match.equivalent) throw NumericalError("single-qubit synthesis failed");
  seq.phase = match.phase;
  return seq;
}

// ---------------------------------------------------------------- 2q blocks

// Gate on a two-qubit block: single-qubit matrix on `a`, or CX a -> b.
struct LocalOp {
  bool cx = false;
  int a = 0;
  int b = 0;
  ComplexMatrix m;
};

LocalOp one(int q, ComplexMatrix m) { return {false, q, 0, std::move(m)}; }
LocalOp cx(int c, int t) { return {true, c, t, {}}; }

ComplexMatrix block_unitary(const std::vector<LocalOp>& ops) {
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  for (const auto& op : ops) {
    if (op.cx) {
      left_apply_local(u, cnot_matrix(), {static_cast<std::size_t>(op.a),
                                          static_cast<std::size_t>(op.b)}, 2);
    } else {
      left_apply_local(u, op.m, {static_cast<std::size_t>(op.a)}, 2);
    }
  }
  return u;
}

// Local Clifford c with c X c^dagger ~ p and c Z c^dagger ~ q (signs free).
ComplexMatrix clifford_mapping(const ComplexMatrix& p, const ComplexMatrix& q) {
  const ComplexMatrix h = h_matrix();
  const ComplexMatrix s = s_matrix();
  const std::array<ComplexMatrix, 8> candidates = {
      pauli::I(), h, s, ComplexMatrix(s.adjoint()), ComplexMatrix(h * s),
      ComplexMatrix(s * h), ComplexMatrix(h * s * h), ComplexMatrix(s * h * s)};
  auto up_to_sign = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff() < 1e-12 || (a + b).cwiseAbs().maxCoeff() < 1e-12;
  };
  for (const auto& c : candidates) {
    if (up_to_sign(c * pauli::X() * c.adjoint(), p) &&
        up_to_sign(c * pauli::Z() * c.adjoint(), q)) {
      return c;
    }
  }
  throw std::logic_error("clifford_mapping: no candidate maps the Pauli pair");
}

// Ops whose product is proportional to exp(i(x XX + y YY + z ZZ)).
std::vector<LocalOp> core_ops(double x, double y, double z) {
  std::array<double, 3> c = {x, y, z};
  const std::array<ComplexMatrix, 3> paulis = {pauli::X(), pauli::Y(), pauli::Z()};
  std::vector<LocalOp> tail;
  for (int k = 0; k < 3; ++k) {
    const double m = std::round(c[k] / (kPi / 2));
    c[k] -= m * kPi / 2;
    // exp(i pi/2 PP) = i PP
    if (static_cast<long long>(m) % 2 != 0) {
      tail.push_back(one(0, paulis[k]));
      tail.push_back(one(1, paulis[k]));
    }
    if (std::abs(c[k]) < 1e-9) c[k] = 0.0;
  }
  std::vector<int> nonzero;
  for (int k = 0; k < 3; ++k) {
    if (c[k] != 0.0) nonzero.push_back(k);
  }

  std::vector<LocalOp> ops;
  if (nonzero.size() == 1) {
    const int k = nonzero[0];
    const double a = c[k];
    const ComplexMatrix conj = k == 2 ? pauli::I() : k == 0 ? h_matrix() : ComplexMatrix(s_matrix() * h_matrix());
    ops.push_back(one(0, conj.adjoint()));
    ops.push_back(one(1, conj.adjoint()));
    if (std::abs(std::abs(a) - kPi / 4) < 1e-9) {
      // exp(+-i pi/4 ZZ) ~ (RZ(-2a) (x) RZ(-2a)) CZ
      ops.push_back(one(1, h_matrix()));
      ops.push_back(cx(0, 1));
      ops.push_back(one(1, h_matrix()));
      ops.push_back(one(0, rz_matrix(-2 * a)));
      ops.push_back(one(1, rz_matrix(-2 * a)));
    } else {
      ops.push_back(cx(0, 1));
      ops.push_back(one(1, rz_matrix(-2 * a)));
      ops.push_back(cx(0, 1));
    }
    ops.push_back(one(0, conj));
    ops.push_back(one(1, conj));
  } else if (nonzero.size() == 2) {
    const int i = nonzero[0], j = nonzero[1];
    const ComplexMatrix conj = clifford_mapping(paulis[i], paulis[j]);
    ops.push_back(one(0, conj.adjoint()));
    ops.push_back(one(1, conj.adjoint()));
    // exp(i(p XX + q ZZ)) = CX (exp(ipX) (x) exp(iqZ)) CX
    ops.push_back(cx(0, 1));
    ops.push_back(one(0, exp_ix(c[i])));
    ops.push_back(one(1, rz_matrix(-2 * c[j])));
    ops.push_back(cx(0, 1));
    ops.push_back(one(0, conj));
    ops.push_back(one(1, conj));
  } else if (nonzero.size() == 3) {
    ops.push_back(one(1, rz_matrix(-kPi / 2)));
    ops.push_back(cx(1, 0));
    ops.push_back(one(0, rz_matrix(kPi / 2 - 2 * c[2])));
    ops.push_back(one(1, ry_matrix(2 * c[0] - kPi / 2)));
    ops.push_back(cx(0, 1));
    ops.push_back(one(1, ry_matrix(kPi / 2 - 2 * c[1])));
    ops.push_back(cx(1, 0));
    ops.push_back(one(0, rz_matrix(kPi / 2)));
  }
  ops.insert(ops.end(), tail.begin(), tail.end());
  return ops;
}

// ---------------------------------------------------------------- lowering

struct Op {
  bool ecr = false;
  std::size_t q0 = 0;
  std::size_t q1 = 0;
  ComplexMatrix m;
};

struct Lowering {
  std::vector<Op> ops;
  double phase = 0.0;

  void single(std::size_t q, ComplexMatrix m) { ops.push_back({false, q, 0, std::move(m)}); }
  void ecr(std::size_t c, std::size_t t) { ops.push_back({true, c, t, {}}); }

  // CX = e^{i pi/4} (RZ(pi/2) (x) SX) ECR (X (x) I)
  void cnot(std::size_t c, std::size_t t) {
    single(c, pauli::X());
    ecr(c, t);
    single(c, rz_matrix(kPi / 2));
    single(t, sx_matrix());
    phase += kPi / 4;
  }

  void two_qubit(const ComplexMatrix& u, std::size_t q0, std::size_t q1) {
    const KakDecomposition k = kak_decompose(u);
    std::vector<LocalOp> block = {one(0, k.b0), one(1, k.b1)};
    for (auto& op : core_ops(k.x, k.y, k.z)) block.push_back(std::move(op));
    block.push_back(one(0, k.a0));
    block.push_back(one(1, k.a1));
    const auto match = equivalent_up_to_global_phase(u, block_unitary(block), kBlockTol);
    if (!match.equivalent) throw NumericalError("two-qubit synthesis failed");
    phase += match.phase;
    const std::array<std::size_t, 2> map = {q0, q1};
    for (auto& op : block) {
      if (op.cx) {
        cnot(map[op.a], map[op.b]);
      } else {
        single(map[op.a], std::move(op.m));
      }
    }
  }
};

// Controlled-m on (control, target) as a 4x4 block diag(I, m).
ComplexMatrix controlled(const ComplexMatrix& m) {
  ComplexMatrix out = ComplexMatrix::Identity(4, 4);
  out.block(2, 2, 2, 2) = m;
  return out;
}

// w with w * w = v for a 2x2 unitary v.
ComplexMatrix unitary_sqrt(const ComplexMatrix& v) {
  const Complex det = v.determinant();
  const double alpha = std::arg(det) / 2;
  const ComplexMatrix s = v * std::polar(1.0, -alpha);  // cos t I - i sin t (n.sigma)
  const double cos_t = std::clamp(0.5 * s.trace().real(), -1.0, 1.0);
  const double t = std::acos(cos_t);
  ComplexMatrix root;
  if (std::sin(t) < 1e-12) {
    root = cos_t > 0 ? pauli::I() : ComplexMatrix(Complex(0, -1) * pauli::Z());
  } else {
    const ComplexMatrix n_sigma = Complex(0, 1) * (s - cos_t * pauli::I()) / std::sin(t);
    root = std::cos(t / 2) * pauli::I() - Complex(0, std::sin(t / 2)) * n_sigma;
  }
  return std::polar(1.0, alpha / 2) * root;
}

// Gate on `target` conditioned on the other qubits holding `values` bits.
void fully_controlled(Circuit& c, const std::vector<std::string>& qubits, std::size_t target,
                      std::size_t state, const ComplexMatrix& v) {
  if ((v - pauli::I()).cwiseAbs().maxCoeff() < 1e-13) return;
  const std::size_t n = qubits.size();
  std::vector<std::size_t> controls;
  for (std::size_t p = 0; p < n; ++p) {
    if (p != target) controls.push_back(p);
  }
  auto bit = [&](std::size_t p) { return (state >> (n - 1 - p)) & 1U; };
  std::vector<std::size_t> flipped;
  for (auto p : controls) {
    if (bit(p) == 0) flipped.push_back(p);
  }
  for (auto p : flipped) c.add(Gate::x(qubits[p]));
  const std::string& t = qubits[target];
  if (controls.empty()) {
    c.add(Gate::unitary({t}, v));
  } else if (controls.size() == 1) {
    c.add(Gate::unitary({qubits[controls[0]], t}, controlled(v)));
  } else {
    const std::string& c1 = qubits[controls[0]];
    const std::string& c2 = qubits[controls[1]];
    const ComplexMatrix w = unitary_sqrt(v);
    c.add(Gate::unitary({c2, t}, controlled(w)));
    c.add(Gate::cnot(c1, c2));
    c.add(Gate::unitary({c2, t}, controlled(w.adjoint())));
    c.add(Gate::cnot(c1, c2));
    c.add(Gate::unitary({c1, t}, controlled(w)));
  }
  for (auto p : flipped) c.add(Gate::x(qubits[p]));
}

}  // namespace

// ---------------------------------------------------------------- KAK

ComplexMatrix kak_core(double x, double y, double z) {
  const ComplexMatrix h = x * kron(pauli::X(), pauli::X()) + y * kron(pauli::Y(), pauli::Y()) +
                          z * kron(pauli::Z(), pauli::Z());
  return hermitian_exp(h, Complex(0, 1));
}

ComplexMatrix kak_reconstruct(const KakDecomposition& k) {
  return std::polar(1.0, k.phase) * kron(k.a0, k.a1) * kak_core(k.x, k.y, k.z) * kron(k.b0, k.b1);
}

KakDecomposition kak_decompose(const ComplexMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4 || !is_unitary(u, 1e-9)) {
    throw std::invalid_argument("kak_decompose: expected a 4x4 unitary");
  }
  const Complex det = u.determinant();
  const double phase0 = std::arg(det) / 4;
  const ComplexMatrix su = u * std::polar(1.0, -phase0);
  const ComplexMatrix b = magic_basis();
  const ComplexMatrix up = b.adjoint() * su * b;
  const ComplexMatrix m2 = up.transpose() * up;

  // Real and imaginary parts of m2 commute; a generic real combination
  // shares their eigenvectors.
  Eigen::Matrix4d p;
  bool found = false;
  for (double r : {0.5718, 1.3, -0.77, 2.9, 0.123}) {
    const Eigen::Matrix4d combo = m2.real() + r * m2.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(combo);
    p = solver.eigenvectors();
    const ComplexMatrix d = p.transpose().cast<Complex>() * m2 * p.cast<Complex>();
    const ComplexMatrix off = d - ComplexMatrix(d.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() < 1e-9) {
      found = true;
      break;
    }
  }
  if (!found) throw NumericalError("kak_decompose: simultaneous diagonalization failed");
  if (p.determinant() < 0) p.col(0) *= -1.0;

  const ComplexMatrix pc = p.cast<Complex>();
  const ComplexVector diag = (pc.transpose() * m2 * pc).diagonal();
  Eigen::Vector4d theta;
  for (int i = 0; i < 4; ++i) theta[i] = std::arg(diag[i]) / 2;
  ComplexVector rot(4);
  for (int i = 0; i < 4; ++i) rot[i] = std::polar(1.0, -theta[i]);
  ComplexMatrix k1 = up * pc * rot.asDiagonal();
  if (k1.determinant().real() < 0) {
    theta[0] += kPi;
    k1.col(0) *= -1.0;
  }

  const ComplexMatrix left = b * k1 * b.adjoint();
  const ComplexMatrix right = b * pc.transpose() * b.adjoint();

  // theta_k = phi + x dx_k + y dy_k + z dz_k in the magic basis.
  Eigen::Matrix4d sys;
  const std::array<ComplexMatrix, 3> pp = {kron(pauli::X(), pauli::X()),
                                           kron(pauli::Y(), pauli::Y()),
                                           kron(pauli::Z(), pauli::Z())};
  for (int k = 0; k < 4; ++k) sys(k, 0) = 1.0;
  for (int j = 0; j < 3; ++j) {
    const ComplexMatrix d = b.adjoint() * pp[j] * b;
    for (int k = 0; k < 4; ++k) sys(k, j + 1) = d(k, k).real();
  }
  const Eigen::Vector4d coeff = sys.colPivHouseholderQr().solve(theta);

  KakDecomposition out;
  std::tie(out.a0, out.a1) = factor_local(left);
  std::tie(out.b0, out.b1) = factor_local(right);
  out.x = coeff[1];
  out.y = coeff[2];
  out.z = coeff[3];
  out.phase = phase0 + coeff[0];
  if ((kak_reconstruct(out) - u).cwiseAbs().maxCoeff() > 1e-9) {
    throw NumericalError("kak_decompose: reconstruction check failed");
  }
  return out;
}

// ---------------------------------------------------------------- public

Circuit synthesize_single_qubit(const ComplexMatrix& u, const std::string& qubit) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-9)) {
    throw std::invalid_argument("synthesize_single_qubit: expected a 2x2 unitary");
  }
  const auto seq = synthesize_1q(u);
  Circuit c(QubitRegister({qubit}), seq.phase);
  for (const auto& [kind, angle] : seq.gates) c.add(Gate{kind, {qubit}, angle, {}});
  return c;
}

Circuit decompose_unitary(const ComplexMatrix& u, const std::vector<std::string>& qubits) {
  const std::size_t n = qubits.size();
  if (n == 0 || u.rows() != (Eigen::Index{1} << n) || u.cols() != u.rows()) {
    throw std::invalid_argument("decompose_unitary: matrix size does not match qubits");
  }
  if (!is_unitary(u, 1e-9)) throw std::invalid_argument("decompose_unitary: not unitary");
  if (n > 3) throw std::invalid_argument("decompose_unitary: at most three qubits supported");
  Circuit out{QubitRegister(qubits)};
  if (n <= 2) {
    out.add(Gate::unitary(qubits, u));
    return out;
  }

  const std::size_t d = std::size_t{1} << n;
  std::vector<std::size_t> gray(d);
  for (std::size_t k = 0; k < d; ++k) gray[k] = k ^ (k >> 1);
  ComplexMatrix w(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) w(i, j) = u(gray[i], gray[j]);

  struct Rotation {
    std::size_t row;  // acts on gray rows (row - 1, row)
    ComplexMatrix g;
  };
  std::vector<Rotation> rotations;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    for (std::size_t i = d - 1; i > j; --i) {
      const Complex a = w(i - 1, j);
      const Complex bb = w(i, j);
      if (std::abs(bb) < 1e-14) continue;
      const double r = std::hypot(std::abs(a), std::abs(bb));
      ComplexMatrix g(2, 2);
      g << std::conj(a) / r, std::conj(bb) / r, -bb / r, a / r;
      const Eigen::RowVectorXcd top = w.row(i - 1), bottom = w.row(i);
      w.row(i - 1) = g(0, 0) * top + g(0, 1) * bottom;
      w.row(i) = g(1, 0) * top + g(1, 1) * bottom;
      rotations.push_back({i, g});
    }
  }

  // w is now diagonal; u = G_1^dag ... G_m^dag D in gray coordinates. The
  // diagonal acts first, as controlled phases on the last qubit.
  std::vector<Complex> diag(d);
  for (std::size_t k = 0; k < d; ++k) diag[gray[k]] = w(k, k);
  for (std::size_t m = 0; m < d / 2; ++m) {
    ComplexMatrix v = ComplexMatrix::Zero(2, 2);
    v(0, 0) = diag[2 * m];
    v(1, 1) = diag[2 * m + 1];
    fully_controlled(out, qubits, n - 1, 2 * m, v);
  }
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
    const std::size_t s = gray[it->row - 1];
    const std::size_t t = gray[it->row];
    const std::size_t diff = s ^ t;
    std::size_t target = 0;
    while ((std::size_t{1} << (n - 1 - target)) != diff) ++target;
    ComplexMatrix v = it->g.adjoint();
    if (s & diff) v = pauli::X() * v * pauli::X();
    fully_controlled(out, qubits, target, s, v);
  }
  const auto match = equivalent_up_to_global_phase(unitary_of_circuit(out), u, 1e-9);
  if (!match.equivalent || std::abs(match.phase) > 1e-9) {
    throw NumericalError("decompose_unitary: verification failed");
  }
  return out;
}

Circuit transpile(const Circuit& c) {
  const std::size_t n = c.reg().size();
  Lowering low;
  for (const auto& g : c.gates()) {
    const auto pos = c.reg().positions_of(g.qubits);
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::SqrtX:
      case GateKind::RZ:
        low.single(pos[0], gate_matrix(g));
        break;
      case GateKind::CNOT:
        low.cnot(pos[0], pos[1]);
        break;
      case GateKind::ECR:
        low.ecr(pos[0], pos[1]);
        break;
      case GateKind::Unitary:
        if (pos.size() == 1) {
          low.single(pos[0], g.matrix);
        } else if (pos.size() == 2) {
          low.two_qubit(g.matrix, pos[0], pos[1]);
        } else {
          throw std::invalid_argument("transpile: unitary on more than two qubits; decompose it first");
        }
        break;
    }
  }

  Circuit out(c.reg(), c.global_phase() + low.phase);
  std::vector<std::optional<ComplexMatrix>> pending(n);
  auto flush = [&](std::size_t q) {
    if (!pending[q]) return;
    const auto seq = synthesize_1q(*pending[q]);
    for (const auto& [kind, angle] : seq.gates) {
      out.add(Gate{kind, {c.reg().labels()[q]}, angle, {}});
    }
    out.add_phase(seq.phase);
    pending[q].reset();
  };
  for (auto& op : low.ops) {
    if (op.ecr) {
      flush(op.q0);
      flush(op.q1);
      out.add(Gate::ecr(c.reg().labels()[op.q0], c.reg().labels()[op.q1]));
    } else {
      pending[op.q0] = pending[op.q0] ? ComplexMatrix(op.m * *pending[op.q0]) : op.m;
    }
  }
  for (std::size_t q = 0; q < n; ++q) flush(q);

  Circuit wrapped(out.reg(), wrap_angle(out.global_phase()));
  for (const auto& g : out.gates()) wrapped.add(g);
  if (n <= kMaxUnitaryQubits) {
    const auto match =
        equivalent_up_to_global_phase(unitary_of_circuit(wrapped), unitary_of_circuit(c), 1e-8);
    if (!match.equivalent || std::abs(wrap_angle(match.phase)) > 1e-8) {
      throw NumericalError("transpile: native circuit does not reproduce the input");
    }
  }
  return wrapped;
}

}  // namespace collmem
