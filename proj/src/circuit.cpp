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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace collmem {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, int line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("circuit text line " + std::to_string(line) +
                                ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t expected_arity(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::ECR: return 2;
    case GateKind::Unitary: return 0;
    default: return 1;
  }
}

}  // namespace

Gate Gate::h(std::string q) { return {GateKind::H, {std::move(q)}, 0.0, {}}; }
Gate Gate::x(std::string q) { return {GateKind::X, {std::move(q)}, 0.0, {}}; }
Gate Gate::sx(std::string q) { return {GateKind::SqrtX, {std::move(q)}, 0.0, {}}; }
Gate Gate::rz(std::string q, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("Gate::rz: non-finite angle");
  return {GateKind::RZ, {std::move(q)}, theta, {}};
}
Gate Gate::cnot(std::string control, std::string target) {
  return {GateKind::CNOT, {std::move(control), std::move(target)}, 0.0, {}};
}
Gate Gate::ecr(std::string control, std::string target) {
  return {GateKind::ECR, {std::move(control), std::move(target)}, 0.0, {}};
}
Gate Gate::unitary(std::vector<std::string> qubits, ComplexMatrix m) {
  if (qubits.empty() || m.rows() != (Eigen::Index{1} << qubits.size()) || m.cols() != m.rows()) {
    throw std::invalid_argument("Gate::unitary: matrix size does not match qubits");
  }
  if (!is_unitary(m, 1e-9)) throw std::invalid_argument("Gate::unitary: matrix is not unitary");
  return {GateKind::Unitary, std::move(qubits), 0.0, std::move(m)};
}

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::SqrtX: return "SX";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CX";
    case GateKind::ECR: return "ECR";
    case GateKind::Unitary: return "UNITARY";
  }
  return "?";
}

bool is_native(GateKind kind) {
  return kind == GateKind::RZ || kind == GateKind::SqrtX || kind == GateKind::X ||
         kind == GateKind::ECR;
}

ComplexMatrix rz_matrix(double theta) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

ComplexMatrix sx_matrix() {
  ComplexMatrix m(2, 2);
  m << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5);
  return m;
}

ComplexMatrix h_matrix() {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

ComplexMatrix ecr_matrix() {
  const ComplexMatrix m = kron(pauli::X(), pauli::I()) - kron(pauli::Y(), pauli::X());
  return std::polar(1.0, -kPi / 4) * m / std::sqrt(2.0);
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

ComplexMatrix swap_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

ComplexMatrix gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: return h_matrix();
    case GateKind::X: return pauli::X();
    case GateKind::SqrtX: return sx_matrix();
    case GateKind::RZ: return rz_matrix(g.theta);
    case GateKind::CNOT: return cnot_matrix();
    case GateKind::ECR: return ecr_matrix();
    case GateKind::Unitary: return g.matrix;
  }
  throw std::logic_error("gate_matrix: unknown gate kind");
}

// ---------------------------------------------------------------- Circuit

Circuit::Circuit(QubitRegister reg, double global_phase)
    : reg_(std::move(reg)), global_phase_(global_phase) {}

Circuit& Circuit::add(Gate g) {
  const std::size_t arity = expected_arity(g.kind);
  if (arity != 0 && g.qubits.size() != arity) {
    throw std::invalid_argument("Circuit::add: " + gate_name(g.kind) + " takes " +
                                std::to_string(arity) + " qubit(s)");
  }
  std::set<std::string> seen;
  for (const auto& q : g.qubits) {
    reg_.require_index(q);
    if (!seen.insert(q).second) {
      throw std::invalid_argument("Circuit::add: repeated qubit '" + q + "' in one gate");
    }
  }
  gates_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  for (const auto& l : other.reg().labels()) reg_.require_index(l);
  for (const auto& g : other.gates()) add(g);
  global_phase_ += other.global_phase();
  return *this;
}

bool Circuit::is_native() const {
  for (const auto& g : gates_) {
    if (!collmem::is_native(g.kind)) return false;
  }
  return true;
}

ComplexMatrix unitary_of_circuit(const Circuit& c) {
  const std::size_t n = c.reg().size();
  if (n > kMaxUnitaryQubits) {
    throw std::invalid_argument("unitary_of_circuit: register exceeds " +
                                std::to_string(kMaxUnitaryQubits) + " qubits");
  }
  const std::size_t d = c.reg().dim();
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (const auto& g : c.gates()) {
    left_apply_local(u, gate_matrix(g), c.reg().positions_of(g.qubits), n);
  }
  return std::polar(1.0, c.global_phase()) * u;
}

PhaseMatch equivalent_up_to_global_phase(const ComplexMatrix& u, const ComplexMatrix& v,
                                         double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.size() == 0) {
    throw std::invalid_argument("equivalent_up_to_global_phase: shapes differ");
  }
  const ComplexMatrix overlap = v.adjoint() * u;
  Eigen::Index r = 0, c = 0;
  const double largest = overlap.cwiseAbs().maxCoeff(&r, &c);
  if (largest == 0.0 || u.cwiseAbs().maxCoeff() == 0.0 || v.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("equivalent_up_to_global_phase: zero matrix");
  }
  PhaseMatch out;
  out.phase = std::arg(overlap(r, c));
  out.max_deviation = (u - std::polar(1.0, out.phase) * v).cwiseAbs().maxCoeff();
  out.equivalent = out.max_deviation <= tol;
  return out;
}

std::map<std::string, std::size_t> gate_count(const Circuit& c) {
  std::map<std::string, std::size_t> out;
  for (const auto& g : c.gates()) ++out[gate_name(g.kind)];
  return out;
}

// ---------------------------------------------------------------- text

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits ";
  for (std::size_t i = 0; i < c.reg().size(); ++i) {
    os << (i ? "," : "") << c.reg().labels()[i];
  }
  os << "\nphase " << format_double(c.global_phase()) << "\n";
  for (const auto& g : c.gates()) {
    os << gate_name(g.kind) << ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) os << (i ? "," : "") << g.qubits[i];
    if (g.kind == GateKind::RZ) os << ' ' << format_double(g.theta);
    if (g.kind == GateKind::Unitary) {
      for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
        for (Eigen::Index col = 0; col < g.matrix.cols(); ++col) {
          os << ' ' << format_double(g.matrix(r, col).real()) << ' '
             << format_double(g.matrix(r, col).imag());
        }
      }
    }
    os << '\n';
  }
  return os.str();
}

Circuit from_text(std::string_view text) {
  std::optional<QubitRegister> reg;
  std::vector<std::string> seen_labels;
  double phase = 0.0;
  std::vector<Gate> gates;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& head = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n) {
        throw std::invalid_argument("circuit text line " + std::to_string(line_no) +
                                    ": expected " + std::to_string(n - 1) + " argument(s)");
      }
    };
    if (head == "qubits") {
      need(2);
      reg = QubitRegister(split(tok[1], ','));
      continue;
    }
    if (head == "phase") {
      need(2);
      phase = parse_double(tok[1], line_no);
      continue;
    }
    if (tok.size() < 2) {
      throw std::invalid_argument("circuit text line " + std::to_string(line_no) +
                                  ": missing qubit list");
    }
    auto qubits = split(tok[1], ',');
    for (const auto& q : qubits) {
      if (std::find(seen_labels.begin(), seen_labels.end(), q) == seen_labels.end()) {
        seen_labels.push_back(q);
      }
    }
    auto single = [&]() -> std::string {
      if (qubits.size() != 1) {
        throw std::invalid_argument("circuit text line " + std::to_string(line_no) +
                                    ": gate takes one qubit");
      }
      return qubits[0];
    };
    auto pair = [&]() {
      if (qubits.size() != 2) {
        throw std::invalid_argument("circuit text line " + std::to_string(line_no) +
                                    ": gate takes two qubits");
      }
    };
    if (head == "H") { need(2); gates.push_back(Gate::h(single())); }
    else if (head == "X") { need(2); gates.push_back(Gate::x(single())); }
    else if (head == "SX") { need(2); gates.push_back(Gate::sx(single())); }
    else if (head == "RZ") {
      need(3);
      gates.push_back(Gate::rz(single(), parse_double(tok[2], line_no)));
    } else if (head == "CX" || head == "CNOT") {
      need(2); pair();
      gates.push_back(Gate::cnot(qubits[0], qubits[1]));
    } else if (head == "ECR") {
      need(2); pair();
      gates.push_back(Gate::ecr(qubits[0], qubits[1]));
    } else if (head == "UNITARY") {
      const std::size_t d = std::size_t{1} << qubits.size();
      need(2 + 2 * d * d);
      ComplexMatrix m(d, d);
      std::size_t k = 2;
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c, k += 2) {
          m(r, c) = Complex(parse_double(tok[k], line_no), parse_double(tok[k + 1], line_no));
        }
      }
      gates.push_back(Gate::unitary(qubits, m));
    } else {
      throw std::invalid_argument("circuit text line " + std::to_string(line_no) +
                                  ": unknown gate '" + head + "'");
    }
  }
  Circuit c(reg ? *reg : QubitRegister(seen_labels), phase);
  for (auto& g : gates) c.add(std::move(g));
  return c;
}

// ---------------------------------------------------------------- sequences

Circuit native_bell_preparation(const std::string& ancilla, const std::string& system) {
  Circuit c(QubitRegister({system, ancilla}), kPi);
  const std::string& top = system;
  const std::string& bottom = ancilla;
  c.add(Gate::rz(top, kPi / 2)).add(Gate::rz(top, kPi / 2)).add(Gate::sx(top));
  c.add(Gate::rz(top, kPi / 2)).add(Gate::rz(top, kPi / 2));
  c.add(Gate::rz(bottom, kPi / 2)).add(Gate::sx(bottom));
  c.add(Gate::rz(bottom, kPi / 2)).add(Gate::rz(bottom, -kPi / 2));
  c.add(Gate::ecr(bottom, top));
  // The trailing symbol on the lower line is read as an X gate.
  c.add(Gate::x(bottom));
  return c;
}

Circuit native_exchange_quarter(const std::string& system, const std::string& environment) {
  Circuit c(QubitRegister({system, environment}));
  const std::string& top = system;
  const std::string& bottom = environment;
  c.add(Gate::rz(bottom, 3 * kPi / 4)).add(Gate::sx(bottom)).add(Gate::rz(bottom, kPi / 4));
  c.add(Gate::rz(top, -kPi / 4)).add(Gate::sx(top));
  c.add(Gate::ecr(bottom, top));
  c.add(Gate::sx(top)).add(Gate::rz(top, 3 * kPi / 4)).add(Gate::sx(top)).add(Gate::rz(top, kPi / 4));
  c.add(Gate::rz(bottom, kPi / 4)).add(Gate::sx(bottom)).add(Gate::rz(bottom, 3 * kPi / 4));
  c.add(Gate::sx(bottom));
  c.add(Gate::ecr(bottom, top));
  c.add(Gate::rz(top, kPi / 4)).add(Gate::sx(top)).add(Gate::rz(top, -3 * kPi / 4));
  c.add(Gate::sx(bottom)).add(Gate::rz(bottom, kPi / 4));
  return c;
}

}  // namespace collmem
