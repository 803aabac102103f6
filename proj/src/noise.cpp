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

#include "collmem/noise.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace collmem {

namespace {

std::string pair_key(const std::string& a, const std::string& b) {
  return a < b ? a + "," + b : b + "," + a;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& s, int line) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("noise config line " + std::to_string(line) + ": bad number '" +
                                s + "'");
  }
  return v;
}

ReadoutError parse_readout(const std::string& s, int line) {
  std::istringstream in(s);
  std::string a, b, extra;
  if (!(in >> a >> b) || (in >> extra)) {
    throw std::invalid_argument("noise config line " + std::to_string(line) +
                                ": readout needs 'p01 p10'");
  }
  return {parse_number(a, line), parse_number(b, line)};
}

KrausChannel tensor_channel(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  for (const auto& x : a.operators())
    for (const auto& y : b.operators()) ops.push_back(kron(x, y));
  return KrausChannel(std::move(ops), 1e-8);
}

void apply_kraus_local(ComplexMatrix& rho, const KrausChannel& ch,
                       const std::vector<std::size_t>& positions, std::size_t n) {
  if (ch.operators().size() == 1) {
    left_apply_local(rho, ch.operators()[0], positions, n);
    right_apply_local_adjoint(rho, ch.operators()[0], positions, n);
    return;
  }
  ComplexMatrix acc = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ch.operators()) {
    ComplexMatrix term = rho;
    left_apply_local(term, k, positions, n);
    right_apply_local_adjoint(term, k, positions, n);
    acc += term;
  }
  rho = std::move(acc);
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string("noise config: ") + what + " must lie in [0, 1]");
  }
}

}  // namespace

// ---------------------------------------------------------------- config

NoiseConfig NoiseConfig::ideal() {
  NoiseConfig c;
  c.t1_us = std::numeric_limits<double>::infinity();
  c.t2_us = std::numeric_limits<double>::infinity();
  c.depol_1q = 0.0;
  c.depol_2q = 0.0;
  c.readout_default = {0.0, 0.0};
  return c;
}

void NoiseConfig::validate() const {
  if (!(t1_us > 0) || !(t2_us > 0)) throw std::invalid_argument("noise config: T1 and T2 must be positive");
  if (t2_us > 2 * t1_us * (1 + 1e-12)) {
    throw std::invalid_argument("noise config: T2 must not exceed 2 T1");
  }
  check_probability(depol_1q, "depol_1q");
  check_probability(depol_2q, "depol_2q");
  for (const auto& [k, v] : depol_2q_pair) check_probability(v, "depol_2q pair override");
  check_probability(readout_default.p01, "readout p01");
  check_probability(readout_default.p10, "readout p10");
  for (const auto& [k, v] : readout) {
    check_probability(v.p01, "readout p01");
    check_probability(v.p10, "readout p10");
  }
  for (const auto& [k, v] : duration_ns) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw std::invalid_argument("noise config: durations must be finite and non-negative");
    }
  }
}

double NoiseConfig::duration(GateKind kind) const {
  if (kind == GateKind::RZ) return 0.0;
  if (!is_native(kind)) {
    throw std::invalid_argument("noise model applies to native gates only; transpile first");
  }
  auto it = duration_ns.find(gate_name(kind));
  return it == duration_ns.end() ? 0.0 : it->second;
}

double NoiseConfig::measurement_duration() const {
  auto it = duration_ns.find("MEASURE");
  return it == duration_ns.end() ? 0.0 : it->second;
}

double NoiseConfig::two_qubit_depol(const std::string& a, const std::string& b) const {
  auto it = depol_2q_pair.find(pair_key(a, b));
  return it == depol_2q_pair.end() ? depol_2q : it->second;
}

ReadoutError NoiseConfig::readout_for(const std::string& qubit) const {
  auto it = readout.find(qubit);
  return it == readout.end() ? readout_default : it->second;
}

NoiseConfig NoiseConfig::scaled_two_qubit(double factor) const {
  NoiseConfig out = *this;
  out.depol_2q = std::min(1.0, depol_2q * factor);
  for (auto& [k, v] : out.depol_2q_pair) v = std::min(1.0, v * factor);
  return out;
}

NoiseConfig parse_noise_config(std::string_view text) {
  NoiseConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("noise config line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key == "t1_us") c.t1_us = parse_number(value, line);
    else if (key == "t2_us") c.t2_us = parse_number(value, line);
    else if (key == "depol_1q") c.depol_1q = parse_number(value, line);
    else if (key == "depol_2q") c.depol_2q = parse_number(value, line);
    else if (key == "readout") c.readout_default = parse_readout(value, line);
    else if (key == "seed") {
      std::uint64_t s = 0;
      auto res = std::from_chars(value.data(), value.data() + value.size(), s);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw std::invalid_argument("noise config line " + std::to_string(line) + ": bad seed");
      }
      c.seed = s;
    } else if (key.rfind("duration_ns.", 0) == 0) {
      c.duration_ns[key.substr(12)] = parse_number(value, line);
    } else if (key.rfind("depol_2q.", 0) == 0) {
      const std::string pair = key.substr(9);
      const auto comma = pair.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("noise config line " + std::to_string(line) +
                                    ": pair override needs 'a,b'");
      }
      c.depol_2q_pair[pair_key(pair.substr(0, comma), pair.substr(comma + 1))] =
          parse_number(value, line);
    } else if (key.rfind("readout.", 0) == 0) {
      c.readout[key.substr(8)] = parse_readout(value, line);
    } else {
      throw std::invalid_argument("noise config line " + std::to_string(line) + ": unknown key '" +
                                  key + "'");
    }
  }
  c.validate();
  return c;
}

std::string to_text(const NoiseConfig& c) {
  std::ostringstream os;
  os << "t1_us = " << format_double(c.t1_us) << "\n";
  os << "t2_us = " << format_double(c.t2_us) << "\n";
  os << "depol_1q = " << format_double(c.depol_1q) << "\n";
  os << "depol_2q = " << format_double(c.depol_2q) << "\n";
  for (const auto& [k, v] : c.depol_2q_pair) os << "depol_2q." << k << " = " << format_double(v) << "\n";
  for (const auto& [k, v] : c.duration_ns) os << "duration_ns." << k << " = " << format_double(v) << "\n";
  os << "readout = " << format_double(c.readout_default.p01) << " "
     << format_double(c.readout_default.p10) << "\n";
  for (const auto& [k, v] : c.readout) {
    os << "readout." << k << " = " << format_double(v.p01) << " " << format_double(v.p10) << "\n";
  }
  os << "seed = " << c.seed << "\n";
  return os.str();
}

NoiseConfig load_noise_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read noise config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_noise_config(buf.str());
}

// ---------------------------------------------------------------- channels

KrausChannel depolarizing_channel(std::size_t num_qubits, double p) {
  check_probability(p, "depolarizing strength");
  const std::size_t terms = std::size_t{1} << (2 * num_qubits);
  std::vector<ComplexMatrix> ops;
  const double rest = p / static_cast<double>(terms);
  for (std::size_t a = 0; a < terms; ++a) {
    const double w = a == 0 ? 1.0 - p + rest : rest;
    if (w == 0.0) continue;
    ops.push_back(std::sqrt(w) * pauli::from_string(pauli_label(a, num_qubits)));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel thermal_relaxation_channel(double duration_ns, double t1_us, double t2_us) {
  if (!(t1_us > 0) || !(t2_us > 0) || t2_us > 2 * t1_us * (1 + 1e-12)) {
    throw std::invalid_argument("thermal_relaxation_channel: need 0 < T2 <= 2 T1");
  }
  if (!(duration_ns >= 0)) throw std::invalid_argument("thermal_relaxation_channel: negative duration");
  const double t = duration_ns * 1e-3;  // microseconds
  const double gamma = 1.0 - std::exp(-t / t1_us);
  const double dephasing_rate = std::max(0.0, 1.0 / t2_us - 0.5 / t1_us);
  const double coherence = std::exp(-t * dephasing_rate);
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2), a1 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  a1(0, 1) = std::sqrt(gamma);
  ComplexMatrix d0 = ComplexMatrix::Zero(2, 2), d1 = ComplexMatrix::Zero(2, 2);
  d0(0, 0) = 1.0;
  d0(1, 1) = coherence;
  d1(1, 1) = std::sqrt(std::max(0.0, 1.0 - coherence * coherence));
  std::vector<ComplexMatrix> ops;
  for (const auto& d : {d0, d1}) {
    for (const auto& a : {a0, a1}) {
      const ComplexMatrix k = d * a;
      if (k.cwiseAbs().maxCoeff() > 0.0) ops.push_back(k);
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel noisy_gate_channel(const Gate& g, const NoiseConfig& config) {
  const ComplexMatrix u = gate_matrix(g);
  if (g.kind == GateKind::RZ) return KrausChannel::unitary(u);
  const double d = config.duration(g.kind);
  const KrausChannel relax = thermal_relaxation_channel(d, config.t1_us, config.t2_us);
  if (g.qubits.size() == 1) {
    return compose(compose(KrausChannel::unitary(u), depolarizing_channel(1, config.depol_1q)),
                   relax);
  }
  const double p = config.two_qubit_depol(g.qubits[0], g.qubits[1]);
  return compose(compose(KrausChannel::unitary(u), depolarizing_channel(2, p)),
                 tensor_channel(relax, relax));
}

DensityMatrix run_noisy_circuit(const Circuit& c, const NoiseConfig& config,
                                const DensityMatrix& input) {
  if (!c.is_native()) {
    throw std::invalid_argument("run_noisy_circuit: circuit is not native; transpile first");
  }
  config.validate();
  const std::size_t n = input.num_qubits();
  ComplexMatrix rho = input.matrix();
  std::map<std::string, KrausChannel> cache;
  for (const auto& g : c.gates()) {
    const auto positions = input.reg().positions_of(g.qubits);
    if (g.kind == GateKind::RZ) {
      const ComplexMatrix u = rz_matrix(g.theta);
      left_apply_local(rho, u, positions, n);
      right_apply_local_adjoint(rho, u, positions, n);
      continue;
    }
    std::string key = gate_name(g.kind);
    for (const auto& q : g.qubits) key += " " + q;
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, noisy_gate_channel(g, config)).first;
    apply_kraus_local(rho, it->second, positions, n);
  }
  rho /= rho.trace().real();
  return DensityMatrix(input.reg(), std::move(rho));
}

KrausChannel noisy_channel_of_circuit(const Circuit& c, const NoiseConfig& config) {
  const std::size_t n = c.reg().size();
  if (n > 4) throw std::invalid_argument("noisy_channel_of_circuit: at most four qubits");
  std::vector<std::string> refs;
  for (const auto& l : c.reg().labels()) refs.push_back(l + "'ref");
  const QubitRegister joint = c.reg().concat(QubitRegister(refs));
  const std::size_t d = c.reg().dim();
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (std::size_t j = 0; j < d; ++j) phi[j * d + j] = 1.0;
  const DensityMatrix input = DensityMatrix::from_pure(joint, phi);
  const DensityMatrix out = run_noisy_circuit(c, config, input);
  return channel_of_choi(ChoiState(out, c.reg().labels(), refs));
}

}  // namespace collmem
