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

#include "collmem/collision.hpp"

#include <cmath>
#include <stdexcept>

#include "collmem/transpile.hpp"

namespace collmem {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

std::vector<std::string> joined(std::initializer_list<const std::vector<std::string>*> parts) {
  std::vector<std::string> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

std::vector<std::string> reference_labels(const std::vector<std::string>& systems) {
  std::vector<std::string> out;
  for (const auto& s : systems) out.push_back(s + "'ref");
  return out;
}

// Gates of collision k on labels of the model.
std::vector<Gate> collision_gates(const CollisionModel& m, std::size_t k) {
  switch (m.kind) {
    case ModelKind::SingleQubit:
      return {Gate::unitary({m.systems[0], m.environments[0]}, collision_unitary(m.g_dt))};
    case ModelKind::TwoQubitExchange:
      return {Gate::unitary({m.systems[0], m.systems[1], m.environments[0]},
                            two_qubit_unitary(m.g_dt))};
    case ModelKind::Toy: {
      const ComplexMatrix u = k % 2 == 1 ? toy_unitary() : ComplexMatrix(toy_unitary().adjoint());
      return {Gate::unitary({m.systems[0], m.environments[0]}, u),
              Gate::unitary({m.systems[1], m.environments[1]}, u)};
    }
    case ModelKind::Swap:
      return {Gate::unitary({m.systems[0], m.environments[0]}, swap_matrix()),
              Gate::unitary({m.systems[1], m.environments[1]}, swap_matrix())};
  }
  throw std::logic_error("unknown model kind");
}

// Replaces unitaries on three qubits by one- and two-qubit pieces.
Circuit lowered(const Circuit& c) {
  Circuit out(c.reg(), c.global_phase());
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Unitary && g.qubits.size() > 2) {
      out.append(decompose_unitary(g.matrix, g.qubits));
    } else {
      out.add(g);
    }
  }
  return out;
}

KrausChannel kraus_from_global(const ComplexMatrix& w, std::size_t d_sys, std::size_t d_env) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t e = 0; e < d_env; ++e) {
    ComplexMatrix k(d_sys, d_sys);
    for (std::size_t out = 0; out < d_sys; ++out)
      for (std::size_t in = 0; in < d_sys; ++in) k(out, in) = w(out * d_env + e, in * d_env);
    if (k.cwiseAbs().maxCoeff() > kKrausCutoff) ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

RealMatrix single_collision_transfer(double angle) {
  return transfer_of_channel(kraus_from_global(collision_unitary(angle), 2, 2)).matrix();
}

}  // namespace

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::SingleQubit: return "single";
    case ModelKind::TwoQubitExchange: return "two-qubit";
    case ModelKind::Swap: return "swap";
    case ModelKind::Toy: return "toy";
  }
  throw std::logic_error("unknown model kind");
}

ModelKind parse_model_kind(const std::string& name) {
  for (auto k : {ModelKind::SingleQubit, ModelKind::TwoQubitExchange, ModelKind::Swap,
                 ModelKind::Toy}) {
    if (model_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown model '" + name + "' (single, two-qubit, swap, toy)");
}

ComplexMatrix collision_unitary(double g_dt) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 1) = u(2, 2) = std::cos(g_dt);
  u(1, 2) = u(2, 1) = Complex(0.0, -std::sin(g_dt));
  return u;
}

ComplexMatrix two_qubit_unitary(double g_dt) {
  const ComplexMatrix sm = sigma_minus();
  const ComplexMatrix sp = sm.adjoint();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix h = kron(kron(sm, sp), id) + kron(kron(sp, sm), id) +
                          kron(id, kron(sm, sp)) + kron(id, kron(sp, sm));
  return hermitian_exp(h, Complex(0.0, g_dt));
}

ComplexMatrix toy_table() {
  const Complex i(0.0, 1.0);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 3) = i;
  m(1, 0) = 1.0;
  m(2, 2) = -i;
  m(3, 1) = 1.0;
  return m;
}

ComplexMatrix toy_unitary() { return swap_matrix() * toy_table() * swap_matrix(); }

CollisionModel CollisionModel::make(ModelKind kind, double g_dt) {
  if (!std::isfinite(g_dt)) throw std::invalid_argument("collision strength must be finite");
  std::vector<std::string> a, s, e;
  switch (kind) {
    case ModelKind::SingleQubit: a = {"A"}; s = {"S"}; e = {"E"}; break;
    case ModelKind::TwoQubitExchange: a = {"A"}; s = {"S1", "S2"}; e = {"E"}; break;
    case ModelKind::Swap:
    case ModelKind::Toy: a = {"A1", "A2"}; s = {"S1", "S2"}; e = {"E1", "E2"}; break;
  }
  QubitRegister reg(joined({&a, &s, &e}));
  // Placeholder state replaced below once the preparation circuit exists.
  CollisionModel m{kind, g_dt, a, s, e, reg, DensityMatrix::basis_state(reg, 0)};
  const ComplexMatrix prep = unitary_of_circuit(m.preparation());
  m.initial_state = DensityMatrix::from_pure(reg, prep.col(0));
  return m;
}

std::vector<std::string> CollisionModel::sa_labels() const { return joined({&systems, &ancillas}); }

DensityMatrix CollisionModel::initial_sa_state() const {
  return partial_trace(initial_state, sa_labels()).reordered(sa_labels());
}

Circuit CollisionModel::preparation() const {
  Circuit c(reg);
  for (std::size_t i = 0; i < ancillas.size(); ++i) {
    c.add(Gate::h(ancillas[i])).add(Gate::cnot(ancillas[i], systems[i]));
  }
  return c;
}

Circuit CollisionModel::collision(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("collisions are numbered from 1");
  Circuit c(reg);
  for (auto& g : collision_gates(*this, k)) c.add(std::move(g));
  return c;
}

Circuit CollisionModel::circuit(std::size_t n) const {
  Circuit c = preparation();
  for (std::size_t k = 1; k <= n; ++k) c.append(collision(k));
  return c;
}

std::pair<std::size_t, std::size_t> CollisionModel::default_witness_times() const {
  switch (kind) {
    case ModelKind::SingleQubit: {
      const double k = std::round(kPi / 2 / g_dt);
      if (k >= 1 && k <= 1000 && std::abs(k * g_dt - kPi / 2) < 1e-9) {
        const auto t1 = static_cast<std::size_t>(k);
        return {t1, 2 * t1};
      }
      return {2, 4};
    }
    case ModelKind::TwoQubitExchange: return {3, 6};
    case ModelKind::Swap:
    case ModelKind::Toy: return {1, 2};
  }
  throw std::logic_error("unknown model kind");
}

Circuit native_collisions(const CollisionModel& model, std::size_t n) {
  Circuit c(model.reg);
  for (std::size_t k = 1; k <= n; ++k) c.append(model.collision(k));
  return transpile(lowered(c));
}

EvolutionRecord evolve(const CollisionModel& model, std::size_t n,
                       const std::optional<NoiseConfig>& noise) {
  const auto sa = model.sa_labels();
  if (!noise) {
    Circuit collisions(model.reg);
    for (std::size_t k = 1; k <= n; ++k) collisions.append(model.collision(k));
    const ComplexMatrix w = unitary_of_circuit(collisions);
    const DensityMatrix joint(model.reg, w * model.initial_state.matrix() * w.adjoint());

    Circuit local(QubitRegister(joined({&model.systems, &model.environments})));
    for (std::size_t k = 1; k <= n; ++k)
      for (auto& g : collision_gates(model, k)) local.add(std::move(g));
    const std::size_t d_sys = std::size_t{1} << model.systems.size();
    const std::size_t d_env = std::size_t{1} << model.environments.size();
    return {n, model.systems, partial_trace(joint, sa).reordered(sa),
            kraus_from_global(unitary_of_circuit(local), d_sys, d_env)};
  }

  const Circuit full = transpile(lowered(model.circuit(n)));
  const DensityMatrix out =
      run_noisy_circuit(full, *noise, DensityMatrix::basis_state(model.reg, 0));

  // Reduced channel: noisy collisions on an ideal Bell state per system.
  const auto refs = reference_labels(model.systems);
  QubitRegister choi_reg(joined({&model.systems, &refs, &model.environments}));
  Circuit bell(choi_reg);
  for (std::size_t i = 0; i < refs.size(); ++i)
    bell.add(Gate::h(refs[i])).add(Gate::cnot(refs[i], model.systems[i]));
  const DensityMatrix bell_state =
      DensityMatrix::from_pure(choi_reg, unitary_of_circuit(bell).col(0));
  Circuit collisions(choi_reg);
  const Circuit native = native_collisions(model, n);
  for (const auto& g : native.gates()) collisions.add(g);
  const DensityMatrix evolved = run_noisy_circuit(collisions, *noise, bell_state);
  const ChoiState choi(partial_trace(evolved, joined({&model.systems, &refs})), model.systems,
                       refs);
  return {n, model.systems, partial_trace(out, sa).reordered(sa), channel_of_choi(choi)};
}

TransferMatrix continuum_transfer(double t) {
  RealMatrix m = RealMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = m(2, 2) = std::cos(t);
  m(3, 0) = std::sin(t) * std::sin(t);
  m(3, 3) = std::cos(t) * std::cos(t);
  return TransferMatrix(m, 1);
}

LindbladFit fit_lindblad_generator(double t) {
  if (std::abs(std::cos(t)) <= 1e-6) {
    throw std::invalid_argument("lindblad_rate: generator is singular near t = pi/2 + k pi");
  }
  constexpr double h = 1e-6;
  const RealMatrix e = single_collision_transfer(t);
  const RealMatrix de = (single_collision_transfer(t + h) - single_collision_transfer(t - h)) / (2 * h);
  const RealMatrix g = de * e.inverse();
  // Amplitude damping generator in the Bloch basis (1, x, y, z) per unit rate:
  // coherences decay at gamma, z relaxes towards +1 at 2 gamma.
  RealMatrix basis = RealMatrix::Zero(4, 4);
  basis(1, 1) = basis(2, 2) = -1.0;
  basis(3, 0) = 2.0;
  basis(3, 3) = -2.0;
  LindbladFit fit;
  fit.gamma = (g.cwiseProduct(basis)).sum() / basis.squaredNorm();
  fit.population_rate = 2 * fit.gamma;
  fit.residual = (g - fit.gamma * basis).cwiseAbs().maxCoeff();
  return fit;
}

double lindblad_rate(double t) { return fit_lindblad_generator(t).gamma; }

std::vector<BlochVector> bloch_mesh(std::size_t mesh) {
  if (mesh == 0) throw std::invalid_argument("bloch_mesh: mesh must be positive");
  std::vector<BlochVector> out;
  for (std::size_t i = 0; i <= mesh; ++i) {
    const double theta = kPi * static_cast<double>(i) / static_cast<double>(mesh);
    for (std::size_t j = 0; j < 2 * mesh; ++j) {
      const double phi = kPi * static_cast<double>(j) / static_cast<double>(mesh);
      out.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                       std::cos(theta));
    }
  }
  return out;
}

std::vector<BlochVector> bloch_image_samples(const EvolutionRecord& record, std::size_t mesh) {
  if (record.reduced_channel.num_qubits() != 1 || record.reduced_channel.out_dim() != 2) {
    throw std::invalid_argument("bloch_image_samples: qubit channel required");
  }
  const TransferMatrix t = transfer_of_channel(record.reduced_channel);
  std::vector<BlochVector> out;
  for (const auto& r : bloch_mesh(mesh)) out.push_back(t.apply(r));
  return out;
}

}  // namespace collmem
