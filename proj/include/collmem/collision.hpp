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

// Collision models: a system repeatedly interacting with a persistent
// environment while an untouched ancilla holds the other half of a Bell pair.

#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "collmem/channel.hpp"
#include "collmem/circuit.hpp"
#include "collmem/noise.hpp"

namespace collmem {

enum class ModelKind { SingleQubit, TwoQubitExchange, Swap, Toy };

// CLI spellings: single, two-qubit, swap, toy.
std::string model_name(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

// Exchange collision on (S, E): cos(g_dt) on the one-excitation diagonal and
// -i sin(g_dt) off it, which is exp(-i g_dt (s- (x) s+ + s+ (x) s-)).
ComplexMatrix collision_unitary(double g_dt);
// exp(i g_dt H) on (S1, S2, E) with exchange terms on S1-S2 and S2-E.
ComplexMatrix two_qubit_unitary(double g_dt);
// Permutation-phase pair unitary on (S, E). The published table is read with
// rows indexing |E S>, the reading under which one application purifies S.
ComplexMatrix toy_unitary();
// The same table read with rows indexing |S E>.
ComplexMatrix toy_table();

struct CollisionModel {
  ModelKind kind = ModelKind::SingleQubit;
  double g_dt = std::numbers::pi / 4;
  std::vector<std::string> ancillas;
  std::vector<std::string> systems;
  std::vector<std::string> environments;
  QubitRegister reg;  // (ancillas..., systems..., environments...)
  DensityMatrix initial_state;

  static CollisionModel make(ModelKind kind, double g_dt = std::numbers::pi / 4);

  // Joint system-ancilla labels, systems first.
  std::vector<std::string> sa_labels() const;
  DensityMatrix initial_sa_state() const;
  // Bell pairs on each (ancilla, system) pair from |0...0>.
  Circuit preparation() const;
  // Collision number k (1-based). The toy and swap models alternate U and
  // its inverse.
  Circuit collision(std::size_t k) const;
  // Preparation followed by n collisions.
  Circuit circuit(std::size_t n) const;
  // Collision times of the witness pair used by default.
  std::pair<std::size_t, std::size_t> default_witness_times() const;
};

struct EvolutionRecord {
  std::size_t n = 0;
  std::vector<std::string> system_labels;
  DensityMatrix joint_state;  // on (systems..., ancillas...)
  KrausChannel reduced_channel = KrausChannel::identity(1);
};

// Ideal evolution conjugates with the exact global unitary. With noise the
// transpiled native circuit runs through the gate-level noise model; the
// reduced channel then comes from the noisy collisions acting on an ideal
// Bell state, read off its Choi state.
EvolutionRecord evolve(const CollisionModel& model, std::size_t n,
                       const std::optional<NoiseConfig>& noise = std::nullopt);

// Native circuit for the first n collisions only (no preparation).
Circuit native_collisions(const CollisionModel& model, std::size_t n);

// Closed-form Bloch transfer matrix of the continuous-time map at time t.
TransferMatrix continuum_transfer(double t);

struct LindbladFit {
  double gamma = 0.0;            // coherence decay rate, equals tan(t)
  double population_rate = 0.0;  // excited-population decay rate, 2 gamma
  double residual = 0.0;         // max |G - fitted generator|
};

// Generator G = dE/dt E^{-1} from a central difference (step 1e-6) of the
// single-collision map at angle t, fitted to the amplitude-damping form.
// Throws std::invalid_argument when |cos t| <= 1e-6.
LindbladFit fit_lindblad_generator(double t);
double lindblad_rate(double t);

// Sphere mesh of (mesh + 1) polar by (2 mesh) azimuthal points.
std::vector<BlochVector> bloch_mesh(std::size_t mesh);
// Image of bloch_mesh under a qubit reduced channel.
std::vector<BlochVector> bloch_image_samples(const EvolutionRecord& record, std::size_t mesh);

}  // namespace collmem
