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

// End-to-end experiment pipelines behind the command-line runner: collision
// sweeps with optional noisy tomography, the witness and non-Markovianity
// summaries, and the transpiler and continuum-limit self-checks.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "collmem/collision.hpp"
#include "collmem/entangle.hpp"
#include "collmem/nonmarkov.hpp"
#include "collmem/tomography.hpp"

namespace collmem {

// Raised when a run produces numbers that break a physical invariant.
class NumericalViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reference-marginal tolerance when reading a tomographic estimate as a
// Choi state. Shot noise and ancilla errors move the marginal by about 1e-2.
inline constexpr double kShotChoiTolerance = 0.1;
inline constexpr std::size_t kBlochMesh = 8;
inline constexpr std::size_t kBootstrapReplicates = 200;

struct ExperimentSpec {
  ModelKind model = ModelKind::SingleQubit;
  double g_dt = std::numbers::pi / 4;
  std::size_t collisions = 10;
  std::string noise = "ideal";  // "ideal" or a NoiseConfig file path
  std::size_t shots = 4096;
  std::uint64_t seed = 0;
  bool mitigate = false;
  std::filesystem::path out = "out";

  bool ideal() const { return noise == "ideal"; }
  // Throws std::invalid_argument when shots is 0 for a noisy run or g_dt is
  // not finite.
  void validate() const;
  // Loads the noise file; nullopt for "ideal".
  std::optional<NoiseConfig> noise_config() const;
};

// One row of concurrence.csv. For two-qubit system-ancilla states `c` and
// `c_sharp` are exact; otherwise they are the lower bound on C and the
// upper bound on C#.
struct ConcurrenceRow {
  std::size_t n = 0;
  double c = 0.0;
  double c_sharp = 0.0;
  double fidelity_to_ideal = 1.0;
  std::optional<double> c_stderr;  // bootstrap, shot data only
  std::optional<double> c_sharp_stderr;

  bool operator==(const ConcurrenceRow&) const = default;
};

struct ConcurrenceTable {
  bool exact = true;
  std::vector<ConcurrenceRow> rows;

  const ConcurrenceRow& at(std::size_t n) const;  // throws std::out_of_range
  bool operator==(const ConcurrenceTable&) const = default;
};

struct BlochRow {
  std::size_t n = 0;
  std::size_t point = 0;  // index into bloch_mesh(kBlochMesh)
  double x = 0.0, y = 0.0, z = 0.0;

  bool operator==(const BlochRow&) const = default;
};

// Long-format non-Markovianity entry. Quantities: "rhp" or "rhp_lower"
// (n1 = n2 = n), "volume_ratio" (n1 = n2 = n), "blp_delta" (n1 = t1, n2 = t2).
struct NonMarkovRow {
  std::string quantity;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double value = 0.0;

  bool operator==(const NonMarkovRow&) const = default;
};

struct SimulationResult {
  ExperimentSpec spec;
  std::optional<NoiseConfig> noise;
  std::pair<std::size_t, std::size_t> witness_times;
  ConcurrenceTable concurrence;
  std::vector<BlochRow> bloch;  // single-qubit systems only
  std::vector<NonMarkovRow> nonmarkov;
  std::optional<WitnessReport> witness;  // when t2 <= collisions
  std::optional<NonMarkovReport> nonmarkov_summary;
  std::map<std::size_t, ShotCounts> counts;
  std::map<std::size_t, CalibrationCounts> calibration;
  std::vector<EvolutionRecord> records;  // as measured, one per n
};

// Evolves n = 0..collisions. Ideal runs use exact states; noisy runs sample
// tomography of the noisy system-ancilla state (mitigated on request) and
// derive every quantity from the reconstruction. Per-n work runs
// concurrently with seeds derived from (seed, n).
SimulationResult run_simulation(const ExperimentSpec& spec);

// Writes concurrence.csv, bloch.csv, nonmarkov.csv, manifest.txt and, for
// shot data, counts/n<n>.csv plus calibration files. Throws
// std::runtime_error when the directory cannot be written.
void write_simulation(const SimulationResult& result, const std::filesystem::path& dir);

std::string concurrence_to_csv(const ConcurrenceTable& table);
ConcurrenceTable concurrence_from_csv(std::string_view text);
std::string bloch_to_csv(const std::vector<BlochRow>& rows);
std::vector<BlochRow> bloch_from_csv(std::string_view text);
std::string nonmarkov_to_csv(const std::vector<NonMarkovRow>& rows);
std::vector<NonMarkovRow> nonmarkov_from_csv(std::string_view text);
std::string manifest_text(const SimulationResult& result);

// Witness from tabulated values. The margin error combines the bootstrap
// errors of the two rows, which come from independent shot data. Throws
// std::invalid_argument when a row is missing.
WitnessReport run_witness(const ConcurrenceTable& table, std::size_t t1, std::size_t t2);
std::string witness_to_text(const WitnessReport& report);

struct CheckEntry {
  std::string name;
  bool pass = false;
  double deviation = 0.0;
  std::string detail;
};

// Published native sequences, a perturbation sensitivity probe, transpiler
// output for the model gates, and `random_circuits` random two-qubit
// circuits, all compared up to global phase within 1e-8.
std::vector<CheckEntry> run_transpile_check(std::uint64_t seed = 0,
                                            std::size_t random_circuits = 50);

struct ContinuumReport {
  std::vector<std::pair<double, double>> rates;  // (t, lindblad_rate(t))
  double max_rate_deviation = 0.0;               // max |rate - tan t|
  double max_transfer_deviation = 0.0;           // over n = 1..n_max per t
};

// `points` equally spaced times in [0, t_max].
std::vector<double> continuum_grid(std::size_t points = 50, double t_max = 1.4);
// Throws std::invalid_argument when a time lies within 1e-3 of a pole of tan.
ContinuumReport run_continuum_check(const std::vector<double>& grid, std::size_t n_max = 8);

}  // namespace collmem
