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

// Shot-based Pauli tomography with per-qubit readout errors, two-circuit
// readout calibration, and linear inversion followed by a PSD projection.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "collmem/noise.hpp"

namespace collmem {

// Independent sub-seed for stream `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// All 3^k strings over {X, Y, Z}, X < Y < Z per position, lexicographic.
std::vector<std::string> pauli_settings(std::size_t k);

struct TomographyJob {
  std::vector<std::string> measured;  // bitstring character i is measured[i]
  std::size_t shots = 4096;
  std::uint64_t seed = 0;

  std::vector<std::string> settings() const { return pauli_settings(measured.size()); }
  // Tomography circuits plus the two readout-calibration circuits if used.
  std::size_t circuit_count(bool with_calibration) const;
};

// Per setting, counts indexed by the integer value of the bitstring
// (measured[0] most significant). Counts are real so mitigated data fits.
struct ShotCounts {
  std::vector<std::string> labels;
  std::map<std::string, std::vector<double>> by_setting;

  double total(const std::string& setting) const;
  std::vector<double> frequencies(const std::string& setting) const;
  bool operator==(const ShotCounts&) const = default;
};

std::string bitstring(std::size_t value, std::size_t k);

// Outcome probabilities per setting: noisy basis rotation (transpiled,
// gate noise from `noise`), relaxation for the measurement duration, then
// readout flips. NoiseConfig::ideal() gives exact Born probabilities.
std::map<std::string, std::vector<double>> expected_distributions(
    const TomographyJob& job, const DensityMatrix& state, const NoiseConfig& noise);

// Infinite-shot counts: probabilities scaled by the shot number.
ShotCounts expected_counts(const TomographyJob& job, const DensityMatrix& state,
                           const NoiseConfig& noise);

// Multinomial samples per setting. Setting i draws from its own generator
// seeded by mixing (job.seed, i), so results do not depend on order.
ShotCounts sample(const TomographyJob& job, const DensityMatrix& state, const NoiseConfig& noise);

struct CalibrationCounts {
  ShotCounts zeros;  // all qubits prepared in |0>, setting "Z...Z"
  ShotCounts ones;   // all qubits prepared in |1>
};

// Two calibration circuits, seeded after the tomography settings.
CalibrationCounts sample_calibration(const TomographyJob& job, const NoiseConfig& noise);

struct ReadoutEstimate {
  std::vector<double> p01;  // per measured qubit
  std::vector<double> p10;
};

ReadoutEstimate estimate_readout(const CalibrationCounts& cal);

// Applies the inverse of the tensor product of per-qubit confusion matrices
// to each setting's frequencies, clips negatives, renormalizes, and scales
// back to the setting's total. Throws std::invalid_argument when an
// estimated flip probability is 0.5 or more.
ShotCounts mitigate_readout(const ShotCounts& counts, const CalibrationCounts& cal);

struct Reconstruction {
  DensityMatrix state;
  ComplexMatrix linear_estimate;
  double projection_distance = 0.0;  // trace norm moved by the projection
};

// Throws std::invalid_argument when a setting is missing.
Reconstruction reconstruct(const ShotCounts& counts);

// Parametric bootstrap replicate: each setting resampled multinomially from
// its observed frequencies with the same total.
ShotCounts bootstrap_resample(const ShotCounts& counts, std::mt19937_64& rng);

// CSV with header "setting,bitstring,count".
std::string counts_to_csv(const ShotCounts& counts);
ShotCounts counts_from_csv(std::string_view text, const std::vector<std::string>& labels);

}  // namespace collmem
