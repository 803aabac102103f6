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

// Non-Markovianity witnesses: growth of ancilla entanglement, growth of the
// trace distance between two evolved states, growth of the Bloch-ball volume.

#pragma once

#include <utility>
#include <vector>

#include "collmem/channel.hpp"
#include "collmem/collision.hpp"

namespace collmem {

struct RhpSeries {
  std::vector<std::pair<std::size_t, double>> points;  // (n, concurrence)
  // Set when the joint states are larger than two qubits and the series
  // holds concurrence lower bounds.
  bool lower_bound = false;
  bool increase_detected = false;
};

RhpSeries rhp_series(const std::vector<EvolutionRecord>& records);

struct BlpResult {
  double delta = 0.0;  // max(0, best increase)
  double theta = 0.0;  // polar angle of the maximizing Bloch direction
  double phi = 0.0;
  BlochVector a{0, 0, 1};
  BlochVector b{0, 0, -1};
};

// Maximum over antipodal pure pairs of ||ch2(a) - ch2(b)||_1 - ||ch1(a) - ch1(b)||_1,
// from a 2 degree grid refined by Nelder-Mead. Ties resolve to the smallest
// (theta, phi).
BlpResult blp_max_increase(const KrausChannel& ch1, const KrausChannel& ch2);

// |det| of the Bloch block of the transfer matrix, the image volume as a
// fraction of the unit ball.
double bloch_volume(const KrausChannel& ch);

struct NonMarkovReport {
  RhpSeries rhp;
  BlpResult blp;
  double volume_ratio_t1 = 0.0;
  double volume_ratio_t2 = 0.0;
};

// BLP and volume entries are filled for qubit channels only.
NonMarkovReport nonmarkov_report(const std::vector<EvolutionRecord>& records,
                                 const EvolutionRecord& at_t1, const EvolutionRecord& at_t2);

}  // namespace collmem
