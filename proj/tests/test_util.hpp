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

// Random instances for property tests.

#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "collmem/channel.hpp"
#include "collmem/qmat.hpp"

namespace collmem::testing {

inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

// Haar-random unitary via QR with the phase fix on R's diagonal.
inline ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline std::vector<std::string> labels(std::size_t n, const std::string& prefix = "q") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Mixed state of given rank (full rank by default).
inline DensityMatrix random_state(std::size_t n, std::mt19937_64& rng, std::size_t rank = 0) {
  const std::size_t d = std::size_t{1} << n;
  const ComplexMatrix g = ginibre(d, rank == 0 ? d : rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(QubitRegister(labels(n)), m);
}

inline DensityMatrix random_pure(std::size_t n, std::mt19937_64& rng) {
  return random_state(n, rng, 1);
}

// Channel from a random isometry into `kraus` blocks.
inline KrausChannel random_channel(std::size_t n, std::size_t kraus, std::mt19937_64& rng) {
  const std::size_t d = std::size_t{1} << n;
  const ComplexMatrix u = random_unitary(d * kraus, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus; ++k) ops.push_back(u.block(k * d, 0, d, d));
  return KrausChannel(ops);
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace collmem::testing
