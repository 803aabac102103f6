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

#include "collmem/qmat.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace collmem {
namespace {

using testing::labels;
using testing::max_abs;

DensityMatrix bell(const std::string& a, const std::string& b) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(QubitRegister({a, b}), psi);
}

// Partial trace by explicit bit bookkeeping, independent of the library's
// offset tables.
ComplexMatrix naive_partial_trace(const ComplexMatrix& m, std::size_t n,
                                  const std::vector<std::size_t>& keep) {
  const std::size_t dk = std::size_t{1} << keep.size();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const std::size_t d = std::size_t{1} << n;
  auto bit = [n](std::size_t idx, std::size_t pos) { return (idx >> (n - 1 - pos)) & 1U; };
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      bool same = true;
      for (std::size_t p = 0; p < n; ++p) {
        if (std::find(keep.begin(), keep.end(), p) == keep.end() && bit(r, p) != bit(c, p)) {
          same = false;
        }
      }
      if (!same) continue;
      std::size_t kr = 0, kc = 0;
      for (auto p : keep) {
        kr = (kr << 1) | bit(r, p);
        kc = (kc << 1) | bit(c, p);
      }
      out(kr, kc) += m(r, c);
    }
  }
  return out;
}

TEST(QubitRegister, RejectsDuplicateLabels) {
  EXPECT_THROW(QubitRegister({"A", "A"}), std::invalid_argument);
  EXPECT_THROW(QubitRegister({""}), std::invalid_argument);
  QubitRegister r({"A", "S"});
  EXPECT_EQ(r.dim(), 4u);
  EXPECT_THROW(r.concat(QubitRegister({"S"})), std::invalid_argument);
  EXPECT_EQ(r.subset({"S"}).labels(), std::vector<std::string>{"S"});
}

TEST(DensityMatrix, ValidatesInvariants) {
  QubitRegister r({"S"});
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.1;
  EXPECT_THROW(DensityMatrix(r, m), std::invalid_argument);
  m(0, 0) = 1.0;
  m(0, 1) = 0.5;
  EXPECT_THROW(DensityMatrix(r, m), std::invalid_argument);  // not Hermitian
  m(1, 0) = 0.5;
  EXPECT_THROW(DensityMatrix(r, m), std::invalid_argument);  // not PSD
  EXPECT_THROW(DensityMatrix(QubitRegister({"A", "B"}), ComplexMatrix::Identity(2, 2) / 2.0),
               std::invalid_argument);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const auto rho = bell("A", "S");
  const auto s = partial_trace(rho, {"S"});
  EXPECT_LT(max_abs(s.matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_EQ(s.reg().labels(), std::vector<std::string>{"S"});
}

TEST(PartialTrace, MatchesNaiveOracle) {
  std::mt19937_64 rng(11);
  const std::vector<std::vector<std::size_t>> keeps = {{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1}};
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = testing::random_state(3, rng);
    for (const auto& keep : keeps) {
      std::vector<std::string> names;
      for (auto p : keep) names.push_back(rho.reg().labels()[p]);
      const auto reduced = partial_trace(rho, names);
      EXPECT_LT(max_abs(reduced.matrix() - naive_partial_trace(rho.matrix(), 3, keep)), 1e-14);
    }
  }
}

TEST(PartialTrace, OfProductReturnsFactor) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_state(1, rng).relabeled(QubitRegister({"A"}));
    const auto b = testing::random_state(2, rng).relabeled(QubitRegister({"B0", "B1"}));
    const auto ab = tensor(a, b);
    EXPECT_LT(max_abs(partial_trace(ab, {"A"}).matrix() - a.matrix()), 1e-14);
    EXPECT_LT(max_abs(partial_trace(ab, {"B0", "B1"}).matrix() - b.matrix()), 1e-14);
  }
}

TEST(PartialTranspose, BellHasNegativeEigenvalue) {
  const auto rho = bell("A", "S");
  const ComplexMatrix pt = partial_transpose(rho, {"A"});
  const auto eig = hermitian_eigen(pt);
  EXPECT_NEAR(eig.values.minCoeff(), -0.5, 1e-14);
  EXPECT_NEAR(trace_norm(pt), 2.0, 1e-14);
}

TEST(PartialTranspose, InvolutionAndProductStates) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = testing::random_state(3, rng);
    const ComplexMatrix once = partial_transpose(rho, {"q1"});
    const ComplexMatrix twice = partial_transpose_positions(once, 3, {1});
    EXPECT_LT(max_abs(twice - rho.matrix()), 1e-15);
    const auto a = testing::random_state(1, rng).relabeled(QubitRegister({"A"}));
    const auto b = testing::random_state(1, rng).relabeled(QubitRegister({"B"}));
    EXPECT_NEAR(trace_norm(partial_transpose(tensor(a, b), {"A"})), 1.0, 1e-12);
  }
}

TEST(TraceDistance, OrthogonalStatesAtMaximum) {
  QubitRegister r({"S"});
  EXPECT_NEAR(trace_distance(DensityMatrix::basis_state(r, 0), DensityMatrix::basis_state(r, 1)),
              2.0, 1e-15);
}

TEST(TraceDistance, MetricProperties) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const auto a = testing::random_state(n, rng);
    const auto b = testing::random_state(n, rng);
    const auto c = testing::random_state(n, rng);
    const double ab = trace_distance(a, b);
    EXPECT_NEAR(ab, trace_distance(b, a), 1e-12);
    EXPECT_LE(ab, trace_distance(a, c) + trace_distance(c, b) + 1e-12);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 2.0 + 1e-12);
  }
}

TEST(TraceNorm, MatchesSingularValueOracle) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix m = testing::ginibre(4, 4, rng);
    // sum sqrt(eig(M^dagger M))
    const auto eig = hermitian_eigen(m.adjoint() * m);
    EXPECT_NEAR(trace_norm(m), eig.values.cwiseMax(0.0).cwiseSqrt().sum(), 1e-10);
  }
}

TEST(StateFidelity, PlusAgainstZero) {
  QubitRegister r({"S"});
  ComplexVector plus(2);
  plus << 1, 1;
  EXPECT_NEAR(state_fidelity(DensityMatrix::from_pure(r, plus), DensityMatrix::basis_state(r, 0)),
              0.5, 1e-12);
}

TEST(StateFidelity, PureStatesMatchOverlap) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexVector psi = testing::ginibre(4, 1, rng).normalized();
    const ComplexVector phi = testing::ginibre(4, 1, rng).normalized();
    QubitRegister r(labels(2));
    const double expect = std::norm(psi.dot(phi));
    const auto a = DensityMatrix::from_pure(r, psi);
    const auto b = DensityMatrix::from_pure(r, phi);
    EXPECT_NEAR(state_fidelity(a, b), expect, 1e-9);
    EXPECT_NEAR(state_fidelity(b, a), expect, 1e-9);
  }
}

TEST(StateFidelity, QubitClosedFormOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::random_state(1, rng);
    const auto b = testing::random_state(1, rng);
    // F = tr(rho sigma) + 2 sqrt(det rho det sigma) for qubits.
    const double expect = (a.matrix() * b.matrix()).trace().real() +
                          2 * std::sqrt(a.matrix().determinant().real() *
                                        b.matrix().determinant().real());
    EXPECT_NEAR(state_fidelity(a, b), expect, 1e-10);
    EXPECT_NEAR(state_fidelity(a, b), state_fidelity(b, a), 1e-10);
  }
}

TEST(Bloch, RoundTripAndBounds) {
  const auto rho = bloch_to_state(BlochVector(0, 0, 1));
  EXPECT_LT(max_abs(rho.matrix() - DensityMatrix::basis_state(QubitRegister({"S"}), 0).matrix()),
            1e-15);
  EXPECT_THROW(BlochVector(0, 0, 1.01), std::invalid_argument);
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = testing::random_state(1, rng).relabeled(QubitRegister({"S"}));
    const auto r = state_to_bloch(s);
    EXPECT_LE(r.norm(), 1.0 + 1e-12);
    EXPECT_LT(max_abs(bloch_to_state(r).matrix() - s.matrix()), 1e-14);
  }
}

TEST(LinearEntropy, MatchesPurity) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_state(2, rng);
    EXPECT_NEAR(s.linear_entropy(), 1.0 - s.purity(), 1e-12);
  }
  EXPECT_EQ(DensityMatrix::basis_state(QubitRegister({"S"}), 1).linear_entropy(), 0.0);
}

TEST(Permutation, ReorderRoundTripAndTensorOrder) {
  std::mt19937_64 rng(20);
  const auto a = testing::random_state(1, rng).relabeled(QubitRegister({"A"}));
  const auto b = testing::random_state(1, rng).relabeled(QubitRegister({"B"}));
  const auto ab = tensor(a, b);
  const auto ba = ab.reordered({"B", "A"});
  EXPECT_LT(max_abs(ba.matrix() - kron(b.matrix(), a.matrix())), 1e-15);
  EXPECT_LT(max_abs(ba.reordered({"A", "B"}).matrix() - ab.matrix()), 1e-15);
}

TEST(Embedding, MatchesKroneckerProducts) {
  std::mt19937_64 rng(21);
  const ComplexMatrix u = testing::random_unitary(2, rng);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_LT(max_abs(embed_operator(u, {1}, 3) - kron(kron(id, u), id)), 1e-15);
  const ComplexMatrix v = testing::random_unitary(4, rng);
  // v on (2, 0): conjugate the adjacent embedding by the qubit permutation.
  const ComplexMatrix adjacent = kron(v, id);  // positions (0, 1)
  const ComplexMatrix expect = permute_qubits(adjacent, {1, 2, 0});
  EXPECT_LT(max_abs(embed_operator(v, {2, 0}, 3) - expect), 1e-14);
}

TEST(Projection, ReturnsValidStateAndDistance) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  double dist = 0.0;
  const auto rho = DensityMatrix::project(QubitRegister({"S"}), m, &dist);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(dist, 0.4, 1e-15);
}

}  // namespace
}  // namespace collmem
