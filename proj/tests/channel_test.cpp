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

#include "collmem/channel.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace collmem {
namespace {

using testing::max_abs;

KrausChannel amplitude_damping(double gamma) {
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel({k0, k1});
}

DensityMatrix choi_from_kraus_oracle(const KrausChannel& ch) {
  // (E (x) id)(|Phi+><Phi+|) on (S, A) built from explicit |j>|j> sums.
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix eij = ComplexMatrix::Zero(2, 2);
      eij(i, j) = 1.0;
      ComplexMatrix ref = ComplexMatrix::Zero(2, 2);
      ref(i, j) = 1.0;
      m += kron(ch.act(eij), ref) / 2.0;
    }
  }
  return DensityMatrix(QubitRegister({"S", "A"}), m);
}

TEST(KrausChannel, RejectsNonTracePreserving) {
  EXPECT_THROW(KrausChannel({ComplexMatrix::Identity(2, 2) * 0.9}), std::invalid_argument);
  EXPECT_THROW(KrausChannel({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(4, 4)}),
               std::invalid_argument);
}

TEST(Choi, AmplitudeDampingMatchesOracle) {
  const auto ch = amplitude_damping(0.3);
  const auto choi = choi_of_channel(ch);
  EXPECT_NEAR(choi.state().matrix().trace().real(), 1.0, 1e-15);
  EXPECT_EQ(choi.state().reg().labels(), (std::vector<std::string>{"S", "A"}));
  EXPECT_LT(max_abs(choi.state().matrix() - choi_from_kraus_oracle(ch).matrix()), 1e-15);
}

TEST(Choi, RoundTripOnRandomChannels) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const auto ch = testing::random_channel(n, 1 + trial % 4, rng);
    const auto choi = choi_of_channel(ch);
    const auto back = choi_of_channel(channel_of_choi(choi));
    EXPECT_LT(max_abs(back.state().matrix() - choi.state().matrix()), 1e-10);
    // Marginal on the reference is I/d.
    std::vector<std::string> ref = choi.ref_labels();
    const auto marginal = partial_trace(choi.state(), ref);
    EXPECT_LT(max_abs(marginal.matrix() - ComplexMatrix::Identity(marginal.dim(), marginal.dim()) /
                                              static_cast<double>(marginal.dim())),
              1e-12);
  }
}

TEST(Choi, JointStateInAnyLabelOrder) {
  const auto ch = amplitude_damping(0.2);
  const auto choi = choi_of_channel(ch);
  const auto swapped = choi.state().reordered({"A", "S"});
  const ChoiState again(swapped, {"S"}, {"A"});
  EXPECT_LT(max_abs(again.state().matrix() - choi.state().matrix()), 1e-15);
}

TEST(Choi, RejectsLargeTracePreservationViolation) {
  // Reference marginal diag(0.6, 0.4).
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.6;
  m(3, 3) = 0.4;
  const DensityMatrix joint(QubitRegister({"S", "A"}), m);
  EXPECT_THROW(ChoiState(joint, {"S"}, {"A"}), std::invalid_argument);
}

TEST(Choi, CorrectsSmallViolationAndRecordsDistance) {
  // Full-rank Choi state so the perturbation stays positive.
  const ComplexMatrix ideal = 0.9 * choi_of_channel(amplitude_damping(0.25)).state().matrix() +
                              0.1 * ComplexMatrix::Identity(4, 4) / 4.0;
  ComplexMatrix m = ideal;
  m(0, 0) += 4e-4;
  m(3, 3) -= 4e-4;
  const DensityMatrix joint(QubitRegister({"S", "A"}), m);
  const ChoiState choi(joint, {"S"}, {"A"});
  EXPECT_GT(choi.projection_distance(), 0.0);
  EXPECT_LT(choi.projection_distance(), 1e-2);
  const auto marginal = partial_trace(choi.state(), {"A"});
  EXPECT_LT(max_abs(marginal.matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
  // Extracted Kraus set is trace preserving.
  EXPECT_NO_THROW(channel_of_choi(choi));
}

TEST(Transfer, IdentityAndPauliOracle) {
  EXPECT_LT((transfer_of_channel(KrausChannel::identity(1)).matrix() -
             RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ch = testing::random_channel(1, 1 + trial % 4, rng);
    const auto t = transfer_of_channel(ch);
    // Affine map read off from images of the origin and the axes.
    const Eigen::Vector3d origin =
        state_to_bloch(apply(ch, bloch_to_state(BlochVector(0, 0, 0)))).vec();
    EXPECT_LT((t.translation() - origin).cwiseAbs().maxCoeff(), 1e-12);
    for (int axis = 0; axis < 3; ++axis) {
      Eigen::Vector3d e = Eigen::Vector3d::Zero();
      e[axis] = 1.0;
      const Eigen::Vector3d image = state_to_bloch(apply(ch, bloch_to_state(BlochVector(e)))).vec();
      EXPECT_LT((t.block().col(axis) - (image - origin)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Compose, TransferIsMatrixProduct) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const auto a = testing::random_channel(n, 2, rng);
    const auto b = testing::random_channel(n, 3, rng);
    const RealMatrix lhs = transfer_of_channel(compose(a, b)).matrix();
    const RealMatrix rhs = transfer_of_channel(b).matrix() * transfer_of_channel(a).matrix();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Compose, AmplitudeDampingRatesMultiply) {
  const auto composed = compose(amplitude_damping(0.3), amplitude_damping(0.5));
  const auto expect = amplitude_damping(1 - 0.7 * 0.5);
  EXPECT_LT((transfer_of_channel(composed).matrix() - transfer_of_channel(expect).matrix())
                .cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyExtended, MatchesKroneckerLift) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ch = testing::random_channel(1, 2, rng);
    const auto rho = testing::random_state(2, rng);  // q0, q1
    const auto out = apply_extended(ch, rho, {"q1"});
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    for (const auto& k : ch.operators()) {
      const ComplexMatrix lift = kron(ComplexMatrix::Identity(2, 2), k);
      expect += lift * rho.matrix() * lift.adjoint();
    }
    EXPECT_LT(max_abs(out.matrix() - expect), 1e-14);
  }
}

TEST(Channel, OutputsRemainValidStates) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ch = testing::random_channel(2, 1 + trial % 5, rng);
    const auto rho = testing::random_state(2, rng);
    const auto out = apply(ch, rho);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-10);
    EXPECT_GE(hermitian_eigen(out.matrix()).values.minCoeff(), -1e-9);
  }
}

}  // namespace
}  // namespace collmem
