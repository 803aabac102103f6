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

#include "collmem/tomography.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace collmem {
namespace {

using testing::max_abs;

DensityMatrix bell_sa() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(QubitRegister({"S", "A"}), psi);
}

NoiseConfig readout_only(double p01, double p10) {
  NoiseConfig c = NoiseConfig::ideal();
  c.readout_default = {p01, p10};
  return c;
}

TEST(Settings, CanonicalOrderAndCounts) {
  const auto two = pauli_settings(2);
  EXPECT_EQ(two, (std::vector<std::string>{"XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"}));
  EXPECT_EQ(pauli_settings(3).size(), 27u);
  TomographyJob job{{"A1", "A2", "S1", "S2"}, 4096, 1};
  EXPECT_EQ(job.circuit_count(false), 81u);
  EXPECT_EQ(job.circuit_count(true), 83u);
}

TEST(Sample, BasisStatesAndBinomialStatistics) {
  const QubitRegister q({"q"});
  TomographyJob job{{"q"}, 4096, 11};
  const auto zero = sample(job, DensityMatrix::basis_state(q, 0), NoiseConfig::ideal());
  EXPECT_EQ(zero.by_setting.at("Z")[0], 4096.0);
  EXPECT_EQ(zero.by_setting.at("Z")[1], 0.0);
  EXPECT_EQ(zero.by_setting.at("X")[0] + zero.by_setting.at("X")[1], 4096.0);

  ComplexVector plus = ComplexVector::Constant(2, 1.0 / std::sqrt(2.0));
  const auto p = sample(job, DensityMatrix::from_pure(q, plus), NoiseConfig::ideal());
  const double sigma = std::sqrt(4096 * 0.25);
  EXPECT_LT(std::abs(p.by_setting.at("Z")[0] - 2048), 5 * sigma);
  EXPECT_EQ(p.by_setting.at("X")[0], 4096.0);

  const auto flipped = sample(job, DensityMatrix::basis_state(q, 0), readout_only(0.02, 0.0));
  const double f1 = flipped.by_setting.at("Z")[1] / 4096;
  EXPECT_LT(std::abs(f1 - 0.02), 5 * std::sqrt(0.02 * 0.98 / 4096));
  EXPECT_THROW(sample(TomographyJob{{"q"}, 0, 1}, DensityMatrix::basis_state(q, 0),
                      NoiseConfig::ideal()),
               std::invalid_argument);
}

TEST(Sample, ReproducibleAndSeedSensitive) {
  TomographyJob job{{"S", "A"}, 1000, 5};
  const auto a = sample(job, bell_sa(), NoiseConfig{});
  const auto b = sample(job, bell_sa(), NoiseConfig{});
  EXPECT_EQ(a, b);
  job.seed = 6;
  EXPECT_NE(sample(job, bell_sa(), NoiseConfig{}), a);
}

TEST(Expected, MeasurementRelaxationThenReadout) {
  NoiseConfig cfg;
  cfg.readout_default = {0.03, 0.07};
  const QubitRegister q({"q"});
  const auto dist = expected_distributions(TomographyJob{{"q"}, 1, 0},
                                           DensityMatrix::basis_state(q, 1), cfg);
  const double survive = std::exp(-1216e-3 / 280.0);
  EXPECT_NEAR(dist.at("Z")[1], survive * (1 - 0.07) + (1 - survive) * 0.03, 1e-12);
}

TEST(Reconstruct, ExactCountsRecoverState) {
  TomographyJob job{{"S", "A"}, 4096, 0};
  const auto rec = reconstruct(expected_counts(job, bell_sa(), NoiseConfig::ideal()));
  EXPECT_LT(max_abs(rec.state.matrix() - bell_sa().matrix()), 1e-12);
  EXPECT_LT(rec.projection_distance, 1e-12);
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = testing::random_state(3, rng).relabeled(QubitRegister({"a", "b", "c"}));
    const auto r = reconstruct(expected_counts(TomographyJob{{"a", "b", "c"}, 100, 0}, rho,
                                               NoiseConfig::ideal()));
    EXPECT_LT(max_abs(r.linear_estimate - rho.matrix()), 1e-12);
  }
}

TEST(Reconstruct, ShotNoiseIsSmallAndShrinksWithShots) {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TomographyJob job{{"S", "A"}, 4096, seed};
    const auto rec = reconstruct(sample(job, bell_sa(), NoiseConfig::ideal()));
    if (trace_distance(rec.state, bell_sa()) < 0.05) ++good;
  }
  EXPECT_GE(good, 19);
  // Mean error against shots on a log-log scale has slope close to -1/2.
  std::vector<double> xs, ys;
  for (std::size_t shots : {256u, 1024u, 4096u, 16384u}) {
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto rec = reconstruct(sample(TomographyJob{{"S", "A"}, shots, 100 + seed},
                                          bell_sa(), NoiseConfig::ideal()));
      mean += trace_distance(rec.state, bell_sa()) / 20;
    }
    xs.push_back(std::log(static_cast<double>(shots)));
    ys.push_back(std::log(mean));
  }
  const double xm = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, ym = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
  double num = 0, den = 0;
  for (int i = 0; i < 4; ++i) {
    num += (xs[i] - xm) * (ys[i] - ym);
    den += (xs[i] - xm) * (xs[i] - xm);
  }
  const double slope = num / den;
  EXPECT_GT(slope, -0.65);
  EXPECT_LT(slope, -0.35);
}

TEST(Reconstruct, ProjectsBiasedCountsOntoStates) {
  ShotCounts c{{"q"}, {}};
  c.by_setting["X"] = {100, 0};
  c.by_setting["Y"] = {100, 0};
  c.by_setting["Z"] = {100, 0};
  const auto rec = reconstruct(c);
  EXPECT_GE(hermitian_eigen(rec.state.matrix()).values.minCoeff(), 0.0);
  EXPECT_GT(rec.projection_distance, 0.0);
  c.by_setting.erase("Y");
  EXPECT_THROW(reconstruct(c), std::invalid_argument);
}

TEST(Mitigation, PerfectCalibrationLeavesCountsUnchanged) {
  TomographyJob job{{"S", "A"}, 2048, 3};
  const auto counts = sample(job, bell_sa(), NoiseConfig::ideal());
  const auto cal = sample_calibration(job, NoiseConfig::ideal());
  const auto mitigated = mitigate_readout(counts, cal);
  for (const auto& [s, v] : counts.by_setting)
    for (std::size_t b = 0; b < v.size(); ++b) EXPECT_NEAR(mitigated.by_setting.at(s)[b], v[b], 1e-9);
}

TEST(Mitigation, RemovesSyntheticFlipBias) {
  // Z-basis marginal of |0> on one qubit with p01 = p10 = 0.05.
  const QubitRegister q({"q"});
  const NoiseConfig noisy = readout_only(0.05, 0.05);
  double bias_sum = 0.0, sq_sum = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    TomographyJob job{{"q"}, 4096, static_cast<std::uint64_t>(1000 + t)};
    const auto counts = sample(job, DensityMatrix::basis_state(q, 0), noisy);
    const auto cal = sample_calibration(job, noisy);
    const double f0 = mitigate_readout(counts, cal).frequencies("Z")[0];
    bias_sum += f0 - 1.0;
    sq_sum += (f0 - 1.0) * (f0 - 1.0);
  }
  const double mean = bias_sum / trials;
  const double sd = std::sqrt(std::max(sq_sum / trials - mean * mean, 1e-18));
  // Clipping at 1 biases every trial downward by at most one flip estimate.
  EXPECT_LT(std::abs(mean), 3 * sd / std::sqrt(static_cast<double>(trials)) + 5e-3);
  // Unmitigated bias is far larger.
  TomographyJob job{{"q"}, 4096, 7};
  EXPECT_NEAR(sample(job, DensityMatrix::basis_state(q, 0), noisy).frequencies("Z")[0], 0.95,
              5 * std::sqrt(0.05 * 0.95 / 4096));
}

TEST(Mitigation, UnbiasedOnInteriorState) {
  // |+> measured in Z: true frequency 1/2, no clipping involved.
  const QubitRegister q({"q"});
  const NoiseConfig noisy = readout_only(0.05, 0.05);
  ComplexVector plus = ComplexVector::Constant(2, 1.0 / std::sqrt(2.0));
  double sum = 0.0, sq = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    TomographyJob job{{"q"}, 4096, static_cast<std::uint64_t>(5000 + t)};
    const auto cal = sample_calibration(job, noisy);
    const double f0 = mitigate_readout(sample(job, DensityMatrix::from_pure(q, plus), noisy), cal)
                          .frequencies("Z")[0];
    sum += f0 - 0.5;
    sq += (f0 - 0.5) * (f0 - 0.5);
  }
  const double mean = sum / trials;
  const double sd = std::sqrt(sq / trials - mean * mean);
  EXPECT_LT(std::abs(mean), 3 * sd / std::sqrt(static_cast<double>(trials)));
}

TEST(Mitigation, RejectsSingularConfusion) {
  TomographyJob job{{"q"}, 100, 1};
  const auto cal = sample_calibration(job, readout_only(0.5, 0.0));
  const auto counts = sample(job, DensityMatrix::basis_state(QubitRegister({"q"}), 0),
                             NoiseConfig::ideal());
  EXPECT_THROW(mitigate_readout(counts, cal), std::invalid_argument);
}

TEST(Csv, RoundTrip) {
  TomographyJob job{{"S", "A"}, 512, 9};
  const auto counts = sample(job, bell_sa(), NoiseConfig{});
  const std::string csv = counts_to_csv(counts);
  EXPECT_EQ(csv.substr(0, 24), "setting,bitstring,count\n");
  EXPECT_EQ(counts_from_csv(csv, {"S", "A"}), counts);
  const auto cal = sample_calibration(job, NoiseConfig{});
  const auto mitigated = mitigate_readout(counts, cal);
  EXPECT_EQ(counts_from_csv(counts_to_csv(mitigated), {"S", "A"}), mitigated);
  EXPECT_THROW(counts_from_csv("setting,bitstring,count\nXX,0,3\n", {"S", "A"}),
               std::invalid_argument);
}

}  // namespace
}  // namespace collmem
