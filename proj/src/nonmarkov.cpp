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

#include "collmem/nonmarkov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "collmem/entangle.hpp"

namespace collmem {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridStepDeg = 2.0;
constexpr double kRefineTol = 1e-6;

void require_qubit_channel(const KrausChannel& ch, const char* what) {
  if (ch.in_dim() != 2 || ch.out_dim() != 2) {
    throw std::invalid_argument(std::string(what) + ": qubit channel required");
  }
}

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

class BlpObjective {
 public:
  BlpObjective(const KrausChannel& ch1, const KrausChannel& ch2) : ch1_(ch1), ch2_(ch2) {}

  double operator()(double theta, double phi) const {
    const Eigen::Vector3d r = direction(theta, phi);
    // Clamp round-off so the vector passes Bloch-ball validation.
    const Eigen::Vector3d u = r / std::max(1.0, r.norm());
    const DensityMatrix a = bloch_to_state(BlochVector(u));
    const DensityMatrix b = bloch_to_state(BlochVector(-u));
    return trace_distance(apply(ch2_, a), apply(ch2_, b)) -
           trace_distance(apply(ch1_, a), apply(ch1_, b));
  }

 private:
  const KrausChannel& ch1_;
  const KrausChannel& ch2_;
};

struct Vertex {
  double theta, phi, value;
};

// Maximizes f from (theta0, phi0) with a two-dimensional Nelder-Mead simplex.
Vertex nelder_mead(const BlpObjective& f, double theta0, double phi0, double step) {
  std::array<Vertex, 3> s = {Vertex{theta0, phi0, f(theta0, phi0)},
                             Vertex{theta0 + step, phi0, f(theta0 + step, phi0)},
                             Vertex{theta0, phi0 + step, f(theta0, phi0 + step)}};
  auto eval = [&](double t, double p) { return Vertex{t, p, f(t, p)}; };
  for (int iter = 0; iter < 2000; ++iter) {
    std::sort(s.begin(), s.end(), [](const Vertex& x, const Vertex& y) { return x.value > y.value; });
    const double size = std::max(std::hypot(s[1].theta - s[0].theta, s[1].phi - s[0].phi),
                                 std::hypot(s[2].theta - s[0].theta, s[2].phi - s[0].phi));
    if (size < kRefineTol * 1e-3 || (size < kRefineTol && s[0].value - s[2].value < 1e-13)) break;
    const double ct = (s[0].theta + s[1].theta) / 2, cp = (s[0].phi + s[1].phi) / 2;
    const Vertex r = eval(2 * ct - s[2].theta, 2 * cp - s[2].phi);
    if (r.value > s[0].value) {
      const Vertex e = eval(3 * ct - 2 * s[2].theta, 3 * cp - 2 * s[2].phi);
      s[2] = e.value > r.value ? e : r;
    } else if (r.value > s[1].value) {
      s[2] = r;
    } else {
      const Vertex c = eval((ct + s[2].theta) / 2, (cp + s[2].phi) / 2);
      if (c.value > s[2].value) {
        s[2] = c;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i] = eval((s[i].theta + s[0].theta) / 2, (s[i].phi + s[0].phi) / 2);
        }
      }
    }
  }
  return *std::max_element(s.begin(), s.end(),
                           [](const Vertex& x, const Vertex& y) { return x.value < y.value; });
}

// Maps angles onto theta in [0, pi], phi in [0, 2 pi).
std::pair<double, double> canonical_angles(double theta, double phi) {
  theta = std::fmod(theta, 2 * kPi);
  if (theta < 0) theta += 2 * kPi;
  if (theta > kPi) {
    theta = 2 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2 * kPi);
  if (phi < 0) phi += 2 * kPi;
  return {theta, phi};
}

}  // namespace

RhpSeries rhp_series(const std::vector<EvolutionRecord>& records) {
  RhpSeries out;
  for (const auto& r : records) {
    double c = 0.0;
    if (r.joint_state.num_qubits() == 2) {
      c = concurrence_2q(r.joint_state);
    } else {
      out.lower_bound = true;
      c = concurrence_lower(r.joint_state, r.system_labels);
    }
    if (!out.points.empty() && c > out.points.back().second + kWitnessThreshold) {
      out.increase_detected = true;
    }
    out.points.emplace_back(r.n, c);
  }
  return out;
}

BlpResult blp_max_increase(const KrausChannel& ch1, const KrausChannel& ch2) {
  require_qubit_channel(ch1, "blp_max_increase");
  require_qubit_channel(ch2, "blp_max_increase");
  const BlpObjective f(ch1, ch2);
  const double step = kGridStepDeg * kPi / 180.0;
  Vertex best{0.0, 0.0, f(0.0, 0.0)};
  const int n_theta = static_cast<int>(std::lround(180.0 / kGridStepDeg));
  const int n_phi = static_cast<int>(std::lround(360.0 / kGridStepDeg));
  // Row-major scan that only accepts clear improvements keeps the smallest (theta, phi)
  // among values equal up to round-off.
  for (int i = 0; i <= n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      const double theta = step * i, phi = step * j;
      const double v = f(theta, phi);
      if (v > best.value + 1e-12) best = {theta, phi, v};
    }
  }
  const Vertex refined = nelder_mead(f, best.theta, best.phi, step);
  if (refined.value > best.value + 1e-12) best = refined;
  const auto [theta, phi] = canonical_angles(best.theta, best.phi);
  BlpResult out;
  out.delta = std::max(0.0, best.value);
  out.theta = theta;
  out.phi = phi;
  const Eigen::Vector3d r = direction(theta, phi);
  out.a = BlochVector(r / std::max(1.0, r.norm()));
  out.b = BlochVector(-out.a.vec());
  return out;
}

double bloch_volume(const KrausChannel& ch) {
  require_qubit_channel(ch, "bloch_volume");
  return std::abs(transfer_of_channel(ch).block().determinant());
}

NonMarkovReport nonmarkov_report(const std::vector<EvolutionRecord>& records,
                                 const EvolutionRecord& at_t1, const EvolutionRecord& at_t2) {
  NonMarkovReport out;
  out.rhp = rhp_series(records);
  const auto& c1 = at_t1.reduced_channel;
  const auto& c2 = at_t2.reduced_channel;
  if (c1.in_dim() == 2 && c1.out_dim() == 2 && c2.in_dim() == 2 && c2.out_dim() == 2) {
    out.blp = blp_max_increase(c1, c2);
    out.volume_ratio_t1 = bloch_volume(c1);
    out.volume_ratio_t2 = bloch_volume(c2);
  }
  return out;
}

}  // namespace collmem
