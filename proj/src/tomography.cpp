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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "collmem/transpile.hpp"

namespace collmem {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 sub_generator(std::uint64_t seed, std::size_t index) {
  return std::mt19937_64(derive_seed(seed, index));
}

std::vector<double> multinomial(std::size_t shots, const std::vector<double>& p,
                                std::mt19937_64& rng) {
  std::vector<double> out(p.size(), 0.0);
  std::size_t remaining = shots;
  double mass = 1.0;
  for (std::size_t i = 0; i < p.size() && remaining > 0; ++i) {
    if (i + 1 == p.size()) {
      out[i] = static_cast<double>(remaining);
      break;
    }
    const double q = mass > 0 ? std::clamp(p[i] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::size_t> draw(remaining, q);
    const std::size_t k = draw(rng);
    out[i] = static_cast<double>(k);
    remaining -= k;
    mass -= p[i];
  }
  return out;
}

void require_job(const TomographyJob& job) {
  if (job.shots == 0) throw std::invalid_argument("tomography job needs at least one shot");
  if (job.measured.empty()) throw std::invalid_argument("tomography job measures no qubits");
}

// Unitary mapping the +1 eigenstate of the setting's Pauli onto |0>.
ComplexMatrix basis_change(char p) {
  switch (p) {
    case 'X': return h_matrix();
    case 'Y': {
      ComplexMatrix sdg = ComplexMatrix::Identity(2, 2);
      sdg(1, 1) = Complex(0.0, -1.0);
      return h_matrix() * sdg;
    }
    case 'Z': return ComplexMatrix::Identity(2, 2);
  }
  throw std::invalid_argument(std::string("unknown Pauli setting character '") + p + "'");
}

// Readout flips applied to a probability vector over k bits.
std::vector<double> apply_confusion(std::vector<double> p, const std::vector<double>& p01,
                                    const std::vector<double>& p10) {
  const std::size_t k = p01.size();
  for (std::size_t q = 0; q < k; ++q) {
    const std::size_t mask = std::size_t{1} << (k - 1 - q);
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (b & mask) continue;
      const double zero = p[b], one = p[b | mask];
      p[b] = (1 - p01[q]) * zero + p10[q] * one;
      p[b | mask] = p01[q] * zero + (1 - p10[q]) * one;
    }
  }
  return p;
}

std::vector<double> measurement_probabilities(const DensityMatrix& rho, const NoiseConfig& noise,
                                              const std::vector<std::string>& labels) {
  DensityMatrix out = rho;
  const double d = noise.measurement_duration();
  if (d > 0) {
    const KrausChannel relax = thermal_relaxation_channel(d, noise.t1_us, noise.t2_us);
    for (const auto& l : labels) out = apply_extended(relax, out, {l});
  }
  std::vector<double> p(out.dim());
  for (std::size_t b = 0; b < out.dim(); ++b) p[b] = std::max(0.0, out.matrix()(b, b).real());
  std::vector<double> p01, p10;
  for (const auto& l : labels) {
    p01.push_back(noise.readout_for(l).p01);
    p10.push_back(noise.readout_for(l).p10);
  }
  return apply_confusion(std::move(p), p01, p10);
}

std::string format_count(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

std::vector<std::string> pauli_settings(std::size_t k) {
  std::vector<std::string> out = {""};
  for (std::size_t q = 0; q < k; ++q) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : {'X', 'Y', 'Z'}) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

std::size_t TomographyJob::circuit_count(bool with_calibration) const {
  return settings().size() + (with_calibration ? 2 : 0);
}

double ShotCounts::total(const std::string& setting) const {
  const auto& v = by_setting.at(setting);
  double t = 0.0;
  for (double c : v) t += c;
  return t;
}

std::vector<double> ShotCounts::frequencies(const std::string& setting) const {
  std::vector<double> f = by_setting.at(setting);
  const double t = total(setting);
  if (t <= 0) throw std::invalid_argument("setting " + setting + " has no counts");
  for (double& x : f) x /= t;
  return f;
}

std::string bitstring(std::size_t value, std::size_t k) {
  std::string s(k, '0');
  for (std::size_t q = 0; q < k; ++q)
    if (value & (std::size_t{1} << (k - 1 - q))) s[q] = '1';
  return s;
}

std::map<std::string, std::vector<double>> expected_distributions(
    const TomographyJob& job, const DensityMatrix& state, const NoiseConfig& noise) {
  require_job(job);
  const QubitRegister reg(job.measured);
  const DensityMatrix rho = partial_trace(state, job.measured).reordered(job.measured);
  std::map<std::string, std::vector<double>> out;
  for (const auto& setting : job.settings()) {
    Circuit rotation(reg);
    for (std::size_t q = 0; q < setting.size(); ++q) {
      if (setting[q] != 'Z') rotation.add(Gate::unitary({job.measured[q]}, basis_change(setting[q])));
    }
    const DensityMatrix rotated = run_noisy_circuit(transpile(rotation), noise, rho);
    out[setting] = measurement_probabilities(rotated, noise, job.measured);
  }
  return out;
}

ShotCounts expected_counts(const TomographyJob& job, const DensityMatrix& state,
                           const NoiseConfig& noise) {
  ShotCounts c{job.measured, {}};
  for (auto& [setting, p] : expected_distributions(job, state, noise)) {
    for (double& x : p) x *= static_cast<double>(job.shots);
    c.by_setting[setting] = std::move(p);
  }
  return c;
}

ShotCounts sample(const TomographyJob& job, const DensityMatrix& state, const NoiseConfig& noise) {
  const auto dists = expected_distributions(job, state, noise);
  const auto settings = job.settings();
  ShotCounts c{job.measured, {}};
  for (std::size_t i = 0; i < settings.size(); ++i) {
    auto rng = sub_generator(job.seed, i);
    c.by_setting[settings[i]] = multinomial(job.shots, dists.at(settings[i]), rng);
  }
  return c;
}

CalibrationCounts sample_calibration(const TomographyJob& job, const NoiseConfig& noise) {
  require_job(job);
  const std::size_t k = job.measured.size();
  const QubitRegister reg(job.measured);
  const std::string z(k, 'Z');
  const std::size_t base = job.settings().size();
  CalibrationCounts cal{{job.measured, {}}, {job.measured, {}}};
  for (int which = 0; which < 2; ++which) {
    const auto prepared = DensityMatrix::basis_state(reg, which == 0 ? 0 : reg.dim() - 1);
    auto rng = sub_generator(job.seed, base + static_cast<std::size_t>(which));
    auto& target = which == 0 ? cal.zeros : cal.ones;
    target.by_setting[z] =
        multinomial(job.shots, measurement_probabilities(prepared, noise, job.measured), rng);
  }
  return cal;
}

ReadoutEstimate estimate_readout(const CalibrationCounts& cal) {
  const std::size_t k = cal.zeros.labels.size();
  if (cal.ones.labels != cal.zeros.labels) {
    throw std::invalid_argument("calibration runs measure different qubits");
  }
  const std::string z(k, 'Z');
  const auto f0 = cal.zeros.frequencies(z);
  const auto f1 = cal.ones.frequencies(z);
  ReadoutEstimate r{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
  for (std::size_t q = 0; q < k; ++q) {
    const std::size_t mask = std::size_t{1} << (k - 1 - q);
    for (std::size_t b = 0; b < f0.size(); ++b) {
      if (b & mask) r.p01[q] += f0[b];
      else r.p10[q] += f1[b];
    }
  }
  return r;
}

ShotCounts mitigate_readout(const ShotCounts& counts, const CalibrationCounts& cal) {
  if (cal.zeros.labels != counts.labels) {
    throw std::invalid_argument("calibration qubits differ from the measured qubits");
  }
  const ReadoutEstimate r = estimate_readout(cal);
  const std::size_t k = counts.labels.size();
  for (std::size_t q = 0; q < k; ++q) {
    if (r.p01[q] >= 0.5 || r.p10[q] >= 0.5) {
      throw std::invalid_argument("readout confusion matrix for " + counts.labels[q] +
                                  " is singular or flips most outcomes");
    }
  }
  ShotCounts out{counts.labels, {}};
  for (const auto& [setting, values] : counts.by_setting) {
    std::vector<double> f = counts.frequencies(setting);
    // Inverse of [[1 - p01, p10], [p01, 1 - p10]] per qubit.
    for (std::size_t q = 0; q < k; ++q) {
      const double det = 1 - r.p01[q] - r.p10[q];
      const std::size_t mask = std::size_t{1} << (k - 1 - q);
      for (std::size_t b = 0; b < f.size(); ++b) {
        if (b & mask) continue;
        const double zero = f[b], one = f[b | mask];
        f[b] = ((1 - r.p10[q]) * zero - r.p10[q] * one) / det;
        f[b | mask] = (-r.p01[q] * zero + (1 - r.p01[q]) * one) / det;
      }
    }
    double sum = 0.0;
    for (double& x : f) sum += (x = std::max(0.0, x));
    const double total = counts.total(setting);
    for (double& x : f) x = x / sum * total;
    out.by_setting[setting] = std::move(f);
  }
  return out;
}

Reconstruction reconstruct(const ShotCounts& counts) {
  const std::size_t k = counts.labels.size();
  if (k == 0) throw std::invalid_argument("reconstruct: no measured qubits");
  const auto settings = pauli_settings(k);
  std::map<std::string, std::vector<double>> freq;
  for (const auto& s : settings) {
    if (!counts.by_setting.count(s)) {
      throw std::invalid_argument("reconstruct: missing tomography setting " + s);
    }
    freq[s] = counts.frequencies(s);
  }
  const std::size_t dim = std::size_t{1} << k;
  ComplexMatrix estimate = ComplexMatrix::Zero(dim, dim);
  for (std::size_t a = 0; a < (std::size_t{1} << (2 * k)); ++a) {
    const std::string label = pauli_label(a, k);
    double sum = 0.0;
    int n = 0;
    for (const auto& s : settings) {
      bool compatible = true;
      for (std::size_t q = 0; q < k; ++q)
        if (label[q] != 'I' && label[q] != s[q]) compatible = false;
      if (!compatible) continue;
      const auto& f = freq[s];
      double e = 0.0;
      for (std::size_t b = 0; b < dim; ++b) {
        int parity = 0;
        for (std::size_t q = 0; q < k; ++q)
          if (label[q] != 'I' && (b & (std::size_t{1} << (k - 1 - q)))) parity ^= 1;
        e += parity ? -f[b] : f[b];
      }
      sum += e;
      ++n;
    }
    estimate += (sum / n) * pauli::from_string(label);
  }
  estimate /= static_cast<double>(dim);
  double distance = 0.0;
  DensityMatrix state = DensityMatrix::project(QubitRegister(counts.labels), estimate, &distance);
  return {std::move(state), std::move(estimate), distance};
}

ShotCounts bootstrap_resample(const ShotCounts& counts, std::mt19937_64& rng) {
  ShotCounts out{counts.labels, {}};
  for (const auto& [setting, values] : counts.by_setting) {
    const double total = counts.total(setting);
    const auto shots = static_cast<std::size_t>(std::llround(total));
    out.by_setting[setting] = multinomial(shots, counts.frequencies(setting), rng);
  }
  return out;
}

std::string counts_to_csv(const ShotCounts& counts) {
  std::ostringstream os;
  os << "setting,bitstring,count\n";
  const std::size_t k = counts.labels.size();
  for (const auto& [setting, values] : counts.by_setting) {
    for (std::size_t b = 0; b < values.size(); ++b) {
      os << setting << ',' << bitstring(b, k) << ',' << format_count(values[b]) << '\n';
    }
  }
  return os.str();
}

ShotCounts counts_from_csv(std::string_view text, const std::vector<std::string>& labels) {
  const std::size_t k = labels.size();
  ShotCounts out{labels, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "setting,bitstring,count") {
        throw std::invalid_argument("counts CSV: expected header setting,bitstring,count");
      }
      continue;
    }
    const auto c1 = line.find(','), c2 = line.rfind(',');
    if (c1 == std::string::npos || c1 == c2) {
      throw std::invalid_argument("counts CSV line " + std::to_string(line_no) + ": three columns expected");
    }
    const std::string setting = line.substr(0, c1);
    const std::string bits = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string value = line.substr(c2 + 1);
    if (setting.size() != k || bits.size() != k ||
        bits.find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument("counts CSV line " + std::to_string(line_no) +
                                  ": setting and bitstring must have one character per qubit");
    }
    double v = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size() || v < 0) {
      throw std::invalid_argument("counts CSV line " + std::to_string(line_no) + ": bad count");
    }
    auto& vec = out.by_setting[setting];
    if (vec.empty()) vec.assign(std::size_t{1} << k, 0.0);
    vec[std::stoul(bits, nullptr, 2)] = v;
  }
  return out;
}

}  // namespace collmem
