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

// Command-line runner. Exit codes: 0 success, 1 usage or input error,
// 2 numerical-invariant violation or failed self-check.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "collmem/experiments.hpp"

namespace {

using namespace collmem;

constexpr int kUsageError = 1;
constexpr int kNumericalError = 2;

struct Options {
  std::string model = "single";
  double g_dt = std::numbers::pi / 4;
  std::size_t collisions = 10;
  std::string noise = "ideal";
  std::size_t shots = 4096;
  std::uint64_t seed = 0;
  bool mitigate = false;
  std::string out = "out";
};

void add_spec_options(CLI::App* app, Options& o) {
  app->add_option("--model", o.model, "Collision model")
      ->check(CLI::IsMember({"single", "two-qubit", "swap", "toy"}))
      ->capture_default_str();
  app->add_option("--gdt", o.g_dt, "Collision angle g*dt in radians")->capture_default_str();
  app->add_option("--collisions", o.collisions, "Largest collision number N")->capture_default_str();
  app->add_option("--noise", o.noise, "Noise config file or 'ideal'")->capture_default_str();
  app->add_option("--shots", o.shots, "Shots per tomography setting")->capture_default_str();
  app->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app->add_flag("--mitigate", o.mitigate, "Apply readout-error mitigation");
  app->add_option("--out", o.out, "Output directory")->capture_default_str();
}

ExperimentSpec to_spec(const Options& o) {
  ExperimentSpec s;
  s.model = parse_model_kind(o.model);
  s.g_dt = o.g_dt;
  s.collisions = o.collisions;
  s.noise = o.noise;
  s.shots = o.shots;
  s.seed = o.seed;
  s.mitigate = o.mitigate;
  s.out = o.out;
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void print_witness(const WitnessReport& w) {
  std::cout << "witness t1=" << w.t1_id << " t2=" << w.t2_id << ": "
            << (w.exact() ? "C#" : "C#_upper") << "(t1)=" << w.left() << " "
            << (w.exact() ? "C" : "C_lower") << "(t2)=" << w.right() << " margin=" << w.margin;
  if (w.margin_stderr) std::cout << " +- " << *w.margin_stderr;
  std::cout << " quantum_memory=" << (w.quantum_memory ? "true" : "false") << "\n";
}

int cmd_simulate(const Options& o) {
  const auto res = run_simulation(to_spec(o));
  write_simulation(res, o.out);
  std::cout << concurrence_to_csv(res.concurrence);
  if (res.witness) print_witness(*res.witness);
  std::cout << "wrote " << o.out << "\n";
  return 0;
}

int cmd_witness(const Options& o, const std::string& in, std::optional<std::size_t> t1,
                std::optional<std::size_t> t2) {
  const auto defaults = CollisionModel::make(parse_model_kind(o.model), o.g_dt).default_witness_times();
  const std::string path = in.empty() ? o.out + "/concurrence.csv" : in;
  const auto table = concurrence_from_csv(read_file(path));
  const auto rep = run_witness(table, t1.value_or(defaults.first), t2.value_or(defaults.second));
  print_witness(rep);
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::ofstream(dir.empty() ? "witness.txt" : (dir / "witness.txt").string(), std::ios::binary)
      << witness_to_text(rep);
  return 0;
}

int cmd_nonmarkov(const Options& o) {
  const auto res = run_simulation(to_spec(o));
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  std::ofstream out(std::filesystem::path(o.out) / "nonmarkov.csv", std::ios::binary);
  out << nonmarkov_to_csv(res.nonmarkov);
  if (!out) throw std::runtime_error("cannot write " + o.out + "/nonmarkov.csv");
  std::cout << nonmarkov_to_csv(res.nonmarkov);
  if (res.nonmarkov_summary) {
    const auto& s = *res.nonmarkov_summary;
    std::cout << "rhp increase detected: " << (s.rhp.increase_detected ? "yes" : "no") << "\n";
    if (res.bloch.size()) {
      std::cout << "blp delta " << s.blp.delta << ", volume ratio " << s.volume_ratio_t1 << " -> "
                << s.volume_ratio_t2 << "\n";
    }
  }
  return 0;
}

int cmd_transpile_check(std::uint64_t seed) {
  bool ok = true;
  for (const auto& e : run_transpile_check(seed)) {
    std::cout << (e.pass ? "PASS " : "FAIL ") << e.name << " deviation=" << e.deviation << " ("
              << e.detail << ")\n";
    ok = ok && e.pass;
  }
  return ok ? 0 : kNumericalError;
}

int cmd_continuum_check(std::size_t points, double t_max, std::size_t n_max) {
  const auto rep = run_continuum_check(continuum_grid(points, t_max), n_max);
  const bool ok = rep.max_rate_deviation < 1e-4 && rep.max_transfer_deviation < 1e-10;
  std::cout << "t,rate,tan\n";
  for (const auto& [t, r] : rep.rates) std::cout << t << ',' << r << ',' << std::tan(t) << '\n';
  std::cout << (ok ? "PASS" : "FAIL") << " max |rate - tan t| = " << rep.max_rate_deviation
            << ", max transfer deviation = " << rep.max_transfer_deviation << "\n";
  return ok ? 0 : kNumericalError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-model quantum memory and non-Markovianity experiments"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Sweep n = 0..N and write CSV artifacts");
  add_spec_options(simulate, opt);

  auto* witness = app.add_subcommand("witness", "Evaluate the quantum-memory witness from a CSV");
  add_spec_options(witness, opt);
  std::string in;
  std::optional<std::size_t> t1, t2;
  witness->add_option("--in", in, "concurrence.csv path (default <out>/concurrence.csv)");
  witness->add_option("--t1", t1, "Earlier collision number");
  witness->add_option("--t2", t2, "Later collision number");

  auto* nonmarkov = app.add_subcommand("nonmarkov", "Write non-Markovianity diagnostics");
  add_spec_options(nonmarkov, opt);

  auto* transpile = app.add_subcommand("transpile-check", "Verify native gate sequences");
  transpile->add_option("--seed", opt.seed, "Seed for random circuits")->capture_default_str();

  auto* continuum = app.add_subcommand("continuum-check", "Compare with the continuum limit");
  std::size_t points = 50, n_max = 8;
  double t_max = 1.4;
  continuum->add_option("--points", points, "Grid points")->capture_default_str();
  continuum->add_option("--t-max", t_max, "Grid end")->capture_default_str();
  continuum->add_option("--collisions", n_max, "Largest n in the transfer comparison")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*simulate) return cmd_simulate(opt);
    if (*witness) return cmd_witness(opt, in, t1, t2);
    if (*nonmarkov) return cmd_nonmarkov(opt);
    if (*transpile) return cmd_transpile_check(opt.seed);
    if (*continuum) return cmd_continuum_check(points, t_max, n_max);
  } catch (const NumericalViolation& e) {
    std::cerr << "numerical violation: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
