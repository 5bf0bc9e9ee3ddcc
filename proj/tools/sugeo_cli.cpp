// Copyright 2026 The sugeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sugeo/acceptance.hpp"
#include "sugeo/bounds.hpp"
#include "sugeo/geodesic.hpp"
#include "sugeo/io.hpp"
#include "sugeo/lattice.hpp"

namespace {

using namespace sugeo;
using io::json;

/// Settings shared by every subcommand.
struct RunConfig {
  int n_cap = 3;
  std::uint64_t seed = 1;
  std::string out;

  static RunConfig from_environment() {
    RunConfig c;
    if (const char* env = std::getenv("SUGEO_N_CAP")) {
      const int v = std::atoi(env);
      if (v >= 1 && v <= kHardQubitCap) c.n_cap = v;
    }
    return c;
  }

  void check(int n) const {
    require(n >= 1, ErrorCode::DimensionMismatch, "qubit count must be positive");
    require(n <= n_cap, ErrorCode::DimensionLimit,
            "n = " + std::to_string(n) + " exceeds cap " + std::to_string(n_cap) + " (set SUGEO_N_CAP to raise it)");
  }

  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out);
    require(bool(f), ErrorCode::InvalidArgument, "cannot write '" + out + "'");
    f << text;
  }

  void emit(const json& j) const { emit(j.dump(2) + "\n"); }
};

PauliVector read_vector(const std::string& path, const RunConfig& cfg) {
  PauliVector v = io::pauli_vector_from_json(io::read_file(path));
  cfg.check(v.n);
  return v;
}

/// Pauli coefficients in the metric's mode; U-mode input without identity part is accepted in SU mode.
PauliVector in_mode(const PauliVector& v, BasisMode mode) {
  if (v.mode == mode) return v;
  return project_to_pauli(to_matrix(v), mode);
}

std::vector<int> parse_qubits(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "bad qubit index '" + item + "'");
    }
  }
  return out;
}

std::vector<PauliString> parse_generators(const std::string& s) {
  std::vector<PauliString> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.emplace_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg = RunConfig::from_environment();
  CLI::App app{"Finsler geometry of SU(2^n): metrics, geodesics and lattice bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", cfg.seed, "seed for sampled quantities");
  app.add_option("--out", cfg.out, "write output here instead of stdout");

  std::string metric_path, vector_path, x_path, input_path, x0_path, y0_path, curve_path, h_path, phases_path,
      circuit_path, generators, kind, gate = "cnot", qubits, pauli = "XY", form = "squared", suite = "all";
  double t_end = 1.0, frac = 1.0;
  long steps = 1000;
  int n = 2, samples = 200, gate_steps = 400;
  CvpOptions cvp;

  auto* metric_eval = app.add_subcommand("metric-eval", "evaluate F(y), or F(x, y) with --x");
  metric_eval->add_option("--metric", metric_path)->required()->check(CLI::ExistingFile);
  metric_eval->add_option("--vector", vector_path)->required()->check(CLI::ExistingFile);
  metric_eval->add_option("--x", x_path, "base point in Pauli coordinates")->check(CLI::ExistingFile);

  auto* coordchange = app.add_subcommand("coordchange", "change tangent coordinates between charts");
  coordchange->add_option("--input", input_path, "JSON {x, y, direction: to-adapted|to-pauli}")
      ->required()
      ->check(CLI::ExistingFile);

  auto* shoot = app.add_subcommand("geodesic-shoot", "integrate the geodesic equation");
  shoot->add_option("--metric", metric_path)->required()->check(CLI::ExistingFile);
  shoot->add_option("--x0", x0_path)->required()->check(CLI::ExistingFile);
  shoot->add_option("--y0", y0_path)->required()->check(CLI::ExistingFile);
  shoot->add_option("--t", t_end)->check(CLI::PositiveNumber);
  shoot->add_option("--steps", steps)->check(CLI::PositiveNumber);

  auto* residual = app.add_subcommand("geodesic-residual", "Euler-Lagrange residual of a curve");
  residual->add_option("--curve", curve_path)->required()->check(CLI::ExistingFile);
  residual->add_option("--form", form)->check(CLI::IsMember({"squared", "speed"}));

  auto* pgeo = app.add_subcommand("pauli-geodesic", "exp(-i H t) for H on a stabilizer subgroup");
  pgeo->add_option("--generators", generators, "comma-separated commuting Pauli strings")->required();
  pgeo->add_option("--hamiltonian", h_path)->required()->check(CLI::ExistingFile);
  pgeo->add_option("--t", t_end);

  auto* cvp_min = app.add_subcommand("cvp-min", "minimal Pauli geodesic through a diagonal unitary");
  cvp_min->add_option("--metric", metric_path)->required()->check(CLI::ExistingFile);
  cvp_min->add_option("--phases", phases_path)->required()->check(CLI::ExistingFile);
  cvp_min->add_option("--window", cvp.window)->check(CLI::PositiveNumber);
  cvp_min->add_option("--window-cap", cvp.window_cap)->check(CLI::PositiveNumber);
  cvp_min->add_option("--node-budget", cvp.node_budget)->check(CLI::PositiveNumber);
  cvp_min->add_flag("--strict", cvp.strict, "fail with WindowTooSmall instead of returning an uncertified value");

  auto* volume = app.add_subcommand("volume-bound", "radius needed to cover a fraction of unitaries");
  volume->add_option("--metric", metric_path)->required()->check(CLI::ExistingFile);
  volume->add_option("--f", frac)->check(CLI::Range(0.0, 1.0));
  volume->add_option("--n", n)->check(CLI::Range(1, 20));

  auto* lower = app.add_subcommand("lower-bound", "curve through a circuit; length is at most the gate count");
  lower->add_option("--circuit", circuit_path)->required()->check(CLI::ExistingFile);
  lower->add_option("--metric", metric_path)->required()->check(CLI::ExistingFile);
  lower->add_option("--steps", gate_steps, "integration steps per gate")->check(CLI::PositiveNumber);

  auto* iso = app.add_subcommand("isometry-check", "sampled invariance of F under a map");
  iso->add_option("--kind", kind)->required()->check(CLI::IsMember({"pauli", "conjugation", "local", "clifford",
                                                                     "unitary"}));
  iso->add_option("--metric", metric_path)->required()->check(CLI::ExistingFile);
  iso->add_option("--gate", gate, "Clifford gate: h, s, cnot, cz, swap");
  iso->add_option("--qubits", qubits, "comma-separated qubits for the Clifford gate");
  iso->add_option("--pauli", pauli, "Pauli string for --kind pauli");
  iso->add_option("--n", n)->check(CLI::Range(1, kHardQubitCap));
  iso->add_option("--samples", samples)->check(CLI::NonNegativeNumber);

  auto* reproduce = app.add_subcommand("reproduce", "run the acceptance suite and print a CSV summary");
  reproduce->add_option("--suite", suite, "all, a suite name or a criterion number");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*metric_eval) {
      const MetricSpec spec = io::metric_from_json(io::read_file(metric_path));
      const PauliVector y = in_mode(read_vector(vector_path, cfg), spec.mode);
      const double value = x_path.empty() ? norm(spec, y)
                                          : metric_in_pauli_coords(spec, in_mode(read_vector(x_path, cfg), spec.mode), y);
      cfg.emit(json{{"value", value}});
    } else if (*coordchange) {
      const json in = io::read_file(input_path);
      require(in.contains("x") && in.contains("y") && in.contains("direction"), ErrorCode::InvalidArgument,
              "input needs x, y and direction");
      const PauliVector x = io::pauli_vector_from_json(in.at("x"));
      cfg.check(x.n);
      const PauliVector y = in_mode(io::pauli_vector_from_json(in.at("y")), x.mode);
      const std::string dir = in.at("direction").get<std::string>();
      require(dir == "to-adapted" || dir == "to-pauli", ErrorCode::InvalidArgument,
              "direction must be to-adapted or to-pauli");
      cfg.emit(io::to_json(dir == "to-adapted" ? change_coords_forward(x, y) : change_coords_backward(x, y)));
    } else if (*shoot) {
      const MetricSpec spec = io::metric_from_json(io::read_file(metric_path));
      const PauliVector x0 = in_mode(read_vector(x0_path, cfg), spec.mode);
      const PauliVector y0 = in_mode(read_vector(y0_path, cfg), spec.mode);
      cfg.emit(io::to_json(shoot_geodesic(spec, x0, y0, t_end, steps)));
    } else if (*residual) {
      const Curve c = io::curve_from_json(io::read_file(curve_path));
      require(!c.samples.empty(), ErrorCode::InvalidArgument, "curve has no samples");
      cfg.check(c.samples.front().x.n);
      const double r = el_residual(c.metric, c, form == "speed" ? LagrangianForm::Speed : LagrangianForm::SquaredSpeed);
      cfg.emit(json{{"residual", r}});
    } else if (*pgeo) {
      const StabilizerSubgroup s = stabilizer_span(parse_generators(generators));
      cfg.check(s.n);
      const PauliVector h = in_mode(read_vector(h_path, cfg), BasisMode::U);
      const UnitaryOperator u = pauli_geodesic(s, h, t_end);
      cfg.emit(json{{"t", t_end}, {"unitary", io::matrix_to_json(u.matrix)}});
    } else if (*cvp_min) {
      const MetricSpec spec = io::metric_from_json(io::read_file(metric_path));
      const DiagonalUnitary u = io::phases_from_json(io::read_file(phases_path));
      cfg.check(u.n);
      cfg.emit(io::to_json(cvp_minimal_pauli_geodesic(spec, u, cvp)));
    } else if (*volume) {
      const MetricSpec spec = io::metric_from_json(io::read_file(metric_path));
      require(frac > 0.0, ErrorCode::InvalidArgument, "fraction must be positive");
      const CoverageBound b = coverage_bound(spec, frac, n);
      cfg.emit(json{{"r_lower", b.r_lower}, {"stirling", b.stirling}, {"n", n}, {"f", frac}});
    } else if (*lower) {
      const MetricSpec spec = io::metric_from_json(io::read_file(metric_path));
      const Circuit c = io::circuit_from_json(io::read_file(circuit_path));
      cfg.check(c.n);
      const CircuitCurve cc = circuit_to_curve(c, spec, gate_steps);
      cfg.emit(json{{"length", cc.length},
                    {"gate_count", cc.gate_count},
                    {"bound_holds", cc.bound_holds},
                    {"endpoint_error", cc.endpoint_error}});
    } else if (*iso) {
      const MetricSpec spec = io::metric_from_json(io::read_file(metric_path));
      cfg.check(n);
      Rng rng(cfg.seed);
      IsometryMap map;
      switch (parse_isometry_kind(kind)) {
        case IsometryKind::Pauli: map = IsometryMap::pauli(PauliString(pauli)); break;
        case IsometryKind::ComplexConjugation: map = IsometryMap::complex_conjugation(n); break;
        case IsometryKind::LocalUnitary: {
          std::vector<CMatrix> factors;
          for (int q = 0; q < n; ++q) factors.push_back(random_unitary(2, rng));
          map = IsometryMap::local_unitary(factors);
          break;
        }
        case IsometryKind::Clifford: {
          std::vector<int> q = qubits.empty() ? std::vector<int>{} : parse_qubits(qubits);
          if (q.empty()) q = gate == "h" || gate == "s" ? std::vector<int>{0} : std::vector<int>{0, 1};
          map = IsometryMap::clifford(gate, q, n);
          break;
        }
        case IsometryKind::Unitary: map = IsometryMap::unitary(random_unitary(Eigen::Index(1) << n, rng)); break;
      }
      const IsometryReport rep = isometry_check(map, spec, n, samples, rng);
      cfg.emit(json{{"kind", kind},
                    {"map", map.label},
                    {"applicable", rep.applicable},
                    {"max_deviation", rep.max_deviation},
                    {"counterexample", rep.counterexample ? io::to_json(*rep.counterexample) : json(nullptr)}});
    } else if (*reproduce) {
      const auto rows = acceptance::run(suite, cfg.seed);
      cfg.emit(acceptance::to_csv(rows));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const io::json::exception& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
