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

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "sugeo/bounds.hpp"
#include "sugeo/coordinates.hpp"
#include "sugeo/geodesic.hpp"
#include "sugeo/lattice.hpp"
#include "sugeo/metric.hpp"
#include "sugeo/random.hpp"

namespace sugeo::acceptance {

/// One comparison of the reproduction suite.
struct Row {
  int criterion = 0;
  std::string label;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct Suite {
  int criterion;
  std::string name;
  std::function<std::vector<Row>(std::uint64_t seed)> run;
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;

inline std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Row below(int criterion, std::string label, double observed, double bound) {
  return {criterion, std::move(label), "< " + num(bound, 3), num(observed), observed < bound};
}

inline Row above(int criterion, std::string label, double observed, double bound) {
  return {criterion, std::move(label), "> " + num(bound, 3), num(observed), observed > bound};
}

inline PauliVector on_strings(int n, std::initializer_list<std::pair<const char*, double>> terms) {
  PauliVector v(n, BasisMode::SU);
  for (auto [s, c] : terms) v[s] = c;
  return v;
}

inline PauliString random_string(int n, Rng& rng) {
  for (;;) {
    const PauliString s = PauliString::from_code(std::uint32_t(rng.below(std::uint64_t(1) << (2 * n))), n);
    if (!s.is_identity()) return s;
  }
}

/// Random two-generator stabilizer subgroup on two qubits.
inline StabilizerSubgroup random_stabilizer(Rng& rng) {
  const PauliString a = random_string(2, rng);
  for (;;) {
    const PauliString b = random_string(2, rng);
    if (b != a && commutes(a, b)) return stabilizer_span({a, b});
  }
}

// 1. Minimal Pauli geodesic through the AND unitary.
inline std::vector<Row> and_cvp(std::uint64_t) {
  std::vector<Row> rows;
  for (int n = 2; n <= 3; ++n)
    for (double k : {4.0, 16.0, 100.0}) {
      const double expected = kPi * (k - (2.0 + n + n * n) / std::ldexp(1.0, n + 1) * (k - 1.0));
      const auto start = std::chrono::steady_clock::now();
      const CvpResult r = cvp_minimal_pauli_geodesic(MetricSpec::fp(PenaltyFunction::step(k), BasisMode::U),
                                                     DiagonalUnitary::and_function(n));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const double rel = std::abs(r.value - expected) / expected;
      rows.push_back({1, "n=" + std::to_string(n) + " k=" + num(k), num(expected, 15), num(r.value, 15),
                      rel < 1e-9 && r.certified && secs < 60.0});
    }
  return rows;
}

// 2. exp(-i H0 t) with H0 = pi ZZ / 2 + 2 pi ZI / M first reaches exp(-i pi ZZ / 2) at t = M.
inline std::vector<Row> long_geodesic(std::uint64_t) {
  std::vector<Row> rows;
  const StabilizerSubgroup z = stabilizer_span({PauliString("ZI"), PauliString("IZ")});
  const CMatrix target = pauli_exp(on_strings(2, {{"ZZ", kPi / 2}}));
  for (int m : {5, 9}) {
    const PauliVector h0 = on_strings(2, {{"ZZ", kPi / 2}, {"ZI", 2 * kPi / m}});
    const double at_m = max_abs(pauli_geodesic(z, h0, m).matrix - target);
    double before = 1e300;
    for (int t = 0; t < m; ++t) before = std::min(before, max_abs(pauli_geodesic(z, h0, t).matrix - target));
    rows.push_back(below(2, "M=" + std::to_string(m) + " distance at t=M", at_m, 1e-8));
    rows.push_back(above(2, "M=" + std::to_string(m) + " min distance at t<M", before, 1e-2));
  }
  return rows;
}

// 3. Pauli geodesics satisfy the Euler-Lagrange equations of Pauli-symmetric metrics.
inline std::vector<Row> pauli_geodesic_residual(std::uint64_t seed) {
  Rng rng(seed);
  const auto p = PenaltyFunction::step(100.0, 1);
  const MetricSpec smoothed = MetricSpec::fp_delta(p, 1e-4);
  const MetricSpec fq = MetricSpec::fq(p);
  double worst_smoothed = 0.0, worst_fq = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const StabilizerSubgroup s = random_stabilizer(rng);
    PauliVector h0(2, BasisMode::SU);
    for (const PauliString& e : s.elements)
      if (!e.is_identity()) h0[e] = 0.5 * rng.normal();
    worst_smoothed = std::max(worst_smoothed, el_residual(smoothed, hamiltonian_curve(smoothed, h0, 1.0, 1000)));
    worst_fq = std::max(worst_fq, el_residual(fq, hamiltonian_curve(fq, h0, 1.0, 1000)));
  }
  const PauliVector generic = rng.pauli_vector(2, BasisMode::SU, 0.5);
  const double control = el_residual(fq, hamiltonian_curve(fq, generic, 1.0, 1000));
  return {below(3, "FpDelta stabilizer residual", worst_smoothed, 1e-4),
          below(3, "Fq stabilizer residual", worst_fq, 1e-4), above(3, "Fq generic residual", control, 1e-2)};
}

// 4. F2 geodesics from the identity are straight lines at constant speed.
inline std::vector<Row> f2_geodesic(std::uint64_t seed) {
  Rng rng(seed);
  double endpoint = 0.0, line = 0.0, drift = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const PauliVector y0 = rng.pauli_vector(2, BasisMode::SU, 0.4);
    const Curve c = shoot_geodesic(MetricSpec::f2(), PauliVector(2, BasisMode::SU), y0, 1.0, 1000);
    endpoint = std::max(endpoint, (c.samples.back().x.entries - y0.entries).cwiseAbs().maxCoeff());
    for (const CurveSample& s : c.samples)
      line = std::max(line, (s.x.entries - s.t * y0.entries).cwiseAbs().maxCoeff());
    drift = std::max(drift, speed_drift(c));
  }
  return {below(4, "endpoint error", endpoint, 1e-6), below(4, "distance from line", line, 1e-6),
          below(4, "speed drift", drift, 1e-6)};
}

// 5. Circuit curves: endpoint equals the circuit and length is at most the gate count.
inline std::vector<Row> circuit_bound(std::uint64_t seed) {
  Rng rng(seed);
  const auto p = PenaltyFunction::step(10.0);  // every weight <= 2 carries penalty 1
  const std::vector<std::pair<std::string, MetricSpec>> specs{
      {"F1", MetricSpec::f1()}, {"F2", MetricSpec::f2()}, {"Fp", MetricSpec::fp(p)}, {"Fq", MetricSpec::fq(p)}};
  std::vector<Circuit> circuits;
  for (int i = 0; i < 50; ++i) circuits.push_back(random_circuit(2, 1 + i % 8, rng));
  std::vector<Row> rows;
  for (const auto& [name, spec] : specs) {
    double err = 0.0, excess = -1e300;
    for (const Circuit& c : circuits) {
      const CircuitCurve cc = circuit_to_curve(c, spec);
      err = std::max(err, cc.endpoint_error);
      excess = std::max(excess, cc.length - double(cc.gate_count));
    }
    rows.push_back(below(5, name + " endpoint error", err, 1e-8));
    rows.push_back({5, name + " max(length - m)", "<= 1e-06", num(excess), excess <= 1e-6});
  }
  return rows;
}

// 6. Closed-form SU(2) change of coordinates against the vectorized path; pinv against the series.
inline std::vector<Row> coordinates(std::uint64_t seed) {
  Rng rng(seed);
  double su2 = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Vec3 x(rng.normal(), rng.normal(), rng.normal());
    x = x.normalized() * rng.uniform(0.0, kPi - 0.1);
    const Vec3 y(rng.normal(), rng.normal(), rng.normal());
    PauliVector xv(1, BasisMode::SU), yv(1, BasisMode::SU);
    xv.entries = x;
    yv.entries = y;
    const PauliVector vec_path = project_real(bch_E(to_matrix(xv)).apply(to_matrix(yv)), 1, BasisMode::SU);
    su2 = std::max(su2, (vec_path.entries - su2_to_adapted(x, y)).cwiseAbs().maxCoeff());
  }
  double series = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      CMatrix x = rng.hermitian(1 << n);
      x *= rng.uniform() / hermitian_spectrum(x).values.cwiseAbs().maxCoeff();
      const CMatrix z = rng.complex_matrix(1 << n, 1 << n);
      series = std::max(series, max_abs(bch_E(x).apply(z) - bch_E_series(x, 30).apply(z)));
    }
  return {below(6, "SU(2) closed form vs vectorized", su2, 1e-10), below(6, "pinv vs 30-term series", series, 1e-10)};
}

// Richardson-extrapolated central differences of N^2 / 2.
inline RMatrix fd_half_square_hessian(const MetricSpec& spec, const PauliVector& y, double h) {
  const int d = y.dimension();
  auto f = [&](const RVector& v) {
    const double n = norm(spec, PauliVector(y.n, y.mode, v));
    return 0.5 * n * n;
  };
  auto at_step = [&](double s) {
    RMatrix out(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        RVector ej = RVector::Zero(d), ek = RVector::Zero(d);
        ej[j] = s;
        ek[k] = s;
        out(j, k) = (f(y.entries + ej + ek) - f(y.entries + ej - ek) - f(y.entries - ej + ek) +
                     f(y.entries - ej - ek)) / (4 * s * s);
      }
    return out;
  };
  return (4.0 * at_step(0.5 * h) - at_step(h)) / 3.0;
}

// 7. Smoothed norms: sandwich, positive definite Hessian, Euler identities.
inline std::vector<Row> smoothing(std::uint64_t seed) {
  Rng rng(seed);
  double sandwich = -1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 2;
    const MetricSpec fp = MetricSpec::fp(PenaltyFunction::step(16.0));
    const double p_total = penalty_total(fp, n);
    const MetricSpec fpd = MetricSpec::fp_delta(PenaltyFunction::step(16.0), 1e-4 / p_total);
    const PauliVector y = rng.pauli_vector(n, BasisMode::SU);
    const double lo = norm(fp, y), mid = norm(fpd, y), hi = lo / (1.0 - p_total * fpd.delta);
    sandwich = std::max({sandwich, (lo - mid) / mid, (mid - hi) / hi});
  }
  double min_eig = 1e300, fd = 0.0, euler = 0.0;
  for (int n = 1; n <= 2; ++n)
    for (MetricSpec spec : {MetricSpec::f1_delta(0.0), MetricSpec::fp_delta(PenaltyFunction::step(4.0, 1), 0.0)}) {
      spec.delta = 1e-2 / penalty_total(spec, n);
      for (int trial = 0; trial < 5; ++trial) {
        const PauliVector y = rng.pauli_vector(n, BasisMode::SU);
        const RMatrix h = hessian(spec, y);
        min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<RMatrix>(h).eigenvalues().minCoeff());
        fd = std::max(fd, (h - fd_half_square_hessian(spec, y, 2e-4)).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff());
        const EulerResiduals r = euler_identities_check(spec, y);
        euler = std::max({euler, r.first, r.second, r.third});
      }
    }
  return {{7, "sandwich max relative violation", "<= 1e-14", num(sandwich), sandwich <= 1e-14},
          above(7, "min Hessian eigenvalue", min_eig, 0.0), below(7, "Hessian vs finite differences", fd, 1e-5),
          below(7, "Euler identity residual", euler, 1e-5)};
}

// 8. Isometry catalogue.
inline std::vector<Row> isometries(std::uint64_t seed) {
  Rng rng(seed);
  const auto p = PenaltyFunction::step(4.0, 1);
  const std::vector<std::pair<std::string, MetricSpec>> specs{
      {"F1", MetricSpec::f1()},          {"F2", MetricSpec::f2()},
      {"Fp", MetricSpec::fp(p)},         {"Fq", MetricSpec::fq(p)},
      {"F1Delta", MetricSpec::f1_delta(1e-4)}, {"FpDelta", MetricSpec::fp_delta(p, 1e-5)}};
  const std::vector<IsometryMap> maps{
      IsometryMap::pauli(PauliString("XY")), IsometryMap::complex_conjugation(2),
      IsometryMap::local_unitary({random_unitary(2, rng), random_unitary(2, rng)}),
      IsometryMap::clifford("cnot", {0, 1}, 2), IsometryMap::unitary(random_unitary(4, rng))};
  double worst = 0.0;
  int pairs = 0;
  for (const IsometryMap& map : maps)
    for (const auto& [name, spec] : specs) {
      if (!isometry_applicable(map.kind, spec.family)) continue;
      worst = std::max(worst, isometry_check(map, spec, 2, 200, rng).max_deviation);
      ++pairs;
    }
  const IsometryReport cnot = isometry_check(IsometryMap::clifford("cnot", {0, 1}, 2), MetricSpec::fq(p), 2, 200, rng);
  const IsometryReport unitary = isometry_check(IsometryMap::unitary(random_unitary(4, rng)), MetricSpec::f1(), 2, 200, rng);
  return {below(8, std::to_string(pairs) + " applicable pairs max deviation", worst, 1e-10),
          {8, "CNOT on Fq counterexample", "found", cnot.counterexample ? "found" : "none",
           cnot.counterexample.has_value()},
          {8, "unitary on F1 counterexample", "found", unitary.counterexample ? "found" : "none",
           unitary.counterexample.has_value()}};
}

// 9. Covering radius bound and Monte Carlo coverage.
inline std::vector<Row> volume(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Row> rows;
  const double root = std::sqrt(2.0 * kPi / std::numbers::e);
  for (int n = 1; n <= 3; ++n) {
    const double dim = std::ldexp(1.0, n);
    const double r = coverage_bound(MetricSpec::f2(), 1.0, n).r_lower;
    // Stirling: Gamma(D/2 + 1)^(1/D) = sqrt(D / 2e) (pi D)^(1/2D) (1 + O(1/D))^(1/D).
    const double ratio = r / (root * std::pow(kPi * dim, 1.0 / (2.0 * dim)));
    rows.push_back({9, "n=" + std::to_string(n) + " r / sqrt(2 pi/e)", ">= 1, Stirling ratio within 1/(6D^2)",
                    num(r / root) + ", " + num(ratio), r >= root && std::abs(ratio - 1.0) <= 1.0 / (6.0 * dim * dim)});
  }
  const double det = std::exp(PhaseLattice::log_det(1));
  bool ok = true;
  std::string observed;
  for (double r : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    const CoverageEstimate est = monte_carlo_coverage(MetricSpec::f2(), r, 1, 10000, rng);
    const double lhs = est.fraction * det, rhs = unit_ball_volume(MetricSpec::f2(), r, 1) + 3.0 * est.stderr_ * det;
    ok = ok && lhs <= rhs;
    observed += (observed.empty() ? "" : "; ") + num(lhs, 4) + "<=" + num(rhs, 4);
  }
  rows.push_back({9, "n=1 Monte Carlo f det <= V(r) + 3 sigma", "all radii", observed, ok});
  return rows;
}

// 10. F2 length of exp(-i H t) on [0, 1].
inline std::vector<Row> f2_distance(std::uint64_t seed) {
  Rng rng(seed);
  double err = 0.0, clamped = 0.0;
  for (int n = 1; n <= 2; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix h = rng.hermitian(1 << n, 2.0);
      const double expected = std::sqrt((h * h).trace().real() / double(1 << n));
      const MetricSpec spec = MetricSpec::f2(BasisMode::U);
      err = std::max(err, std::abs(curve_length(spec, hamiltonian_curve(spec, project_to_pauli(h, BasisMode::U), 1.0,
                                                                       400)) - expected));
      Spectrum sp = hermitian_spectrum(h);
      for (Eigen::Index i = 0; i < sp.values.size(); ++i) sp.values[i] = std::clamp(sp.values[i], -kPi, kPi);
      const CMatrix hc = sp.vectors * sp.values.cast<cplx>().asDiagonal() * sp.vectors.adjoint();
      clamped = std::max(clamped, std::sqrt((hc * hc).trace().real() / double(1 << n)));
    }
  return {below(10, "length vs sqrt(tr H^2 / 2^n)", err, 1e-8),
          {10, "clamped spectrum value", "<= pi", num(clamped), clamped <= kPi}};
}

// 11. Additive triples and tensor products of geodesics.
inline std::vector<Row> direct_sum(std::uint64_t seed) {
  Rng rng(seed);
  const MetricSpec spec = MetricSpec::fq(PenaltyFunction::from_table({1.0, 2.5, 7.0}));
  const Curve a = shoot_geodesic(spec, PauliVector(1, BasisMode::SU), on_strings(1, {{"X", 0.4}, {"Z", 0.3}}), 1.0, 1000);
  const Curve b = shoot_geodesic(spec, on_strings(1, {{"Y", 0.2}}), on_strings(1, {{"Z", 0.5}}), 1.0, 1000);
  const TripleCheck check = additive_triple_check(spec, spec, spec, a, b, rng);
  const double product = check.product_residual.value_or(1e300);
  return {below(11, "additive identity", check.identity_residual, 1e-10),
          below(11, "product geodesic residual", product, 1e-4)};
}

}  // namespace detail

inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {1, "and-cvp", detail::and_cvp},
      {2, "long-geodesic", detail::long_geodesic},
      {3, "pauli-geodesic", detail::pauli_geodesic_residual},
      {4, "f2-geodesic", detail::f2_geodesic},
      {5, "circuit-bound", detail::circuit_bound},
      {6, "coordinates", detail::coordinates},
      {7, "smoothing", detail::smoothing},
      {8, "isometry", detail::isometries},
      {9, "volume", detail::volume},
      {10, "f2-distance", detail::f2_distance},
      {11, "direct-sum", detail::direct_sum},
  };
  return all;
}

/// Runs one suite by name or number, or every suite for "all".
inline std::vector<Row> run(const std::string& name, std::uint64_t seed) {
  std::vector<Row> rows;
  bool found = false;
  for (const Suite& s : suites()) {
    if (name != "all" && name != s.name && name != std::to_string(s.criterion)) continue;
    found = true;
    for (Row& r : s.run(seed + std::uint64_t(s.criterion))) rows.push_back(std::move(r));
  }
  require(found, ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
  return rows;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string to_csv(const std::vector<Row>& rows) {
  std::string out = "criterion,expected,observed,pass\n";
  for (const Row& r : rows)
    out += csv_field(std::to_string(r.criterion) + " " + r.label) + "," + csv_field(r.expected) + "," +
           csv_field(r.observed) + "," + (r.pass ? "true" : "false") + "\n";
  return out;
}

}  // namespace sugeo::acceptance
