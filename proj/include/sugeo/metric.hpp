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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sugeo/pauli.hpp"
#include "sugeo/random.hpp"

namespace sugeo {

/// Weight-dependent penalty p(wt) or q(wt).
///
/// Step: 1 for weights 1..cutoff, k above the cutoff. Table: explicit values
/// for weights 0, 1, 2, ...; missing trailing weights repeat the last entry.
/// The weight-0 value only matters in U mode and defaults to 1.
struct PenaltyFunction {
  enum class Kind { Step, Table };

  Kind kind = Kind::Step;
  int low_weight_cutoff = 2;
  double k = 1.0;
  double weight0 = 1.0;
  std::vector<double> table;

  static PenaltyFunction step(double k, int cutoff = 2) {
    PenaltyFunction p;
    p.kind = Kind::Step;
    p.k = k;
    p.low_weight_cutoff = cutoff;
    p.validate();
    return p;
  }

  static PenaltyFunction from_table(std::vector<double> values) {
    PenaltyFunction p;
    p.kind = Kind::Table;
    p.table = std::move(values);
    require(!p.table.empty(), ErrorCode::InvalidPenalty, "empty penalty table");
    p.weight0 = p.table.front();
    p.validate();
    return p;
  }

  static PenaltyFunction flat() { return from_table({1.0}); }

  double operator()(int weight) const {
    if (kind == Kind::Table) {
      if (weight < static_cast<int>(table.size())) return table[weight];
      return table.back();
    }
    if (weight == 0) return weight0;
    return weight <= low_weight_cutoff ? 1.0 : k;
  }

  void validate() const {
    if (kind == Kind::Step) {
      require(k >= 1.0 && std::isfinite(k), ErrorCode::InvalidPenalty, "step penalty k must be >= 1");
      require(weight0 >= 1.0, ErrorCode::InvalidPenalty, "weight-0 penalty must be >= 1");
    }
    for (double v : table) require(v >= 1.0 && std::isfinite(v), ErrorCode::InvalidPenalty, "penalty values must be >= 1");
  }

  friend bool operator==(const PenaltyFunction&, const PenaltyFunction&) = default;
};

enum class MetricFamily { F1, F2, Fp, Fq, F1Delta, FpDelta };

inline std::string_view family_name(MetricFamily f) {
  switch (f) {
    case MetricFamily::F1: return "F1";
    case MetricFamily::F2: return "F2";
    case MetricFamily::Fp: return "Fp";
    case MetricFamily::Fq: return "Fq";
    case MetricFamily::F1Delta: return "F1Delta";
    case MetricFamily::FpDelta: return "FpDelta";
  }
  return "?";
}

inline MetricFamily parse_family(std::string_view s) {
  for (auto f : {MetricFamily::F1, MetricFamily::F2, MetricFamily::Fp, MetricFamily::Fq, MetricFamily::F1Delta,
                 MetricFamily::FpDelta})
    if (family_name(f) == s) return f;
  fail(ErrorCode::InvalidArgument, "unknown metric family '" + std::string(s) + "'");
}

struct MetricSpec {
  MetricFamily family = MetricFamily::F1;
  PenaltyFunction penalty = PenaltyFunction::flat();
  double delta = 0.0;
  BasisMode mode = BasisMode::SU;

  static MetricSpec f1(BasisMode m = BasisMode::SU) { return {MetricFamily::F1, PenaltyFunction::flat(), 0.0, m}; }
  static MetricSpec f2(BasisMode m = BasisMode::SU) { return {MetricFamily::F2, PenaltyFunction::flat(), 0.0, m}; }
  static MetricSpec fp(PenaltyFunction p, BasisMode m = BasisMode::SU) { return {MetricFamily::Fp, std::move(p), 0.0, m}; }
  static MetricSpec fq(PenaltyFunction q, BasisMode m = BasisMode::SU) { return {MetricFamily::Fq, std::move(q), 0.0, m}; }
  static MetricSpec f1_delta(double delta, BasisMode m = BasisMode::SU) {
    return {MetricFamily::F1Delta, PenaltyFunction::flat(), delta, m};
  }
  static MetricSpec fp_delta(PenaltyFunction p, double delta, BasisMode m = BasisMode::SU) {
    return {MetricFamily::FpDelta, std::move(p), delta, m};
  }

  bool uses_penalty() const {
    return family == MetricFamily::Fp || family == MetricFamily::Fq || family == MetricFamily::FpDelta;
  }
  bool is_smoothed() const { return family == MetricFamily::F1Delta || family == MetricFamily::FpDelta; }
  /// Smooth away from zero with a positive definite Hessian of F^2.
  bool is_smooth() const { return family == MetricFamily::F2 || family == MetricFamily::Fq || is_smoothed(); }
  bool is_quadratic() const { return family == MetricFamily::F2 || family == MetricFamily::Fq; }

  /// Raw (Delta -> 0) counterpart of a smoothed family.
  MetricSpec unsmoothed() const {
    MetricSpec s = *this;
    if (family == MetricFamily::F1Delta) s.family = MetricFamily::F1;
    if (family == MetricFamily::FpDelta) s.family = MetricFamily::Fp;
    s.delta = 0.0;
    return s;
  }

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

/// Per-coordinate weight: p(wt) or q(wt) where the family uses a penalty, 1 otherwise.
inline RVector coordinate_weights(const MetricSpec& spec, int n) {
  const int d = basis_dimension(n, spec.mode);
  RVector w = RVector::Ones(d);
  if (spec.uses_penalty())
    for (int i = 0; i < d; ++i) w[i] = spec.penalty(pauli_at(i, n, spec.mode).weight());
  return w;
}

/// P = sum of weights; the smoothed norm exists iff P * delta < 1.
inline double penalty_total(const MetricSpec& spec, int n) { return coordinate_weights(spec, n).sum(); }

inline void check_delta(const MetricSpec& spec, int n) {
  if (!spec.is_smoothed()) return;
  const double p_total = penalty_total(spec, n);
  require(spec.delta > 0.0, ErrorCode::DeltaTooLarge, "delta must be positive");
  require(p_total * spec.delta < 1.0, ErrorCode::DeltaTooLarge,
          "P*delta = " + std::to_string(p_total * spec.delta) + " must be < 1");
}

namespace detail {

/// g(y) = sum_j w_j sqrt(delta^2 + y_j^2).
inline double smoothed_g(const RVector& y, const RVector& w, double delta) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < y.size(); ++j) acc += w[j] * std::hypot(delta, y[j]);
  return acc;
}

/// Unique N > 0 with g(y / N) = 1. Solved in u = 1/N, where g(u y) is convex
/// and increasing; Newton from the upper end of the bracket
/// [(1 - P delta) / N_p, 1 / N_p] decreases monotonically onto the root.
inline double solve_implicit_norm(const RVector& y, const RVector& w, double delta) {
  const double np = w.dot(y.cwiseAbs());
  if (np == 0.0) return 0.0;
  const double p_total = w.sum();
  double lo = (1.0 - p_total * delta) / np;
  double hi = 1.0 / np;
  double u = hi;
  for (int iter = 0; iter < 200; ++iter) {
    double phi = -1.0, dphi = 0.0;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      const double r = std::hypot(delta, u * y[j]);
      phi += w[j] * r;
      dphi += w[j] * u * y[j] * y[j] / r;
    }
    if (std::abs(phi) < 1e-12) break;
    if (phi > 0) hi = u; else lo = u;
    double next = u - phi / dphi;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-17 * u) {
      u = next;
      break;
    }
    u = next;
  }
  return 1.0 / u;
}

}  // namespace detail

inline void check_dimension(const MetricSpec& spec, const PauliVector& y) {
  require(y.mode == spec.mode, ErrorCode::DimensionMismatch, "vector mode does not match metric mode");
  require(y.dimension() == basis_dimension(y.n, spec.mode), ErrorCode::DimensionMismatch, "vector dimension mismatch");
}

/// Norm on raw coordinates for `n` qubits.
inline double norm_coords(const MetricSpec& spec, const RVector& y, const RVector& w) {
  switch (spec.family) {
    case MetricFamily::F1:
    case MetricFamily::Fp: return w.dot(y.cwiseAbs());
    case MetricFamily::F2:
    case MetricFamily::Fq: return std::sqrt(w.dot(y.cwiseAbs2()));
    case MetricFamily::F1Delta:
    case MetricFamily::FpDelta: return detail::solve_implicit_norm(y, w, spec.delta);
  }
  return 0.0;
}

inline double implicit_norm(const MetricSpec& spec, const PauliVector& y) {
  require(spec.is_smoothed(), ErrorCode::UnsupportedSpec, "implicit_norm needs F1Delta or FpDelta");
  check_dimension(spec, y);
  check_delta(spec, y.n);
  return detail::solve_implicit_norm(y.entries, coordinate_weights(spec, y.n), spec.delta);
}

inline double norm(const MetricSpec& spec, const PauliVector& y) {
  check_dimension(spec, y);
  check_delta(spec, y.n);
  return norm_coords(spec, y.entries, coordinate_weights(spec, y.n));
}

struct NormEvaluation {
  double value = 0.0;
  std::optional<RVector> gradient;
  std::optional<RMatrix> hessian;  // (1/2) d^2 F^2 / dy dy
};

/// Smooth-metric derivatives on raw coordinates. Requires y != 0.
///
/// For the implicit norm, g is evaluated at y / N and the Hessian of N^2 / 2
/// follows from implicitly differentiating g(y / N(y)) = 1 twice.
inline NormEvaluation evaluate_smooth(const MetricSpec& spec, const RVector& y, const RVector& w, bool want_hessian) {
  NormEvaluation out;
  const Eigen::Index d = y.size();
  if (spec.is_quadratic()) {
    out.value = std::sqrt(w.dot(y.cwiseAbs2()));
    out.gradient = w.cwiseProduct(y) / out.value;
    if (want_hessian) out.hessian = RMatrix(w.asDiagonal());
    return out;
  }
  const double delta = spec.delta;
  const double n_val = detail::solve_implicit_norm(y, w, delta);
  out.value = n_val;
  const RVector yh = y / n_val;
  RVector g1(d), g2(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double r2 = delta * delta + yh[j] * yh[j];
    const double r = std::sqrt(r2);
    g1[j] = w[j] * yh[j] / r;
    g2[j] = w[j] * delta * delta / (r2 * r);
  }
  const double s = g1.dot(y);
  out.gradient = n_val * g1 / s;
  if (want_hessian) {
    const RVector a = g2.cwiseProduct(y);  // sum_l g_{,jl} y^l (g_{,jl} is diagonal)
    const double quad = a.dot(y);
    RMatrix h = RMatrix(((n_val / s) * g2).asDiagonal());
    h += (n_val / (s * s * s)) * (quad + n_val * s) * (g1 * g1.transpose());
    h -= (n_val / (s * s)) * (g1 * a.transpose() + a * g1.transpose());
    out.hessian = 0.5 * (h + h.transpose());
  }
  return out;
}

inline RMatrix hessian(const MetricSpec& spec, const PauliVector& y) {
  check_dimension(spec, y);
  require(spec.is_smooth(), ErrorCode::NotSmoothMetric,
          std::string(family_name(spec.family)) + " has no Hessian in the Finsler sense");
  require(y.entries.cwiseAbs().maxCoeff() > 0.0, ErrorCode::ZeroVector, "Hessian requested at y = 0");
  check_delta(spec, y.n);
  return *evaluate_smooth(spec, y.entries, coordinate_weights(spec, y.n), true).hessian;
}

inline NormEvaluation evaluate(const MetricSpec& spec, const PauliVector& y, bool want_hessian = true) {
  check_dimension(spec, y);
  require(spec.is_smooth(), ErrorCode::NotSmoothMetric, "derivatives need a smooth metric");
  require(y.entries.cwiseAbs().maxCoeff() > 0.0, ErrorCode::ZeroVector, "derivatives requested at y = 0");
  check_delta(spec, y.n);
  return evaluate_smooth(spec, y.entries, coordinate_weights(spec, y.n), want_hessian);
}

/// Residuals of the three Euler homogeneity identities for F^2.
struct EulerResiduals {
  double first = 0.0;   // |grad(F^2) . y - 2 F^2|
  double second = 0.0;  // |y^T d^2(F^2) y - 2 F^2|
  double third = 0.0;   // max_{kl} |sum_j d^3_{jkl}(F^2) y^j|
};

inline EulerResiduals euler_identities_check(const MetricSpec& spec, const PauliVector& y) {
  const NormEvaluation ev = evaluate(spec, y, true);
  const RVector w = coordinate_weights(spec, y.n);
  const double f2 = ev.value * ev.value;
  EulerResiduals r;
  r.first = std::abs(2.0 * ev.value * ev.gradient->dot(y.entries) - 2.0 * f2);
  r.second = std::abs(2.0 * y.entries.dot(*ev.hessian * y.entries) - 2.0 * f2);
  // d/dtau of the Hessian along y, central difference with step 1e-4 |y|.
  const double h = 1e-4;
  const RMatrix plus = 2.0 * *evaluate_smooth(spec, (1.0 + h) * y.entries, w, true).hessian;
  const RMatrix minus = 2.0 * *evaluate_smooth(spec, (1.0 - h) * y.entries, w, true).hessian;
  r.third = ((plus - minus) / (2.0 * h)).cwiseAbs().maxCoeff();
  return r;
}

/// Empirical (min, max) of norm_b / norm_a over random nonzero vectors.
inline std::pair<double, double> metric_equivalence_constants(const MetricSpec& a, const MetricSpec& b, int n,
                                                              int samples, Rng& rng) {
  require(a.mode == b.mode, ErrorCode::DimensionMismatch, "metrics in different modes");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < samples; ++i) {
    PauliVector y = rng.pauli_vector(n, a.mode);
    // Mix in sparse samples; extreme ratios sit on coordinate axes.
    if (i % 3 == 1) {
      const int keep = static_cast<int>(rng.below(y.dimension()));
      for (int j = 0; j < y.dimension(); ++j)
        if (j != keep) y.entries[j] = 0.0;
    }
    const double na = norm(a, y);
    if (na == 0.0) continue;
    const double ratio = norm(b, y) / na;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

}  // namespace sugeo
