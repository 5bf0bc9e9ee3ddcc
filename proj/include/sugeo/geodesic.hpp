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

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sugeo/coordinates.hpp"
#include "sugeo/metric.hpp"

namespace sugeo {

/// A tangent vector y at the point with Pauli coordinates x.
struct FinslerPoint {
  PauliVector x;
  PauliVector y;
};

struct CurveSample {
  double t = 0.0;
  PauliVector x;
  PauliVector y;
  double speed = 0.0;
  int chart = 0;
};

/// Sampled curve. A sample with coordinates x in chart c is the unitary
/// exp(-i x.sigma) anchors[c]; the curve starts in chart 0. When the curve
/// changes chart, the switching time appears once in each chart.
struct Curve {
  MetricSpec metric;
  std::vector<CurveSample> samples;
  std::vector<CMatrix> anchors;

  CMatrix unitary(std::size_t i) const { return pauli_exp(samples.at(i).x) * anchors.at(samples.at(i).chart); }

  /// Index ranges [begin, end) of maximal runs sharing one chart.
  std::vector<std::pair<std::size_t, std::size_t>> chart_runs() const {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= samples.size(); ++i)
      if (i == samples.size() || samples[i].chart != samples[start].chart) {
        runs.emplace_back(start, i);
        start = i;
      }
    return runs;
  }
};

struct GeodesicOptions {
  double hx = 1e-5;               // x-derivative step
  double reanchor_margin = 0.2;   // re-anchor once an eigenphase exceeds pi - margin
  long max_steps = 10'000'000;
  int max_qubits = 2;
};

namespace detail {

inline Spectrum chart_spectrum(const PauliVector& x) {
  Spectrum sp = hermitian_spectrum(to_matrix(x));
  require(std::numbers::pi - sp.values.cwiseAbs().maxCoeff() > 1e-8, ErrorCode::BranchCut,
          "base point lies on the branch cut");
  return sp;
}

inline PauliVector adapted(const Spectrum& sp, const PauliVector& y) {
  return project_real(bch_E_apply(sp, to_matrix(y)), y.n, y.mode);
}

/// Pullback of the right-invariant metric to Pauli coordinates, with
/// L = F^2 / 2 and its derivatives.
class PauliChartMetric {
 public:
  PauliChartMetric(MetricSpec spec, int n, double hx) : spec_(std::move(spec)), n_(n), hx_(hx) {
    weights_ = coordinate_weights(spec_, n_);
    check_delta(spec_, n_);
  }

  const MetricSpec& spec() const { return spec_; }
  int dimension() const { return static_cast<int>(weights_.size()); }

  double speed(const PauliVector& x, const PauliVector& y) const {
    return norm_coords(spec_, adapted(chart_spectrum(x), y).entries, weights_);
  }

  double lagrangian(const PauliVector& x, const PauliVector& y) const {
    const double f = speed(x, y);
    return 0.5 * f * f;
  }

  /// dL/dy = M(x)^T grad(N^2 / 2)(M(x) y).
  RVector momentum(const PauliVector& x, const PauliVector& y) const {
    const Spectrum sp = chart_spectrum(x);
    const PauliVector yt = adapted(sp, y);
    if (yt.entries.cwiseAbs().maxCoeff() == 0.0) return RVector::Zero(dimension());
    const NormEvaluation ev = evaluate_smooth(spec_, yt.entries, weights_, false);
    return adapted_change_transpose_apply(sp, PauliVector(n_, spec_.mode, ev.value * *ev.gradient));
  }

  /// dL/dx by central differences at fixed y.
  RVector position_gradient(const PauliVector& x, const PauliVector& y) const {
    RVector out(dimension());
    PauliVector xp = x, xm = x;
    for (int j = 0; j < dimension(); ++j) {
      xp.entries[j] += hx_;
      xm.entries[j] -= hx_;
      out[j] = (lagrangian(xp, y) - lagrangian(xm, y)) / (2.0 * hx_);
      xp.entries[j] = xm.entries[j] = x.entries[j];
    }
    return out;
  }

  /// g_{jk}(x, y) = M^T H_N(M y) M.
  RMatrix fundamental_tensor(const PauliVector& x, const PauliVector& y) const {
    const RMatrix m = adapted_change_matrix(x);
    const RVector yt = m * y.entries;
    require(yt.cwiseAbs().maxCoeff() > 0.0, ErrorCode::ZeroVector, "fundamental tensor at y = 0");
    return m.transpose() * *evaluate_smooth(spec_, yt, weights_, true).hessian * m;
  }

  /// Geodesic acceleration: g^{-1} (dL/dx - (d/dx dL/dy) y).
  RVector acceleration(const PauliVector& x, const PauliVector& y) const {
    const RMatrix g = fundamental_tensor(x, y);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
    require(es.eigenvalues().minCoeff() >= 1e-10, ErrorCode::SingularHessian,
            "fundamental tensor is not positive definite");
    const double scale = y.entries.cwiseAbs().maxCoeff();
    const double h = hx_ / scale;
    const PauliVector xp(n_, spec_.mode, x.entries + h * y.entries);
    const PauliVector xm(n_, spec_.mode, x.entries - h * y.entries);
    const RVector mixed = (momentum(xp, y) - momentum(xm, y)) / (2.0 * h);
    const RVector rhs = position_gradient(x, y) - mixed;
    return es.eigenvectors() * (es.eigenvectors().transpose() * rhs).cwiseQuotient(es.eigenvalues());
  }

 private:
  MetricSpec spec_;
  int n_;
  double hx_;
  RVector weights_;
};

inline void check_point(const MetricSpec& spec, const PauliVector& x, const PauliVector& y) {
  check_same_space(x, y);
  check_dimension(spec, x);
}

}  // namespace detail

/// F(x, y): the norm of the adapted-coordinate tangent.
inline double metric_in_pauli_coords(const MetricSpec& spec, const PauliVector& x, const PauliVector& y) {
  detail::check_point(spec, x, y);
  return norm(spec, detail::adapted(detail::chart_spectrum(x), y));
}

inline double metric_in_pauli_coords(const MetricSpec& spec, const FinslerPoint& p) {
  return metric_in_pauli_coords(spec, p.x, p.y);
}

/// Gamma^j_{kl} stored as gammas[(j * d + k) * d + l].
struct ChristoffelField {
  int d = 0;
  std::vector<double> gammas;

  double operator()(int j, int k, int l) const { return gammas[(std::size_t(j) * d + k) * d + l]; }

  /// Gamma^j_{kl} v^k v^l.
  RVector contract(const RVector& v) const {
    RVector out = RVector::Zero(d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out[j] += (*this)(j, k, l) * v[k] * v[l];
    return out;
  }
};

inline ChristoffelField christoffel(const MetricSpec& spec, const PauliVector& x, const PauliVector& y,
                                   const GeodesicOptions& opts = {}) {
  detail::check_point(spec, x, y);
  require(spec.is_smooth(), ErrorCode::NotSmoothMetric, "Christoffel symbols need a smooth metric");
  require(y.entries.cwiseAbs().maxCoeff() > 0.0, ErrorCode::ZeroVector, "Christoffel symbols at y = 0");
  const detail::PauliChartMetric metric(spec, x.n, opts.hx);
  const int d = metric.dimension();
  const RMatrix g = metric.fundamental_tensor(x, y);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
  require(es.eigenvalues().minCoeff() >= 1e-10, ErrorCode::SingularHessian,
          "fundamental tensor is not positive definite");
  const RMatrix ginv = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();

  std::vector<RMatrix> dg(d);
  PauliVector xp = x, xm = x;
  for (int l = 0; l < d; ++l) {
    xp.entries[l] += opts.hx;
    xm.entries[l] -= opts.hx;
    dg[l] = (metric.fundamental_tensor(xp, y) - metric.fundamental_tensor(xm, y)) / (2.0 * opts.hx);
    xp.entries[l] = xm.entries[l] = x.entries[l];
  }

  ChristoffelField out{d, std::vector<double>(std::size_t(d) * d * d, 0.0)};
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      RVector lowered(d);
      for (int m = 0; m < d; ++m) lowered[m] = dg[l](m, k) + dg[k](m, l) - dg[m](k, l);
      const RVector col = 0.5 * ginv * lowered;
      for (int j = 0; j < d; ++j) out.gammas[(std::size_t(j) * d + k) * d + l] = col[j];
    }
  return out;
}

/// Right-hand side of the geodesic equation, x'' = -Gamma(x, x') x' x'.
inline RVector geodesic_acceleration(const MetricSpec& spec, const PauliVector& x, const PauliVector& y,
                                     const GeodesicOptions& opts = {}) {
  detail::check_point(spec, x, y);
  require(spec.is_smooth(), ErrorCode::NotSmoothMetric, "geodesics need a smooth metric");
  require(y.entries.cwiseAbs().maxCoeff() > 0.0, ErrorCode::ZeroVector, "geodesic acceleration at y = 0");
  return detail::PauliChartMetric(spec, x.n, opts.hx).acceleration(x, y);
}

/// Fixed-step RK4 for the geodesic through (x0, y0), re-anchored away from
/// the branch cut.
inline Curve shoot_geodesic(const MetricSpec& spec, const PauliVector& x0, const PauliVector& y0, double t_end,
                            long steps, const GeodesicOptions& opts = {}) {
  detail::check_point(spec, x0, y0);
  require(spec.is_smooth(), ErrorCode::NotSmoothMetric, "geodesics need a smooth metric");
  require(y0.entries.cwiseAbs().maxCoeff() > 0.0, ErrorCode::ZeroVector, "initial velocity is zero");
  require(x0.n <= opts.max_qubits, ErrorCode::DimensionLimit,
          "geodesic shooting is limited to " + std::to_string(opts.max_qubits) + " qubits");
  check_qubits(x0.n);
  require(steps >= 1, ErrorCode::InvalidArgument, "steps must be positive");
  require(steps <= opts.max_steps, ErrorCode::StepLimitExceeded,
          std::to_string(steps) + " steps exceed the limit of " + std::to_string(opts.max_steps));
  require(t_end > 0.0, ErrorCode::InvalidArgument, "t_end must be positive");

  const detail::PauliChartMetric metric(spec, x0.n, opts.hx);
  const int n = x0.n;
  const BasisMode mode = spec.mode;
  const double dt = t_end / double(steps);

  Curve curve{spec, {}, {CMatrix::Identity(1 << n, 1 << n)}};
  RVector x = x0.entries, y = y0.entries;
  int chart = 0;
  auto record = [&](double t) {
    const PauliVector px(n, mode, x), py(n, mode, y);
    curve.samples.push_back({t, px, py, metric.speed(px, py), chart});
  };
  auto accel = [&](const RVector& xs, const RVector& ys) {
    return metric.acceleration(PauliVector(n, mode, xs), PauliVector(n, mode, ys));
  };

  for (long step = 0; step <= steps; ++step) {
    const double t = dt * double(step);
    const PauliVector px(n, mode, x);
    if (max_eigenphase(px) > std::numbers::pi - opts.reanchor_margin) {
      record(t);
      const Spectrum sp = detail::chart_spectrum(px);
      y = detail::adapted(sp, PauliVector(n, mode, y)).entries;
      curve.anchors.push_back(pauli_exp(px) * curve.anchors.back());
      x.setZero();
      ++chart;
    }
    record(t);
    if (step == steps) break;
    const RVector k1x = y, k1y = accel(x, y);
    const RVector k2x = y + 0.5 * dt * k1y, k2y = accel(x + 0.5 * dt * k1x, k2x);
    const RVector k3x = y + 0.5 * dt * k2y, k3y = accel(x + 0.5 * dt * k2x, k3x);
    const RVector k4x = y + dt * k3y, k4y = accel(x + dt * k3x, k4x);
    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
  }
  return curve;
}

/// Largest |F(x(t), y(t)) - F(x(0), y(0))| over the samples.
inline double speed_drift(const Curve& curve) {
  double drift = 0.0;
  for (const auto& s : curve.samples) drift = std::max(drift, std::abs(s.speed - curve.samples.front().speed));
  return drift;
}

enum class LagrangianForm { SquaredSpeed, Speed };

/// max_{j,t} |d/dt dL/dy^j - dL/dx^j| / (max |dL/dx| + 1) with L = F^2
/// (default) or L = F. Time derivatives are central differences between
/// neighbouring samples of one chart.
inline double el_residual(const MetricSpec& spec, const Curve& curve,
                          LagrangianForm form = LagrangianForm::SquaredSpeed, const GeodesicOptions& opts = {}) {
  require(spec.is_smooth(), ErrorCode::NotSmoothMetric, "Euler-Lagrange residual needs a smooth metric");
  if (curve.samples.empty()) return 0.0;
  const int n = curve.samples.front().x.n;
  for (const auto& s : curve.samples) detail::check_point(spec, s.x, s.y);
  const detail::PauliChartMetric metric(spec, n, opts.hx);

  const std::size_t count = curve.samples.size();
  std::vector<RVector> p(count), q(count);
  std::vector<bool> valid(count, true);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = curve.samples[i];
    const double f = metric.speed(s.x, s.y);
    p[i] = 2.0 * metric.momentum(s.x, s.y);
    q[i] = 2.0 * metric.position_gradient(s.x, s.y);
    if (form == LagrangianForm::Speed) {
      if (f == 0.0) {
        valid[i] = false;
        continue;
      }
      p[i] /= 2.0 * f;
      q[i] /= 2.0 * f;
    }
  }

  double worst = 0.0, scale = 0.0;
  for (auto [begin, end] : curve.chart_runs())
    for (std::size_t i = begin + 1; i + 1 < end; ++i) {
      if (!valid[i - 1] || !valid[i] || !valid[i + 1]) continue;
      const double span = curve.samples[i + 1].t - curve.samples[i - 1].t;
      if (span <= 0.0) continue;
      const RVector dp = (p[i + 1] - p[i - 1]) / span;
      worst = std::max(worst, (dp - q[i]).cwiseAbs().maxCoeff());
      scale = std::max(scale, q[i].cwiseAbs().maxCoeff());
    }
  return worst / (scale + 1.0);
}

/// exp(-i H t) sampled at `steps + 1` uniform times, in Pauli coordinates,
/// switching chart before any eigenphase exceeds pi - margin.
inline Curve hamiltonian_curve(const MetricSpec& spec, const PauliVector& h, double t_end, long steps,
                               double margin = 0.2) {
  check_dimension(spec, h);
  require(steps >= 1, ErrorCode::InvalidArgument, "steps must be positive");
  const int n = h.n;
  const double speed = norm(spec, h);
  const double rate = max_eigenphase(h);
  const double limit = std::numbers::pi - margin;
  Curve curve{spec, {}, {CMatrix::Identity(1 << n, 1 << n)}};
  double t_anchor = 0.0;
  int chart = 0;
  for (long step = 0; step <= steps; ++step) {
    const double t = t_end * double(step) / double(steps);
    if (rate * (t - t_anchor) > limit) {
      const PauliVector x = (t - t_anchor) * h;
      curve.samples.push_back({t, x, h, speed, chart});
      curve.anchors.push_back(pauli_exp(x) * curve.anchors.back());
      t_anchor = t;
      ++chart;
    }
    curve.samples.push_back({t, (t - t_anchor) * h, h, speed, chart});
  }
  return curve;
}

/// exp(-i H0 t) for H0 supported on the stabilizer subgroup S.
inline UnitaryOperator pauli_geodesic(const StabilizerSubgroup& s, const PauliVector& coeffs, double t) {
  require(coeffs.n == s.n, ErrorCode::DimensionMismatch, "coefficients and subgroup act on different qubits");
  for (int i = 0; i < coeffs.dimension(); ++i)
    require(coeffs.entries[i] == 0.0 || s.contains(coeffs.label(i)), ErrorCode::UnsupportedCoefficient,
            "coefficient on " + coeffs.label(i).str() + " lies outside the subgroup");
  return UnitaryOperator(pauli_exp(coeffs, t), BasisMode::U);
}

namespace detail {

inline double uniform_step(const Curve& c, std::size_t begin, std::size_t end) {
  const double h = (c.samples[end - 1].t - c.samples[begin].t) / double(end - begin - 1);
  for (std::size_t i = begin + 1; i < end; ++i)
    if (std::abs(c.samples[i].t - c.samples[i - 1].t - h) > 1e-9 * std::max(1.0, std::abs(h))) return -1.0;
  return h;
}

/// Composite Simpson on uniform samples (3/8 rule on the last three
/// intervals when the count is odd); trapezoid otherwise.
inline double integrate_run(const std::vector<double>& f, const Curve& c, std::size_t begin, std::size_t end) {
  const std::size_t m = end - begin;
  if (m < 2) return 0.0;
  const double h = uniform_step(c, begin, end);
  if (h < 0.0 || m < 3) {
    double acc = 0.0;
    for (std::size_t i = begin + 1; i < end; ++i)
      acc += 0.5 * (f[i] + f[i - 1]) * (c.samples[i].t - c.samples[i - 1].t);
    return acc;
  }
  const std::size_t intervals = m - 1;
  std::size_t simpson_end = begin + intervals;  // index of last Simpson node
  double acc = 0.0;
  if (intervals % 2 == 1) {
    if (intervals == 1) return 0.5 * h * (f[begin] + f[begin + 1]);
    simpson_end = end - 4;
    acc += 3.0 * h / 8.0 * (f[end - 4] + 3.0 * f[end - 3] + 3.0 * f[end - 2] + f[end - 1]);
  }
  for (std::size_t i = begin; i + 2 <= simpson_end; i += 2) acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  return acc;
}

}  // namespace detail

/// Length of the curve: quadrature of F(x(t), y(t)) per chart run.
inline double curve_length(const MetricSpec& spec, const Curve& curve) {
  std::vector<double> speeds(curve.samples.size());
  for (std::size_t i = 0; i < speeds.size(); ++i)
    speeds[i] = metric_in_pauli_coords(spec, curve.samples[i].x, curve.samples[i].y);
  double total = 0.0;
  for (auto [begin, end] : curve.chart_runs()) total += detail::integrate_run(speeds, curve, begin, end);
  return total;
}

/// Coordinates of A (x) I + I (x) B on n_A + n_B qubits.
inline PauliVector direct_sum_coordinates(const PauliVector& a, const PauliVector& b) {
  require(a.mode == b.mode, ErrorCode::DimensionMismatch, "factors in different modes");
  PauliVector out(a.n + b.n, a.mode);
  const std::string pad_a(a.n, 'I'), pad_b(b.n, 'I');
  for (int i = 0; i < a.dimension(); ++i) out[a.label(i).str() + pad_b] += a.entries[i];
  for (int i = 0; i < b.dimension(); ++i) out[pad_a + b.label(i).str()] += b.entries[i];
  return out;
}

/// Tensor product W(t) = U(t) (x) V(t) of two single-chart curves sampled at the same times.
inline Curve tensor_product_curve(const MetricSpec& spec_ab, const Curve& a, const Curve& b) {
  require(a.samples.size() == b.samples.size(), ErrorCode::InvalidArgument, "curves have different sample counts");
  require(a.chart_runs().size() == 1 && b.chart_runs().size() == 1, ErrorCode::InvalidArgument,
          "tensor products need single-chart curves");
  Curve out{spec_ab, {}, {kron(a.anchors.front(), b.anchors.front())}};
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    require(std::abs(a.samples[i].t - b.samples[i].t) < 1e-12, ErrorCode::InvalidArgument,
            "curves are sampled at different times");
    const PauliVector x = direct_sum_coordinates(a.samples[i].x, b.samples[i].x);
    const PauliVector y = direct_sum_coordinates(a.samples[i].y, b.samples[i].y);
    require(max_eigenphase(x) < std::numbers::pi, ErrorCode::BranchCut, "product curve crosses the branch cut");
    out.samples.push_back({a.samples[i].t, x, y, metric_in_pauli_coords(spec_ab, x, y), 0});
  }
  return out;
}

struct TripleCheck {
  double identity_residual = 0.0;         // max |F_AB^2 - F_A^2 - F_B^2| on sampled tangents
  std::optional<double> product_residual; // el_residual of the product curve (smooth specs)
};

/// Checks F_AB^2(H_A + H_B) = F_A^2(H_A) + F_B^2(H_B) on random tangents and,
/// for smooth specs, that the tensor product of the two curves solves the
/// geodesic equation under spec_ab.
inline TripleCheck additive_triple_check(const MetricSpec& spec_a, const MetricSpec& spec_b,
                                         const MetricSpec& spec_ab, const Curve& curve_a, const Curve& curve_b,
                                         Rng& rng, int samples = 100) {
  require(spec_a.family == spec_b.family && spec_a.family == spec_ab.family, ErrorCode::InconsistentPenalties,
          "metric families differ");
  require(spec_a.mode == spec_b.mode && spec_a.mode == spec_ab.mode, ErrorCode::DimensionMismatch,
          "metrics in different modes");
  require(!curve_a.samples.empty() && !curve_b.samples.empty(), ErrorCode::InvalidArgument, "empty curve");
  const int na = curve_a.samples.front().x.n, nb = curve_b.samples.front().x.n;
  if (spec_ab.uses_penalty()) {
    for (int j = 0; j <= na; ++j)
      require(spec_a.penalty(j) == spec_ab.penalty(j), ErrorCode::InconsistentPenalties,
              "penalties of A and AB differ at weight " + std::to_string(j));
    for (int j = 0; j <= nb; ++j)
      require(spec_b.penalty(j) == spec_ab.penalty(j), ErrorCode::InconsistentPenalties,
              "penalties of B and AB differ at weight " + std::to_string(j));
  }
  require(spec_a.delta == spec_ab.delta && spec_b.delta == spec_ab.delta, ErrorCode::InconsistentPenalties,
          "smoothing parameters differ");

  TripleCheck out;
  for (int i = 0; i < samples; ++i) {
    const PauliVector ha = rng.pauli_vector(na, spec_a.mode), hb = rng.pauli_vector(nb, spec_b.mode);
    const double fa = norm(spec_a, ha), fb = norm(spec_b, hb), fab = norm(spec_ab, direct_sum_coordinates(ha, hb));
    out.identity_residual = std::max(out.identity_residual, std::abs(fab * fab - fa * fa - fb * fb));
  }
  if (spec_ab.is_smooth()) out.product_residual = el_residual(spec_ab, tensor_product_curve(spec_ab, curve_a, curve_b));
  return out;
}

}  // namespace sugeo
