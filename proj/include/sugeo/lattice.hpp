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
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sugeo/metric.hpp"
#include "sugeo/random.hpp"

namespace sugeo {

/// U = sum_z exp(-i theta_z) |z><z|.
struct DiagonalUnitary {
  int n = 1;
  RVector phases;

  DiagonalUnitary() = default;
  DiagonalUnitary(int n_, RVector theta) : n(n_), phases(std::move(theta)) {
    require(n >= 1 && n <= 20, ErrorCode::InvalidArgument, "qubit count out of range");
    require(phases.size() == (Eigen::Index(1) << n), ErrorCode::DimensionMismatch, "need 2^n phases");
  }

  /// U_f|z> = (-1)^{f(z)}|z>.
  static DiagonalUnitary boolean_phase(int n, const std::vector<int>& truth_table) {
    RVector theta(Eigen::Index(1) << n);
    require(std::size_t(theta.size()) == truth_table.size(), ErrorCode::DimensionMismatch, "truth table size");
    for (Eigen::Index z = 0; z < theta.size(); ++z) theta[z] = truth_table[z] ? std::numbers::pi : 0.0;
    return {n, theta};
  }

  static DiagonalUnitary and_function(int n) {
    std::vector<int> table(std::size_t(1) << n, 0);
    table.back() = 1;
    return boolean_phase(n, table);
  }

  CMatrix matrix() const {
    CVector d(phases.size());
    for (Eigen::Index z = 0; z < d.size(); ++z) d[z] = std::polar(1.0, -phases[z]);
    return d.asDiagonal();
  }
};

/// theta reduced to (-pi, pi].
inline double reduce_phase(double theta) {
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  return r <= -std::numbers::pi ? r + 2.0 * std::numbers::pi : r;
}

namespace detail {
inline double walsh_sign(std::uint32_t s, std::uint32_t z) { return std::popcount(s & z) & 1 ? -1.0 : 1.0; }

/// y_s = 2^-n sum_z (-1)^{s.z} e_z.
inline RVector walsh(const RVector& e) {
  const Eigen::Index dim = e.size();
  RVector y = RVector::Zero(dim);
  for (Eigen::Index s = 0; s < dim; ++s)
    for (Eigen::Index z = 0; z < dim; ++z) y[s] += walsh_sign(std::uint32_t(s), std::uint32_t(z)) * e[z];
  return y / double(dim);
}
}  // namespace detail

/// Pauli coefficients of diag(h) on the Z-type strings (U mode).
inline PauliVector diagonal_to_pauli(const RVector& h) {
  const int n = qubits_for_dim(h.size());
  const RVector y = detail::walsh(h);
  PauliVector out(n, BasisMode::U);
  for (Eigen::Index s = 0; s < h.size(); ++s) out[PauliString::z_type(std::uint32_t(s), n)] = y[s];
  return out;
}

/// Lattice of 2 pi-integer diagonal Hamiltonians, in Z-type Pauli coordinates
/// indexed by the Z mask.
struct PhaseLattice {
  BasisMode mode = BasisMode::U;
  int n = 1;

  int rank() const { return (1 << n) - (mode == BasisMode::SU ? 1 : 0); }

  /// Columns are the basis vectors: 2 pi |z><z| (U) or 2 pi (|z><z| - |0><0|), z != 0 (SU).
  RMatrix basis() const {
    const int dim = 1 << n;
    RMatrix b(dim, rank());
    for (int c = 0; c < rank(); ++c) {
      RVector e = RVector::Zero(dim);
      const int z = mode == BasisMode::SU ? c + 1 : c;
      e[z] = 2.0 * std::numbers::pi;
      if (mode == BasisMode::SU) e[0] = -2.0 * std::numbers::pi;
      b.col(c) = detail::walsh(e);
    }
    return b;
  }

  /// log |det| of the U-mode basis: 2^n log(2 pi / 2^{n/2}).
  static double log_det(int n) {
    const double dim = std::ldexp(1.0, n);
    return dim * (std::log(2.0 * std::numbers::pi) - 0.5 * n * std::log(2.0));
  }
};

enum class Certificate { Window, Search, None };

inline std::string_view certificate_name(Certificate c) {
  switch (c) {
    case Certificate::Window: return "window";
    case Certificate::Search: return "search";
    case Certificate::None: return "none";
  }
  return "none";
}

struct CvpResult {
  std::vector<long long> minimizer;  // m_z with J = 2 pi diag(m)
  double value = 0.0;                // F(H - J)
  HermitianOperator geodesic_hamiltonian;
  PauliVector coefficients;          // Pauli coefficients of H - J in the spec's mode
  bool certified = false;
  Certificate certificate = Certificate::None;
  int window = 0;                    // final enumeration window
  long long nodes = 0;
};

struct CvpOptions {
  int window = 2;
  int window_cap = 4;
  long long node_budget = 200'000'000;
  bool strict = false;  // throw WindowTooSmall instead of returning an uncertified result
};

namespace detail {

/// Closest-vector search for min_m f(W (h - 2 pi m) / D) by depth-first
/// branch and bound over m_0, m_1, ... .
///
/// The bound at a node relaxes the free coordinates to real values. For the
/// quadratic norms this is a weighted least-squares problem. For the L1 norms
/// it is a weighted L1 regression, solved exactly by visiting the basic
/// solutions (k residuals zero for k free coordinates) while that is cheap;
/// otherwise the fixed coordinates inside the smallest aligned block
/// [D - B, D) holding the free ones are relaxed too, after which strings
/// sharing s mod B depend on a single free variable and the problem splits
/// into one-dimensional weighted medians.
///
/// Integrality adds a second bound: D y_s = sum_z (-1)^{s.z} (h_z - 2 pi m_z)
/// lies in a coset of 2 pi Z, and the free part of every such sum has the
/// parity of the sum of the free m_z. Minimising each |y_s| over its coset,
/// for each parity, bounds f from below whatever the free m are.
class LatticeSearch {
 public:
  LatticeSearch(const MetricSpec& spec, const RVector& h) : h_(h), dim_(int(h.size())) {
    l2_ = spec.is_quadratic();
    su_ = spec.mode == BasisMode::SU;
    w_.resize(dim_);
    for (int s = 0; s < dim_; ++s) {
      const double p = spec.uses_penalty() ? spec.penalty(std::popcount(std::uint32_t(s))) : 1.0;
      w_[s] = (su_ && s == 0) ? 0.0 : p;
    }
    sign_ = RMatrix(dim_, dim_);
    for (int s = 0; s < dim_; ++s)
      for (int z = 0; z < dim_; ++z) sign_(s, z) = walsh_sign(std::uint32_t(s), std::uint32_t(z));
    double reach = 0.0;
    if (l2_) {
      for (int s = 0; s < dim_; ++s)
        if (w_[s] > 0.0) reach += 1.0 / w_[s];
      reach = std::sqrt(reach);
    } else {
      double wmin = std::numeric_limits<double>::infinity();
      for (int s = 0; s < dim_; ++s)
        if (w_[s] > 0.0) wmin = std::min(wmin, w_[s]);
      reach = 1.0 / wmin;
    }
    reach_ = reach;
    if (su_) total_ = std::llround(h.sum() / (2.0 * std::numbers::pi));
    for (int s = 0; s < dim_; ++s)
      if (w_[s] > 0.0) rows_.push_back(s);
    e_.resize(dim_);
    m_.assign(dim_, 0);
    prefix_ = RMatrix::Zero(dim_, dim_ + 1);
    suffix_h_ = RMatrix::Zero(dim_, dim_ + 1);
    for (int t = dim_ - 1; t >= 0; --t) suffix_h_.col(t) = suffix_h_.col(t + 1) + sign_.col(t) * h_[t];
  }

  double value_of(const RVector& e) const {
    const RVector y = walsh(e);
    double acc = 0.0;
    for (int s = 0; s < dim_; ++s) acc += l2_ ? w_[s] * y[s] * y[s] : w_[s] * std::abs(y[s]);
    return l2_ ? std::sqrt(acc) : acc;
  }

  /// max |e_z| / f(e): any better point has |e_z| below reach * incumbent.
  double reach() const { return reach_; }

  /// Searches m with |m_z| <= window (window < 0: unbounded), improving on
  /// the incumbent. Returns false when the node budget runs out.
  bool run(int window, long long budget) {
    require(window >= 0 || std::isfinite(best), ErrorCode::InvalidArgument, "unbounded search needs an incumbent");
    window_ = window;
    budget_ = budget;
    if (integrality_bound(0, 0) >= best * (1.0 - 1e-12) - 1e-14) return true;
    return descend(0, 0);
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<long long> best_m;
  long long nodes = 0;

 private:
  // Phases are pre-reduced to (-pi, pi], so the nearest lattice coordinate is 0.
  long long center(int) const { return 0; }

  /// Relaxed residuals r = a + V x for the free coordinates x (scaled by D).
  /// In SU mode the last coordinate is eliminated through sum(e) = 0.
  void relaxed_system(int fixed, RVector& a, RMatrix& v) const {
    a = prefix_.col(fixed);
    const int last = dim_ - 1;
    if (!su_) {
      v = sign_.rightCols(dim_ - fixed);
      return;
    }
    const double fixed_sum = e_.head(fixed).sum();
    a -= sign_.col(last) * fixed_sum;
    v.resize(dim_, last - fixed);
    for (int z = fixed; z < last; ++z) v.col(z - fixed) = sign_.col(z) - sign_.col(last);
  }

  /// Bound over a set of free m whose sum has parity `parity`.
  double coset_bound(int fixed, int parity) const {
    const double step = 2.0 * std::numbers::pi / double(dim_);
    double acc = 0.0;
    for (int s : rows_) {
      const double c = (prefix_(s, fixed) + suffix_h_(s, fixed)) / double(dim_);
      const double d = std::abs(std::remainder(c - parity * step, 2.0 * step));
      acc += l2_ ? w_[s] * d * d : w_[s] * d;
    }
    return l2_ ? std::sqrt(acc) : acc;
  }

  double integrality_bound(int fixed, long long partial_sum) const {
    if (fixed >= dim_) return 0.0;
    if (su_) return coset_bound(fixed, int(((total_ - partial_sum) % 2 + 2) % 2));
    return std::min(coset_bound(fixed, 0), coset_bound(fixed, 1));
  }

  double lower_bound(int fixed) const {
    if (fixed >= dim_) return 0.0;
    RVector a;
    RMatrix v;
    relaxed_system(fixed, a, v);
    const int k = int(v.cols());
    const double scale = 1.0 / double(dim_);
    if (k == 0) return residual_norm(a * scale);
    if (l2_) {
      RVector sw(dim_);
      for (int s = 0; s < dim_; ++s) sw[s] = std::sqrt(w_[s]);
      const RMatrix vw = sw.asDiagonal() * v;
      const RVector x = vw.colPivHouseholderQr().solve(-(sw.asDiagonal() * a));
      return residual_norm((a + v * x) * scale);
    }
    if (binomial(int(rows_.size()), k) <= 4096) return l1_regression(a, v, k) * scale;
    return block_bound(fixed);
  }

  double residual_norm(const RVector& r) const {
    double acc = 0.0;
    for (int s = 0; s < dim_; ++s) acc += l2_ ? w_[s] * r[s] * r[s] : w_[s] * std::abs(r[s]);
    return l2_ ? std::sqrt(acc) : acc;
  }

  static long long binomial(int n, int k) {
    long long c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
  }

  /// min_x sum_s w_s |a_s + (V x)_s| over basic solutions.
  double l1_regression(const RVector& a, const RMatrix& v, int k) const {
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    const int rows = int(rows_.size());
    RMatrix sub(k, k);
    RVector rhs(k);
    for (;;) {
      for (int i = 0; i < k; ++i) {
        sub.row(i) = v.row(rows_[pick[i]]);
        rhs[i] = -a[rows_[pick[i]]];
      }
      Eigen::FullPivLU<RMatrix> lu(sub);
      if (lu.isInvertible()) {
        const RVector r = a + v * lu.solve(rhs);
        double acc = 0.0;
        for (int s : rows_) acc += w_[s] * std::abs(r[s]);
        best_val = std::min(best_val, acc);
      }
      int i = k - 1;
      while (i >= 0 && pick[i] == rows - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best_val;
  }

  double block_bound(int fixed) const {
    const int free = dim_ - fixed;
    int block = 1;
    while (block < free) block <<= 1;
    const int outside = dim_ - block;
    const RVector a = prefix_.col(outside) / double(dim_);
    const int groups_per = dim_ / block;
    double total = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (int r = 0; r < block; ++r) {
      pts.clear();
      double fixed_u = std::numeric_limits<double>::quiet_NaN();
      for (int u = 0; u < groups_per; ++u) {
        const int s = r + block * u;
        const double sigma = walsh_sign(std::uint32_t(s) / std::uint32_t(block), std::uint32_t(groups_per - 1));
        // Term w |a_s + sigma E/D| = w |u - (-sigma a_s)| with u = E / D.
        pts.emplace_back(-sigma * a[s], w_[s]);
        if (su_ && s == 0) fixed_u = -sigma * a[s];
      }
      total += group_minimum(pts, fixed_u);
    }
    return l2_ ? std::sqrt(total) : total;
  }

  double group_minimum(std::vector<std::pair<double, double>>& pts, double fixed_u) const {
    auto eval = [&](double u) {
      double acc = 0.0;
      for (auto [p, w] : pts) acc += l2_ ? w * (u - p) * (u - p) : w * std::abs(u - p);
      return acc;
    };
    if (!std::isnan(fixed_u)) return eval(fixed_u);
    if (l2_) {
      double sw = 0.0, swp = 0.0;
      for (auto [p, w] : pts) {
        sw += w;
        swp += w * p;
      }
      return sw > 0.0 ? eval(swp / sw) : 0.0;
    }
    std::sort(pts.begin(), pts.end());
    double half = 0.0;
    for (auto [p, w] : pts) half += w;
    half *= 0.5;
    double acc = 0.0;
    for (auto [p, w] : pts) {
      acc += w;
      if (acc >= half) return eval(p);
    }
    return 0.0;
  }

  bool leaf() {
    const double v = value_of(e_);
    if (v < best) {
      best = v;
      best_m = m_;
    }
    return true;
  }

  bool descend(int t, long long partial_sum) {
    if (++nodes > budget_) return false;
    const int last = su_ ? dim_ - 1 : dim_;
    if (t == last) {
      if (su_) {
        m_[t] = total_ - partial_sum;
        if (window_ >= 0 && std::llabs(m_[t] - center(t)) > window_) return true;
        e_[t] = h_[t] - 2.0 * std::numbers::pi * double(m_[t]);
      }
      return leaf();
    }
    const double two_pi = 2.0 * std::numbers::pi;
    const long long c = center(t);
    long long lo = std::numeric_limits<long long>::min(), hi = std::numeric_limits<long long>::max();
    if (std::isfinite(best)) {
      const double span = reach_ * best;
      lo = (long long)std::ceil((h_[t] - span) / two_pi);
      hi = (long long)std::floor((h_[t] + span) / two_pi);
    }
    if (window_ >= 0) {
      lo = std::max(lo, c - window_);
      hi = std::min(hi, c + window_);
    }
    // Visit c, c+1, c-1, c+2, ... ; along each direction the bound is
    // convex in m_t, so stop once it is above the incumbent and rising.
    double prev[2] = {-1.0, -1.0};
    bool open[2] = {true, true};
    for (long long step = 0; open[0] || open[1]; ++step) {
      for (int dir = 0; dir < 2; ++dir) {
        if (!open[dir] || (step == 0 && dir == 1)) continue;
        const long long m = dir == 0 ? c + step : c - step;
        if (m < lo || m > hi) {
          open[dir] = false;
          continue;
        }
        m_[t] = m;
        e_[t] = h_[t] - two_pi * double(m);
        prefix_.col(t + 1) = prefix_.col(t) + sign_.col(t) * e_[t];
        const double bound = lower_bound(t + 1);
        const double before = step == 0 ? -1.0 : prev[dir];
        if (step == 0) prev[0] = prev[1] = bound;
        else prev[dir] = bound;
        // Points tying the incumbent up to rounding are not worth visiting.
        const double cut = best * (1.0 - 1e-12) - 1e-14;
        if (bound >= cut) {
          if (step > 0 && bound >= before) open[dir] = false;
          continue;
        }
        if (integrality_bound(t + 1, partial_sum + m) >= cut) continue;
        if (!descend(t + 1, partial_sum + m)) return false;
      }
    }
    return true;
  }

  RVector h_;
  int dim_;
  bool l2_ = false, su_ = false;
  std::vector<double> w_;
  std::vector<int> rows_;
  RMatrix sign_;
  RMatrix prefix_;    // column t: sum_{z < t} (-1)^{s.z} e_z
  RMatrix suffix_h_;  // column t: sum_{z >= t} (-1)^{s.z} h_z
  double reach_ = 1.0;
  long long total_ = 0;
  int window_ = -1;
  long long budget_ = 0;
  RVector e_;
  std::vector<long long> m_;
};

inline MetricSpec cvp_norm(const MetricSpec& spec) { return spec.is_smoothed() ? spec.unsmoothed() : spec; }

inline RVector reduced_phases(const MetricSpec& spec, const DiagonalUnitary& u) {
  RVector h = u.phases.unaryExpr([](double t) { return reduce_phase(t); });
  if (spec.mode == BasisMode::SU) {
    const double turns = h.sum() / (2.0 * std::numbers::pi);
    require(std::abs(turns - std::round(turns)) < 1e-9, ErrorCode::NonTracelessInSUMode,
            "phases of an SU unitary must sum to a multiple of 2 pi");
  }
  return h;
}

}  // namespace detail

/// F(H - 2 pi round(H / 2 pi)) with H the reduced phases, evaluated in U mode.
inline double babai_value(const MetricSpec& spec, const DiagonalUnitary& u) {
  MetricSpec raw = detail::cvp_norm(spec);
  raw.mode = BasisMode::U;
  const RVector h = detail::reduced_phases(raw, u);
  return detail::LatticeSearch(raw, h).value_of(h);
}

/// Minimal Pauli-geodesic length through a diagonal unitary: min_J F(H - J).
///
/// Enumerates a window around the reduced phases first; the result is
/// certified by the window when the incumbent is below the cheapest cost of
/// leaving it, otherwise the window doubles up to window_cap, and finally an
/// unbounded branch-and-bound search within the node budget decides.
inline CvpResult cvp_minimal_pauli_geodesic(const MetricSpec& spec, const DiagonalUnitary& u,
                                            const CvpOptions& opts = {}) {
  check_qubits(u.n);
  require(opts.window >= 1, ErrorCode::InvalidArgument, "window must be at least 1");
  const MetricSpec raw = detail::cvp_norm(spec);
  const RVector h = detail::reduced_phases(raw, u);
  detail::LatticeSearch search(raw, h);

  CvpResult out;
  int window = opts.window;
  for (;; window *= 2) {
    window = std::min(window, std::max(opts.window, opts.window_cap));
    search.run(window, opts.node_budget);
    // Leaving the window moves some |e_z| to at least pi (2w + 1).
    const double outside = std::numbers::pi * (2.0 * window + 1.0) / search.reach();
    if (search.best <= outside) {
      out.certified = true;
      out.certificate = Certificate::Window;
      break;
    }
    if (window >= opts.window_cap) break;
  }
  out.window = window;
  if (!out.certified) {
    require(std::isfinite(search.best), ErrorCode::WindowTooSmall, "no lattice point found within the node budget");
    const bool complete = search.run(-1, opts.node_budget);
    out.certified = complete;
    out.certificate = complete ? Certificate::Search : Certificate::None;
    require(complete || !opts.strict, ErrorCode::WindowTooSmall,
            "search budget exhausted before the minimum was certified");
  }
  out.nodes = search.nodes;
  out.value = search.best;
  out.minimizer = search.best_m;
  RVector e = h;
  for (Eigen::Index z = 0; z < e.size(); ++z) e[z] -= 2.0 * std::numbers::pi * double(out.minimizer[z]);
  out.geodesic_hamiltonian = HermitianOperator(CMatrix(e.cast<cplx>().asDiagonal()));
  const PauliVector full = diagonal_to_pauli(e);
  if (raw.mode == BasisMode::U) {
    out.coefficients = full;
  } else {
    out.coefficients = PauliVector(u.n, BasisMode::SU);
    for (int i = 0; i < out.coefficients.dimension(); ++i) out.coefficients.entries[i] = full.entries[i + 1];
  }
  return out;
}

/// Volume of {y : F(y) <= r} on the 2^n-dimensional Z-type subspace (U mode), in log form.
inline double log_unit_ball_volume(const MetricSpec& spec, double r, int n) {
  require(r > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(n >= 1 && n <= 20, ErrorCode::InvalidArgument, "qubit count out of range");
  const double dim = std::ldexp(1.0, n);
  switch (spec.family) {
    case MetricFamily::F1:
    case MetricFamily::F1Delta: return dim * std::log(2.0 * r) - std::lgamma(dim + 1.0);
    case MetricFamily::F2: return dim * std::log(std::sqrt(std::numbers::pi) * r) - std::lgamma(dim / 2.0 + 1.0);
    case MetricFamily::Fq: {
      // Ellipsoid with semi-axes r / sqrt(q).
      double log_v = dim * std::log(std::sqrt(std::numbers::pi) * r) - std::lgamma(dim / 2.0 + 1.0);
      for (int j = 0; j <= n; ++j) {
        const double strings = std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0));
        log_v -= 0.5 * strings * std::log(spec.penalty(j));
      }
      return log_v;
    }
    case MetricFamily::Fp:
    case MetricFamily::FpDelta: break;
  }
  fail(ErrorCode::UnsupportedSpec, "no closed-form volume for " + std::string(family_name(spec.family)));
}

inline double unit_ball_volume(const MetricSpec& spec, double r, int n) {
  return std::exp(log_unit_ball_volume(spec, r, n));
}

struct CoverageBound {
  double r_lower = 0.0;  // exact inversion of f det <= V(r)
  double stirling = 0.0; // large-n closed form
};

/// Smallest r with f * det(lattice) <= V_F(r).
inline CoverageBound coverage_bound(const MetricSpec& spec, double f, int n) {
  require(f > 0.0 && f <= 1.0, ErrorCode::InvalidArgument, "fraction must lie in (0, 1]");
  const double dim = std::ldexp(1.0, n);
  CoverageBound out;
  out.r_lower = std::exp((std::log(f) + PhaseLattice::log_det(n) - log_unit_ball_volume(spec, 1.0, n)) / dim);
  const double root_f = std::pow(f, 1.0 / dim);
  switch (spec.family) {
    case MetricFamily::F1:
    case MetricFamily::F1Delta: out.stirling = std::numbers::pi / std::numbers::e * std::sqrt(dim) * root_f; break;
    case MetricFamily::F2: out.stirling = std::sqrt(2.0 * std::numbers::pi / std::numbers::e) * root_f; break;
    default: {
      const double log_q = log_unit_ball_volume(MetricSpec::f2(), 1.0, n) - log_unit_ball_volume(spec, 1.0, n);
      out.stirling = std::sqrt(2.0 * std::numbers::pi / std::numbers::e) * root_f * std::exp(log_q / dim);
    }
  }
  return out;
}

struct CoverageEstimate {
  double fraction = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
};

/// Fraction of the fundamental cell within CVP distance r of the lattice.
inline CoverageEstimate monte_carlo_coverage(const MetricSpec& spec, double r, int n, int samples, Rng& rng) {
  require(n >= 1 && n <= 2, ErrorCode::DimensionLimit, "Monte Carlo coverage is limited to n <= 2");
  require(samples >= 1, ErrorCode::InvalidArgument, "samples must be positive");
  MetricSpec u_spec = detail::cvp_norm(spec);
  u_spec.mode = BasisMode::U;
  const int dim = 1 << n;
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    RVector theta(dim);
    for (int z = 0; z < dim; ++z) theta[z] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (cvp_minimal_pauli_geodesic(u_spec, DiagonalUnitary(n, theta)).value <= r) ++hits;
  }
  CoverageEstimate out;
  out.samples = samples;
  out.fraction = double(hits) / samples;
  out.stderr_ = std::sqrt(out.fraction * (1.0 - out.fraction) / samples);
  return out;
}

}  // namespace sugeo
