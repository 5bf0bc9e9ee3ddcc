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
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sugeo/geodesic.hpp"
#include "sugeo/random.hpp"

namespace sugeo {

/// exp(-i alpha sigma) with sigma a weight-1 or weight-2 Pauli string on `qubits`.
struct Gate {
  PauliString pauli;
  double alpha = 0.0;
  std::vector<int> qubits;
};

struct Circuit {
  int n = 1;
  std::vector<Gate> gates;  // applied in order: U = U_m ... U_1
};

inline PauliString embed_pauli(const Gate& g, int n) {
  require(g.pauli.size() == static_cast<int>(g.qubits.size()), ErrorCode::DimensionMismatch,
          "gate letters and qubit list differ in length");
  std::string letters(n, 'I');
  const std::string local = g.pauli.str();
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    const int q = g.qubits[i];
    require(q >= 0 && q < n, ErrorCode::DimensionMismatch, "gate qubit out of range");
    require(letters[q] == 'I', ErrorCode::InvalidArgument, "gate acts twice on one qubit");
    letters[q] = local[i];
  }
  return PauliString(letters);
}

inline void check_gate(const Gate& g, int n) {
  const PauliString s = embed_pauli(g, n);
  require(s.weight() >= 1 && s.weight() <= 2, ErrorCode::InvalidPauli, "gate Pauli must have weight 1 or 2");
  require(g.alpha >= 0.0 && g.alpha <= 1.0, ErrorCode::InvalidArgument, "gate angle must lie in [0, 1]");
}

/// Hamiltonian alpha sigma of a gate in the given mode.
inline PauliVector gate_hamiltonian(const Gate& g, int n, BasisMode mode) {
  check_gate(g, n);
  PauliVector h(n, mode);
  h[embed_pauli(g, n)] = g.alpha;
  return h;
}

inline CMatrix gate_unitary(const Gate& g, int n) {
  return expm_hermitian(to_matrix(gate_hamiltonian(g, n, BasisMode::U)));
}

inline CMatrix circuit_unitary(const Circuit& c) {
  check_qubits(c.n);
  CMatrix u = CMatrix::Identity(1 << c.n, 1 << c.n);
  for (const Gate& g : c.gates) u = gate_unitary(g, c.n) * u;
  return u;
}

/// Random gates with uniform angle, uniform weight in {1, 2} and uniform letters.
inline Circuit random_circuit(int n, int gates, Rng& rng) {
  check_qubits(n);
  Circuit c{n, {}};
  for (int j = 0; j < gates; ++j) {
    const int weight = n == 1 ? 1 : 1 + int(rng.below(2));
    std::vector<int> qubits;
    while (int(qubits.size()) < weight) {
      const int q = int(rng.below(std::uint64_t(n)));
      if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) qubits.push_back(q);
    }
    std::string letters;
    for (int i = 0; i < weight; ++i) letters += "XYZ"[rng.below(3)];
    c.gates.push_back({PauliString(letters), rng.uniform(), qubits});
  }
  return c;
}

/// r(t) = 1 - cos(2 pi m t): zero at multiples of 1/m, nonnegative, mean 1 on every segment.
struct Regularizer {
  int m = 1;

  explicit Regularizer(int segments) : m(segments) {
    require(segments >= 1, ErrorCode::InvalidArgument, "regularizer needs m >= 1");
  }

  double operator()(double t) const { return 1.0 - std::cos(2.0 * std::numbers::pi * m * t); }

  /// Integral of m r(s) over [j/m, t] for t in segment j; runs from 0 to 1.
  double segment_progress(double t) const {
    const double s = m * t - std::floor(m * t);
    return s - std::sin(2.0 * std::numbers::pi * s) / (2.0 * std::numbers::pi);
  }
};

inline Regularizer regularizer(int m) { return Regularizer(m); }

/// Nearest unitary in Frobenius norm.
inline CMatrix polar_unitary(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct CircuitCurve {
  Curve curve;
  double length = 0.0;
  int gate_count = 0;
  CMatrix target;          // circuit product
  CMatrix endpoint;        // integrated V(1)
  double endpoint_error = 0.0;  // max |V(1) - U| entrywise
  bool bound_holds = false;     // length <= gate_count + 1e-6
};

/// Control curve of a circuit: on segment j, H(t) = m r(t) H_j, integrated from V(0) = I.
inline CircuitCurve circuit_to_curve(const Circuit& c, const MetricSpec& spec, int steps_per_gate = 400) {
  check_qubits(c.n);
  require(!c.gates.empty(), ErrorCode::InvalidArgument, "empty circuit");
  require(steps_per_gate >= 2, ErrorCode::InvalidArgument, "steps_per_gate must be at least 2");
  const int m = int(c.gates.size());
  const int dim = 1 << c.n;
  std::vector<PauliVector> hs;
  for (const Gate& g : c.gates) {
    PauliVector h = gate_hamiltonian(g, c.n, spec.mode);
    const double f = norm(spec, h);
    require(f <= 1.0 + 1e-12, ErrorCode::NotGBounding,
            "gate " + embed_pauli(g, c.n).str() + " has F = " + std::to_string(f) + " > 1");
    hs.push_back(std::move(h));
  }

  const Regularizer r(m);
  CircuitCurve out;
  out.gate_count = m;
  out.curve.metric = spec;
  CMatrix v = CMatrix::Identity(dim, dim);
  const double dt = 1.0 / (double(m) * steps_per_gate);
  for (int j = 0; j < m; ++j) {
    out.curve.anchors.push_back(v);
    const CMatrix hj = to_matrix(hs[j]);
    const CMatrix mhj = cplx(0.0, -double(m)) * hj;
    auto rhs = [&](double t, const CMatrix& w) -> CMatrix { return r(t) * (mhj * w); };
    const double t0 = double(j) / m;
    for (int s = 0; s <= steps_per_gate; ++s) {
      const double t = t0 + s * dt;
      const double phi = s == steps_per_gate ? 1.0 : r.segment_progress(t);
      out.curve.samples.push_back({t, phi * hs[j], (double(m) * r(t)) * hs[j], 0.0, j});
      if (s == steps_per_gate) break;
      const CMatrix k1 = rhs(t, v);
      const CMatrix k2 = rhs(t + dt / 2, v + dt / 2 * k1);
      const CMatrix k3 = rhs(t + dt / 2, v + dt / 2 * k2);
      const CMatrix k4 = rhs(t + dt, v + dt * k3);
      v = polar_unitary(v + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4));
    }
  }
  for (auto& sample : out.curve.samples) sample.speed = metric_in_pauli_coords(spec, sample.x, sample.y);
  out.length = curve_length(spec, out.curve);
  out.target = circuit_unitary(c);
  out.endpoint = v;
  out.endpoint_error = (v - out.target).cwiseAbs().maxCoeff();
  out.bound_holds = out.length <= m + 1e-6;
  return out;
}

// Isometries.

enum class IsometryKind { Pauli, ComplexConjugation, LocalUnitary, Clifford, Unitary };

inline std::string_view isometry_kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::Pauli: return "pauli";
    case IsometryKind::ComplexConjugation: return "conjugation";
    case IsometryKind::LocalUnitary: return "local";
    case IsometryKind::Clifford: return "clifford";
    case IsometryKind::Unitary: return "unitary";
  }
  return "unknown";
}

inline IsometryKind parse_isometry_kind(std::string_view s) {
  for (IsometryKind k : {IsometryKind::Pauli, IsometryKind::ComplexConjugation, IsometryKind::LocalUnitary,
                         IsometryKind::Clifford, IsometryKind::Unitary})
    if (isometry_kind_name(k) == s) return k;
  fail(ErrorCode::InvalidArgument, "unknown isometry kind '" + std::string(s) + "'");
}

/// Whether the map is an isometry of every spec in the family.
inline bool isometry_applicable(IsometryKind kind, MetricFamily family) {
  switch (kind) {
    case IsometryKind::Pauli:
    case IsometryKind::ComplexConjugation: return true;
    case IsometryKind::Clifford:
      return family == MetricFamily::F1 || family == MetricFamily::F1Delta || family == MetricFamily::F2;
    case IsometryKind::LocalUnitary: return family == MetricFamily::F2 || family == MetricFamily::Fq;
    case IsometryKind::Unitary: return family == MetricFamily::F2;
  }
  return false;
}

/// Places a k-qubit gate on the listed qubits of an n-qubit register.
inline CMatrix embed_gate(const CMatrix& gate, const std::vector<int>& qubits, int n) {
  const int k = int(qubits.size());
  require(gate.rows() == (1 << k) && gate.cols() == (1 << k), ErrorCode::DimensionMismatch,
          "gate size does not match qubit list");
  for (int q : qubits) require(q >= 0 && q < n, ErrorCode::DimensionMismatch, "gate qubit out of range");
  const std::uint32_t dim = 1u << n;
  auto local_index = [&](std::uint32_t z) {
    std::uint32_t s = 0;
    for (int i = 0; i < k; ++i) s = (s << 1) | ((z >> (n - 1 - qubits[i])) & 1u);
    return s;
  };
  auto with_local = [&](std::uint32_t z, std::uint32_t s) {
    for (int i = 0; i < k; ++i) {
      const std::uint32_t bit = 1u << (n - 1 - qubits[i]);
      z = ((s >> (k - 1 - i)) & 1u) ? (z | bit) : (z & ~bit);
    }
    return z;
  };
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::uint32_t col = 0; col < dim; ++col) {
    const std::uint32_t sc = local_index(col);
    for (std::uint32_t sr = 0; sr < (1u << k); ++sr) out(with_local(col, sr), col) = gate(sr, sc);
  }
  return out;
}

/// Named Clifford gates: h, s, cnot (first qubit controls), cz, swap.
inline CMatrix clifford_gate(std::string_view name) {
  const double s2 = 1.0 / std::sqrt(2.0);
  CMatrix g;
  if (name == "h") {
    g.resize(2, 2);
    g << s2, s2, s2, -s2;
  } else if (name == "s") {
    g = CMatrix::Identity(2, 2);
    g(1, 1) = cplx(0.0, 1.0);
  } else if (name == "cnot") {
    g = CMatrix::Zero(4, 4);
    g(0, 0) = g(1, 1) = g(2, 3) = g(3, 2) = 1.0;
  } else if (name == "cz") {
    g = CMatrix::Identity(4, 4);
    g(3, 3) = -1.0;
  } else if (name == "swap") {
    g = CMatrix::Zero(4, 4);
    g(0, 0) = g(1, 2) = g(2, 1) = g(3, 3) = 1.0;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown Clifford gate '" + std::string(name) + "'");
  }
  return g;
}

/// Random unitary exp(-i A), A Hermitian with Gaussian entries.
inline CMatrix random_unitary(Eigen::Index dim, Rng& rng) { return expm_hermitian(rng.hermitian(dim, 1.0)); }

struct IsometryMap {
  IsometryKind kind = IsometryKind::Pauli;
  int n = 1;
  CMatrix w;          // conjugating unitary; unused for complex conjugation
  std::string label;

  static IsometryMap pauli(const PauliString& s) {
    return {IsometryKind::Pauli, s.size(), pauli_matrix(s), s.str()};
  }
  static IsometryMap complex_conjugation(int n) { return {IsometryKind::ComplexConjugation, n, {}, "conj"}; }
  static IsometryMap local_unitary(const std::vector<CMatrix>& factors) {
    require(!factors.empty(), ErrorCode::InvalidArgument, "no local factors");
    CMatrix w = CMatrix::Identity(1, 1);
    for (const CMatrix& f : factors) {
      require(f.rows() == 2 && f.cols() == 2, ErrorCode::DimensionMismatch, "local factors must be 2x2");
      w = kron(w, f);
    }
    return {IsometryKind::LocalUnitary, int(factors.size()), w, "local"};
  }
  static IsometryMap clifford(std::string_view gate, const std::vector<int>& qubits, int n) {
    return {IsometryKind::Clifford, n, embed_gate(clifford_gate(gate), qubits, n), std::string(gate)};
  }
  static IsometryMap unitary(const CMatrix& w) {
    require(w.rows() == w.cols(), ErrorCode::DimensionMismatch, "unitary must be square");
    return {IsometryKind::Unitary, qubits_for_dim(w.rows()), w, "unitary"};
  }

  /// Pushforward on Hamiltonians: W H W^dagger, or -H* for complex conjugation.
  CMatrix push(const CMatrix& h) const {
    if (kind == IsometryKind::ComplexConjugation) return -h.conjugate();
    return w * h * w.adjoint();
  }

  PauliVector push(const PauliVector& h) const { return project_to_pauli(push(to_matrix(h)), h.mode); }

  /// Action on the group: U -> W U W^dagger, or U* for complex conjugation.
  CMatrix act(const CMatrix& u) const {
    if (kind == IsometryKind::ComplexConjugation) return u.conjugate();
    return w * u * w.adjoint();
  }
};

struct IsometryReport {
  double max_deviation = 0.0;
  bool applicable = false;
  std::optional<PauliVector> counterexample;  // set when the deviation exceeds 1e-6
};

/// Samples random Hamiltonians (plus every basis string) and measures |F(push H) - F(H)|.
inline IsometryReport isometry_check(const IsometryMap& map, const MetricSpec& spec, int n, int samples, Rng& rng) {
  check_qubits(n);
  require(map.n == n, ErrorCode::DimensionMismatch, "map and metric act on different qubit counts");
  IsometryReport out;
  out.applicable = isometry_applicable(map.kind, spec.family);
  double worst_counter = 0.0;
  auto visit = [&](const PauliVector& h) {
    const double dev = std::abs(norm(spec, map.push(h)) - norm(spec, h));
    out.max_deviation = std::max(out.max_deviation, dev);
    if (dev > 1e-6 && dev > worst_counter) {
      worst_counter = dev;
      out.counterexample = h;
    }
  };
  for (int i = 0; i < basis_dimension(n, spec.mode); ++i) {
    PauliVector e(n, spec.mode);
    e.entries[i] = 1.0;
    visit(e);
  }
  for (int s = 0; s < samples; ++s) visit(rng.pauli_vector(n, spec.mode));
  return out;
}

/// Norm invariance under random sign flips of the Pauli coefficients.
inline bool pauli_symmetric_check(const MetricSpec& spec, int n, int samples, Rng& rng, double tol = 1e-12) {
  check_qubits(n);
  for (int s = 0; s < samples; ++s) {
    PauliVector y = rng.pauli_vector(n, spec.mode);
    PauliVector flipped = y;
    for (int i = 0; i < y.dimension(); ++i)
      if (rng.below(2)) flipped.entries[i] = -flipped.entries[i];
    const double a = norm(spec, y), b = norm(spec, flipped);
    if (std::abs(a - b) > tol * std::max(1.0, a)) return false;
  }
  return true;
}

}  // namespace sugeo
