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

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sugeo/error.hpp"

namespace sugeo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// SU excludes the identity string (4^n - 1 directions); U includes it (4^n).
enum class BasisMode { SU, U };

inline std::string_view mode_name(BasisMode m) { return m == BasisMode::SU ? "SU" : "U"; }

inline BasisMode parse_mode(std::string_view s) {
  if (s == "SU") return BasisMode::SU;
  if (s == "U") return BasisMode::U;
  fail(ErrorCode::InvalidArgument, "unknown basis mode '" + std::string(s) + "'");
}

inline int basis_dimension(int n, BasisMode mode) {
  int full = 1 << (2 * n);
  return mode == BasisMode::SU ? full - 1 : full;
}

/// Tensor product of single-qubit Paulis. Letter 0 is the leftmost tensor
/// factor, which is also the most significant bit of a computational index.
/// Letters are encoded I=0, X=1, Y=2, Z=3 so the base-4 code orders strings
/// lexicographically with I < X < Y < Z.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::string_view letters) {
    letters_.reserve(letters.size());
    for (char c : letters) {
      switch (c) {
        case 'I': letters_.push_back(0); break;
        case 'X': letters_.push_back(1); break;
        case 'Y': letters_.push_back(2); break;
        case 'Z': letters_.push_back(3); break;
        default: fail(ErrorCode::InvalidPauli, "bad Pauli letter in '" + std::string(letters) + "'");
      }
    }
    require(!letters_.empty(), ErrorCode::InvalidPauli, "empty Pauli string");
  }

  static PauliString from_code(std::uint32_t code, int n) {
    PauliString s;
    s.letters_.assign(n, 0);
    for (int q = n - 1; q >= 0; --q) {
      s.letters_[q] = static_cast<std::uint8_t>(code & 3u);
      code >>= 2;
    }
    return s;
  }

  /// Z/I string whose Z positions are the set bits of `mask` (bit n-1-q for qubit q).
  static PauliString z_type(std::uint32_t mask, int n) {
    PauliString s;
    s.letters_.assign(n, 0);
    for (int q = 0; q < n; ++q)
      if (mask >> (n - 1 - q) & 1u) s.letters_[q] = 3;
    return s;
  }

  int size() const { return static_cast<int>(letters_.size()); }
  std::uint8_t letter(int q) const { return letters_[q]; }

  std::uint32_t code() const {
    std::uint32_t c = 0;
    for (auto l : letters_) c = (c << 2) | l;
    return c;
  }

  int weight() const {
    return static_cast<int>(std::count_if(letters_.begin(), letters_.end(), [](auto l) { return l != 0; }));
  }

  bool is_identity() const { return weight() == 0; }

  bool is_z_type() const {
    return std::all_of(letters_.begin(), letters_.end(), [](auto l) { return l == 0 || l == 3; });
  }

  std::string str() const {
    static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
    std::string out;
    for (auto l : letters_) out.push_back(kNames[l]);
    return out;
  }

  /// Bit masks of the X and Z components (Y has both).
  std::uint32_t x_mask() const {
    std::uint32_t m = 0;
    for (int q = 0; q < size(); ++q)
      if (letters_[q] == 1 || letters_[q] == 2) m |= 1u << (size() - 1 - q);
    return m;
  }
  std::uint32_t z_mask() const {
    std::uint32_t m = 0;
    for (int q = 0; q < size(); ++q)
      if (letters_[q] == 2 || letters_[q] == 3) m |= 1u << (size() - 1 - q);
    return m;
  }

  /// The single nonzero entry in column `col`: returns (row, value).
  std::pair<std::uint32_t, cplx> column_entry(std::uint32_t col) const {
    const int n = size();
    std::uint32_t row = col ^ x_mask();
    cplx value{1.0, 0.0};
    for (int q = 0; q < n; ++q) {
      int bit = (col >> (n - 1 - q)) & 1;
      switch (letters_[q]) {
        case 2: value *= bit ? cplx{0, -1} : cplx{0, 1}; break;
        case 3: if (bit) value = -value; break;
        default: break;
      }
    }
    return {row, value};
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) { return a.letters_ <=> b.letters_; }

 private:
  std::vector<std::uint8_t> letters_;
};

/// Letter-wise product with the phase dropped.
inline PauliString multiply_letters(const PauliString& a, const PauliString& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "Pauli strings of different length");
  // I=0,X=1,Y=2,Z=3 is not the xor group; go through (x,z) bits.
  auto to_xz = [](std::uint8_t l) -> std::uint8_t { return l == 0 ? 0 : l == 1 ? 1 : l == 2 ? 3 : 2; };
  auto from_xz = [](std::uint8_t v) -> std::uint8_t { return v == 0 ? 0 : v == 1 ? 1 : v == 3 ? 2 : 3; };
  std::uint32_t code = 0;
  for (int q = 0; q < a.size(); ++q)
    code = (code << 2) | from_xz(static_cast<std::uint8_t>(to_xz(a.letter(q)) ^ to_xz(b.letter(q))));
  return PauliString::from_code(code, a.size());
}

/// True iff the two strings commute: an even number of positions carry
/// distinct non-identity letters.
inline bool commutes(const PauliString& a, const PauliString& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "Pauli strings of different length");
  int clashes = 0;
  for (int q = 0; q < a.size(); ++q)
    if (a.letter(q) != 0 && b.letter(q) != 0 && a.letter(q) != b.letter(q)) ++clashes;
  return clashes % 2 == 0;
}

/// Strings in canonical order for the given mode.
inline std::vector<PauliString> pauli_basis(int n, BasisMode mode) {
  check_qubits(n);
  std::vector<PauliString> out;
  const std::uint32_t full = 1u << (2 * n);
  out.reserve(full);
  for (std::uint32_t c = (mode == BasisMode::SU ? 1u : 0u); c < full; ++c) out.push_back(PauliString::from_code(c, n));
  return out;
}

inline int pauli_index(const PauliString& s, BasisMode mode) {
  int code = static_cast<int>(s.code());
  if (mode == BasisMode::SU) {
    require(code != 0, ErrorCode::InvalidPauli, "identity string has no SU index");
    return code - 1;
  }
  return code;
}

inline PauliString pauli_at(int index, int n, BasisMode mode) {
  return PauliString::from_code(static_cast<std::uint32_t>(mode == BasisMode::SU ? index + 1 : index), n);
}

inline CMatrix pauli_matrix(const PauliString& s) {
  const std::uint32_t dim = 1u << s.size();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::uint32_t col = 0; col < dim; ++col) {
    auto [row, v] = s.column_entry(col);
    m(row, col) = v;
  }
  return m;
}

/// Real coefficient vector over the Pauli basis.
struct PauliVector {
  int n = 1;
  BasisMode mode = BasisMode::SU;
  RVector entries;

  PauliVector() = default;
  PauliVector(int n_, BasisMode mode_) : n(n_), mode(mode_), entries(RVector::Zero(basis_dimension(n_, mode_))) {}
  PauliVector(int n_, BasisMode mode_, RVector e) : n(n_), mode(mode_), entries(std::move(e)) {
    require(entries.size() == basis_dimension(n, mode), ErrorCode::DimensionMismatch,
            "PauliVector length does not match basis dimension");
  }

  int dimension() const { return static_cast<int>(entries.size()); }

  double& operator[](const PauliString& s) { return entries[pauli_index(s, mode)]; }
  double operator[](const PauliString& s) const { return entries[pauli_index(s, mode)]; }
  double& operator[](std::string_view s) { return (*this)[PauliString(s)]; }
  double operator[](std::string_view s) const { return (*this)[PauliString(s)]; }

  PauliString label(int i) const { return pauli_at(i, n, mode); }

  bool same_space(const PauliVector& o) const { return n == o.n && mode == o.mode; }
};

inline void check_same_space(const PauliVector& a, const PauliVector& b) {
  require(a.same_space(b), ErrorCode::DimensionMismatch, "Pauli vectors live in different spaces");
}

inline PauliVector operator+(const PauliVector& a, const PauliVector& b) {
  check_same_space(a, b);
  return {a.n, a.mode, a.entries + b.entries};
}
inline PauliVector operator-(const PauliVector& a, const PauliVector& b) {
  check_same_space(a, b);
  return {a.n, a.mode, a.entries - b.entries};
}
inline PauliVector operator*(double s, const PauliVector& a) { return {a.n, a.mode, s * a.entries}; }

inline int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  require((Eigen::Index{1} << n) == dim && n >= 1, ErrorCode::DimensionMismatch, "matrix dimension is not 2^n");
  return n;
}

inline bool is_hermitian(const CMatrix& m, double tol = 1e-12) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Dense 2^n x 2^n Hermitian matrix.
struct HermitianOperator {
  int n = 1;
  CMatrix matrix;

  HermitianOperator() = default;
  explicit HermitianOperator(CMatrix m, double tol = 1e-12) : n(qubits_for_dim(m.rows())), matrix(std::move(m)) {
    require(is_hermitian(matrix, tol * std::max(1.0, matrix.cwiseAbs().maxCoeff())), ErrorCode::InvalidArgument,
            "matrix is not Hermitian");
  }
};

/// tr(sigma * H) using the one-entry-per-column structure of sigma.
inline cplx pauli_trace(const PauliString& s, const CMatrix& h) {
  const std::uint32_t dim = 1u << s.size();
  cplx acc{0, 0};
  for (std::uint32_t col = 0; col < dim; ++col) {
    auto [row, v] = s.column_entry(col);
    acc += v * h(col, row);
  }
  return acc;
}

inline PauliVector project_to_pauli(const CMatrix& h, BasisMode mode) {
  const int n = qubits_for_dim(h.rows());
  check_qubits(n);
  const double dim = static_cast<double>(h.rows());
  if (mode == BasisMode::SU) {
    require(std::abs(h.trace()) <= 1e-10 * dim, ErrorCode::NonTracelessInSUMode,
            "trace " + std::to_string(std::abs(h.trace())) + " in SU mode");
  }
  PauliVector out(n, mode);
  for (int i = 0; i < out.dimension(); ++i) out.entries[i] = pauli_trace(out.label(i), h).real() / dim;
  return out;
}

inline PauliVector project_to_pauli(const HermitianOperator& h, BasisMode mode) { return project_to_pauli(h.matrix, mode); }

inline CMatrix to_matrix(const PauliVector& v) {
  const std::uint32_t dim = 1u << v.n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int i = 0; i < v.dimension(); ++i) {
    const double c = v.entries[i];
    if (c == 0.0) continue;
    PauliString s = v.label(i);
    for (std::uint32_t col = 0; col < dim; ++col) {
      auto [row, val] = s.column_entry(col);
      m(row, col) += c * val;
    }
  }
  return m;
}

inline HermitianOperator to_hermitian(const PauliVector& v) {
  HermitianOperator h;
  h.n = v.n;
  h.matrix = to_matrix(v);
  return h;
}

/// Group generated by independent commuting strings, signs dropped.
struct StabilizerSubgroup {
  int n = 1;
  std::vector<PauliString> generators;
  std::vector<PauliString> elements;

  bool contains(const PauliString& s) const { return std::find(elements.begin(), elements.end(), s) != elements.end(); }
};

inline StabilizerSubgroup stabilizer_span(const std::vector<PauliString>& generators) {
  require(!generators.empty(), ErrorCode::InvalidArgument, "no generators");
  const int n = generators.front().size();
  check_qubits(n);
  for (const auto& g : generators) require(g.size() == n, ErrorCode::DimensionMismatch, "generator length mismatch");
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      require(commutes(generators[i], generators[j]), ErrorCode::NotCommuting,
              generators[i].str() + " and " + generators[j].str() + " anticommute");

  StabilizerSubgroup group;
  group.n = n;
  group.generators = generators;
  const std::size_t k = generators.size();
  require(k <= static_cast<std::size_t>(n), ErrorCode::NotIndependent, "more generators than qubits");
  const PauliString identity = PauliString::from_code(0, n);
  for (std::uint32_t subset = 0; subset < (1u << k); ++subset) {
    PauliString p = identity;
    for (std::size_t j = 0; j < k; ++j)
      if (subset >> j & 1u) p = multiply_letters(p, generators[j]);
    if (subset != 0 && p == identity) fail(ErrorCode::NotIndependent, "a product of generators is the identity");
    group.elements.push_back(p);
  }
  std::sort(group.elements.begin(), group.elements.end());
  return group;
}

}  // namespace sugeo
