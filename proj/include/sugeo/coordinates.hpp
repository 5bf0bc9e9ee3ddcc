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
#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "sugeo/pauli.hpp"

namespace sugeo {

// ---------------------------------------------------------------------------
// Vectorization. vec() stacks columns, so vec(A B C) = (C^T (x) A) vec(B).

inline CVector vec(const CMatrix& a) { return Eigen::Map<const CVector>(a.data(), a.size()); }

inline CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  require(v.size() == rows * cols, ErrorCode::DimensionMismatch, "unvec size mismatch");
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Linear map on d x d matrices, stored in vectorized form.
struct Superoperator {
  CMatrix vec_matrix;

  Eigen::Index matrix_dim() const { return static_cast<Eigen::Index>(std::llround(std::sqrt(double(vec_matrix.rows())))); }

  CMatrix apply(const CMatrix& z) const {
    require(z.size() == vec_matrix.cols(), ErrorCode::DimensionMismatch, "superoperator size mismatch");
    return unvec(vec_matrix * vec(z), z.rows(), z.cols());
  }

  Superoperator then(const Superoperator& next) const { return {next.vec_matrix * vec_matrix}; }

  static Superoperator identity(Eigen::Index dim) { return {CMatrix::Identity(dim * dim, dim * dim)}; }
};

/// vec(ad_X) = I (x) X - X^* (x) I for Hermitian X.
inline CMatrix vec_ad(const CMatrix& x) {
  const Eigen::Index d = x.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  return kron(id, x) - kron(x.conjugate(), id);
}

/// Moore-Penrose inverse; singular values below rel_cutoff * largest are zero.
inline CMatrix pseudo_inverse(const CMatrix& a, double rel_cutoff = 1e-10) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rel_cutoff * s[0] : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff && s[i] > 0.0) inv[i] = 1.0 / s[i];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// ---------------------------------------------------------------------------
// Spectral helpers for Hermitian X.

struct Spectrum {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;
};

inline Spectrum hermitian_spectrum(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x);
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Eigenvalues closer than 1e-8 * ||X|| are one eigenspace.
inline std::vector<CMatrix> eigen_projectors(const CMatrix& x) {
  const Spectrum sp = hermitian_spectrum(x);
  const Eigen::Index d = x.rows();
  const double scale = sp.values.cwiseAbs().maxCoeff();
  const double tol = 1e-8 * scale;
  std::vector<CMatrix> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= d; ++i) {
    if (i == d || sp.values[i] - sp.values[i - 1] > tol) {
      const auto block = sp.vectors.middleCols(start, i - start);
      out.push_back(block * block.adjoint());
      start = i;
    }
  }
  return out;
}

/// exp(-i X) for Hermitian X.
inline CMatrix expm_hermitian(const CMatrix& x, double t = 1.0) {
  const Spectrum sp = hermitian_spectrum(x);
  CVector phases(sp.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, -t * sp.values[i]);
  return sp.vectors * phases.asDiagonal() * sp.vectors.adjoint();
}

/// Projector onto ker(ad_X): Z -> sum_j P_j Z P_j.
inline Superoperator kernel_projector(const CMatrix& x) {
  const Eigen::Index d = x.rows();
  CMatrix p = CMatrix::Zero(d * d, d * d);
  for (const auto& pj : eigen_projectors(x)) p += kron(pj.transpose(), pj);
  return {p};
}

/// E_X = (exp(-i ad_X) - I) / (-i ad_X), evaluated as
///   vec(P) - i (U^* (x) U - I) pinv(X^* (x) I - I (x) X) (I - vec(P)),
/// with U = exp(-i X): identity on ker(ad_X), Moore-Penrose on its complement.
inline Superoperator bch_E(const CMatrix& x) {
  const Eigen::Index d = x.rows();
  const Eigen::Index dd = d * d;
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix id2 = CMatrix::Identity(dd, dd);
  const CMatrix u = expm_hermitian(x);
  const CMatrix p = kernel_projector(x).vec_matrix;
  const CMatrix conj_u = kron(u.conjugate(), u) - id2;
  const CMatrix dmat = kron(x.conjugate(), id) - kron(id, x);
  const cplx minus_i{0.0, -1.0};
  return {p + minus_i * conj_u * pseudo_inverse(dmat) * (id2 - p)};
}

/// Truncated series sum_{j < terms} (-i ad_X)^j / (j+1)!.
inline Superoperator bch_E_series(const CMatrix& x, int terms = 30) {
  const Eigen::Index dd = x.rows() * x.rows();
  const CMatrix step = cplx{0.0, -1.0} * vec_ad(x);
  CMatrix term = CMatrix::Identity(dd, dd);
  CMatrix sum = term;
  for (int j = 1; j < terms; ++j) {
    term = step * term / double(j + 1);
    sum += term;
  }
  return {sum};
}

inline bool has_resonant_spectrum(const CMatrix& x, double tol = 1e-8) {
  const Spectrum sp = hermitian_spectrum(x);
  const double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index a = 0; a < sp.values.size(); ++a)
    for (Eigen::Index b = a + 1; b < sp.values.size(); ++b) {
      const double gap = std::abs(sp.values[b] - sp.values[a]);
      const double k = std::round(gap / two_pi);
      if (k >= 1.0 && std::abs(gap - k * two_pi) < tol) return true;
    }
  return false;
}

/// Inverse of E_X: vec(P) + i (X^* (x) I - I (x) X) pinv(U^* (x) U - I) (I - vec(P)).
inline Superoperator bch_E_inverse(const CMatrix& x) {
  require(!has_resonant_spectrum(x), ErrorCode::ResonantSpectrum,
          "an eigenvalue gap of X is a nonzero multiple of 2 pi");
  const Eigen::Index d = x.rows();
  const Eigen::Index dd = d * d;
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix id2 = CMatrix::Identity(dd, dd);
  const CMatrix u = expm_hermitian(x);
  const CMatrix p = kernel_projector(x).vec_matrix;
  const CMatrix conj_u = kron(u.conjugate(), u) - id2;
  const CMatrix dmat = kron(x.conjugate(), id) - kron(id, x);
  return {p + cplx{0.0, 1.0} * dmat * pseudo_inverse(conj_u) * (id2 - p)};
}

// ---------------------------------------------------------------------------
// Spectral evaluation. In the eigenbasis of X, ad_X scales entry (a, b) by
// lambda_a - lambda_b, so E_X and its inverse act entrywise.

namespace detail {
/// (exp(-i z) - 1) / (-i z), equal to 1 at z = 0.
inline cplx bch_symbol(double z) {
  if (std::abs(z) < 1e-6) return {1.0 - z * z / 6.0, -z / 2.0 + z * z * z / 24.0};
  return (std::polar(1.0, -z) - 1.0) / cplx{0.0, -z};
}

inline CMatrix entrywise_in_eigenbasis(const Spectrum& sp, const CMatrix& z, bool inverse, bool adjoint) {
  const Eigen::Index d = sp.values.size();
  CMatrix w = sp.vectors.adjoint() * z * sp.vectors;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      cplx f = bch_symbol(sp.values[a] - sp.values[b]);
      if (adjoint) f = std::conj(f);
      w(a, b) = inverse ? w(a, b) / f : w(a, b) * f;
    }
  return sp.vectors * w * sp.vectors.adjoint();
}
}  // namespace detail

/// E_X(Z) through the eigendecomposition of X.
inline CMatrix bch_E_apply(const Spectrum& sp, const CMatrix& z) {
  return detail::entrywise_in_eigenbasis(sp, z, false, false);
}

/// Hilbert-Schmidt adjoint of E_X applied to Z.
inline CMatrix bch_E_adjoint_apply(const Spectrum& sp, const CMatrix& z) {
  return detail::entrywise_in_eigenbasis(sp, z, false, true);
}

inline CMatrix bch_E_inverse_apply(const Spectrum& sp, const CMatrix& z) {
  const double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index a = 0; a < sp.values.size(); ++a)
    for (Eigen::Index b = a + 1; b < sp.values.size(); ++b) {
      const double gap = std::abs(sp.values[b] - sp.values[a]);
      const double k = std::round(gap / two_pi);
      require(!(k >= 1.0 && std::abs(gap - k * two_pi) < 1e-8), ErrorCode::ResonantSpectrum,
              "an eigenvalue gap of X is a nonzero multiple of 2 pi");
    }
  return detail::entrywise_in_eigenbasis(sp, z, true, false);
}

// ---------------------------------------------------------------------------
// Unitaries and Pauli coordinates.

struct UnitaryOperator {
  int n = 1;
  CMatrix matrix;

  UnitaryOperator() = default;
  explicit UnitaryOperator(CMatrix m, BasisMode mode = BasisMode::U) : n(qubits_for_dim(m.rows())), matrix(std::move(m)) {
    const Eigen::Index d = matrix.rows();
    require((matrix * matrix.adjoint() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10,
            ErrorCode::InvalidArgument, "matrix is not unitary");
    if (mode == BasisMode::SU)
      require(std::abs(matrix.determinant() - cplx{1.0, 0.0}) < 1e-8, ErrorCode::InvalidArgument,
              "determinant is not 1");
  }
};

/// exp(-i x.sigma).
inline CMatrix pauli_exp(const PauliVector& x, double t = 1.0) { return expm_hermitian(to_matrix(x), t); }

/// Largest |eigenvalue| of x.sigma, i.e. the largest eigenphase of exp(-i x.sigma).
inline double max_eigenphase(const PauliVector& x) {
  return hermitian_spectrum(to_matrix(x)).values.cwiseAbs().maxCoeff();
}

/// Standard-branch coordinates: x^sigma = i tr(ln(U) sigma) / 2^n with
/// eigenphases in (-pi, pi).
inline PauliVector pauli_log(const CMatrix& u, BasisMode mode, double branch_tol = 1e-8) {
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();
  Eigen::VectorXd neg_phase(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const double phi = std::arg(t(i, i));
    require(std::numbers::pi - std::abs(phi) > branch_tol, ErrorCode::BranchCut, "eigenvalue at -1");
    neg_phase[i] = -phi;
  }
  CMatrix x = q * neg_phase.cast<cplx>().asDiagonal() * q.adjoint();
  x = 0.5 * (x + x.adjoint());
  return project_to_pauli(x, mode);
}

inline PauliVector pauli_log(const UnitaryOperator& u, BasisMode mode) { return pauli_log(u.matrix, mode); }

// ---------------------------------------------------------------------------
// Natural Pauli <-> natural adapted tangent coordinates.

/// Pauli coefficients of a (not necessarily Hermitian-rounded) matrix.
inline PauliVector project_real(const CMatrix& z, int n, BasisMode mode) {
  const double dim = double(z.rows());
  PauliVector out(n, mode);
  for (int i = 0; i < out.dimension(); ++i) out.entries[i] = pauli_trace(out.label(i), z).real() / dim;
  return out;
}

/// Real matrix M(x) with y_adapted = M(x) y_pauli.
inline RMatrix adapted_change_matrix(const PauliVector& x) {
  const Spectrum sp = hermitian_spectrum(to_matrix(x));
  const int d = x.dimension();
  RMatrix m(d, d);
  for (int j = 0; j < d; ++j)
    m.col(j) = project_real(bch_E_apply(sp, pauli_matrix(x.label(j))), x.n, x.mode).entries;
  return m;
}

/// M(x)^T w, computed as the projection of E_X^dagger(w . sigma).
inline RVector adapted_change_transpose_apply(const Spectrum& sp, const PauliVector& w) {
  return project_real(bch_E_adjoint_apply(sp, to_matrix(w)), w.n, w.mode).entries;
}

inline PauliVector change_coords_forward(const PauliVector& x, const PauliVector& y_pauli) {
  check_same_space(x, y_pauli);
  const CMatrix z = bch_E_apply(hermitian_spectrum(to_matrix(x)), to_matrix(y_pauli));
  return project_real(z, x.n, x.mode);
}

inline PauliVector change_coords_backward(const PauliVector& x, const PauliVector& y_adapted) {
  check_same_space(x, y_adapted);
  const CMatrix z = bch_E_inverse_apply(hermitian_spectrum(to_matrix(x)), to_matrix(y_adapted));
  return project_real(z, x.n, x.mode);
}

// ---------------------------------------------------------------------------
// SU(2) closed form.

using Vec3 = Eigen::Vector3d;

namespace detail {
inline double sinc(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }
inline double xcotx(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 3.0 : z * std::cos(z) / std::sin(z); }

inline void check_patch(const Vec3& x) {
  require(x.norm() < std::numbers::pi, ErrorCode::OutsidePatch, "|x| must be below pi");
}

inline std::pair<Vec3, Vec3> split_parallel(const Vec3& x, const Vec3& v) {
  const double r = x.norm();
  if (r == 0.0) return {Vec3::Zero(), v};
  const Vec3 hat = x / r;
  const Vec3 par = hat.dot(v) * hat;
  return {par, v - par};
}
}  // namespace detail

/// Pauli -> adapted: y~ = y_par + sinc(2|x|) y_perp + sinc^2(|x|) x cross y_perp.
inline Vec3 su2_to_adapted(const Vec3& x, const Vec3& y) {
  detail::check_patch(x);
  const double r = x.norm();
  auto [par, perp] = detail::split_parallel(x, y);
  const double s = detail::sinc(r);
  return par + detail::sinc(2.0 * r) * perp + s * s * x.cross(perp);
}

/// Adapted -> Pauli: y = y~_par + |x| cot|x| y~_perp + y~ cross x.
inline Vec3 su2_to_pauli(const Vec3& x, const Vec3& y_adapted) {
  detail::check_patch(x);
  const double r = x.norm();
  auto [par, perp] = detail::split_parallel(x, y_adapted);
  return par + detail::xcotx(r) * perp + y_adapted.cross(x);
}

/// Unique solution of X + X cross A = B.
inline Vec3 solve_cross_equation(const Vec3& a, const Vec3& b) {
  return (b + a * a.dot(b) + a.cross(b)) / (1.0 + a.squaredNorm());
}

}  // namespace sugeo
