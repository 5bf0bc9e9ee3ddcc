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

#include <gtest/gtest.h>

#include <numbers>

#include "sugeo/coordinates.hpp"
#include "sugeo/random.hpp"

using namespace sugeo;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Vec3 to_vec3(const PauliVector& v) { return {v["X"], v["Y"], v["Z"]}; }
PauliVector from_vec3(const Vec3& v) {
  PauliVector out(1, BasisMode::SU);
  out["X"] = v[0];
  out["Y"] = v[1];
  out["Z"] = v[2];
  return out;
}

Vec3 random_vec3(Rng& rng, double max_norm) {
  Vec3 v(rng.normal(), rng.normal(), rng.normal());
  return v.normalized() * rng.uniform(0.0, max_norm);
}

}  // namespace

TEST(vec, column_stacking) {
  CMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;  // [[a, b], [c, d]]
  CVector v = vec(a);
  EXPECT_EQ(v, Eigen::Vector4cd(1.0, 3.0, 2.0, 4.0));
  EXPECT_EQ(unvec(v, 2, 2), a);
}

TEST(vec, outer_product_rule) {
  const int d = 3;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      CMatrix e = CMatrix::Zero(d, d);
      e(j, k) = 1.0;
      CVector ket_j = CVector::Unit(d, j), ket_k = CVector::Unit(d, k);
      EXPECT_EQ(vec(e), CVector(kron(ket_k, ket_j)));
    }
}

TEST(vec, roth_lemma) {
  Rng rng(1);
  for (int l = 2; l <= 4; ++l)
    for (int m = 2; m <= 4; ++m)
      for (int n = 2; n <= 4; ++n) {
        CMatrix a = rng.complex_matrix(l, m), b = rng.complex_matrix(m, n), c = rng.complex_matrix(n, 3);
        EXPECT_LT((vec(a * b * c) - kron(c.transpose(), a) * vec(b)).cwiseAbs().maxCoeff(), 1e-12);
      }
}

TEST(vec, unvec_dimension_mismatch) { EXPECT_THROW(unvec(CVector::Zero(5), 2, 2), Error); }

TEST(vec_ad, matches_commutator_and_exponential) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix x = rng.hermitian(4, 0.5), z = rng.complex_matrix(4, 4);
    EXPECT_LT(max_abs(unvec(vec_ad(x) * vec(z), 4, 4) - (x * z - z * x)), 1e-12);
    // exp(-i vec(ad_X)) via its own spectral decomposition against U^* (x) U.
    const CMatrix u = expm_hermitian(x);
    EXPECT_LT(max_abs(expm_hermitian(vec_ad(x)) - kron(u.conjugate(), u)), 1e-10);
  }
}

TEST(kernel_projector, pauli_z) {
  Superoperator p = kernel_projector(pauli_matrix(PauliString("Z")));
  CMatrix z(2, 2);
  z << 1.0, 2.0, 3.0, 4.0;
  CMatrix expected(2, 2);
  expected << 1.0, 0.0, 0.0, 4.0;
  EXPECT_LT(max_abs(p.apply(z) - expected), 1e-14);
}

TEST(kernel_projector, scalar_is_identity) {
  Superoperator p = kernel_projector(0.7 * CMatrix::Identity(4, 4));
  EXPECT_LT(max_abs(p.vec_matrix - CMatrix::Identity(16, 16)), 1e-14);
}

TEST(kernel_projector, commutes_and_idempotent) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix x = rng.hermitian(4), z = rng.complex_matrix(4, 4);
    Superoperator p = kernel_projector(x);
    CMatrix pz = p.apply(z);
    EXPECT_LT(max_abs(x * pz - pz * x), 1e-10);
    EXPECT_LT(max_abs(p.vec_matrix * p.vec_matrix - p.vec_matrix), 1e-12);
    EXPECT_LT(max_abs(p.vec_matrix - p.vec_matrix.adjoint()), 1e-12);
  }
  // Degenerate spectrum: X = ZI has two 2-dimensional eigenspaces.
  CMatrix x = pauli_matrix(PauliString("ZI"));
  Superoperator p = kernel_projector(x);
  CMatrix iz = pauli_matrix(PauliString("IX"));
  EXPECT_LT(max_abs(p.apply(iz) - iz), 1e-14);
  EXPECT_LT(max_abs(p.apply(pauli_matrix(PauliString("XI")))), 1e-14);
}

TEST(bch_E, zero_is_identity) {
  EXPECT_LT(max_abs(bch_E(CMatrix::Zero(4, 4)).vec_matrix - CMatrix::Identity(16, 16)), 1e-14);
}

TEST(bch_E, identity_on_kernel) {
  Rng rng(4);
  CMatrix x = rng.hermitian(4);
  Superoperator e = bch_E(x);
  CMatrix z = kernel_projector(x).apply(rng.hermitian(4));
  EXPECT_LT(max_abs(e.apply(z) - z), 1e-10);
  // x itself lies in the kernel.
  EXPECT_LT(max_abs(e.apply(x) - x), 1e-10);
}

TEST(bch_E, matches_power_series) {
  Rng rng(5);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      CMatrix x = rng.hermitian(1 << n);
      x /= hermitian_spectrum(x).values.cwiseAbs().maxCoeff();  // ||X|| = 1
      x *= rng.uniform();
      CMatrix z = rng.complex_matrix(1 << n, 1 << n);
      EXPECT_LT(max_abs(bch_E(x).apply(z) - bch_E_series(x, 30).apply(z)), 1e-10);
    }
}

TEST(bch_E, first_order_formula) {
  // exp(-i(X + tY)) - exp(-it E_X(Y)) exp(-iX) = O(t^2): halving t quarters the gap.
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    CMatrix x = rng.hermitian(4), y = rng.hermitian(4);
    CMatrix yt = bch_E(x).apply(y);
    yt = 0.5 * (yt + yt.adjoint());
    auto gap = [&](double t) { return max_abs(expm_hermitian(x + t * y) - expm_hermitian(yt, t) * expm_hermitian(x)); };
    const double ratio = gap(1e-3) / gap(5e-4);
    EXPECT_NEAR(ratio, 4.0, 0.05);
    // The wrong sign of the pinv term would leave an O(t) gap.
    EXPECT_LT(gap(1e-4), 1e-6);
  }
}

TEST(bch_E_inverse, zero_and_composition) {
  EXPECT_LT(max_abs(bch_E_inverse(CMatrix::Zero(2, 2)).vec_matrix - CMatrix::Identity(4, 4)), 1e-14);
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix x = rng.hermitian(4, 0.6), z = rng.complex_matrix(4, 4);
    EXPECT_LT(max_abs(bch_E_inverse(x).apply(bch_E(x).apply(z)) - z), 1e-9);
    EXPECT_LT(max_abs(bch_E(x).apply(bch_E_inverse(x).apply(z)) - z), 1e-9);
  }
}

TEST(bch_E_inverse, resonant_spectrum) {
  CMatrix x = kPi * pauli_matrix(PauliString("Z"));  // eigenvalues +-pi: gap 2 pi
  try {
    bch_E_inverse(x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResonantSpectrum);
  }
}

TEST(change_coords, identity_at_origin) {
  Rng rng(8);
  PauliVector y = rng.pauli_vector(2, BasisMode::SU);
  PauliVector x(2, BasisMode::SU);
  EXPECT_LT((change_coords_forward(x, y).entries - y.entries).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((adapted_change_matrix(x) - RMatrix::Identity(15, 15)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(change_coords, parallel_tangent_unchanged) {
  Rng rng(9);
  PauliVector x = rng.pauli_vector(2, BasisMode::SU, 0.3);
  PauliVector y = 1.7 * x;
  EXPECT_LT((change_coords_forward(x, y).entries - y.entries).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(change_coords, round_trip_and_matrix) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    PauliVector x = rng.pauli_vector(2, BasisMode::SU, 0.4);
    PauliVector y = rng.pauli_vector(2, BasisMode::SU);
    PauliVector yt = change_coords_forward(x, y);
    EXPECT_LT((change_coords_backward(x, yt).entries - y.entries).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((adapted_change_matrix(x) * y.entries - yt.entries).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(change_coords, spectral_and_vectorized_paths_agree) {
  Rng rng(12);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      PauliVector x = rng.pauli_vector(n, BasisMode::SU, 0.5);
      CMatrix xm = to_matrix(x);
      CMatrix z = rng.complex_matrix(1 << n, 1 << n);
      const Spectrum sp = hermitian_spectrum(xm);
      EXPECT_LT(max_abs(bch_E_apply(sp, z) - bch_E(xm).apply(z)), 1e-11);
      EXPECT_LT(max_abs(bch_E_inverse_apply(sp, z) - bch_E_inverse(xm).apply(z)), 1e-10);
      // Hilbert-Schmidt adjoint: <W, E(Z)> = <E^dagger(W), Z>.
      CMatrix w = rng.complex_matrix(1 << n, 1 << n);
      const cplx lhs = (w.adjoint() * bch_E_apply(sp, z)).trace();
      const cplx rhs = (bch_E_adjoint_apply(sp, w).adjoint() * z).trace();
      EXPECT_LT(std::abs(lhs - rhs), 1e-10);
      PauliVector v = rng.pauli_vector(n, BasisMode::SU);
      EXPECT_LT((adapted_change_transpose_apply(sp, v) - adapted_change_matrix(x).transpose() * v.entries)
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
    }
}

TEST(change_coords, su2_closed_form_agrees) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 x = random_vec3(rng, kPi - 0.1);
    Vec3 y(rng.normal(), rng.normal(), rng.normal());
    Vec3 general = to_vec3(change_coords_forward(from_vec3(x), from_vec3(y)));
    EXPECT_LT((general - su2_to_adapted(x, y)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(su2_change_coords, parallel_and_origin) {
  Vec3 x(0.3, -0.2, 0.5);
  Vec3 y = 2.5 * x;
  EXPECT_LT((su2_to_pauli(x, y) - y).norm(), 1e-15);
  EXPECT_LT((su2_to_adapted(x, y) - y).norm(), 1e-15);
  Vec3 v(1.0, 2.0, 3.0);
  EXPECT_EQ(su2_to_pauli(Vec3::Zero(), v), v);
  EXPECT_EQ(su2_to_adapted(Vec3::Zero(), v), v);
}

TEST(su2_change_coords, mutual_inverse) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 x = random_vec3(rng, kPi - 0.1);
    Vec3 y(rng.normal(), rng.normal(), rng.normal());
    EXPECT_LT((su2_to_pauli(x, su2_to_adapted(x, y)) - y).norm(), 1e-9 * (1 + y.norm()));
    EXPECT_LT((su2_to_adapted(x, su2_to_pauli(x, y)) - y).norm(), 1e-9 * (1 + y.norm()));
  }
}

TEST(su2_change_coords, first_order_in_t) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 x = random_vec3(rng, 2.5);
    Vec3 yt(rng.normal(), rng.normal(), rng.normal());
    Vec3 y = su2_to_pauli(x, yt);
    auto gap = [&](double t) {
      CMatrix lhs = pauli_exp(from_vec3(x + t * y));
      CMatrix rhs = pauli_exp(from_vec3(yt), t) * pauli_exp(from_vec3(x));
      return max_abs(lhs - rhs);
    };
    const double g3 = gap(1e-3), g4 = gap(1e-4);
    EXPECT_NEAR(g3 / g4, 100.0, 2.0);
  }
}

TEST(su2_change_coords, outside_patch) {
  try {
    su2_to_pauli(Vec3(kPi, 0, 0), Vec3(1, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutsidePatch);
  }
}

TEST(pauli_log, examples) {
  EXPECT_LT(pauli_log(CMatrix::Identity(4, 4), BasisMode::SU).entries.cwiseAbs().maxCoeff(), 1e-15);

  PauliVector x(2, BasisMode::SU);
  x["ZZ"] = 0.3;
  PauliVector back = pauli_log(pauli_exp(x), BasisMode::SU);
  EXPECT_LT((back.entries - x.entries).cwiseAbs().maxCoeff(), 1e-14);

  try {
    pauli_log(-CMatrix::Identity(2, 2), BasisMode::U);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BranchCut);
  }
}

TEST(pauli_log, round_trip) {
  Rng rng(14);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      CMatrix h = rng.hermitian(1 << n);
      h *= 2.5 / hermitian_spectrum(h).values.cwiseAbs().maxCoeff();
      CMatrix u = expm_hermitian(h);
      PauliVector x = pauli_log(u, BasisMode::U);
      EXPECT_LT(max_abs(pauli_exp(x) - u), 1e-9);
      EXPECT_LT(max_abs(to_matrix(x) - h), 1e-9);
    }
}

TEST(solve_cross_equation, residuals) {
  Vec3 b(1, 2, 3);
  EXPECT_EQ(solve_cross_equation(Vec3::Zero(), b), b);
  {
    Vec3 a(0, 0, 1), b1(1, 0, 0);
    Vec3 x = solve_cross_equation(a, b1);
    EXPECT_LT((x + x.cross(a) - b1).norm(), 1e-14);
    EXPECT_LT((x - Vec3(0.5, 0.5, 0.0)).norm(), 1e-15);
  }
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 a(rng.normal(), rng.normal(), rng.normal()), bb(rng.normal(), rng.normal(), rng.normal());
    Vec3 x = solve_cross_equation(a, bb);
    EXPECT_LT((x + x.cross(a) - bb).norm(), 1e-12);
  }
}
