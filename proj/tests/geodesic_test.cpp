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

#include "sugeo/geodesic.hpp"
#include "sugeo/random.hpp"

using namespace sugeo;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

PauliVector on_strings(int n, std::initializer_list<std::pair<const char*, double>> terms,
                       BasisMode mode = BasisMode::SU) {
  PauliVector v(n, mode);
  for (auto [s, c] : terms) v[s] = c;
  return v;
}

MetricSpec penalised_fq(double k) { return MetricSpec::fq(PenaltyFunction::step(k, 1)); }

// Hamiltonian of the motion at x in direction y, from a central difference
// of exp(-i x.sigma): H = i (dU/dt) U^dagger.
PauliVector hamiltonian_by_difference(const PauliVector& x, const PauliVector& y) {
  const double h = 1e-5;
  const CMatrix up = pauli_exp(x + h * y), um = pauli_exp(x - h * y);
  const CMatrix dudt = (up - um) / (2.0 * h);
  const CMatrix ham = cplx{0.0, 1.0} * dudt * pauli_exp(x).adjoint();
  return project_real(0.5 * (ham + ham.adjoint()), x.n, x.mode);
}

}  // namespace

TEST(metric_in_pauli_coords, origin_and_commuting_tangent) {
  Rng rng(1);
  const MetricSpec spec = penalised_fq(4.0);
  PauliVector y = rng.pauli_vector(2, BasisMode::SU);
  EXPECT_NEAR(metric_in_pauli_coords(spec, PauliVector(2, BasisMode::SU), y), norm(spec, y), 1e-14);
  PauliVector x = 0.3 * y;
  EXPECT_NEAR(metric_in_pauli_coords(spec, x, y), norm(spec, y), 1e-12);
}

TEST(metric_in_pauli_coords, homogeneous_in_y) {
  Rng rng(2);
  for (const MetricSpec& spec : {MetricSpec::f1(), MetricSpec::f2(), penalised_fq(9.0)}) {
    PauliVector x = rng.pauli_vector(2, BasisMode::SU, 0.3);
    PauliVector y = rng.pauli_vector(2, BasisMode::SU);
    const double f = metric_in_pauli_coords(spec, x, y);
    EXPECT_NEAR(metric_in_pauli_coords(spec, x, 2.0 * y), 2.0 * f, 1e-10 * f);
  }
}

TEST(metric_in_pauli_coords, right_invariant) {
  Rng rng(3);
  const MetricSpec spec = MetricSpec::fp(PenaltyFunction::step(5.0, 1));
  for (int trial = 0; trial < 10; ++trial) {
    PauliVector x = rng.pauli_vector(2, BasisMode::SU, 0.4);
    PauliVector y = rng.pauli_vector(2, BasisMode::SU);
    const double expected = norm(spec, hamiltonian_by_difference(x, y));
    EXPECT_NEAR(metric_in_pauli_coords(spec, x, y), expected, 1e-8 * expected);
  }
}

TEST(metric_in_pauli_coords, rejects_branch_cut) {
  PauliVector x = on_strings(1, {{"Z", kPi}});
  try {
    metric_in_pauli_coords(MetricSpec::f2(), x, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BranchCut);
  }
}

TEST(christoffel, symmetric_and_matches_acceleration) {
  Rng rng(4);
  const MetricSpec smoothed = MetricSpec::fp_delta(PenaltyFunction::step(3.0, 1), 1e-2 / 15.0);
  for (const MetricSpec& spec : {penalised_fq(4.0), smoothed}) {
    PauliVector x = rng.pauli_vector(2, BasisMode::SU, 0.3);
    PauliVector y = rng.pauli_vector(2, BasisMode::SU);
    ChristoffelField gamma = christoffel(spec, x, y);
    double asym = 0.0;
    for (int j = 0; j < gamma.d; ++j)
      for (int k = 0; k < gamma.d; ++k)
        for (int l = 0; l < gamma.d; ++l) asym = std::max(asym, std::abs(gamma(j, k, l) - gamma(j, l, k)));
    EXPECT_LT(asym, 1e-6);
    const RVector a = geodesic_acceleration(spec, x, y);
    EXPECT_LT((a + gamma.contract(y.entries)).cwiseAbs().maxCoeff(), 1e-5 * (1.0 + a.cwiseAbs().maxCoeff()));
  }
}

TEST(christoffel, stabilizer_direction_is_straight) {
  PauliVector y = on_strings(2, {{"ZI", 0.4}, {"IZ", -0.7}, {"ZZ", 0.2}});
  ChristoffelField gamma = christoffel(penalised_fq(25.0), PauliVector(2, BasisMode::SU), y);
  EXPECT_LT(gamma.contract(y.entries).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(christoffel, rejects_nonsmooth) {
  PauliVector y = on_strings(1, {{"X", 1.0}});
  try {
    christoffel(MetricSpec::f1(), PauliVector(1, BasisMode::SU), y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSmoothMetric);
  }
}

TEST(fundamental_tensor, contracts_to_speed_squared) {
  Rng rng(5);
  const MetricSpec smoothed = MetricSpec::f1_delta(1e-3 / 15.0);
  for (const MetricSpec& spec : {MetricSpec::f2(), penalised_fq(7.0), smoothed}) {
    detail::PauliChartMetric metric(spec, 2, 1e-5);
    PauliVector x = rng.pauli_vector(2, BasisMode::SU, 0.3);
    PauliVector y = rng.pauli_vector(2, BasisMode::SU);
    const double f = metric.speed(x, y);
    EXPECT_NEAR(y.entries.dot(metric.fundamental_tensor(x, y) * y.entries), f * f, 1e-8 * f * f);
  }
}

TEST(shoot_geodesic, f2_from_identity_is_straight) {
  Rng rng(6);
  PauliVector y0 = rng.pauli_vector(2, BasisMode::SU, 0.4);
  Curve c = shoot_geodesic(MetricSpec::f2(), PauliVector(2, BasisMode::SU), y0, 1.0, 1000);
  ASSERT_EQ(c.chart_runs().size(), 1u);
  EXPECT_LT((c.samples.back().x.entries - y0.entries).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT(speed_drift(c), 1e-6);
}

TEST(shoot_geodesic, smoothed_stabilizer_support_is_straight) {
  PauliVector y0 = on_strings(2, {{"ZI", 0.5}, {"IZ", -0.3}, {"ZZ", 0.8}});
  const MetricSpec spec = MetricSpec::fp_delta(PenaltyFunction::step(4.0, 1), 1e-3);
  Curve c = shoot_geodesic(spec, PauliVector(2, BasisMode::SU), y0, 1.0, 500);
  for (const auto& s : c.samples) EXPECT_LT((s.x.entries - s.t * y0.entries).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(shoot_geodesic, constant_speed_and_residual) {
  Rng rng(7);
  const MetricSpec spec = penalised_fq(6.0);
  PauliVector x0 = rng.pauli_vector(2, BasisMode::SU, 0.2);
  PauliVector y0 = rng.pauli_vector(2, BasisMode::SU, 0.5);
  Curve c = shoot_geodesic(spec, x0, y0, 1.0, 1000);
  EXPECT_LT(speed_drift(c), 1e-5);
  EXPECT_LT(el_residual(spec, c), 1e-4);
  EXPECT_LT(el_residual(spec, c, LagrangianForm::Speed), 1e-4);
  // A geodesic is not a straight line in Pauli coordinates here.
  EXPECT_GT((c.samples.back().x.entries - x0.entries - y0.entries).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(shoot_geodesic, rk4_is_fourth_order) {
  Rng rng(8);
  const MetricSpec spec = penalised_fq(6.0);
  PauliVector x0 = rng.pauli_vector(2, BasisMode::SU, 0.2);
  PauliVector y0 = rng.pauli_vector(2, BasisMode::SU, 0.3);
  auto endpoint = [&](long steps) { return shoot_geodesic(spec, x0, y0, 1.0, steps).samples.back().x.entries; };
  const RVector reference = endpoint(320);
  const double coarse = (endpoint(10) - reference).norm();
  const double fine = (endpoint(20) - reference).norm();
  EXPECT_GT(coarse / fine, 12.0);
  EXPECT_LT(coarse / fine, 20.0);
}

TEST(shoot_geodesic, reanchors_past_branch_cut) {
  Rng rng(9);
  PauliVector y0 = rng.pauli_vector(1, BasisMode::SU);
  y0.entries *= 2.5 / y0.entries.norm();
  Curve c = shoot_geodesic(MetricSpec::f2(), PauliVector(1, BasisMode::SU), y0, 3.0, 3000);
  EXPECT_GT(c.chart_runs().size(), 2u);
  EXPECT_LT(max_abs(c.unitary(c.samples.size() - 1) - pauli_exp(y0, 3.0)), 1e-6);
  EXPECT_LT(speed_drift(c), 1e-6);
  EXPECT_LT(el_residual(MetricSpec::f2(), c), 1e-4);
}

TEST(shoot_geodesic, errors) {
  PauliVector y = on_strings(1, {{"X", 1.0}});
  PauliVector zero(1, BasisMode::SU);
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of([&] { shoot_geodesic(MetricSpec::f2(), zero, zero, 1.0, 10); }), ErrorCode::ZeroVector);
  GeodesicOptions opts;
  opts.max_steps = 100;
  EXPECT_EQ(code_of([&] { shoot_geodesic(MetricSpec::f2(), zero, y, 1.0, 1000, opts); }),
            ErrorCode::StepLimitExceeded);
  PauliVector y3(3, BasisMode::SU);
  y3["ZZZ"] = 1.0;
  EXPECT_EQ(code_of([&] { shoot_geodesic(MetricSpec::f2(), PauliVector(3, BasisMode::SU), y3, 1.0, 10); }),
            ErrorCode::DimensionLimit);
}

TEST(el_residual, pauli_geodesic_and_negative_control) {
  Rng rng(10);
  const MetricSpec smoothed = MetricSpec::fp_delta(PenaltyFunction::step(100.0, 1), 1e-4);
  PauliVector h0 = on_strings(2, {{"XI", 0.6}, {"IX", -0.4}, {"XX", 0.9}});
  EXPECT_LT(el_residual(smoothed, hamiltonian_curve(smoothed, h0, 1.0, 1000)), 1e-4);
  EXPECT_LT(el_residual(penalised_fq(100.0), hamiltonian_curve(penalised_fq(100.0), h0, 1.0, 1000)), 1e-4);

  PauliVector generic = rng.pauli_vector(2, BasisMode::SU, 0.5);
  EXPECT_GT(el_residual(penalised_fq(100.0), hamiltonian_curve(penalised_fq(100.0), generic, 1.0, 1000)), 1e-2);
}

TEST(pauli_geodesic, long_geodesic_example) {
  auto z_group = stabilizer_span({PauliString("ZI"), PauliString("IZ")});
  const int m = 5;
  PauliVector h0 = on_strings(2, {{"ZZ", kPi / 2}, {"ZI", 2 * kPi / m}});
  const CMatrix target = pauli_exp(on_strings(2, {{"ZZ", kPi / 2}}));
  EXPECT_LT(max_abs(pauli_geodesic(z_group, h0, m).matrix - target), 1e-12);
  for (int t = 1; t < m; ++t) EXPECT_GT(max_abs(pauli_geodesic(z_group, h0, t).matrix - target), 1e-2);
}

TEST(pauli_geodesic, zero_and_unsupported) {
  auto z_group = stabilizer_span({PauliString("ZI"), PauliString("IZ")});
  EXPECT_LT(max_abs(pauli_geodesic(z_group, PauliVector(2, BasisMode::SU), 3.0).matrix - CMatrix::Identity(4, 4)),
            1e-15);
  try {
    pauli_geodesic(z_group, on_strings(2, {{"XI", 1.0}}), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedCoefficient);
  }
}

TEST(curve_length, constant_speed_and_reparameterization) {
  PauliVector h = on_strings(2, {{"ZZ", 0.3}});
  EXPECT_NEAR(curve_length(MetricSpec::f1(), hamiltonian_curve(MetricSpec::f1(), h, 1.0, 100)), 0.3, 1e-12);
  EXPECT_NEAR(curve_length(MetricSpec::f1(), hamiltonian_curve(MetricSpec::f1(), h, 2.5, 101)), 0.75, 1e-12);

  Rng rng(11);
  const MetricSpec spec = penalised_fq(3.0);
  PauliVector g = rng.pauli_vector(2, BasisMode::SU, 0.5);
  Curve c = hamiltonian_curve(spec, g, 1.0, 200);
  // t = s^2: x(s) = g s^2, dx/ds = 2 s g.
  Curve r{spec, {}, c.anchors};
  for (int i = 0; i <= 200; ++i) {
    const double s = i / 200.0;
    r.samples.push_back({s, (s * s) * g, (2.0 * s) * g, 0.0, 0});
  }
  EXPECT_NEAR(curve_length(spec, r), curve_length(spec, c), 1e-6);
}

TEST(curve_length, f2_of_exponential) {
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    CMatrix ham = rng.hermitian(4);
    PauliVector h = project_to_pauli(ham, BasisMode::U);
    const double expected = std::sqrt((ham * ham).trace().real() / 4.0);
    const MetricSpec spec = MetricSpec::f2(BasisMode::U);
    EXPECT_NEAR(curve_length(spec, hamiltonian_curve(spec, h, 1.0, 400)), expected, 1e-8);
  }
}

TEST(additive_triple, fq_identity_and_product_geodesic) {
  Rng rng(13);
  const auto q = PenaltyFunction::from_table({1.0, 2.5, 7.0});
  const MetricSpec spec = MetricSpec::fq(q);
  Curve a = shoot_geodesic(spec, PauliVector(1, BasisMode::SU), on_strings(1, {{"X", 0.4}, {"Z", 0.3}}), 1.0, 1000);
  Curve b = shoot_geodesic(spec, on_strings(1, {{"Y", 0.2}}), on_strings(1, {{"Z", 0.5}}), 1.0, 1000);
  TripleCheck check = additive_triple_check(spec, spec, spec, a, b, rng);
  EXPECT_LT(check.identity_residual, 1e-10);
  ASSERT_TRUE(check.product_residual.has_value());
  EXPECT_LT(*check.product_residual, 1e-4);

  Curve still = hamiltonian_curve(spec, PauliVector(1, BasisMode::SU), 1.0, 1000);
  TripleCheck ancilla = additive_triple_check(spec, spec, spec, a, still, rng);
  EXPECT_NEAR(*ancilla.product_residual, el_residual(spec, a), 1e-9);
}

TEST(additive_triple, f1_fails_and_penalty_mismatch) {
  Rng rng(14);
  Curve a = hamiltonian_curve(MetricSpec::f1(), on_strings(1, {{"X", 0.4}}), 1.0, 10);
  TripleCheck check = additive_triple_check(MetricSpec::f1(), MetricSpec::f1(), MetricSpec::f1(), a, a, rng);
  EXPECT_GT(check.identity_residual, 0.1);
  EXPECT_FALSE(check.product_residual.has_value());
  try {
    additive_triple_check(MetricSpec::fq(PenaltyFunction::from_table({1.0, 2.0})),
                          MetricSpec::fq(PenaltyFunction::from_table({1.0, 3.0})),
                          MetricSpec::fq(PenaltyFunction::from_table({1.0, 2.0})), a, a, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentPenalties);
  }
}
