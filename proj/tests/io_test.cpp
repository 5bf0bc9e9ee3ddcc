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

#include "sugeo/io.hpp"
#include "sugeo/random.hpp"

using namespace sugeo;
using io::json;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Serialise to text and back so the round trip covers number formatting too.
json through_text(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST(io, pauli_vector_round_trip) {
  Rng rng(1);
  for (BasisMode mode : {BasisMode::SU, BasisMode::U}) {
    const PauliVector v = rng.pauli_vector(2, mode);
    const PauliVector back = io::pauli_vector_from_json(through_text(io::to_json(v)));
    EXPECT_EQ(back.mode, mode);
    EXPECT_EQ(back.entries, v.entries);
  }
  // Omitted strings are zero and the mode defaults to SU.
  const PauliVector sparse = io::pauli_vector_from_json(json::parse(R"({"n":2,"entries":[{"pauli":"XZ","value":2}]})"));
  EXPECT_EQ(sparse.mode, BasisMode::SU);
  EXPECT_EQ(sparse["XZ"], 2.0);
  EXPECT_EQ(sparse.entries.cwiseAbs().sum(), 2.0);
}

TEST(io, pauli_vector_errors) {
  auto code = [](const char* text) {
    try {
      io::pauli_vector_from_json(json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;  // unreachable in these cases
  };
  EXPECT_EQ(code(R"({"n":2,"entries":[{"pauli":"XZZ","value":1}]})"), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code(R"({"n":2,"entries":[{"pauli":"II","value":1}]})"), ErrorCode::NonTracelessInSUMode);
  EXPECT_EQ(code(R"({"n":2,"entries":[{"pauli":"QZ","value":1}]})"), ErrorCode::InvalidPauli);
  EXPECT_EQ(code(R"({"n":9,"entries":[]})"), ErrorCode::DimensionLimit);
  EXPECT_THROW(io::pauli_vector_from_json(json::parse(R"({"entries":[]})")), Error);
  EXPECT_THROW(io::pauli_vector_from_json(json::parse(R"({"n":"two","entries":[]})")), Error);
}

TEST(io, metric_spec_round_trip) {
  const std::vector<MetricSpec> specs{
      MetricSpec::f1(), MetricSpec::f2(BasisMode::U), MetricSpec::fp(PenaltyFunction::step(16.0), BasisMode::U),
      MetricSpec::fq(PenaltyFunction::from_table({1.0, 2.0, 5.0})), MetricSpec::f1_delta(1e-3),
      MetricSpec::fp_delta(PenaltyFunction::step(4.0, 1), 1e-4, BasisMode::U)};
  for (const MetricSpec& s : specs) {
    const MetricSpec back = io::metric_from_json(through_text(io::to_json(s)));
    EXPECT_EQ(back.family, s.family);
    EXPECT_EQ(back.mode, s.mode);
    EXPECT_EQ(back.delta, s.delta);
    if (s.uses_penalty()) EXPECT_TRUE(back.penalty == s.penalty);
  }
  const MetricSpec doc =
      io::metric_from_json(json::parse(R"({"family":"FpDelta","penalty":{"kind":"step","k":16.0},"delta":1e-4,"mode":"U"})"));
  EXPECT_EQ(doc.family, MetricFamily::FpDelta);
  EXPECT_EQ(doc.penalty.k, 16.0);
  EXPECT_EQ(doc.penalty.low_weight_cutoff, 2);
  EXPECT_EQ(doc.mode, BasisMode::U);
  EXPECT_THROW(io::metric_from_json(json::parse(R"({"family":"F3"})")), Error);
  EXPECT_THROW(io::metric_from_json(json::parse(R"({"family":"Fp"})")), Error);
  try {
    io::metric_from_json(json::parse(R"({"family":"Fq","penalty":{"kind":"step","k":0.5}})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPenalty);
  }
}

TEST(io, matrix_round_trip) {
  Rng rng(2);
  const CMatrix u = pauli_exp(rng.pauli_vector(2, BasisMode::SU));
  const CMatrix back = io::matrix_from_json(through_text(io::matrix_to_json(u)));
  EXPECT_EQ(max_abs(back - u), 0.0);
  EXPECT_THROW(io::matrix_from_json(json::parse(R"({"n":1,"matrix":[[[1,0]],[[0,0]]]})")), Error);
}

TEST(io, curve_round_trip) {
  Rng rng(3);
  const MetricSpec spec = MetricSpec::fq(PenaltyFunction::step(3.0, 1));
  const Curve c = hamiltonian_curve(spec, rng.pauli_vector(2, BasisMode::SU, 2.0), 2.0, 50);
  ASSERT_GT(c.anchors.size(), 1u);
  const Curve back = io::curve_from_json(through_text(io::to_json(c)));
  ASSERT_EQ(back.samples.size(), c.samples.size());
  ASSERT_EQ(back.anchors.size(), c.anchors.size());
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].t, c.samples[i].t);
    EXPECT_EQ(back.samples[i].x.entries, c.samples[i].x.entries);
    EXPECT_EQ(back.samples[i].y.entries, c.samples[i].y.entries);
    EXPECT_EQ(back.samples[i].chart, c.samples[i].chart);
  }
  EXPECT_EQ(curve_length(spec, back), curve_length(spec, c));
}

TEST(io, circuit_phases_and_cvp) {
  const json doc = json::parse(R"({"n":2,"gates":[{"pauli":"ZZ","alpha":0.7,"qubits":[0,1]}]})");
  const Circuit c = io::circuit_from_json(doc);
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(embed_pauli(c.gates[0], 2).str(), "ZZ");
  EXPECT_EQ(io::to_json(c), doc);
  EXPECT_THROW(io::circuit_from_json(json::parse(R"({"n":3,"gates":[{"pauli":"XYZ","alpha":0.1,"qubits":[0,1,2]}]})")),
               Error);

  const DiagonalUnitary u = DiagonalUnitary::and_function(2);
  const DiagonalUnitary back = io::phases_from_json(through_text(io::to_json(u)));
  EXPECT_EQ(back.phases, u.phases);
  EXPECT_THROW(io::phases_from_json(json::parse(R"({"n":2,"theta":[0,1]})")), Error);

  const json r = io::to_json(cvp_minimal_pauli_geodesic(MetricSpec::f1(BasisMode::U), u));
  EXPECT_DOUBLE_EQ(r.at("value").get<double>(), std::numbers::pi);
  EXPECT_TRUE(r.at("certified").get<bool>());
  EXPECT_EQ(r.at("m").size(), 4u);
}
