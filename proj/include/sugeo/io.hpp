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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sugeo/bounds.hpp"
#include "sugeo/geodesic.hpp"
#include "sugeo/lattice.hpp"
#include "sugeo/metric.hpp"
#include "sugeo/pauli.hpp"

namespace sugeo::io {

using nlohmann::json;

namespace detail {

template <class T>
T field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace detail

// PauliVector: {"n", "mode", "entries": [{"pauli", "value"}]}; omitted strings are zero.

inline json to_json(const PauliVector& v) {
  json entries = json::array();
  for (int i = 0; i < v.dimension(); ++i)
    if (v.entries[i] != 0.0) entries.push_back({{"pauli", v.label(i).str()}, {"value", v.entries[i]}});
  return {{"n", v.n}, {"mode", mode_name(v.mode)}, {"entries", entries}};
}

inline PauliVector pauli_vector_from_json(const json& j) {
  const int n = detail::field<int>(j, "n");
  check_qubits(n);
  PauliVector v(n, parse_mode(detail::field_or<std::string>(j, "mode", "SU")));
  for (const json& e : detail::field<json>(j, "entries")) {
    const PauliString s(detail::field<std::string>(e, "pauli"));
    require(s.size() == n, ErrorCode::DimensionMismatch, "Pauli string '" + s.str() + "' has wrong length");
    require(v.mode == BasisMode::U || !s.is_identity(), ErrorCode::NonTracelessInSUMode,
            "identity coefficient in SU mode");
    v[s] = detail::field<double>(e, "value");
  }
  return v;
}

// MetricSpec: {"family", "penalty": {"kind": "step", "k", "cutoff"} | {"kind": "table", "values"}, "delta", "mode"}.

inline json to_json(const PenaltyFunction& p) {
  if (p.kind == PenaltyFunction::Kind::Table) return {{"kind", "table"}, {"values", p.table}};
  return {{"kind", "step"}, {"k", p.k}, {"cutoff", p.low_weight_cutoff}};
}

inline PenaltyFunction penalty_from_json(const json& j) {
  const std::string kind = detail::field<std::string>(j, "kind");
  if (kind == "step")
    return PenaltyFunction::step(detail::field<double>(j, "k"), detail::field_or<int>(j, "cutoff", 2));
  if (kind == "table") return PenaltyFunction::from_table(detail::field<std::vector<double>>(j, "values"));
  fail(ErrorCode::InvalidPenalty, "unknown penalty kind '" + kind + "'");
}

inline json to_json(const MetricSpec& s) {
  json j{{"family", family_name(s.family)}, {"mode", mode_name(s.mode)}};
  if (s.uses_penalty()) j["penalty"] = to_json(s.penalty);
  if (s.is_smoothed()) j["delta"] = s.delta;
  return j;
}

inline MetricSpec metric_from_json(const json& j) {
  MetricSpec s;
  s.family = parse_family(detail::field<std::string>(j, "family"));
  s.mode = parse_mode(detail::field_or<std::string>(j, "mode", "SU"));
  if (s.uses_penalty()) {
    require(j.contains("penalty"), ErrorCode::InvalidPenalty, "family needs a penalty");
    s.penalty = penalty_from_json(j.at("penalty"));
  }
  if (s.is_smoothed()) {
    s.delta = detail::field<double>(j, "delta");
    require(s.delta > 0.0, ErrorCode::InvalidArgument, "delta must be positive");
  }
  return s;
}

// Unitary (or any square complex matrix): {"n", "matrix": [[[re, im], ...], ...]} row-major.

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return {{"n", qubits_for_dim(m.rows())}, {"matrix", rows}};
}

inline CMatrix matrix_from_json(const json& j) {
  const int n = detail::field<int>(j, "n");
  check_qubits(n);
  const auto rows = detail::field<std::vector<std::vector<std::vector<double>>>>(j, "matrix");
  const int dim = 1 << n;
  require(int(rows.size()) == dim, ErrorCode::DimensionMismatch, "matrix row count does not match n");
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    require(int(rows[r].size()) == dim, ErrorCode::DimensionMismatch, "matrix column count does not match n");
    for (int c = 0; c < dim; ++c) {
      require(rows[r][c].size() == 2, ErrorCode::InvalidArgument, "matrix entries are [re, im] pairs");
      m(r, c) = cplx(rows[r][c][0], rows[r][c][1]);
    }
  }
  return m;
}

// Curve: {"metric", "n", "samples": [{"t", "x", "y", "speed", "chart"}], "anchors"}; x and y are
// coefficient arrays in basis order.

inline json to_json(const Curve& c) {
  const int n = c.samples.empty() ? 1 : c.samples.front().x.n;
  json samples = json::array();
  for (const CurveSample& s : c.samples)
    samples.push_back({{"t", s.t},
                       {"x", std::vector<double>(s.x.entries.begin(), s.x.entries.end())},
                       {"y", std::vector<double>(s.y.entries.begin(), s.y.entries.end())},
                       {"speed", s.speed},
                       {"chart", s.chart}});
  json anchors = json::array();
  for (const CMatrix& a : c.anchors) anchors.push_back(matrix_to_json(a));
  return {{"metric", to_json(c.metric)}, {"n", n}, {"samples", samples}, {"anchors", anchors}};
}

inline Curve curve_from_json(const json& j) {
  Curve c;
  c.metric = metric_from_json(detail::field<json>(j, "metric"));
  const int n = detail::field<int>(j, "n");
  check_qubits(n);
  auto coords = [&](const json& s, const char* key) {
    const auto v = detail::field<std::vector<double>>(s, key);
    require(int(v.size()) == basis_dimension(n, c.metric.mode), ErrorCode::DimensionMismatch,
            std::string("sample '") + key + "' has wrong length");
    return PauliVector(n, c.metric.mode, Eigen::Map<const RVector>(v.data(), Eigen::Index(v.size())));
  };
  for (const json& a : detail::field_or<json>(j, "anchors", json::array())) c.anchors.push_back(matrix_from_json(a));
  if (c.anchors.empty()) c.anchors.push_back(CMatrix::Identity(1 << n, 1 << n));
  for (const json& s : detail::field<json>(j, "samples")) {
    CurveSample cs{detail::field<double>(s, "t"), coords(s, "x"), coords(s, "y"),
                   detail::field_or<double>(s, "speed", 0.0), detail::field_or<int>(s, "chart", 0)};
    require(cs.chart >= 0 && cs.chart < int(c.anchors.size()), ErrorCode::InvalidArgument,
            "sample chart has no anchor");
    c.samples.push_back(std::move(cs));
  }
  return c;
}

// Circuit: {"n", "gates": [{"pauli", "alpha", "qubits"}]}.

inline json to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) gates.push_back({{"pauli", g.pauli.str()}, {"alpha", g.alpha}, {"qubits", g.qubits}});
  return {{"n", c.n}, {"gates", gates}};
}

inline Circuit circuit_from_json(const json& j) {
  Circuit c{detail::field<int>(j, "n"), {}};
  check_qubits(c.n);
  for (const json& g : detail::field<json>(j, "gates")) {
    Gate gate{PauliString(detail::field<std::string>(g, "pauli")), detail::field<double>(g, "alpha"),
              detail::field<std::vector<int>>(g, "qubits")};
    check_gate(gate, c.n);
    c.gates.push_back(std::move(gate));
  }
  return c;
}

// Diagonal phases: {"n", "theta"}.

inline json to_json(const DiagonalUnitary& u) {
  return {{"n", u.n}, {"theta", std::vector<double>(u.phases.begin(), u.phases.end())}};
}

inline DiagonalUnitary phases_from_json(const json& j) {
  const int n = detail::field<int>(j, "n");
  check_qubits(n);
  const auto theta = detail::field<std::vector<double>>(j, "theta");
  require(theta.size() == (std::size_t(1) << n), ErrorCode::DimensionMismatch, "theta needs 2^n phases");
  return DiagonalUnitary(n, Eigen::Map<const RVector>(theta.data(), Eigen::Index(theta.size())));
}

inline json to_json(const CvpResult& r) {
  return {{"value", r.value},
          {"m", r.minimizer},
          {"certified", r.certified},
          {"certificate", certificate_name(r.certificate)},
          {"window", r.window},
          {"nodes", r.nodes},
          {"coefficients", to_json(r.coefficients)}};
}

/// Reads a whole file as JSON; unreadable or malformed files are InvalidArgument.
inline json read_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace sugeo::io
