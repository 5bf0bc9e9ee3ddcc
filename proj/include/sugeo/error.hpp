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

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sugeo {

/// Domain error kinds. The CLI reports `name()` verbatim.
enum class ErrorCode {
  DimensionMismatch,
  DimensionLimit,
  InvalidPauli,
  NonTracelessInSUMode,
  NotCommuting,
  NotIndependent,
  DeltaTooLarge,
  NotSmoothMetric,
  ZeroVector,
  InvalidPenalty,
  ResonantSpectrum,
  BranchCut,
  OutsidePatch,
  SingularHessian,
  StepLimitExceeded,
  UnsupportedCoefficient,
  InconsistentPenalties,
  WindowTooSmall,
  UnsupportedSpec,
  NotGBounding,
  InvalidArgument,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionLimit: return "DimensionLimit";
    case ErrorCode::InvalidPauli: return "InvalidPauli";
    case ErrorCode::NonTracelessInSUMode: return "NonTracelessInSUMode";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::NotSmoothMetric: return "NotSmoothMetric";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidPenalty: return "InvalidPenalty";
    case ErrorCode::ResonantSpectrum: return "ResonantSpectrum";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::OutsidePatch: return "OutsidePatch";
    case ErrorCode::SingularHessian: return "SingularHessian";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::UnsupportedCoefficient: return "UnsupportedCoefficient";
    case ErrorCode::InconsistentPenalties: return "InconsistentPenalties";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::NotGBounding: return "NotGBounding";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

/// Largest qubit count accepted by the dense routines. SUGEO_N_CAP overrides.
inline constexpr int kHardQubitCap = 4;

inline int qubit_cap() {
  if (const char* env = std::getenv("SUGEO_N_CAP")) {
    int v = std::atoi(env);
    if (v >= 1 && v <= kHardQubitCap) return v;
  }
  return kHardQubitCap;
}

inline void check_qubits(int n) {
  require(n >= 1, ErrorCode::DimensionMismatch, "qubit count must be positive");
  require(n <= qubit_cap(), ErrorCode::DimensionLimit,
          "n = " + std::to_string(n) + " exceeds cap " + std::to_string(qubit_cap()));
}

}  // namespace sugeo
