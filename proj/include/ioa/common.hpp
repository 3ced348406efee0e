// Copyright 2026 The IOA Solver Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ioa {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
  kDomain,
  kNonMonotone,
  kDiscontinuous,
  kShape,
  kDegenerateDomain,
  kInvalidModel,
  kInvalidArgument,
  kInfeasible,
  kParse,
  kIo,
  kNumerical,
  kResource,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "DomainViolation";
    case ErrorCode::kNonMonotone: return "NonMonotone";
    case ErrorCode::kDiscontinuous: return "Discontinuous";
    case ErrorCode::kShape: return "ShapeViolation";
    case ErrorCode::kDegenerateDomain: return "DegenerateDomain";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kNumerical: return "NumericalError";
    case ErrorCode::kResource: return "ResourceExhausted";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Relative optimality gap with |LB| in the denominator. Negative bounds are
// common for minimisation problems, so the sign of LB is discarded.
inline double relative_gap(double lb, double ub) {
  if (!std::isfinite(lb) || !std::isfinite(ub)) return kInf;
  const double diff = ub - lb;
  if (diff <= 0.0) return 0.0;
  const double denom = std::fabs(lb);
  if (denom == 0.0) return kInf;
  return diff / denom;
}

inline double gap_percent(double lb, double ub) {
  return 100.0 * relative_gap(lb, ub);
}

}  // namespace ioa
