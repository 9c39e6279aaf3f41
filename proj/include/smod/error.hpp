// Copyright 2026 The smod Authors
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

#ifndef SMOD_ERROR_HPP_
#define SMOD_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace smod {

enum class ErrorKind {
  // numerical substrate
  NonSquare,
  NonHermitian,
  NotPSD,
  DimensionMismatch,
  // algebra / modules
  AlgebraMismatch,
  InnerProductEscapesAlgebra,
  NotAdjointable,
  // constructions
  NonHermitianKernel,
  MultiBlockUnsupported,
  SizeCapExceeded,
  NotAlphaCp,
  NotAlphaCpd,
  NotTauMap,
  U2NotIdentity,
  AlphaNotIdentity,
  IllDefinedQuotientMap,
  // input handling
  ParseError,
  SchemaError,
  ShapeError,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

// Input errors are problems with the files or arguments handed to the tool;
// everything else reports a mathematical property of a well-formed instance.
constexpr bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::ShapeError:
    case ErrorKind::IoError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::SizeCapExceeded:
    case ErrorKind::NonSquare:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::AlgebraMismatch:
    case ErrorKind::MultiBlockUnsupported:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Numeric payload: the offending eigenvalue, residual or mass.
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace smod

#endif  // SMOD_ERROR_HPP_
