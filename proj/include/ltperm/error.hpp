// Copyright 2026 The ltperm Authors.
//
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace ltperm {

enum class ErrorKind {
  NonPrimeP,
  ReducibleModulus,
  DegreeMismatch,
  FieldTooLarge,
  ZeroInverse,
  LevelMismatch,
  OutOfRange,
  NonDivisorM,
  NotInSubfield,
  NotAPermutation,
  NotBijective,
  NotLinear,
  DuplicateAbscissa,
  ZeroGamma,
  IncompatibleCerts,
  AlphaIsPower,
  BadS,
  UnverifiedCert,
  LNotPermutation,
  NotChar2,
  ZeroB,
  DependentGammas,
  UnverifiedSystem,
  PreconditionViolated,
  KernelImageOverlap,
  NotKernelBasis,
  HNotPermutation,
  EvenCharacteristic,
  GammaTraceNonzero,
  BadT,
  HypothesisViolated,
  BadDomainSize,
  SpectrumMissing,
  ParseError,
  CapExceeded,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPrimeP: return "NonPrimeP";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonDivisorM: return "NonDivisorM";
    case ErrorKind::NotInSubfield: return "NotInSubfield";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorKind::ZeroGamma: return "ZeroGamma";
    case ErrorKind::IncompatibleCerts: return "IncompatibleCerts";
    case ErrorKind::AlphaIsPower: return "AlphaIsPower";
    case ErrorKind::BadS: return "BadS";
    case ErrorKind::UnverifiedCert: return "UnverifiedCert";
    case ErrorKind::LNotPermutation: return "LNotPermutation";
    case ErrorKind::NotChar2: return "NotChar2";
    case ErrorKind::ZeroB: return "ZeroB";
    case ErrorKind::DependentGammas: return "DependentGammas";
    case ErrorKind::UnverifiedSystem: return "UnverifiedSystem";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::KernelImageOverlap: return "KernelImageOverlap";
    case ErrorKind::NotKernelBasis: return "NotKernelBasis";
    case ErrorKind::HNotPermutation: return "HNotPermutation";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::GammaTraceNonzero: return "GammaTraceNonzero";
    case ErrorKind::BadT: return "BadT";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::BadDomainSize: return "BadDomainSize";
    case ErrorKind::SpectrumMissing: return "SpectrumMissing";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is stable and machine-readable;
/// `what()` carries a human-readable detail prefixed by the kind name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace ltperm
