// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weillab {

// Numeric values are part of the C ABI (see weillab.h); append only.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NonPrime = 2,
  EvenCharacteristic = 3,
  Reducible = 4,
  FieldMismatch = 5,
  DivisionByZero = 6,
  NotInBaseImage = 7,
  TableLimitExceeded = 8,
  ZeroPolynomial = 9,
  ZeroArgument = 10,
  TrivialCharacter = 11,
  DegreeDivisibleByP = 12,
  NotRational = 13,
  BudgetExceeded = 14,
  HypothesisViolation = 15,
  CriticalDataUnavailable = 16,
  DegenerateDerivative = 17,
  MatrixTooLarge = 18,
  NotQuasiOdd = 19,
  NoSolution = 20,
  NotDivisible = 21,
  RootFindingUnstable = 22,
  NonIntegerMultiplicity = 23,
  DivisibilityViolation = 24,
  Internal = 25,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace weillab
