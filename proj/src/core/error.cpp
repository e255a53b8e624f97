// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "error.hpp"

namespace weillab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotInBaseImage: return "NotInBaseImage";
    case ErrorCode::TableLimitExceeded: return "TableLimitExceeded";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::TrivialCharacter: return "TrivialCharacter";
    case ErrorCode::DegreeDivisibleByP: return "DegreeDivisibleByP";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::CriticalDataUnavailable: return "CriticalDataUnavailable";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::MatrixTooLarge: return "MatrixTooLarge";
    case ErrorCode::NotQuasiOdd: return "NotQuasiOdd";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::RootFindingUnstable: return "RootFindingUnstable";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace weillab
