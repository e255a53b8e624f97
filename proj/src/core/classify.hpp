// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exec.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "polyspec.hpp"

namespace weillab::classify {

using ff::Elem;
using ff::Matrix;
using ff::Poly;
using ff::PolySpec;

// B = f(A_{f'}) has the critical values s_1..s_{d-1} as eigenvalues.
struct CriticalData {
  Matrix B;
  Elem s;               // trace(B)
  Poly charPolyB;       // h(T)
  bool squarefreeDerivative;
  int doubleRootCount;  // deg gcd(f, f')
};

// Requires d >= 2 and p ∤ d.
CriticalData critical_data(const Poly& f);

enum class Reason { Ok, Fails, PrecondCharTooSmall };
std::string to_string(Reason r);

struct SlResult {
  bool holds;
  Reason reason;
  std::optional<Poly> g;  // char poly of the difference matrix over T^{d-1}
};
SlResult sl_hypothesis(const Poly& f);

struct QuasiOddData {
  Elem a, b;
  bool isQuasiOdd;
};
QuasiOddData quasi_odd(const Poly& f);

struct SpResult {
  bool holds;
  bool bIsZero;
  Reason reason;
};
SpResult sp_hypothesis(const Poly& f);  // NotQuasiOdd

// Does some r-term sum (with repetition) of eigenvalues of B vanish?
// MatrixTooLarge when rows^r > kMaxKroneckerSize.
inline constexpr std::uint64_t kMaxKroneckerSize = 4096;
bool kronecker_sum_singular(const Matrix& B, std::uint32_t r);

// HypothesisViolation when f' is not square-free.
bool sum_hypersurface_nonsingular(const Poly& f, std::uint32_t r);

enum class MonodromyClass { SL, GL_p, GL_2, GL_2p, Sp, muP_Sp, Unknown };
enum class Beta { None, Plus1, Pm1Unknown };
enum class Bound { Theorem, SpecialLinear, Symplectic, WeilOnly };
std::string to_string(MonodromyClass c);
std::string to_string(Beta b);
std::string to_string(Bound b);

struct HypothesisFlags {
  bool derivSquarefree = false;
  std::optional<bool> sumHypersurfaceNonsingular;  // unknown: matrix too large
  bool slCriterion = false;
  bool spCriterion = false;
  bool quasiOdd = false;
  bool pGreaterThan2dMinus1 = false;
  bool dDividesQMinus1 = false;
};

struct ClassificationReport {
  std::uint64_t q = 0;
  std::uint32_t d = 0, r = 0;
  HypothesisFlags flags;
  MonodromyClass monodromyClass = MonodromyClass::Unknown;
  Beta beta = Beta::None;
  Bound applicableBound = Bound::WeilOnly;
  std::optional<Elem> s;  // absent for d = 1
  std::optional<Elem> b;  // present when quasi-odd
  // q^r, or the shifted candidates q^r ± q^{r/2+1} (plus first).
  std::vector<mpz_class> main_terms() const;
};

ClassificationReport classify_monodromy(const Poly& f, std::uint32_t r);

struct MultivariateReport {
  std::optional<bool> deligne;
  std::optional<bool> criticalEtale;
  std::optional<bool> distinctValues;
  std::optional<bool> sumNonsingular;
  std::uint64_t criticalPointsFound = 0;
  std::uint64_t expectedCriticalPoints = 0;  // (d-1)^n
  std::uint32_t searchBound = 0;
  bool applicable(std::uint32_t n, std::uint32_t r) const;
};

// Semi-decision: searches F_{q^m}, m <= searchBound. BudgetExceeded.
MultivariateReport multivariate_checks(const PolySpec& f, std::uint32_t r, const ExecConfig& cfg,
                                       std::uint32_t searchBound = 4);

}  // namespace weillab::classify
