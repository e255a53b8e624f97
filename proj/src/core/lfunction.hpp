// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charsum.hpp"
#include "classify.hpp"
#include "exec.hpp"
#include "qpoly.hpp"

namespace weillab::lfunction {

using cyclo::QPoly;

// S_m = q^{nrm} - q^m A_m, A_m = #{x in F_{q^{rm}}^n : Tr_{q^{rm}/q^m} f(x) = 0}.
// BudgetExceeded when q^{nrm} points exceed the budget.
mpz_class power_sum(const ff::PolySpec& f, std::uint32_t r, std::uint32_t m, const ExecConfig& cfg);

// Largest m <= maxM whose power sum fits the budget and the field limits.
std::uint32_t reachable_depth(const ff::PolySpec& f, std::uint32_t r, std::uint32_t maxM, const ExecConfig& cfg);

// S_1..S_M (values[m-1] = S_m).
std::vector<mpz_class> power_sums(const ff::PolySpec& f, std::uint32_t r, std::uint32_t M, const ExecConfig& cfg);

// exp(sum S_m T^m / m) mod T^{M+1}, M = S.size().
QPoly series_from_power_sums(const std::vector<mpz_class>& S);
QPoly truncated_series(const ff::PolySpec& f, std::uint32_t r, std::uint32_t M, const ExecConfig& cfg);

// num/den, coprime, both with constant term 1.
struct RationalT {
  QPoly num{mpq_class(1)}, den{mpq_class(1)};
  bool is_polynomial() const { return cyclo::degree(den) == 0; }
  bool operator==(const RationalT& o) const { return num == o.num && den == o.den; }
};
RationalT normalize(QPoly num, QPoly den);
QPoly expand(const RationalT& r, std::size_t M);  // coefficients of T^0..T^M

// Minimal-degree num/den (deg <= bounds) agreeing with the series through
// T^M, M = series.size() - 1. InvalidArgument when M < numBound +
// denBound + 2, NoSolution when nothing fits.
RationalT pade_reconstruct(const QPoly& series, int numBound, int denBound);

struct LocalFactor {
  QPoly poly;
  // The closed form assumes d | q-1 at 0, and that the roots of f' lie in
  // F_q at infinity; false means the factor is reported but unverified.
  bool hypothesesHold = true;
};
// prod over nontrivial chi with chi^e = 1, e = gcd(d, r), of (1 - g(chi,psi)^r T).
// HypothesisViolation when e does not divide q-1.
LocalFactor local_factor_zero(std::uint32_t d, std::uint32_t r, const charsum::AdditiveCharacter& psi);
// HypothesisViolation when f' is not square-free.
LocalFactor local_factor_infinity(const ff::Poly& f, std::uint32_t r);

// Reciprocal roots of a (a(0) != 0) by Aberth iteration on the square-free
// part, run on the scaled variable z/scale. RootFindingUnstable when the
// residual check fails.
std::vector<std::complex<long double>> reciprocal_roots(const QPoly& a, long double scale = 1.0L);

struct StrippedFactor {
  int beta;          // factor (1 - beta q^{w/2} T)
  unsigned weight;   // w
  bool pole;
  unsigned multiplicity;
};

struct PurePart {
  RationalT Q;
  LocalFactor P0, Pinf;
  std::vector<StrippedFactor> stripped;
  bool structurePredicted = false;  // classifier guarantees P = P' = 1 up to the delta factor
  std::vector<long double> zeroModuli, poleModuli;
  long double targetModulus = 0;
  bool pure = false;
  mpz_class degreeBound;
  bool withinDegreeBound = false;
};

// NotDivisible when the predicted structure is absent; RootFindingUnstable.
PurePart assemble_pure_part(const RationalT& L, const ff::Poly& f, std::uint32_t r,
                            const classify::ClassificationReport& rep, const charsum::AdditiveCharacter& psi);

struct LFunctionData {
  std::uint32_t r = 1;
  std::uint32_t requestedDepth = 0, depth = 0;
  std::vector<mpz_class> powerSums;
  QPoly series;
  int numBound = 0, denBound = 0;
  std::optional<RationalT> L;
  std::optional<PurePart> pure;
  classify::ClassificationReport classification;
  std::string status;  // complete | partial | noSolution | notDivisible | rootFindingUnstable
  std::string message;
};

std::uint32_t default_depth(std::uint32_t d, std::uint32_t r);

// Full pipeline. depth 0 selects default_depth; the depth actually used
// is capped by the budget (status "partial" when Padé is out of reach).
LFunctionData compute_lfunction(const ff::Poly& f, std::uint32_t r, std::uint32_t depth, const ExecConfig& cfg,
                                const charsum::AdditiveCharacter& psi);

struct FunctionalEquation {
  bool holds = false;
  RationalT Q, Qstar;
};
// Q* for -f against T^s q^{(r+1)s} / c_s * Q(q^{-(r+1)} T^{-1}).
// HypothesisViolation unless the classifier predicts P = P' = 1 for f;
// NoSolution/BudgetExceeded from the pipeline.
FunctionalEquation functional_equation_check(const ff::Poly& f, std::uint32_t r, std::uint32_t depth,
                                             const ExecConfig& cfg);

struct HodgeMultiplicities {
  std::uint32_t d = 0, n = 0;
  std::int64_t nontrivial = 0;  // n_chi for each of the d-1 nontrivial chi
  std::int64_t trivial = 0;     // n_1
  std::int64_t total() const { return static_cast<std::int64_t>(d - 1) * nontrivial + trivial; }
};
// NonIntegerMultiplicity if d does not divide (d-1)^n - (-1)^n.
HodgeMultiplicities hodge_multiplicities(std::uint32_t d, std::uint32_t n);

}  // namespace weillab::lfunction
