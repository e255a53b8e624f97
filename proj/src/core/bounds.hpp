// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"
#include "exec.hpp"
#include "polyspec.hpp"

namespace weillab::bounds {

// coeff * q^{halfExp/2}. Comparisons square both sides, so nothing here
// ever touches floating point except approx().
struct ScaledRoot {
  mpz_class coeff;
  std::uint64_t q = 0;
  std::uint64_t halfExp = 0;

  // |x| <= coeff * q^{halfExp/2}
  bool bounds_abs(const mpz_class& x) const;
  mpz_class floor() const;
  double approx() const;
  std::string str() const;  // e.g. "4*3^(3/2)"
};

// sum_{i=0}^r |i-1| binom(R+r-i-1, r-i) binom(R, i) with rank R = (d-1)^n.
mpz_class c_constant(std::uint32_t d, std::uint32_t r, std::uint32_t n = 1);

struct ClassicalBounds {
  ScaledRoot weil;        // (d-1)(q-1) q^{r/2}
  mpz_class serre;        // (d-1)(q-1)/2 * floor(2 q^{r/2})
  mpz_class stohrVoloch;  // upper bound on N_r: floor(D(D+q^r-1)/2), D = max(d, q)
};
ClassicalBounds classical_bounds(std::uint32_t d, std::uint64_t q, std::uint32_t r);

ScaledRoot improved_bound(std::uint32_t d, std::uint64_t q, std::uint32_t r, std::uint32_t n = 1);

mpz_class mpz_pow(std::uint64_t q, std::uint64_t k);

// --- per-polynomial verification ---------------------------------------------

struct CandidateCheck {
  mpz_class mainTerm;
  mpz_class deviation;  // |N_r - mainTerm|
  bool holds = false;   // deviation <= C q^{(nr+1)/2}
};

struct BoundReport {
  std::string f;
  std::string coeffs;  // compact_coeffs(f)
  std::uint64_t q = 0;
  std::uint32_t d = 0, r = 0, n = 1;
  mpz_class N;
  classify::Beta beta = classify::Beta::None;
  std::vector<CandidateCheck> candidates;
  ScaledRoot improved;
  ScaledRoot weil;                        // (d-1)^n (q-1) q^{nr/2}
  std::optional<mpz_class> serre;         // curves only
  std::optional<mpz_class> stohrVoloch;   // curves only
  bool weilHolds = false, serreHolds = true, stohrVolochHolds = true;
  // Weil's inequality is a theorem for curves and for Deligne polynomials.
  bool weilApplies = true;
  classify::Bound applicable = classify::Bound::WeilOnly;
  std::optional<classify::ClassificationReport> classification;
  std::optional<classify::MultivariateReport> multivariate;

  // Some candidate satisfies the improved inequality.
  bool holds_improved() const;
  // The improved inequality is claimed and fails for every candidate.
  bool counterexample() const { return applicable != classify::Bound::WeilOnly && !holds_improved(); }
  // Candidate with the smallest deviation.
  const CandidateCheck& best() const;
};

// CSV-safe coefficient list: constant first, ';'-separated, extension
// coordinates bracketed; multivariate terms as "e1.e2:c".
std::string compact_coeffs(const ff::PolySpec& f);

// Requires p ∤ deg f. BudgetExceeded.
BoundReport verify_bound(const ff::PolySpec& f, std::uint32_t r, const ExecConfig& cfg);

// --- sweeps --------------------------------------------------------------------

enum class Family { AllMonic, Random };

struct SweepGrid {
  std::vector<std::uint64_t> qs;
  std::vector<std::uint32_t> ds;
  std::vector<std::uint32_t> rs;
  std::uint32_t n = 1;
  Family family = Family::AllMonic;
  std::uint32_t samples = 50;  // per (q, d) for Random
  std::uint64_t seed = 1;
  // Only keep f whose sum hypersurface is non-singular (r even, n = 1).
  bool requireSumNonsingular = false;
};

struct SweepItem {
  BoundReport report;
  std::uint64_t orbitSize = 1;  // members of the x -> x + c class represented
};

struct ClassSummary {
  std::string name;
  std::uint64_t items = 0;
  std::uint64_t members = 0;
  double maxNormalizedDeviation = 0;  // |N_r - q^{nr}| / q^{(nr+1)/2}
};

struct SweepReport {
  SweepGrid grid;
  std::vector<SweepItem> items;
  std::vector<ClassSummary> classes;
  std::vector<std::size_t> counterexamples;  // indices into items
  std::vector<std::size_t> weilViolations;
  std::string hash;  // FNV-1a of the canonical grid, hex
};

// Deterministic given the grid; items are ordered by (q, d, r, polynomial).
// Univariate families are reduced to representatives of f(x + c) with the
// x^{d-1} coefficient zero. BudgetExceeded when the total enumeration would
// exceed cfg.budget.
SweepReport sweep(const SweepGrid& grid, const ExecConfig& cfg);

// Canonical form of a univariate monic polynomial under x -> x + c
// (p ∤ d): the shift that kills the x^{d-1} coefficient.
ff::Poly shift_canonical(const ff::Poly& f);

// Prime power q -> (p, e); InvalidArgument otherwise.
std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q);

std::string fnv1a_hex(const std::string& s);

// --- Kummer curves y^{(q-1)/e} = f(x) -----------------------------------------

struct KummerResult {
  std::string f;
  std::uint64_t q = 0;
  std::uint32_t d = 0, e = 0, r = 0;
  mpz_class N;
  mpz_class deviation;          // |N - q^r|
  mpq_class normalizedSquared;  // deviation^2 / q^{r+1}
  double normalized = 0;
};

// DivisibilityViolation unless e | q - 1; BudgetExceeded.
KummerResult kummer_explore(const ff::Poly& f, std::uint32_t e, std::uint32_t r, const ExecConfig& cfg);

struct KummerSweep {
  std::vector<KummerResult> items;
  std::size_t argmax = 0;
  mpq_class maxNormalizedSquared;  // running estimate of s_{d,e,r}^2
  double maxNormalized = 0;
};
// All shift-canonical monic f of degree d over F (estimates only).
KummerSweep kummer_sweep(const ff::FieldPtr& F, std::uint32_t d, std::uint32_t e, std::uint32_t r,
                         const ExecConfig& cfg);

}  // namespace weillab::bounds
