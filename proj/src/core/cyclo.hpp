// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpoly.hpp"

namespace weillab::cyclo {

// n-th cyclotomic polynomial, integer coefficients, constant-first.
const QPoly& cyclotomic_poly(std::uint32_t n);
std::uint32_t euler_phi(std::uint32_t n);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

// Element of Q(zeta_n) in the basis 1, zeta_n, ..., zeta_n^{phi(n)-1}.
// Binary operations lift both sides to the lcm of the conductors, so the
// conductor of a result is never smaller than that of its inputs.
class CycloNumber {
 public:
  CycloNumber() : n_(1), c_{} {}
  CycloNumber(long v) : CycloNumber(mpq_class(v)) {}  // NOLINT: implicit on purpose
  explicit CycloNumber(const mpq_class& v, std::uint32_t n = 1);

  static CycloNumber zeta(std::uint32_t n, std::int64_t k = 1);
  // sum_k counts[k] * zeta_n^k for k < n.
  static CycloNumber from_exponent_counts(std::uint32_t n, std::span<const std::int64_t> counts);
  static CycloNumber from_coords(std::uint32_t n, std::vector<mpq_class> coords);

  std::uint32_t conductor() const noexcept { return n_; }
  // Length phi(n); trailing zeros included.
  std::vector<mpq_class> coords() const;

  CycloNumber lift(std::uint32_t N) const;  // InvalidArgument unless n | N
  // The same element expressed over Q(zeta_m), when it lies there (m | n).
  std::optional<CycloNumber> restrict_to(std::uint32_t m) const;

  CycloNumber operator+(const CycloNumber& b) const;
  CycloNumber operator-(const CycloNumber& b) const;
  CycloNumber operator*(const CycloNumber& b) const;
  CycloNumber operator/(const CycloNumber& b) const { return *this * b.inv(); }
  CycloNumber operator-() const;
  CycloNumber& operator+=(const CycloNumber& b) { return *this = *this + b; }
  CycloNumber& operator*=(const CycloNumber& b) { return *this = *this * b; }
  bool operator==(const CycloNumber& b) const;

  CycloNumber inv() const;  // DivisionByZero
  CycloNumber pow(std::int64_t k) const;
  CycloNumber conjugate() const;
  // zeta_n -> zeta_n^a with gcd(a, n) = 1.
  CycloNumber galois(std::int64_t a) const;

  bool is_zero() const noexcept { return c_.empty(); }
  std::optional<mpq_class> as_rational() const;
  mpq_class rational() const;  // NotRational
  std::complex<long double> embed() const;
  std::string str() const;

 private:
  CycloNumber(std::uint32_t n, QPoly reduced) : n_(n), c_(std::move(reduced)) {}
  static CycloNumber reduce(std::uint32_t n, QPoly raw);
  std::uint32_t n_;
  QPoly c_;  // trimmed, degree < phi(n)
};

// Polynomial in T with cyclotomic coefficients, constant-first.
using CycloPoly = std::vector<CycloNumber>;

CycloPoly poly_mul(const CycloPoly& a, const CycloPoly& b);
// Succeeds only when every coefficient is rational.
std::optional<QPoly> to_rational(const CycloPoly& a);

}  // namespace weillab::cyclo
