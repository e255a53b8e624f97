// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace weillab::ff {

// Univariate polynomial over a Field, constant-first, always trimmed.
class Poly {
 public:
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Elem> coeffs);
  // Integer coefficients (prime subfield), constant-first.
  static Poly from_ints(FieldPtr f, const std::vector<std::int64_t>& coeffs);
  static Poly monomial(FieldPtr f, const Elem& c, std::size_t k);
  static Poly x(FieldPtr f) { return monomial(f, f->one(), 1); }
  static Poly constant(FieldPtr f, const Elem& c) { return monomial(f, c, 0); }

  const FieldPtr& field() const noexcept { return f_; }
  const Field& F() const noexcept { return *f_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  Elem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Elem{}; }
  const Elem& lead() const;  // ZeroPolynomial

  Elem eval(const Elem& x) const noexcept;
  Poly derivative() const;
  Poly monic() const;  // ZeroPolynomial
  Poly scaled(const Elem& c) const;
  Poly compose(const Poly& g) const;  // f(g(x))
  Poly shift(const Elem& c) const;    // f(x + c)

  bool operator==(const Poly& o) const { return f_->same_as(*o.f_) && c_ == o.c_; }
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;

 private:
  void check(const Poly& o) const;
  void trim();
  FieldPtr f_;
  std::vector<Elem> c_;
};

// Quotient and remainder; ZeroPolynomial for b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic (zero when both are zero)
Poly powmod(const Poly& base, u128 k, const Poly& m);
// Product of the distinct irreducible factors (monic).
Poly squarefree_part(const Poly& f);
bool is_squarefree(const Poly& f);
Elem resultant(const Poly& a, const Poly& b);
// Zero exactly when g has a repeated root (or deg g' < deg g - 1 collapses
// the leading term, which cannot happen when p does not divide deg g).
Elem discriminant(const Poly& g);
// Distinct roots lying in the coefficient field, sorted by element index.
std::vector<Elem> roots(const Poly& f);

std::string to_string(const Poly& f, const char* var = "x");

}  // namespace weillab::ff
