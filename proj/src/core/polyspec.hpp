// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "field.hpp"
#include "poly.hpp"

namespace weillab::ff {

struct Term {
  std::vector<std::uint32_t> exps;  // one exponent per variable
  Elem coeff;
};

// f in F_q[x_1..x_n]. Terms are merged, nonzero, and sorted by
// (total degree, exponent vector).
class PolySpec {
 public:
  PolySpec(FieldPtr f, std::uint32_t nvars, std::vector<Term> terms);
  static PolySpec from_poly(const Poly& f);

  const FieldPtr& field() const noexcept { return f_; }
  std::uint32_t nvars() const noexcept { return n_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_univariate() const noexcept { return n_ == 1; }
  bool is_zero() const noexcept { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const noexcept;
  Poly to_poly() const;  // InvalidArgument unless univariate
  PolySpec scaled(const Elem& c) const;
  PolySpec negated() const { return scaled(f_->neg(f_->one())); }
  // Homogeneous top-degree part.
  PolySpec leading_form() const;
  Elem eval(std::span<const Elem> x) const;

  // Throws DegreeDivisibleByP when p | deg f, InvalidArgument for constants.
  void require_artin_schreier() const;
  std::string str() const;

 private:
  FieldPtr f_;
  std::uint32_t n_;
  std::vector<Term> terms_;
};

}  // namespace weillab::ff
