// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "field.hpp"

namespace weillab::ff {

// F_p-linear map between coordinate spaces, rows x cols over F_p.
struct LinearMap {
  std::uint32_t p = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<Coord> a;  // row-major

  Coord at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  Elem apply(const Elem& x) const noexcept;
};

// F_q = base ⊂ top = F_{q^s}, both realised over F_p. The embedding sends
// the base generator u to theta, the smallest-index root of the base
// modulus in top.
class Tower {
 public:
  Tower(FieldPtr base, FieldPtr top);
  // Top is the default model of F_{p^{e s}}.
  static Tower over(const FieldPtr& base, std::uint32_t s);

  const FieldPtr& base() const noexcept { return base_; }
  const FieldPtr& top() const noexcept { return top_; }
  std::uint32_t relative_degree() const noexcept { return s_; }
  const Elem& theta() const noexcept { return theta_; }

  Elem embed(const Elem& a) const noexcept;
  FieldElement embed(const FieldElement& a) const;  // FieldMismatch
  // Inverse of embed on its image.
  std::optional<Elem> pull_back(const Elem& a) const;

  Elem frob_q(const Elem& a) const noexcept { return top_->frobenius(a, base_->degree()); }
  // a + a^q + ... + a^{q^{s-1}}, in base coordinates.
  Elem trace(const Elem& a) const;  // NotInBaseImage on internal failure
  FieldElement trace(const FieldElement& a) const;  // FieldMismatch
  // Tr_{top/base} as a matrix from top coordinates to base coordinates.
  const LinearMap& trace_map() const noexcept { return trace_map_; }

 private:
  FieldPtr base_, top_;
  std::uint32_t s_;
  Elem theta_;
  std::vector<Elem> theta_pows_;      // theta^i, i < e
  std::vector<std::size_t> pivots_;   // top coordinates determining a base element
  std::vector<Coord> pivot_inv_;      // e x e inverse over F_p
  LinearMap trace_map_;
};

}  // namespace weillab::ff
