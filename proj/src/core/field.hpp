// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weillab::ff {

inline constexpr std::size_t kMaxDegree = 32;
inline constexpr std::uint32_t kMaxCharacteristic = 65521;

using Coord = std::uint32_t;
using u128 = unsigned __int128;

// Raw coordinates over F_p in the basis 1, u, ..., u^{e-1}. Meaningful only
// together with the Field that produced it; Field methods do no ownership
// checks, FieldElement does.
struct Elem {
  std::array<Coord, kMaxDegree> c{};
  bool operator==(const Elem&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_q = F_p[u]/(m(u)). Immutable after construction.
class Field {
  struct Key {};

 public:
  Field(Key, std::uint32_t p, std::uint32_t e, std::vector<Coord> modulus);

  // Validates p, e and the modulus (or searches for the lexicographically
  // first monic irreducible when none is given).
  static FieldPtr make(std::uint32_t p, std::uint32_t e,
                       const std::optional<std::vector<std::int64_t>>& modulus = std::nullopt);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return q_; }
  // Monic, constant-first, length degree()+1.
  const std::vector<Coord>& modulus() const noexcept { return modulus_; }
  bool same_as(const Field& o) const noexcept {
    return this == &o || (p_ == o.p_ && modulus_ == o.modulus_);
  }

  Elem zero() const noexcept { return Elem{}; }
  Elem one() const noexcept { return from_int(1); }
  Elem from_int(std::int64_t v) const noexcept;
  Elem from_coords(std::span<const std::int64_t> coords) const;
  // The class of u (the root of the modulus).
  Elem gen() const noexcept;

  // Enumeration order: index = sum c_i p^i.
  std::uint64_t index(const Elem& a) const noexcept;
  Elem from_index(std::uint64_t idx) const noexcept;

  bool is_zero(const Elem& a) const noexcept { return a == Elem{}; }
  bool is_one(const Elem& a) const noexcept { return a == one(); }
  // True when a lies in the prime subfield.
  bool is_prime_subfield(const Elem& a) const noexcept;

  Elem add(const Elem& a, const Elem& b) const noexcept;
  Elem sub(const Elem& a, const Elem& b) const noexcept;
  Elem neg(const Elem& a) const noexcept;
  Elem scale(const Elem& a, Coord k) const noexcept;
  Elem mul(const Elem& a, const Elem& b) const noexcept;
  Elem sqr(const Elem& a) const noexcept { return mul(a, a); }
  Elem pow(const Elem& a, u128 k) const noexcept;
  Elem inv(const Elem& a) const;  // DivisionByZero
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem frobenius(const Elem& a) const noexcept;  // a^p, via a precomputed matrix
  Elem frobenius(const Elem& a, std::uint32_t k) const noexcept;  // a^{p^k}

  // Tr_{F_q/F_p}(a), linear in the coordinates.
  Coord abs_trace(const Elem& a) const noexcept;
  const std::vector<Coord>& abs_trace_form() const noexcept { return abs_trace_; }

  std::string str(const Elem& a) const;
  std::string describe() const;

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t q_;
  std::vector<Coord> modulus_;
  std::vector<Coord> negmod_;         // p - m_i (mod p), i < n
  std::vector<Elem> frob_cols_;       // (u^i)^p
  std::vector<Coord> abs_trace_;      // Tr(u^i)
};

bool is_prime(std::uint64_t n) noexcept;
// Distinct prime divisors, ascending (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
// Irreducibility of a monic polynomial over F_p (Rabin's test).
bool is_irreducible_mod_p(const std::vector<Coord>& monic, std::uint32_t p);

// Checked element: carries its field and rejects cross-field arithmetic.
class FieldElement {
 public:
  FieldElement(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {}

  const FieldPtr& field() const noexcept { return f_; }
  const Elem& raw() const noexcept { return v_; }
  std::vector<Coord> coords() const;
  std::uint64_t index() const noexcept { return f_->index(v_); }
  bool is_zero() const noexcept { return f_->is_zero(v_); }

  FieldElement operator+(const FieldElement& b) const;
  FieldElement operator-(const FieldElement& b) const;
  FieldElement operator*(const FieldElement& b) const;
  FieldElement operator/(const FieldElement& b) const;
  FieldElement operator-() const { return {f_, f_->neg(v_)}; }
  FieldElement inv() const { return {f_, f_->inv(v_)}; }
  FieldElement pow(u128 k) const { return {f_, f_->pow(v_, k)}; }
  FieldElement frobenius() const { return {f_, f_->frobenius(v_)}; }
  bool operator==(const FieldElement& b) const;
  std::string str() const { return f_->str(v_); }

 private:
  void check(const FieldElement& b) const;
  FieldPtr f_;
  Elem v_;
};

// Multiplicative generator and a dense discrete-log table.
struct GeneratorData {
  Elem generator;
  std::uint64_t order = 0;            // q - 1
  std::vector<std::uint32_t> dlog;    // by element index; entry 0 unused
  std::uint32_t log(const Field& f, const Elem& a) const;  // ZeroArgument
};

inline constexpr std::uint64_t kDlogTableLimit = 1ULL << 20;

// Smallest-index element of order q-1.
Elem find_generator(const Field& f);
GeneratorData mult_generator(const Field& f, std::uint64_t table_limit = kDlogTableLimit);

}  // namespace weillab::ff
