// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "exec.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "polyspec.hpp"
#include "tower.hpp"

namespace weillab::charsum {

using cyclo::CycloNumber;
using cyclo::CycloPoly;

// psi_a(x) = zeta_p^{Tr_{F_q/F_p}(a x)}.
struct AdditiveCharacter {
  ff::FieldPtr field;
  ff::Elem shift;

  static AdditiveCharacter standard(ff::FieldPtr f) { return {f, f->one()}; }
  bool trivial() const { return field->is_zero(shift); }
  // Exponent k with psi(x) = zeta_p^k.
  ff::Coord exponent(const ff::Elem& x) const { return field->abs_trace(field->mul(shift, x)); }
};

CycloNumber psi_eval(const AdditiveCharacter& psi, const ff::FieldElement& x);  // FieldMismatch

// chi(g^k) = zeta_m^{j k} for the canonical generator g.
struct MultiplicativeCharacter {
  ff::FieldPtr field;
  std::shared_ptr<const ff::GeneratorData> gen;
  std::uint32_t order = 1;  // m, divides q - 1
  std::uint32_t exponent = 0;

  static MultiplicativeCharacter make(ff::FieldPtr f, std::uint32_t m, std::uint32_t j);
  static MultiplicativeCharacter quadratic(ff::FieldPtr f) { return make(f, 2, 1); }
  bool trivial() const { return exponent % order == 0; }
  // Exponent k with chi(x) = zeta_m^k; ZeroArgument for x = 0.
  std::uint64_t exponent_of(const ff::Elem& x) const;
  MultiplicativeCharacter conj() const { return {field, gen, order, (order - exponent % order) % order}; }
  // chi(-1) as +-1.
  int sign_at_minus_one() const;
};

CycloNumber chi_eval(const MultiplicativeCharacter& chi, const ff::FieldElement& x);

// g(chi, psi) = -sum_{t != 0} chi(t) psi(t), in Q(zeta_{lcm(p, m)}).
CycloNumber gauss_sum(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi);

// Histogram of Tr_{F_{q^s}/F_q}(f(x)) over x in F_{q^s}^n, indexed by F_q
// element index.
std::vector<std::uint64_t> trace_histogram(const ff::PolySpec& f, std::uint32_t s, const ExecConfig& cfg);

// sum_{x in F_{q^s}^n} psi(Tr(t f(x))), exact in Q(zeta_p).
CycloNumber inner_sum(const ff::PolySpec& f, const ff::Elem& t, std::uint32_t s,
                      const AdditiveCharacter& psi, const ExecConfig& cfg);

enum class CountMethod { CharSum, TraceKernel, Naive };
std::string to_string(CountMethod m);

struct CountResult {
  std::uint64_t N = 0;
  CountMethod method = CountMethod::CharSum;
  std::uint32_t r = 1;
  std::uint32_t n = 1;
};

inline constexpr std::uint64_t kNaiveLimit = 100'000'000ULL;

// Number of (x, y) in F_{q^r}^{n+1} with y^q - y = f(x).
CountResult count_points(const ff::PolySpec& f, std::uint32_t r, CountMethod method,
                         const ExecConfig& cfg, const ff::Elem* psi_shift = nullptr);

// P_t(T) = prod (1 - alpha_i T) with sum alpha_i^j = -inner_sum(f, t, j).
CycloPoly fiber_frobenius_poly(const ff::Poly& f, const ff::Elem& t, const AdditiveCharacter& psi,
                               const ExecConfig& cfg);

struct DetCheck {
  CycloNumber expected;
  CycloNumber actual;
  bool match = false;
};

DetCheck det_frobenius_check(const ff::Poly& f, const ff::Elem& t, const AdditiveCharacter& psi,
                             const ExecConfig& cfg);

}  // namespace weillab::charsum
