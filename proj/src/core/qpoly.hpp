// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace weillab::cyclo {

// Polynomial over Q, constant-first, trimmed (zero = empty).
using QPoly = std::vector<mpq_class>;

void trim(QPoly& a);
int degree(const QPoly& a);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const mpq_class& c);
// DivisionByZero for b = 0.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& a);
QPoly gcd(QPoly a, QPoly b);  // monic
// s*a + t*b = g (monic gcd).
struct ExtGcd {
  QPoly g, s, t;
};
ExtGcd ext_gcd(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& a);
QPoly squarefree_part(const QPoly& a);  // monic, char 0
mpq_class eval(const QPoly& a, const mpq_class& x);
std::complex<long double> eval(const QPoly& a, std::complex<long double> x);
// a(c T)
QPoly rescale(const QPoly& a, const mpq_class& c);
// Power series a^{-1} mod T^n; a(0) must be nonzero.
QPoly series_inverse(const QPoly& a, std::size_t n);
QPoly truncate(QPoly a, std::size_t n);
QPoly pow(const QPoly& a, unsigned k);
std::string to_string(const QPoly& a, const char* var = "T");

}  // namespace weillab::cyclo
