// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qpoly.hpp"

#include <sstream>

#include "error.hpp"

namespace weillab::cyclo {

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly scale(const QPoly& a, const mpq_class& c) {
  QPoly r(a);
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  QPoly r = a;
  trim(r);
  const std::size_t db = b.size() - 1;
  if (r.size() <= db) return {{}, r};
  QPoly q(r.size() - db);
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    mpq_class c = r[k] / b.back();
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

QPoly monic(const QPoly& a) {
  if (a.empty()) return a;
  return scale(a, 1 / a.back());
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

ExtGcd ext_gcd(const QPoly& a0, const QPoly& b0) {
  QPoly r0 = a0, r1 = b0, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {{}, {}, {}};
  mpq_class li = 1 / r0.back();
  return {scale(r0, li), scale(s0, li), scale(t0, li)};
}

QPoly derivative(const QPoly& a) {
  QPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

QPoly squarefree_part(const QPoly& a) {
  QPoly m = monic(a);
  if (degree(m) <= 0) return m;
  return monic(divmod(m, gcd(m, derivative(m))).first);
}

mpq_class eval(const QPoly& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

std::complex<long double> eval(const QPoly& a, std::complex<long double> x) {
  std::complex<long double> acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + static_cast<long double>(a[i].get_d());
  return acc;
}

QPoly rescale(const QPoly& a, const mpq_class& c) {
  QPoly r(a);
  mpq_class pw = 1;
  for (auto& x : r) {
    x *= pw;
    pw *= c;
  }
  trim(r);
  return r;
}

QPoly series_inverse(const QPoly& a, std::size_t n) {
  if (a.empty() || a[0] == 0) fail(ErrorCode::DivisionByZero, "series inverse needs a(0) != 0");
  QPoly r(n);
  if (n == 0) return r;
  const mpq_class inv0 = 1 / a[0];
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    mpq_class s = 0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * r[k - j];
    r[k] = -s * inv0;
  }
  trim(r);
  return r;
}

QPoly truncate(QPoly a, std::size_t n) {
  if (a.size() > n) a.resize(n);
  trim(a);
  return a;
}

QPoly pow(const QPoly& a, unsigned k) {
  QPoly r{1};
  for (unsigned i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::string to_string(const QPoly& a, const char* var) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    mpq_class c = a[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    if (i == 0 || c != 1) {
      if (c == -1 && i > 0)
        os << '-';
      else
        os << c.get_str();
    }
    if (i >= 1) os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace weillab::cyclo
