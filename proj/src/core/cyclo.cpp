// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace weillab::cyclo {

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t r = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

const QPoly& cyclotomic_poly(std::uint32_t n) {
  // Memoised; entries are never erased, so references stay valid.
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<QPoly>> cache;
  {
    std::lock_guard lk(mu);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  if (n == 0) fail(ErrorCode::InvalidArgument, "conductor must be positive");
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  QPoly num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d)
    if (n % d == 0) num = divmod(num, cyclotomic_poly(d)).first;
  std::lock_guard lk(mu);
  auto [it, _] = cache.emplace(n, std::make_unique<QPoly>(std::move(num)));
  return *it->second;
}

CycloNumber CycloNumber::reduce(std::uint32_t n, QPoly raw) {
  trim(raw);
  const QPoly& phi = cyclotomic_poly(n);
  if (raw.size() >= phi.size()) raw = divmod(raw, phi).second;
  return CycloNumber(n, std::move(raw));
}

CycloNumber::CycloNumber(const mpq_class& v, std::uint32_t n) : n_(n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "conductor must be positive");
  if (v != 0) c_.push_back(v);
}

CycloNumber CycloNumber::zeta(std::uint32_t n, std::int64_t k) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "conductor must be positive");
  const std::int64_t sn = n;
  const auto e = static_cast<std::size_t>(((k % sn) + sn) % sn);
  QPoly raw(e + 1);
  raw[e] = 1;
  return reduce(n, std::move(raw));
}

CycloNumber CycloNumber::from_exponent_counts(std::uint32_t n, std::span<const std::int64_t> counts) {
  if (counts.size() > n) fail(ErrorCode::InvalidArgument, "more exponent counts than the conductor");
  QPoly raw(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) raw[k] = static_cast<long>(counts[k]);
  return reduce(n, std::move(raw));
}

CycloNumber CycloNumber::from_coords(std::uint32_t n, std::vector<mpq_class> coords) {
  for (auto& c : coords) c.canonicalize();
  return reduce(n, std::move(coords));
}

std::vector<mpq_class> CycloNumber::coords() const {
  std::vector<mpq_class> out(euler_phi(n_));
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
  return out;
}

CycloNumber CycloNumber::lift(std::uint32_t N) const {
  if (N == 0 || N % n_) fail(ErrorCode::InvalidArgument, "lift target must be a multiple of the conductor");
  if (N == n_) return *this;
  const std::size_t step = N / n_;
  QPoly raw(c_.empty() ? 0 : (c_.size() - 1) * step + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
  return reduce(N, std::move(raw));
}

std::optional<CycloNumber> CycloNumber::restrict_to(std::uint32_t m) const {
  if (m == 0 || n_ % m) fail(ErrorCode::InvalidArgument, "restriction target must divide the conductor");
  if (m == n_) return *this;
  const std::uint32_t pm = euler_phi(m), pn = euler_phi(n_);
  // Columns: images of zeta_m^j in Q(zeta_n). Solve A b = coords exactly.
  std::vector<std::vector<mpq_class>> A(pn, std::vector<mpq_class>(pm + 1));
  for (std::uint32_t j = 0; j < pm; ++j) {
    const auto col = zeta(m, j).lift(n_).coords();
    for (std::uint32_t i = 0; i < pn; ++i) A[i][j] = col[i];
  }
  const auto rhs = coords();
  for (std::uint32_t i = 0; i < pn; ++i) A[i][pm] = rhs[i];
  std::vector<std::uint32_t> pivcol;
  std::uint32_t row = 0;
  for (std::uint32_t c = 0; c < pm && row < pn; ++c) {
    std::uint32_t piv = row;
    while (piv < pn && A[piv][c] == 0) ++piv;
    if (piv == pn) continue;
    std::swap(A[piv], A[row]);
    const mpq_class inv = 1 / A[row][c];
    for (auto& x : A[row]) x *= inv;
    for (std::uint32_t r = 0; r < pn; ++r) {
      if (r == row || A[r][c] == 0) continue;
      const mpq_class u = A[r][c];
      for (std::uint32_t k = c; k <= pm; ++k) A[r][k] -= u * A[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  for (std::uint32_t r = row; r < pn; ++r)
    if (A[r][pm] != 0) return std::nullopt;
  QPoly b(pm);
  for (std::uint32_t r = 0; r < row; ++r) b[pivcol[r]] = A[r][pm];
  return reduce(m, std::move(b));
}

namespace {

std::uint32_t common(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t l = lcm(a, b);
  if (l > 1'000'000) fail(ErrorCode::InvalidArgument, "cyclotomic conductor too large");
  return static_cast<std::uint32_t>(l);
}

}  // namespace

CycloNumber CycloNumber::operator+(const CycloNumber& b) const {
  const std::uint32_t N = common(n_, b.n_);
  const CycloNumber x = lift(N), y = b.lift(N);
  return CycloNumber(N, add(x.c_, y.c_));
}

CycloNumber CycloNumber::operator-(const CycloNumber& b) const {
  const std::uint32_t N = common(n_, b.n_);
  const CycloNumber x = lift(N), y = b.lift(N);
  return CycloNumber(N, sub(x.c_, y.c_));
}

CycloNumber CycloNumber::operator*(const CycloNumber& b) const {
  const std::uint32_t N = common(n_, b.n_);
  const CycloNumber x = lift(N), y = b.lift(N);
  return reduce(N, mul(x.c_, y.c_));
}

CycloNumber CycloNumber::operator-() const { return CycloNumber(n_, scale(c_, -1)); }

bool CycloNumber::operator==(const CycloNumber& b) const {
  if (n_ == b.n_) return c_ == b.c_;
  const std::uint32_t N = common(n_, b.n_);
  return lift(N).c_ == b.lift(N).c_;
}

CycloNumber CycloNumber::inv() const {
  if (c_.empty()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  const ExtGcd e = ext_gcd(c_, cyclotomic_poly(n_));
  // Phi_n is irreducible, so the gcd is 1 and s*a = 1 mod Phi_n.
  return reduce(n_, e.s);
}

CycloNumber CycloNumber::pow(std::int64_t k) const {
  if (k < 0) return inv().pow(-k);
  CycloNumber r(mpq_class(1), n_), b = *this;
  for (; k; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

CycloNumber CycloNumber::galois(std::int64_t a) const {
  const std::int64_t sn = n_;
  const std::int64_t am = ((a % sn) + sn) % sn;
  if (std::gcd(am, sn) != 1) fail(ErrorCode::InvalidArgument, "Galois exponent must be a unit mod n");
  if (c_.empty()) return *this;
  QPoly raw(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) raw[(i * am) % n_] += c_[i];
  return reduce(n_, std::move(raw));
}

CycloNumber CycloNumber::conjugate() const { return galois(-1); }

std::optional<mpq_class> CycloNumber::as_rational() const {
  if (c_.size() > 1) return std::nullopt;
  return c_.empty() ? mpq_class(0) : c_[0];
}

mpq_class CycloNumber::rational() const {
  auto r = as_rational();
  if (!r) fail(ErrorCode::NotRational, "value " + str() + " is not rational");
  return *r;
}

std::complex<long double> CycloNumber::embed() const {
  std::complex<long double> acc = 0;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const long double ang = two_pi * static_cast<long double>(i) / n_;
    acc += static_cast<long double>(c_[i].get_d()) * std::polar(1.0L, ang);
  }
  return acc;
}

std::string CycloNumber::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    if (i == 0) {
      os << c.get_str();
      continue;
    }
    if (c == -1)
      os << '-';
    else if (c != 1)
      os << c.get_str() << '*';
    os << "z" << n_;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

CycloPoly poly_mul(const CycloPoly& a, const CycloPoly& b) {
  if (a.empty() || b.empty()) return {};
  CycloPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return r;
}

std::optional<QPoly> to_rational(const CycloPoly& a) {
  QPoly out;
  for (const auto& c : a) {
    auto v = c.as_rational();
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  trim(out);
  return out;
}

}  // namespace weillab::cyclo
