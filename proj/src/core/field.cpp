// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "field.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace weillab::ff {

namespace {

using FpPoly = std::vector<Coord>;  // constant-first, trimmed

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coord inv_mod(Coord a, Coord p) {
  // p prime and small: Fermat.
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t k = p - 2; k; k >>= 1, b = b * b % p)
    if (k & 1) r = r * b % p;
  return static_cast<Coord>(r);
}

FpPoly mod_poly(FpPoly a, const FpPoly& m, Coord p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Coord li = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * li % p;
    for (std::size_t j = 0; j <= dm; ++j)
      a[shift + j] = static_cast<Coord>((a[shift + j] + (p - c) * m[j]) % p);
    trim(a);
  }
  return a;
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, Coord p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  FpPoly r(t.begin(), t.end());
  return mod_poly(std::move(r), m, p);
}

FpPoly powmod(FpPoly b, std::uint64_t k, const FpPoly& m, Coord p) {
  FpPoly r{1};
  b = mod_poly(std::move(b), m, p);
  for (; k; k >>= 1) {
    if (k & 1) r = mulmod(r, b, m, p);
    b = mulmod(b, b, m, p);
  }
  return r;
}

FpPoly gcd_poly(FpPoly a, FpPoly b, Coord p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = mod_poly(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

FpPoly sub_poly(FpPoly a, const FpPoly& b, Coord p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible_mod_p(const std::vector<Coord>& monic, std::uint32_t p) {
  FpPoly g = monic;
  trim(g);
  if (g.size() < 2) return false;
  const std::size_t e = g.size() - 1;
  if (e == 1) return true;
  const FpPoly x{0, 1};
  // h[i] = x^{p^i} mod g
  std::vector<FpPoly> h(e + 1);
  h[0] = x;
  for (std::size_t i = 1; i <= e; ++i) h[i] = powmod(h[i - 1], p, g, p);
  if (sub_poly(h[e], x, p).size() != 0) return false;
  for (std::uint64_t l : prime_factors(e)) {
    FpPoly d = gcd_poly(g, sub_poly(h[e / l], x, p), p);
    if (d.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Field::Field(Key, std::uint32_t p, std::uint32_t e, std::vector<Coord> modulus)
    : p_(p), n_(e), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
  negmod_.resize(n_);
  for (std::uint32_t i = 0; i < n_; ++i) negmod_[i] = (p_ - modulus_[i]) % p_;

  frob_cols_.resize(n_);
  Elem ui = one();
  const Elem u = gen();
  for (std::uint32_t i = 0; i < n_; ++i) {
    Elem r = one();
    Elem b = ui;
    for (std::uint64_t k = p_; k; k >>= 1) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
    }
    frob_cols_[i] = r;
    ui = mul(ui, u);
  }

  abs_trace_.resize(n_);
  ui = one();
  for (std::uint32_t i = 0; i < n_; ++i) {
    Elem acc{}, cur = ui;
    for (std::uint32_t j = 0; j < n_; ++j) {
      acc = add(acc, cur);
      cur = frobenius(cur);
    }
    abs_trace_[i] = acc.c[0];
    ui = mul(ui, u);
  }
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t e,
                     const std::optional<std::vector<std::int64_t>>& modulus) {
  if (p == 2) fail(ErrorCode::EvenCharacteristic, "characteristic 2 is not supported");
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (p > kMaxCharacteristic)
    fail(ErrorCode::InvalidArgument, "characteristic " + std::to_string(p) + " exceeds 65521");
  if (e == 0 || e > kMaxDegree)
    fail(ErrorCode::InvalidArgument, "extension degree must be in 1..32");
  {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      if (q > (1ULL << 62) / p)
        fail(ErrorCode::InvalidArgument, "field size p^e must stay below 2^62");
      q *= p;
    }
  }

  std::vector<Coord> m;
  if (modulus) {
    const auto& in = *modulus;
    if (in.size() != e + 1)
      fail(ErrorCode::InvalidArgument, "modulus must have degree " + std::to_string(e));
    m.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
      m[i] = static_cast<Coord>(((in[i] % static_cast<std::int64_t>(p)) + p) % p);
    if (m.back() != 1) fail(ErrorCode::InvalidArgument, "modulus must be monic");
    if (!is_irreducible_mod_p(m, p)) fail(ErrorCode::Reducible, "modulus is reducible over F_p");
  } else if (e == 1) {
    m = {0, 1};
  } else {
    m.assign(e + 1, 0);
    m[e] = 1;
    for (;;) {
      if (m[0] != 0 && is_irreducible_mod_p(m, p)) break;
      // next candidate in index order of the lower coefficients
      std::size_t i = 0;
      while (i < e && ++m[i] == p) m[i++] = 0;
      if (i == e) fail(ErrorCode::Internal, "no irreducible polynomial found");
    }
  }
  return std::make_shared<const Field>(Key{}, p, e, std::move(m));
}

Elem Field::from_int(std::int64_t v) const noexcept {
  Elem r{};
  const auto sp = static_cast<std::int64_t>(p_);
  r.c[0] = static_cast<Coord>(((v % sp) + sp) % sp);
  return r;
}

Elem Field::from_coords(std::span<const std::int64_t> coords) const {
  if (coords.size() > n_)
    fail(ErrorCode::InvalidArgument, "coordinate vector longer than the extension degree " +
                                         std::to_string(n_));
  Elem r{};
  const auto sp = static_cast<std::int64_t>(p_);
  for (std::size_t i = 0; i < coords.size(); ++i)
    r.c[i] = static_cast<Coord>(((coords[i] % sp) + sp) % sp);
  return r;
}

Elem Field::gen() const noexcept {
  Elem r{};
  if (n_ == 1) {
    r.c[0] = negmod_[0];  // root of x + m0
  } else {
    r.c[1] = 1;
  }
  return r;
}

std::uint64_t Field::index(const Elem& a) const noexcept {
  std::uint64_t idx = 0;
  for (std::uint32_t i = n_; i-- > 0;) idx = idx * p_ + a.c[i];
  return idx;
}

Elem Field::from_index(std::uint64_t idx) const noexcept {
  Elem r{};
  for (std::uint32_t i = 0; i < n_; ++i) {
    r.c[i] = static_cast<Coord>(idx % p_);
    idx /= p_;
  }
  return r;
}

bool Field::is_prime_subfield(const Elem& a) const noexcept {
  for (std::uint32_t i = 1; i < n_; ++i)
    if (a.c[i]) return false;
  return true;
}

Elem Field::add(const Elem& a, const Elem& b) const noexcept {
  Elem r;
  for (std::uint32_t i = 0; i < n_; ++i) {
    Coord s = a.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

Elem Field::sub(const Elem& a, const Elem& b) const noexcept {
  Elem r;
  for (std::uint32_t i = 0; i < n_; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i];
  return r;
}

Elem Field::neg(const Elem& a) const noexcept {
  Elem r;
  for (std::uint32_t i = 0; i < n_; ++i) r.c[i] = a.c[i] ? p_ - a.c[i] : 0;
  return r;
}

Elem Field::scale(const Elem& a, Coord k) const noexcept {
  Elem r;
  k %= p_;
  for (std::uint32_t i = 0; i < n_; ++i)
    r.c[i] = static_cast<Coord>(std::uint64_t{a.c[i]} * k % p_);
  return r;
}

Elem Field::mul(const Elem& a, const Elem& b) const noexcept {
  Elem r;
  if (n_ == 1) {
    r.c[0] = static_cast<Coord>(std::uint64_t{a.c[0]} * b.c[0] % p_);
    return r;
  }
  // Products are < 2^32; at most 2n of them accumulate per slot before the
  // reduction below folds in another < 2^32 per step, so u64 never overflows.
  std::uint64_t t[2 * kMaxDegree - 1] = {};
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint64_t ai = a.c[i];
    if (!ai) continue;
    for (std::uint32_t j = 0; j < n_; ++j) t[i + j] += ai * b.c[j];
  }
  for (std::uint32_t k = 2 * n_ - 2; k >= n_; --k) {
    const std::uint64_t c = t[k] % p_;
    if (!c) continue;
    const std::uint32_t base = k - n_;
    for (std::uint32_t j = 0; j < n_; ++j) t[base + j] += c * negmod_[j];
  }
  for (std::uint32_t i = 0; i < n_; ++i) r.c[i] = static_cast<Coord>(t[i] % p_);
  return r;
}

Elem Field::pow(const Elem& a, u128 k) const noexcept {
  Elem r = one(), b = a;
  for (; k; k >>= 1) {
    if (k & 1) r = mul(r, b);
    if (k > 1) b = mul(b, b);
  }
  return r;
}

Elem Field::inv(const Elem& a) const {
  if (is_zero(a)) fail(ErrorCode::DivisionByZero, "inverse of zero");
  return pow(a, static_cast<u128>(q_ - 2));
}

Elem Field::frobenius(const Elem& a) const noexcept {
  if (n_ == 1) return a;
  std::uint64_t t[kMaxDegree] = {};
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint64_t ai = a.c[i];
    if (!ai) continue;
    for (std::uint32_t j = 0; j < n_; ++j) t[j] += ai * frob_cols_[i].c[j];
  }
  Elem r;
  for (std::uint32_t j = 0; j < n_; ++j) r.c[j] = static_cast<Coord>(t[j] % p_);
  return r;
}

Elem Field::frobenius(const Elem& a, std::uint32_t k) const noexcept {
  Elem r = a;
  for (std::uint32_t i = 0; i < k % n_; ++i) r = frobenius(r);
  return r;
}

Coord Field::abs_trace(const Elem& a) const noexcept {
  std::uint64_t s = 0;
  for (std::uint32_t i = 0; i < n_; ++i) s += std::uint64_t{a.c[i]} * abs_trace_[i];
  return static_cast<Coord>(s % p_);
}

std::string Field::str(const Elem& a) const {
  if (n_ == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << '[';
  for (std::uint32_t i = 0; i < n_; ++i) os << (i ? "," : "") << a.c[i];
  os << ']';
  return os.str();
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << " = F_" << p_;
  if (n_ > 1) {
    os << "[u]/(";
    bool first = true;
    for (std::uint32_t i = n_ + 1; i-- > 0;) {
      if (!modulus_[i]) continue;
      if (!first) os << " + ";
      first = false;
      if (modulus_[i] != 1 || i == 0) os << modulus_[i];
      if (i >= 1) os << "u";
      if (i > 1) os << '^' << i;
    }
    os << ')';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<Coord> FieldElement::coords() const {
  return {v_.c.begin(), v_.c.begin() + f_->degree()};
}

void FieldElement::check(const FieldElement& b) const {
  if (!f_->same_as(*b.f_))
    fail(ErrorCode::FieldMismatch, f_->describe() + " vs " + b.f_->describe());
}

FieldElement FieldElement::operator+(const FieldElement& b) const {
  check(b);
  return {f_, f_->add(v_, b.v_)};
}
FieldElement FieldElement::operator-(const FieldElement& b) const {
  check(b);
  return {f_, f_->sub(v_, b.v_)};
}
FieldElement FieldElement::operator*(const FieldElement& b) const {
  check(b);
  return {f_, f_->mul(v_, b.v_)};
}
FieldElement FieldElement::operator/(const FieldElement& b) const {
  check(b);
  return {f_, f_->div(v_, b.v_)};
}
bool FieldElement::operator==(const FieldElement& b) const {
  return f_->same_as(*b.f_) && v_ == b.v_;
}

// ---------------------------------------------------------------------------

Elem find_generator(const Field& f) {
  const std::uint64_t order = f.size() - 1;
  const auto primes = prime_factors(order);
  for (std::uint64_t idx = 1; idx < f.size(); ++idx) {
    const Elem g = f.from_index(idx);
    bool ok = true;
    for (std::uint64_t l : primes)
      if (f.is_one(f.pow(g, order / l))) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  fail(ErrorCode::Internal, "no generator found");
}

GeneratorData mult_generator(const Field& f, std::uint64_t table_limit) {
  GeneratorData out;
  out.order = f.size() - 1;
  if (f.size() > table_limit)
    fail(ErrorCode::TableLimitExceeded,
         "discrete-log table for q = " + std::to_string(f.size()) + " exceeds " +
             std::to_string(table_limit) + " entries");
  out.generator = find_generator(f);
  out.dlog.assign(f.size(), 0);
  Elem x = f.one();
  for (std::uint64_t k = 0; k < out.order; ++k) {
    out.dlog[f.index(x)] = static_cast<std::uint32_t>(k);
    x = f.mul(x, out.generator);
  }
  return out;
}

std::uint32_t GeneratorData::log(const Field& f, const Elem& a) const {
  if (f.is_zero(a)) fail(ErrorCode::ZeroArgument, "discrete log of zero");
  return dlog[f.index(a)];
}

}  // namespace weillab::ff
