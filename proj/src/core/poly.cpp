// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "poly.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace weillab::ff {

Poly::Poly(FieldPtr f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  trim();
}

Poly Poly::from_ints(FieldPtr f, const std::vector<std::int64_t>& coeffs) {
  std::vector<Elem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(f->from_int(v));
  return Poly(std::move(f), std::move(c));
}

Poly Poly::monomial(FieldPtr f, const Elem& c, std::size_t k) {
  std::vector<Elem> v(k + 1);
  v[k] = c;
  return Poly(std::move(f), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && f_->is_zero(c_.back())) c_.pop_back();
}

void Poly::check(const Poly& o) const {
  if (!f_->same_as(*o.f_))
    fail(ErrorCode::FieldMismatch, "polynomials over different fields");
}

const Elem& Poly::lead() const {
  if (c_.empty()) fail(ErrorCode::ZeroPolynomial, "leading coefficient of the zero polynomial");
  return c_.back();
}

Elem Poly::eval(const Elem& x) const noexcept {
  Elem acc{};
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Elem> d;
  for (std::size_t i = 1; i < c_.size(); ++i)
    d.push_back(f_->scale(c_[i], static_cast<Coord>(i % f_->p())));
  return Poly(f_, std::move(d));
}

Poly Poly::monic() const { return scaled(f_->inv(lead())); }

Poly Poly::scaled(const Elem& c) const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_->mul(c_[i], c);
  return Poly(f_, std::move(v));
}

Poly Poly::compose(const Poly& g) const {
  check(g);
  Poly acc(f_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(f_, c_[i]);
  return acc;
}

Poly Poly::shift(const Elem& c) const {
  return compose(Poly(f_, {c, f_->one()}));
}

Poly Poly::operator+(const Poly& o) const {
  check(o);
  std::vector<Elem> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_->add(coeff(i), o.coeff(i));
  return Poly(f_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const {
  check(o);
  std::vector<Elem> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_->sub(coeff(i), o.coeff(i));
  return Poly(f_, std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_->neg(c_[i]);
  return Poly(f_, std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
  check(o);
  if (c_.empty() || o.c_.empty()) return Poly(f_);
  std::vector<Elem> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (f_->is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      v[i + j] = f_->add(v[i + j], f_->mul(c_[i], o.c_[j]));
  }
  return Poly(f_, std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  if (!a.F().same_as(b.F())) fail(ErrorCode::FieldMismatch, "polynomials over different fields");
  const Field& F = a.F();
  std::vector<Elem> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (r.size() <= db) return {Poly(a.field()), a};
  std::vector<Elem> quo(r.size() - db);
  const Elem li = F.inv(bc.back());
  for (std::size_t k = r.size(); k-- > db;) {
    const Elem c = F.mul(r[k], li);
    quo[k - db] = c;
    if (F.is_zero(c)) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = F.sub(r[k - db + j], F.mul(c, bc[j]));
  }
  r.resize(db);
  return {Poly(a.field(), std::move(quo)), Poly(a.field(), std::move(r))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly powmod(const Poly& base, u128 k, const Poly& m) {
  Poly r = divmod(Poly::constant(base.field(), base.F().one()), m).second;
  Poly b = divmod(base, m).second;
  for (; k; k >>= 1) {
    if (k & 1) r = divmod(r * b, m).second;
    if (k > 1) b = divmod(b * b, m).second;
  }
  return r;
}

namespace {

// f = h(x^p) with f' = 0: return the p-th root h~ with h~^p = f.
Poly pth_root(const Poly& f) {
  const Field& F = f.F();
  const std::uint32_t p = F.p();
  std::vector<Elem> v;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p)
    v.push_back(F.frobenius(f.coeffs()[i], F.degree() - 1));  // a^{q/p}
  return Poly(f.field(), std::move(v));
}

}  // namespace

Poly squarefree_part(const Poly& f0) {
  if (f0.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree part of the zero polynomial");
  Poly f = f0.monic();
  if (f.degree() <= 0) return f;
  Poly df = f.derivative();
  if (df.is_zero()) return squarefree_part(pth_root(f));
  Poly g = gcd(f, df);
  Poly w = divmod(f, g).first;  // factors with multiplicity prime to p
  Poly z = g;
  for (;;) {
    Poly y = gcd(z, w);
    if (y.degree() <= 0) break;
    z = divmod(z, y).first;
  }
  if (z.degree() <= 0) return w.monic();
  return (w * squarefree_part(z)).monic();
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree test of the zero polynomial");
  return gcd(f, f.derivative()).degree() <= 0 && (f.degree() <= 0 || !f.derivative().is_zero());
}

Elem resultant(const Poly& a0, const Poly& b0) {
  const Field& F = a0.F();
  if (a0.is_zero() || b0.is_zero()) return F.zero();
  Poly a = a0, b = b0;
  Elem acc = F.one();
  for (;;) {
    const int n = a.degree(), m = b.degree();
    if (m == 0) return F.mul(acc, F.pow(b.lead(), static_cast<u128>(n)));
    if (n == 0) return F.mul(acc, F.pow(a.lead(), static_cast<u128>(m)));
    if (n < m) {
      // Res(a,b) = (-1)^{nm} Res(b,a)
      if ((n * m) % 2) acc = F.neg(acc);
      std::swap(a, b);
      continue;
    }
    // Res(a,b) = (-1)^{nm} Res(b,a) = (-1)^{nm} lc(b)^{n - deg r} Res(b, r)
    Poly r = divmod(a, b).second;
    if (r.is_zero()) return F.zero();
    if ((n * m) % 2) acc = F.neg(acc);
    acc = F.mul(acc, F.pow(b.lead(), static_cast<u128>(n - r.degree())));
    a = std::move(b);
    b = std::move(r);
  }
}

Elem discriminant(const Poly& g) {
  const Field& F = g.F();
  const int n = g.degree();
  if (n < 0) fail(ErrorCode::ZeroPolynomial, "discriminant of the zero polynomial");
  if (n <= 1) return F.one();
  const Poly dg = g.derivative();
  if (dg.is_zero()) return F.zero();
  // Formal degree of g' is n-1; pad with the leading coefficient accordingly.
  Elem res = resultant(g, dg);
  res = F.mul(res, F.pow(g.lead(), static_cast<u128>(n - 1 - dg.degree())));
  Elem d = F.div(res, g.lead());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2) d = F.neg(d);
  return d;
}

namespace {

void split_roots(const Poly& g, std::vector<Elem>& out) {
  const Field& F = g.F();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(F.neg(F.div(g.coeff(0), g.lead())));
    return;
  }
  const u128 half = (F.size() - 1) / 2;
  for (std::uint64_t idx = 0; idx < F.size(); ++idx) {
    Poly base(g.field(), {F.from_index(idx), F.one()});
    Poly h = powmod(base, half, g) - Poly::constant(g.field(), F.one());
    Poly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_roots(d, out);
      split_roots(divmod(g, d).first, out);
      return;
    }
  }
  fail(ErrorCode::Internal, "root splitting failed");
}

}  // namespace

std::vector<Elem> roots(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const Field& F = f.F();
  std::vector<Elem> out;
  if (f.degree() <= 0) return out;
  const Poly x = Poly::x(f.field());
  Poly g = gcd(f, powmod(x, F.size(), f.monic()) - x);  // product of distinct linear factors
  split_roots(g, out);
  std::sort(out.begin(), out.end(),
            [&F](const Elem& a, const Elem& b) { return F.index(a) < F.index(b); });
  return out;
}

std::string to_string(const Poly& f, const char* var) {
  if (f.is_zero()) return "0";
  const Field& F = f.F();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const Elem& c = f.coeffs()[i];
    if (F.is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = F.is_one(c);
    if (!unit || i == 0) os << F.str(c);
    if (i >= 1) os << (unit ? "" : "*") << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace weillab::ff
