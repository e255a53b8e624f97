// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tower.hpp"

#include "error.hpp"
#include "poly.hpp"

namespace weillab::ff {

Elem LinearMap::apply(const Elem& x) const noexcept {
  Elem r{};
  for (std::size_t i = 0; i < rows; ++i) {
    std::uint64_t s = 0;
    const Coord* row = &a[i * cols];
    for (std::size_t j = 0; j < cols; ++j) s += std::uint64_t{row[j]} * x.c[j];
    r.c[i] = static_cast<Coord>(s % p);
  }
  return r;
}

namespace {

Coord inv_mod(Coord a, Coord p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t k = p - 2; k; k >>= 1, b = b * b % p)
    if (k & 1) r = r * b % p;
  return static_cast<Coord>(r);
}

}  // namespace

Tower::Tower(FieldPtr base, FieldPtr top) : base_(std::move(base)), top_(std::move(top)) {
  const std::uint32_t e = base_->degree(), n = top_->degree(), p = base_->p();
  if (top_->p() != p || n % e != 0)
    fail(ErrorCode::FieldMismatch, base_->describe() + " is not a subfield of " + top_->describe());
  s_ = n / e;

  // theta: smallest-index root of the base modulus in top.
  std::vector<std::int64_t> mod(base_->modulus().begin(), base_->modulus().end());
  Poly m = Poly::from_ints(top_, mod);
  const auto rts = roots(m);
  if (rts.empty()) fail(ErrorCode::Internal, "base modulus has no root in the top field");
  theta_ = rts.front();

  theta_pows_.resize(e);
  Elem t = top_->one();
  for (std::uint32_t i = 0; i < e; ++i) {
    theta_pows_[i] = t;
    t = top_->mul(t, theta_);
  }

  // Pick e independent top coordinates (rows of the n x e embedding matrix)
  // and invert that square block for pull_back.
  {
    // Gaussian elimination on the transpose: columns theta^i, find pivot rows.
    std::vector<std::vector<Coord>> M(n, std::vector<Coord>(e));
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t c = 0; c < e; ++c) M[r][c] = theta_pows_[c].c[r];
    std::vector<std::vector<Coord>> W = M;  // working copy
    std::vector<bool> used(n, false);
    for (std::uint32_t c = 0; c < e; ++c) {
      std::uint32_t piv = n;
      for (std::uint32_t r = 0; r < n; ++r)
        if (!used[r] && W[r][c]) {
          piv = r;
          break;
        }
      if (piv == n) fail(ErrorCode::Internal, "embedding matrix is singular");
      used[piv] = true;
      pivots_.push_back(piv);
      const Coord inv = inv_mod(W[piv][c], p);
      for (std::uint32_t r = 0; r < n; ++r) {
        if (r == piv || !W[r][c]) continue;
        const std::uint64_t u = std::uint64_t{W[r][c]} * inv % p;
        for (std::uint32_t k = 0; k < e; ++k)
          W[r][k] = static_cast<Coord>((W[r][k] + (p - u) * W[piv][k]) % p);
      }
    }
    // Invert the e x e block S = M[pivots][*] by Gauss-Jordan.
    std::vector<std::vector<Coord>> S(e, std::vector<Coord>(2 * e, 0));
    for (std::uint32_t i = 0; i < e; ++i) {
      for (std::uint32_t j = 0; j < e; ++j) S[i][j] = M[pivots_[i]][j];
      S[i][e + i] = 1;
    }
    for (std::uint32_t c = 0; c < e; ++c) {
      std::uint32_t piv = c;
      while (piv < e && !S[piv][c]) ++piv;
      if (piv == e) fail(ErrorCode::Internal, "pivot block is singular");
      std::swap(S[piv], S[c]);
      const Coord inv = inv_mod(S[c][c], p);
      for (auto& v : S[c]) v = static_cast<Coord>(std::uint64_t{v} * inv % p);
      for (std::uint32_t r = 0; r < e; ++r) {
        if (r == c || !S[r][c]) continue;
        const std::uint64_t u = S[r][c];
        for (std::uint32_t k = 0; k < 2 * e; ++k)
          S[r][k] = static_cast<Coord>((S[r][k] + (p - u) * S[c][k]) % p);
      }
    }
    // S^{-1} maps pivot-coordinate values y to base coordinates b: b = S^{-1} y.
    pivot_inv_.resize(std::size_t{e} * e);
    for (std::uint32_t i = 0; i < e; ++i)
      for (std::uint32_t j = 0; j < e; ++j) pivot_inv_[i * e + j] = S[i][e + j];
  }

  trace_map_.p = p;
  trace_map_.rows = e;
  trace_map_.cols = n;
  trace_map_.a.assign(std::size_t{e} * n, 0);
  for (std::uint32_t j = 0; j < n; ++j) {
    Elem uj{};
    uj.c[j] = 1;
    const Elem t = trace(uj);
    for (std::uint32_t i = 0; i < e; ++i) trace_map_.a[i * n + j] = t.c[i];
  }
}

Tower Tower::over(const FieldPtr& base, std::uint32_t s) {
  if (s == 0) fail(ErrorCode::InvalidArgument, "relative degree must be positive");
  if (std::uint64_t{base->degree()} * s > kMaxDegree)
    fail(ErrorCode::InvalidArgument, "tower degree exceeds 32 over F_p");
  return Tower(base, Field::make(base->p(), base->degree() * s));
}

Elem Tower::embed(const Elem& a) const noexcept {
  Elem r{};
  for (std::uint32_t i = 0; i < base_->degree(); ++i)
    if (a.c[i]) r = top_->add(r, top_->scale(theta_pows_[i], a.c[i]));
  return r;
}

FieldElement Tower::embed(const FieldElement& a) const {
  if (!a.field()->same_as(*base_)) fail(ErrorCode::FieldMismatch, "element is not in the tower base");
  return {top_, embed(a.raw())};
}

std::optional<Elem> Tower::pull_back(const Elem& a) const {
  const std::uint32_t e = base_->degree(), p = base_->p();
  Elem b{};
  for (std::uint32_t i = 0; i < e; ++i) {
    std::uint64_t s = 0;
    for (std::uint32_t j = 0; j < e; ++j) s += std::uint64_t{pivot_inv_[i * e + j]} * a.c[pivots_[j]];
    b.c[i] = static_cast<Coord>(s % p);
  }
  if (!(embed(b) == a)) return std::nullopt;
  return b;
}

Elem Tower::trace(const Elem& a) const {
  Elem acc{}, cur = a;
  for (std::uint32_t i = 0; i < s_; ++i) {
    acc = top_->add(acc, cur);
    cur = frob_q(cur);
  }
  auto b = pull_back(acc);
  if (!b) fail(ErrorCode::NotInBaseImage, "trace does not lie in the embedded base field");
  return *b;
}

FieldElement Tower::trace(const FieldElement& a) const {
  if (!a.field()->same_as(*top_)) fail(ErrorCode::FieldMismatch, "element is not in the tower top");
  return {base_, trace(a.raw())};
}

}  // namespace weillab::ff
