// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "matrix.hpp"

#include <utility>

#include "error.hpp"

namespace weillab::ff {

Matrix Matrix::identity(FieldPtr f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

void Matrix::check_same_shape(const Matrix& o) const {
  if (!f_->same_as(*o.f_)) fail(ErrorCode::FieldMismatch, "matrices over different fields");
  if (r_ != o.r_ || c_ != o.c_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same_shape(o);
  Matrix r(f_, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same_shape(o);
  Matrix r(f_, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (!f_->same_as(*o.f_)) fail(ErrorCode::FieldMismatch, "matrices over different fields");
  if (c_ != o.r_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix r(f_, r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Elem& x = at(i, k);
      if (f_->is_zero(x)) continue;
      for (std::size_t j = 0; j < o.c_; ++j) r.at(i, j) = f_->add(r.at(i, j), f_->mul(x, o.at(k, j)));
    }
  return r;
}

Matrix Matrix::scaled(const Elem& c) const {
  Matrix r(f_, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], c);
  return r;
}

Elem Matrix::trace() const {
  Elem s{};
  for (std::size_t i = 0; i < std::min(r_, c_); ++i) s = f_->add(s, at(i, i));
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (!a.field()->same_as(*b.field())) fail(ErrorCode::FieldMismatch, "matrices over different fields");
  const Field& F = *a.field();
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem& x = a.at(i, j);
      if (F.is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = F.mul(x, b.at(k, l));
    }
  return r;
}

Elem det(Matrix m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const Field& F = *m.field();
  const std::size_t n = m.rows();
  Elem d = F.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && F.is_zero(m.at(piv, col))) ++piv;
    if (piv == n) return F.zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = F.neg(d);
    }
    const Elem pv = m.at(col, col);
    d = F.mul(d, pv);
    const Elem pinv = F.inv(pv);
    for (std::size_t i = col + 1; i < n; ++i) {
      const Elem u = F.mul(m.at(i, col), pinv);
      if (F.is_zero(u)) continue;
      for (std::size_t j = col; j < n; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(u, m.at(col, j)));
    }
  }
  return d;
}

Poly char_poly(const Matrix& m0) {
  if (m0.rows() != m0.cols()) fail(ErrorCode::InvalidArgument, "char poly of a non-square matrix");
  const FieldPtr& fp = m0.field();
  const Field& F = *fp;
  const std::size_t n = m0.rows();
  Matrix h = m0;
  // Similarity transform to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && F.is_zero(h.at(i, m - 1))) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h.at(i, j), h.at(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h.at(j, i), h.at(j, m));
    }
    const Elem tinv = F.inv(h.at(m, m - 1));
    for (std::size_t k = m + 1; k < n; ++k) {
      const Elem u = F.mul(h.at(k, m - 1), tinv);
      if (F.is_zero(u)) continue;
      for (std::size_t j = 0; j < n; ++j) h.at(k, j) = F.sub(h.at(k, j), F.mul(u, h.at(m, j)));
      for (std::size_t j = 0; j < n; ++j) h.at(j, m) = F.add(h.at(j, m), F.mul(u, h.at(j, k)));
    }
  }
  // p_{m+1} = (T - h_mm) p_m - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_i
  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::constant(fp, F.one()));
  const Poly T = Poly::x(fp);
  for (std::size_t m = 0; m < n; ++m) {
    Poly next = (T - Poly::constant(fp, h.at(m, m))) * p[m];
    Elem t = F.one();
    for (std::size_t i = m; i-- > 0;) {
      t = F.mul(t, h.at(i + 1, i));
      const Elem c = F.mul(t, h.at(i, m));
      if (!F.is_zero(c)) next = next - p[i].scaled(c);
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

Matrix companion(const Poly& monic) {
  if (monic.is_zero()) fail(ErrorCode::ZeroPolynomial, "companion matrix of the zero polynomial");
  const Field& F = monic.F();
  if (!F.is_one(monic.lead())) fail(ErrorCode::InvalidArgument, "companion matrix needs a monic polynomial");
  const std::size_t n = static_cast<std::size_t>(monic.degree());
  Matrix a(monic.field(), n, n);
  for (std::size_t i = 1; i < n; ++i) a.at(i, i - 1) = F.one();
  for (std::size_t i = 0; i < n; ++i) a.at(i, n - 1) = F.neg(monic.coeff(i));
  return a;
}

Matrix eval_at(const Poly& f, const Matrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::InvalidArgument, "polynomial of a non-square matrix");
  const Field& F = *a.field();
  const std::size_t n = a.rows();
  Matrix acc(a.field(), n, n);
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = acc * a;
    for (std::size_t k = 0; k < n; ++k) acc.at(k, k) = F.add(acc.at(k, k), f.coeffs()[i]);
  }
  return acc;
}

}  // namespace weillab::ff
