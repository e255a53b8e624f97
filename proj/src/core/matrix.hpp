// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "field.hpp"
#include "poly.hpp"

namespace weillab::ff {

// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols) {}
  static Matrix identity(FieldPtr f, std::size_t n);

  const FieldPtr& field() const noexcept { return f_; }
  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return c_; }
  Elem& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Elem& c) const;
  Elem trace() const;
  bool operator==(const Matrix& o) const {
    return f_->same_as(*o.f_) && r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }

 private:
  void check_same_shape(const Matrix& o) const;
  FieldPtr f_;
  std::size_t r_, c_;
  std::vector<Elem> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Elem det(Matrix m);
// det(T*I - M), monic of degree n (Hessenberg reduction).
Poly char_poly(const Matrix& m);
// Companion matrix of a monic polynomial: ones on the subdiagonal, last
// column -c_0..-c_{n-1}. Its characteristic polynomial is the input.
Matrix companion(const Poly& monic);
// f(A) by Horner.
Matrix eval_at(const Poly& f, const Matrix& a);

}  // namespace weillab::ff
