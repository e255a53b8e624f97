// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "exec.hpp"
#include "polyspec.hpp"
#include "tower.hpp"

namespace weillab::charsum {

// The map x -> L(f(x)) on K^n (K = tower.top(), L an F_p-linear map out of
// K) written as k polynomials over F_p in the n*[K:F_p] coordinates of x.
// Exponents are reduced with c^p = c, so each coordinate polynomial has
// total degree <= deg f. Evaluating all p^V points then costs O(k) per
// point: substitute one coordinate at a time, depth first, so that only the
// few monomials surviving near the leaves are touched p^V times.
class CoordinateForm {
 public:
  CoordinateForm(const ff::PolySpec& f, const ff::Tower& tower, const ff::LinearMap& L);

  std::uint32_t variables() const noexcept { return vars_; }
  std::size_t outputs() const noexcept { return k_; }
  std::size_t monomials() const noexcept { return level_size_.empty() ? 0 : level_size_.back(); }
  // p^variables, saturating.
  std::uint64_t points() const noexcept;

  // hist[v] = #{x : L(f(x)) = v}, v indexed by sum v_i p^i; size p^outputs.
  std::vector<std::uint64_t> histogram(const ExecConfig& cfg) const;
  // #{x : L(f(x)) = 0} without materialising a histogram.
  std::uint64_t kernel_count(const ExecConfig& cfg) const;

 private:
  template <class Acc>
  void run(const ExecConfig& cfg, std::vector<Acc>& per_task) const;
  template <class Acc>
  void descend(std::uint32_t m, std::vector<std::vector<ff::Coord>>& coef,
               std::vector<std::vector<std::uint64_t>>& scratch, Acc& acc) const;
  void substitute(std::uint32_t m, ff::Coord v, const std::vector<ff::Coord>& in,
                  std::vector<ff::Coord>& out, std::vector<std::uint64_t>& scratch) const;

  std::uint32_t p_;
  std::size_t k_;
  std::uint32_t vars_;
  std::vector<std::size_t> level_size_;             // monomials with vars < m, m = 0..V
  std::vector<std::vector<std::uint32_t>> target_;  // [m][idx] -> index at level m-1
  std::vector<std::vector<std::uint8_t>> power_;    // [m][idx] -> exponent of var m-1
  std::vector<ff::Coord> top_;                      // level V coefficients, k per monomial
  std::vector<std::vector<ff::Coord>> powtab_;      // v^j mod p
};

// Reference implementation by direct field arithmetic at every point.
std::vector<std::uint64_t> histogram_direct(const ff::PolySpec& f, const ff::Tower& tower,
                                            const ff::LinearMap& L, const ExecConfig& cfg);

}  // namespace weillab::charsum
