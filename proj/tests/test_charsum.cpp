// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "charsum.hpp"
#include "enumerate.hpp"
#include "error.hpp"

using namespace weillab;
using namespace weillab::charsum;
using ff::Elem;
using ff::Field;
using ff::FieldElement;
using ff::Poly;
using ff::PolySpec;
using cld = std::complex<long double>;

namespace {

ExecConfig cfg1() { return ExecConfig{}; }

PolySpec uni(const ff::FieldPtr& F, std::vector<std::int64_t> c) {
  return PolySpec::from_poly(Poly::from_ints(F, c));
}

// Random polynomial of exact degree d (monic unless told otherwise).
Poly random_poly(const ff::FieldPtr& F, int d, std::mt19937_64& rng, bool monic = true) {
  std::vector<Elem> c(d + 1);
  for (auto& x : c) x = F->from_index(rng() % F->size());
  c[d] = monic ? F->one() : F->from_index(1 + rng() % (F->size() - 1));
  return Poly(F, c);
}

PolySpec random_bivariate(const ff::FieldPtr& F, int d, std::mt19937_64& rng) {
  std::vector<ff::Term> t;
  for (std::uint32_t a = 0; a <= static_cast<std::uint32_t>(d); ++a)
    for (std::uint32_t b = 0; a + b <= static_cast<std::uint32_t>(d); ++b)
      if (rng() % 2) t.push_back({{a, b}, F->from_index(rng() % F->size())});
  t.push_back({{static_cast<std::uint32_t>(d), 0}, F->one()});
  return PolySpec(F, 2, t);
}

}  // namespace

TEST_CASE("additive character values") {
  auto F3 = Field::make(3, 1);
  auto psi = AdditiveCharacter::standard(F3);
  CHECK(psi_eval(psi, FieldElement(F3, F3->zero())) == CycloNumber(1));
  CHECK(psi_eval(psi, FieldElement(F3, F3->one())) == CycloNumber::zeta(3));
  for (auto F : {Field::make(3, 1), Field::make(3, 2), Field::make(5, 2), Field::make(7, 1)}) {
    auto ps = AdditiveCharacter::standard(F);
    CycloNumber s;
    for (std::uint64_t i = 0; i < F->size(); ++i) s += psi_eval(ps, FieldElement(F, F->from_index(i)));
    CHECK(s.is_zero());
  }
}

TEST_CASE("multiplicative character values") {
  auto F7 = Field::make(7, 1);
  auto rho = MultiplicativeCharacter::quadratic(F7);
  CHECK(chi_eval(rho, FieldElement(F7, F7->one())) == CycloNumber(1));
  CHECK(chi_eval(rho, FieldElement(F7, F7->from_int(3))) == CycloNumber(-1));
  auto chi3 = MultiplicativeCharacter::make(F7, 3, 1);
  CHECK(chi_eval(chi3, FieldElement(F7, F7->from_int(3))) == CycloNumber::zeta(3));
  CHECK(chi_eval(chi3, FieldElement(F7, F7->from_int(2))) == CycloNumber::zeta(3, 2));
  try {
    chi_eval(rho, FieldElement(F7, F7->zero()));
    FAIL("expected ZeroArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroArgument);
  }
  // multiplicativity, exhaustive on F_9 for the order-4 character
  auto F9 = Field::make(3, 2);
  auto chi4 = MultiplicativeCharacter::make(F9, 4, 1);
  for (std::uint64_t i = 1; i < 9; ++i)
    for (std::uint64_t j = 1; j < 9; ++j) {
      FieldElement a(F9, F9->from_index(i)), b(F9, F9->from_index(j));
      CHECK(chi_eval(chi4, a * b) == chi_eval(chi4, a) * chi_eval(chi4, b));
    }
}

TEST_CASE("quadratic Gauss sum over F_3") {
  auto F3 = Field::make(3, 1);
  auto rho = MultiplicativeCharacter::quadratic(F3);
  auto psi = AdditiveCharacter::standard(F3);
  // Literal sum: rho(1)=1, rho(2)=-1 (Euler's criterion 2^1 = -1 mod 3).
  const CycloNumber oracle = -(CycloNumber::zeta(3, 1) - CycloNumber::zeta(3, 2));
  const CycloNumber g = gauss_sum(rho, psi);
  CHECK(g == oracle);
  CHECK(g * g == CycloNumber(-3));
  CHECK_THROWS_AS(gauss_sum(MultiplicativeCharacter::make(F3, 2, 0), psi), Error);
}

TEST_CASE("Gauss sums: modulus sqrt(q) and g(chi)g(conj chi) = chi(-1) q") {
  for (auto F : {Field::make(3, 1), Field::make(5, 1), Field::make(7, 1), Field::make(3, 2)}) {
    const std::uint32_t m = static_cast<std::uint32_t>(F->size() - 1);
    for (auto shift : {std::uint64_t{1}, F->size() - 1}) {
      AdditiveCharacter psi{F, F->from_index(shift)};
      for (std::uint32_t j = 1; j < m; ++j) {
        auto chi = MultiplicativeCharacter::make(F, m, j);
        const CycloNumber g = gauss_sum(chi, psi);
        CHECK(std::abs(std::abs(g.embed()) - std::sqrt(static_cast<long double>(F->size()))) < 1e-9L);
        const CycloNumber prod = g * gauss_sum(chi.conj(), psi);
        CHECK(prod == CycloNumber(static_cast<long>(chi.sign_at_minus_one() * static_cast<long>(F->size()))));
      }
    }
  }
}

TEST_CASE("coordinate form matches direct evaluation") {
  std::mt19937_64 rng(17);
  struct Case {
    std::uint32_t p, e, s, n, d;
  };
  for (const Case c : {Case{3, 1, 1, 1, 2}, Case{3, 1, 4, 1, 4}, Case{3, 2, 2, 1, 5}, Case{5, 1, 2, 1, 4},
                       Case{7, 1, 2, 1, 3}, Case{5, 2, 1, 1, 3}, Case{3, 1, 2, 2, 3}, Case{3, 1, 1, 2, 2},
                       Case{5, 1, 1, 2, 3}, Case{3, 1, 1, 3, 2}, Case{13, 1, 2, 1, 4}}) {
    auto F = Field::make(c.p, c.e);
    ff::Tower tw = ff::Tower::over(F, c.s);
    for (int it = 0; it < 4; ++it) {
      PolySpec f = c.n == 1 ? PolySpec::from_poly(random_poly(F, c.d, rng, false))
                            : random_bivariate(F, c.d, rng);
      if (c.n == 3) {
        std::vector<ff::Term> t{{{2, 0, 0}, F->one()}, {{0, 1, 1}, F->from_int(2)}, {{1, 0, 0}, F->one()}};
        f = PolySpec(F, 3, t);
      }
      CoordinateForm form(f, tw, tw.trace_map());
      CHECK(form.histogram(cfg1()) == histogram_direct(f, tw, tw.trace_map(), cfg1()));
      ExecConfig par;
      par.threads = 4;
      CHECK(form.histogram(par) == form.histogram(cfg1()));
      CHECK(form.kernel_count(par) == form.histogram(cfg1())[0]);
      // identity map: full value histogram
      ff::LinearMap id{c.p, tw.top()->degree(), tw.top()->degree(), {}};
      id.a.assign(id.rows * id.cols, 0);
      for (std::size_t i = 0; i < id.rows; ++i) id.a[i * id.cols + i] = 1;
      if (c.n == 1) CHECK(CoordinateForm(f, tw, id).histogram(cfg1()) == histogram_direct(f, tw, id, cfg1()));
    }
  }
}

TEST_CASE("inner sums") {
  auto F3 = Field::make(3, 1);
  auto psi = AdditiveCharacter::standard(F3);
  CHECK(inner_sum(uni(F3, {0, 1}), F3->one(), 1, psi, cfg1()).is_zero());
  CHECK(inner_sum(uni(F3, {0, 1}), F3->from_int(2), 3, psi, cfg1()).is_zero());
  // x in {0,1,2}: psi(0) + 2 psi(1)
  CHECK(inner_sum(uni(F3, {0, 0, 1}), F3->one(), 1, psi, cfg1()) ==
        CycloNumber(1) + CycloNumber(2) * CycloNumber::zeta(3));
  try {
    inner_sum(uni(F3, {0, 0, 0, 1}), F3->one(), 1, psi, cfg1());
    FAIL("expected DegreeDivisibleByP");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeDivisibleByP);
  }
  std::mt19937_64 rng(5);
  for (auto F : {Field::make(5, 1), Field::make(7, 1), Field::make(3, 2)}) {
    auto ps = AdditiveCharacter::standard(F);
    for (int it = 0; it < 10; ++it) {
      int d = 2 + static_cast<int>(rng() % 4);
      if (d % static_cast<int>(F->p()) == 0) ++d;
      const PolySpec f = PolySpec::from_poly(random_poly(F, d, rng, false));
      const std::uint32_t s = 1 + static_cast<std::uint32_t>(rng() % 2);
      const Elem t = F->from_index(1 + rng() % (F->size() - 1));
      const long double mod = std::abs(inner_sum(f, t, s, ps, cfg1()).embed());
      CHECK(mod <= (d - 1) * std::pow(static_cast<long double>(F->size()), s / 2.0L) + 1e-6L);
    }
  }
}

TEST_CASE("point counts: examples and the three methods") {
  auto F3 = Field::make(3, 1);
  CHECK(count_points(uni(F3, {0, 0, 1}), 1, CountMethod::CharSum, cfg1()).N == 3);
  CHECK(count_points(uni(F3, {0, 0, 1}), 1, CountMethod::Naive, cfg1()).N == 3);
  try {
    count_points(uni(F3, {0, 0, 0, 1}), 1, CountMethod::CharSum, cfg1());
    FAIL("expected DegreeDivisibleByP");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeDivisibleByP);
  }
  const PolySpec x2 = uni(F3, {0, 0, 1});
  const auto a = count_points(x2, 2, CountMethod::CharSum, cfg1()).N;
  CHECK(a == count_points(x2, 2, CountMethod::TraceKernel, cfg1()).N);
  CHECK(a == count_points(x2, 2, CountMethod::Naive, cfg1()).N);

  std::mt19937_64 rng(23);
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int d = 2; d <= 5; ++d) {
      if (d % static_cast<int>(p) == 0) continue;
      auto F = Field::make(p, 1);
      for (std::uint32_t r = 1; r <= 2; ++r)
        for (int it = 0; it < 6; ++it) {
          const PolySpec f = PolySpec::from_poly(random_poly(F, d, rng, false));
          const auto cs = count_points(f, r, CountMethod::CharSum, cfg1()).N;
          CHECK(cs == count_points(f, r, CountMethod::TraceKernel, cfg1()).N);
          CHECK(cs == count_points(f, r, CountMethod::Naive, cfg1()).N);
          CHECK(cs % F->size() == 0);
        }
    }
}

TEST_CASE("charsum identity: N - q^{nr} equals the t-sum of inner sums") {
  std::mt19937_64 rng(31);
  for (auto F : {Field::make(5, 1), Field::make(3, 2)}) {
    auto psi = AdditiveCharacter::standard(F);
    for (int it = 0; it < 5; ++it) {
      const PolySpec f = PolySpec::from_poly(random_poly(F, 4, rng));
      for (std::uint32_t r = 1; r <= 2; ++r) {
        CycloNumber tsum;
        for (std::uint64_t t = 1; t < F->size(); ++t) tsum += inner_sum(f, F->from_index(t), r, psi, cfg1());
        const auto N = count_points(f, r, CountMethod::Naive, cfg1()).N;
        const long main = static_cast<long>(sat_pow(F->size(), r));
        CHECK(tsum.rational() == mpq_class(static_cast<long>(N) - main));
      }
    }
  }
}

TEST_CASE("counts do not depend on the additive character") {
  std::mt19937_64 rng(37);
  for (auto F : {Field::make(5, 1), Field::make(3, 2), Field::make(7, 1)}) {
    for (int it = 0; it < 5; ++it) {
      const PolySpec f = PolySpec::from_poly(random_poly(F, 4, rng));
      const auto base = count_points(f, 2, CountMethod::CharSum, cfg1()).N;
      for (std::uint64_t a = 1; a < F->size(); ++a) {
        const Elem sh = F->from_index(a);
        CHECK(count_points(f, 2, CountMethod::CharSum, cfg1(), &sh).N == base);
      }
    }
  }
}

TEST_CASE("multivariate counts agree across methods") {
  std::mt19937_64 rng(41);
  auto F3 = Field::make(3, 1);
  for (int it = 0; it < 10; ++it) {
    const PolySpec f = random_bivariate(F3, 2 + static_cast<int>(rng() % 2), rng);
    if (f.degree() % 3 == 0) continue;
    const auto cs = count_points(f, 1, CountMethod::CharSum, cfg1()).N;
    CHECK(cs == count_points(f, 1, CountMethod::Naive, cfg1()).N);
    CHECK(cs == count_points(f, 1, CountMethod::TraceKernel, cfg1()).N);
  }
}

TEST_CASE("fiber Frobenius polynomial") {
  auto F3 = Field::make(3, 1);
  auto psi = AdditiveCharacter::standard(F3);
  const Poly x2 = Poly::from_ints(F3, {0, 0, 1});
  const CycloPoly P = fiber_frobenius_poly(x2, F3->one(), psi, cfg1());
  REQUIRE(P.size() == 2);
  CHECK(P[0] == CycloNumber(1));
  // d = 2: P = 1 + inner_sum T
  CHECK(P[1] == inner_sum(PolySpec::from_poly(x2), F3->one(), 1, psi, cfg1()));
  CHECK(P[1] == CycloNumber(1) + CycloNumber(2) * CycloNumber::zeta(3));

  // Weight one: reciprocal roots of modulus sqrt(q); d = 3 via the quadratic formula.
  std::mt19937_64 rng(43);
  for (auto F : {Field::make(5, 1), Field::make(7, 1), Field::make(13, 1)}) {
    auto ps = AdditiveCharacter::standard(F);
    for (int it = 0; it < 5; ++it) {
      const Poly f = random_poly(F, 3, rng, false);
      const Elem t = F->from_index(1 + rng() % (F->size() - 1));
      const CycloPoly Q = fiber_frobenius_poly(f, t, ps, cfg1());
      // reciprocal roots alpha: T^2 + c1 T + c2 reversed -> alpha^2 + c1 alpha + c2 = 0
      const cld c1 = Q[1].embed(), c2 = Q[2].embed();
      const cld disc = std::sqrt(c1 * c1 - 4.0L * c2);
      const long double sq = std::sqrt(static_cast<long double>(F->size()));
      CHECK(std::abs(std::abs((-c1 + disc) / 2.0L) - sq) < 1e-6L);
      CHECK(std::abs(std::abs((-c1 - disc) / 2.0L) - sq) < 1e-6L);
    }
  }
}

TEST_CASE("determinant check") {
  auto F7 = Field::make(7, 1);
  auto psi7 = AdditiveCharacter::standard(F7);
  const Poly f = Poly::from_ints(F7, {0, -1, 0, 1});
  for (std::uint64_t t = 1; t < 7; ++t) {
    const auto r = det_frobenius_check(f, F7->from_index(t), psi7, cfg1());
    CHECK(r.match);
    CHECK(r.expected == CycloNumber(7));
  }
  auto F5 = Field::make(5, 1);
  auto psi5 = AdditiveCharacter::standard(F5);
  const Poly g = Poly::from_ints(F5, {0, 1, 0, 0, 1});  // x^4 + x, eps = -1
  for (std::uint64_t t = 1; t < 5; ++t) CHECK(det_frobenius_check(g, F5->from_index(t), psi5, cfg1()).match);
  // f' not square-free
  try {
    det_frobenius_check(Poly::from_ints(F7, {0, 0, 0, 1}), F7->one(), psi7, cfg1());
    FAIL("expected HypothesisViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
  }
}

TEST_CASE("determinant check with nonzero critical-value sums") {
  std::mt19937_64 rng(47);
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, int>>{{7, 3}, {13, 3}, {5, 4}, {13, 4}, {11, 5}}) {
    auto F = Field::make(p, 1);
    for (std::uint64_t sh : {1ULL, 2ULL}) {
      AdditiveCharacter psi{F, F->from_index(sh)};
      int tested = 0;
      for (int it = 0; it < 40 && tested < 4; ++it) {
        const Poly f = random_poly(F, d, rng, false);
        if (!ff::is_squarefree(f.derivative())) continue;
        ++tested;
        for (std::uint64_t t = 1; t < F->size(); t += 2)
          CHECK_MESSAGE(det_frobenius_check(f, F->from_index(t), psi, cfg1()).match,
                        "p=" << p << " f=" << ff::to_string(f) << " t=" << t);
      }
    }
  }
}
