// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cyclo.hpp"
#include "error.hpp"

using namespace weillab;
using namespace weillab::cyclo;
using cld = std::complex<long double>;

namespace {

cld root_of_unity(std::uint32_t n, std::int64_t k) {
  return std::polar(1.0L, 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / n);
}

bool close(cld a, cld b, long double tol = 1e-12L) {
  return std::abs(a - b) <= tol * std::max<long double>(1, std::abs(b));
}

CycloNumber random_element(std::uint32_t n, std::mt19937_64& rng) {
  std::vector<std::int64_t> counts(n);
  for (auto& c : counts) c = static_cast<std::int64_t>(rng() % 11) - 5;
  return CycloNumber::from_exponent_counts(n, counts);
}

// Complex value of sum counts[k] zeta_n^k, computed directly.
cld direct_value(std::uint32_t n, const std::vector<std::int64_t>& counts) {
  cld s = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) s += static_cast<long double>(counts[k]) * root_of_unity(n, k);
  return s;
}

}  // namespace

TEST_CASE("cyclotomic relations") {
  CHECK(CycloNumber::zeta(3) + CycloNumber::zeta(3, 2) == CycloNumber(-1));
  CHECK(CycloNumber::zeta(4) * CycloNumber::zeta(4) == CycloNumber(-1));
  const CycloNumber d = CycloNumber::zeta(3) - CycloNumber::zeta(3, 2);
  // oracle: (2i sin(2pi/3))^2 = -3 numerically
  const cld direct = root_of_unity(3, 1) - root_of_unity(3, 2);
  CHECK(std::abs(direct * direct - cld(-3)) < 1e-12L);
  CHECK(d * d == CycloNumber(-3));
}

TEST_CASE("cyclotomic polynomials vanish at primitive roots") {
  for (std::uint32_t n = 1; n <= 40; ++n) {
    const QPoly& phi = cyclotomic_poly(n);
    CHECK(degree(phi) == static_cast<int>(euler_phi(n)));
    CHECK(std::abs(eval(phi, root_of_unity(n, 1))) < 1e-9L);
  }
}

TEST_CASE("complex embedding") {
  CHECK(close(CycloNumber(1).embed(), cld(1, 0)));
  CHECK(close(CycloNumber::zeta(4).embed(), cld(0, 1)));
  CHECK(close((CycloNumber::zeta(3) - CycloNumber::zeta(3, 2)).embed(), cld(0, std::sqrt(3.0L))));
}

TEST_CASE("conjugation") {
  CHECK(CycloNumber(5).conjugate() == CycloNumber(5));
  CHECK(CycloNumber::zeta(3).conjugate() == CycloNumber::zeta(3, 2));
  const CycloNumber g = -(CycloNumber::zeta(3) - CycloNumber::zeta(3, 2));
  CHECK(g.conjugate() == -(CycloNumber::zeta(3, 2) - CycloNumber::zeta(3)));
  CHECK(close(g.conjugate().embed(), std::conj(g.embed())));
}

TEST_CASE("as_rational") {
  CHECK(*(CycloNumber::zeta(3) + CycloNumber::zeta(3, 2) + CycloNumber(1)).as_rational() == 0);
  CHECK_FALSE(CycloNumber::zeta(5).as_rational().has_value());
  try {
    (void)CycloNumber::zeta(5).rational();
    FAIL("expected NotRational");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRational);
  }
  const CycloNumber a = CycloNumber::zeta(3) - CycloNumber::zeta(3, 2);
  const CycloNumber b = CycloNumber::zeta(3, 2) - CycloNumber::zeta(3);
  CHECK((a * b).rational() == 3);
}

TEST_CASE("embedding is a ring homomorphism (sampled)") {
  std::mt19937_64 rng(1);
  for (std::uint32_t n : {3u, 4u, 5u, 7u, 12u, 15u}) {
    for (int i = 0; i < 100; ++i) {
      std::vector<std::int64_t> ca(n), cb(n);
      for (auto& c : ca) c = static_cast<std::int64_t>(rng() % 11) - 5;
      for (auto& c : cb) c = static_cast<std::int64_t>(rng() % 11) - 5;
      const auto a = CycloNumber::from_exponent_counts(n, ca);
      const auto b = CycloNumber::from_exponent_counts(n, cb);
      CHECK(close(a.embed(), direct_value(n, ca), 1e-9L));
      CHECK(close((a * b).embed(), direct_value(n, ca) * direct_value(n, cb), 1e-9L));
      CHECK(close((a + b).embed(), direct_value(n, ca) + direct_value(n, cb), 1e-9L));
    }
  }
}

TEST_CASE("conjugate is an involutive ring homomorphism") {
  std::mt19937_64 rng(2);
  for (std::uint32_t n : {3u, 5u, 8u, 12u, 15u}) {
    for (int i = 0; i < 30; ++i) {
      const auto a = random_element(n, rng), b = random_element(n, rng);
      CHECK(a.conjugate().conjugate() == a);
      CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
      CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
    }
  }
}

TEST_CASE("a * conj(a) is a nonnegative real on monomials") {
  for (std::uint32_t n = 1; n <= 15; ++n)
    for (std::int64_t k = 0; k < n; ++k)
      for (long c : {-3L, 1L, 2L}) {
        const CycloNumber a = CycloNumber(c) * CycloNumber::zeta(n, k);
        const auto v = (a * a.conjugate()).as_rational();
        REQUIRE(v.has_value());
        CHECK(*v == c * c);
      }
}

TEST_CASE("lift and restrict round-trip; mixed conductors") {
  std::mt19937_64 rng(3);
  for (auto [n, N] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 6}, {3, 12}, {4, 12}, {5, 20}, {7, 42}}) {
    const auto a = random_element(n, rng);
    const auto back = a.lift(N).restrict_to(n);
    REQUIRE(back.has_value());
    CHECK(*back == a);
    CHECK(back->conductor() == n);
  }
  CHECK_FALSE(CycloNumber::zeta(12).restrict_to(3).has_value());
  // zeta_3 * zeta_4 = zeta_12^{4+3}
  CHECK(CycloNumber::zeta(3) * CycloNumber::zeta(4) == CycloNumber::zeta(12, 7));
  CHECK(CycloNumber::zeta(6, 2) == CycloNumber::zeta(3));
}

TEST_CASE("inverse and powers") {
  std::mt19937_64 rng(4);
  for (std::uint32_t n : {3u, 7u, 12u, 15u}) {
    for (int i = 0; i < 20; ++i) {
      const auto a = random_element(n, rng);
      if (a.is_zero()) continue;
      CHECK((a * a.inv()) == CycloNumber(1));
      CHECK(a.pow(3) == a * a * a);
      CHECK(a.pow(-2) * a.pow(2) == CycloNumber(1));
    }
  }
  CHECK_THROWS_AS(CycloNumber().inv(), Error);
  CHECK(CycloNumber::zeta(7).pow(7) == CycloNumber(1));
}

TEST_CASE("rational polynomial helpers") {
  const QPoly a{mpq_class(-1), mpq_class(0), mpq_class(1)};  // T^2 - 1
  const QPoly b{mpq_class(1), mpq_class(1)};                  // T + 1
  CHECK(gcd(a, b) == b);
  auto [q, r] = divmod(a, b);
  CHECK(q == QPoly{mpq_class(-1), mpq_class(1)});
  CHECK(r.empty());
  const auto inv = series_inverse(QPoly{mpq_class(1), mpq_class(-3)}, 5);  // 1/(1-3T)
  CHECK(inv == QPoly{1, 3, 9, 27, 81});
  const auto e = ext_gcd(QPoly{1, 0, 1}, QPoly{0, 1});
  CHECK(add(mul(e.s, QPoly{1, 0, 1}), mul(e.t, QPoly{0, 1})) == QPoly{1});
}
