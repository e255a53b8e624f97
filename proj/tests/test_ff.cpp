// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "tower.hpp"

using namespace weillab;
using namespace weillab::ff;

namespace {

Elem random_elem(const Field& F, std::mt19937_64& rng) { return F.from_index(rng() % F.size()); }

// Number of monic irreducibles of degree n over F_p (necklace count).
std::uint64_t necklace(std::uint64_t p, unsigned n) {
  auto mobius = [](unsigned k) {
    int m = 1;
    for (unsigned d = 2; d * d <= k; ++d) {
      if (k % d) continue;
      k /= d;
      if (k % d == 0) return 0;
      m = -m;
    }
    return k > 1 ? -m : m;
  };
  std::int64_t s = 0;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) {
      std::int64_t pw = 1;
      for (unsigned i = 0; i < n / d; ++i) pw *= static_cast<std::int64_t>(p);
      s += mobius(d) * pw;
    }
  return static_cast<std::uint64_t>(s) / n;
}

bool has_root_mod_p(const std::vector<Coord>& m, std::uint32_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = (acc * x + m[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("prime field construction and rejects") {
  auto F3 = Field::make(3, 1);
  CHECK(F3->size() == 3);
  CHECK(F3->modulus() == std::vector<Coord>{0, 1});
  CHECK_THROWS_AS(Field::make(2, 1), Error);
  try {
    Field::make(2, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenCharacteristic);
  }
  try {
    Field::make(9, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPrime);
  }
}

TEST_CASE("F_9 models: supplied moduli") {
  auto F9 = Field::make(3, 2, std::vector<std::int64_t>{1, 0, 1});
  const Elem u = F9->gen();
  CHECK(F9->mul(u, u) == F9->from_int(-1));
  // x^2 + 2 = (x-1)(x+1): root search finds roots.
  CHECK(has_root_mod_p({2, 0, 1}, 3));
  try {
    Field::make(3, 2, std::vector<std::int64_t>{2, 0, 1});
    FAIL("expected Reducible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Reducible);
  }
  // frobenius(u) = u^3 computed by direct multiplication
  CHECK(F9->frobenius(u) == F9->mul(u, F9->mul(u, u)));
  CHECK(F9->frobenius(u) == F9->neg(u));
}

TEST_CASE("default modulus is the first rootless monic (degrees 2, 3)") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    for (std::uint32_t e : {2u, 3u}) {
      auto F = Field::make(p, e);
      // Oracle: scan candidates in index order, irreducible iff no root.
      std::vector<Coord> m(e + 1, 0);
      m[e] = 1;
      for (;;) {
        if (!has_root_mod_p(m, p)) break;
        std::size_t i = 0;
        while (++m[i] == p) m[i++] = 0;
      }
      CHECK(F->modulus() == m);
    }
  }
}

TEST_CASE("Rabin test matches the necklace count") {
  for (std::uint32_t p : {3u, 5u}) {
    for (unsigned n = 1; n <= (p == 3 ? 6u : 4u); ++n) {
      std::uint64_t count = 0, total = 1;
      for (unsigned i = 0; i < n; ++i) total *= p;
      std::vector<Coord> m(n + 1, 0);
      m[n] = 1;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t t = idx;
        for (unsigned i = 0; i < n; ++i) {
          m[i] = static_cast<Coord>(t % p);
          t /= p;
        }
        count += is_irreducible_mod_p(m, p);
      }
      CHECK_MESSAGE(count == necklace(p, n), "p=" << p << " n=" << n);
    }
  }
}

TEST_CASE("inverse in F_7 against exhaustive search") {
  auto F7 = Field::make(7, 1);
  for (int a = 1; a < 7; ++a) {
    int oracle = 0;
    for (int b = 1; b < 7; ++b)
      if (a * b % 7 == 1) oracle = b;
    CHECK(F7->inv(F7->from_int(a)) == F7->from_int(oracle));
  }
  CHECK(F7->inv(F7->from_int(3)) == F7->from_int(5));
  try {
    F7->inv(F7->zero());
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("FieldElement rejects cross-field arithmetic") {
  auto a = Field::make(3, 2, std::vector<std::int64_t>{1, 0, 1});
  auto b = Field::make(3, 2, std::vector<std::int64_t>{2, 1, 1});
  FieldElement x(a, a->gen()), y(b, b->gen());
  try {
    (void)(x + y);
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldMismatch);
  }
  // Same modulus built twice is the same field.
  auto a2 = Field::make(3, 2, std::vector<std::int64_t>{1, 0, 1});
  FieldElement z(a2, a2->one());
  CHECK((x * z) == x);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {3, 1}, {7, 1}, {3, 2}, {5, 3}, {3, 5}, {13, 2}, {3, 16}}) {
    auto F = Field::make(p, e);
    for (int i = 0; i < 120; ++i) {
      const Elem a = random_elem(*F, rng), b = random_elem(*F, rng), c = random_elem(*F, rng);
      CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
      CHECK(F->mul(a, b) == F->mul(b, a));
      if (!F->is_zero(a)) CHECK(F->is_one(F->mul(a, F->inv(a))));
      CHECK(F->frobenius(a) == F->pow(a, p));
      CHECK(F->is_zero(F->add(a, F->neg(a))));
    }
  }
}

TEST_CASE("frobenius^e is the identity (exhaustive)") {
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {3, 4}, {5, 2}, {7, 2}, {3, 6}}) {
    auto F = Field::make(p, e);
    bool ok = true;
    for (std::uint64_t i = 0; i < F->size(); ++i) {
      const Elem a = F->from_index(i);
      ok &= F->frobenius(a, e) == a;
      ok &= F->frobenius(a, e) == F->pow(a, F->size());
    }
    CHECK(ok);
  }
}

TEST_CASE("generators against enumeration of powers") {
  auto check_order = [](const Field& F, const Elem& g) {
    std::set<std::uint64_t> seen;
    Elem x = F.one();
    for (std::uint64_t k = 0; k < F.size() - 1; ++k) {
      seen.insert(F.index(x));
      x = F.mul(x, g);
    }
    return seen.size() == F.size() - 1;
  };
  auto F7 = Field::make(7, 1);
  CHECK(find_generator(*F7) == F7->from_int(3));
  CHECK(check_order(*F7, F7->from_int(3)));
  auto F3 = Field::make(3, 1);
  CHECK(find_generator(*F3) == F3->from_int(2));
  auto F9 = Field::make(3, 2, std::vector<std::int64_t>{1, 0, 1});
  const Elem g9 = find_generator(*F9);
  CHECK(g9 == F9->add(F9->gen(), F9->one()));  // u + 1
  CHECK(check_order(*F9, g9));
  auto data = mult_generator(*F9);
  for (std::uint64_t i = 1; i < 9; ++i) {
    const Elem a = F9->from_index(i);
    CHECK(F9->pow(data.generator, data.log(*F9, a)) == a);
  }
  CHECK_THROWS_AS(mult_generator(*Field::make(3, 13)), Error);
}

TEST_CASE("trace: F_9/F_3 and transitivity through F_81") {
  auto F3 = Field::make(3, 1);
  auto F9 = Field::make(3, 2, std::vector<std::int64_t>{1, 0, 1});
  Tower t93(F3, F9);
  const Elem u = F9->gen();
  // direct sum of conjugates u + u^3
  CHECK(F9->is_zero(F9->add(u, F9->pow(u, 3))));
  CHECK(F3->is_zero(t93.trace(u)));
  CHECK(t93.embed(F3->from_int(2)) == F9->from_int(2));
  CHECK(t93.embed(F3->zero()) == F9->zero());
  CHECK(t93.embed(F3->one()) == F9->one());

  auto F81 = Field::make(3, 4);
  Tower t81_9(F9, F81), t81_3(F3, F81);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const Elem a = random_elem(*F81, rng);
    CHECK(t81_3.trace(a) == t93.trace(t81_9.trace(a)));
  }
  // base elements: Tr(a) = s*a
  for (std::uint64_t i = 0; i < 9; ++i) {
    const Elem a = F9->from_index(i);
    CHECK(t81_9.trace(t81_9.embed(a)) == F9->scale(a, 2));
  }
}

TEST_CASE("trace kernels have q^{s-1} elements; trace_map agrees") {
  for (auto [p, e, s] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
           {3, 1, 2}, {3, 1, 8}, {3, 2, 4}, {3, 2, 2}, {5, 1, 3}, {5, 2, 2}, {7, 1, 2}, {3, 4, 2}}) {
    auto base = Field::make(p, e);
    Tower t = Tower::over(base, s);
    std::uint64_t kernel = 0;
    bool linear_ok = true;
    std::set<std::uint64_t> image;
    for (std::uint64_t i = 0; i < t.top()->size(); ++i) {
      const Elem a = t.top()->from_index(i);
      const Elem tr = t.trace(a);
      kernel += base->is_zero(tr);
      image.insert(base->index(tr));
      linear_ok &= t.trace_map().apply(a) == tr;
    }
    CHECK(kernel == t.top()->size() / base->size());
    CHECK(image.size() == base->size());
    CHECK(linear_ok);
  }
}

TEST_CASE("embed is injective and multiplicative (exhaustive)") {
  for (auto [p, e, s] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
           {3, 2, 2}, {3, 4, 2}, {5, 2, 2}, {7, 2, 2}, {3, 1, 3}}) {
    auto base = Field::make(p, e);
    Tower t = Tower::over(base, s);
    std::set<std::uint64_t> seen;
    bool mult = true, pull = true;
    for (std::uint64_t i = 0; i < base->size(); ++i) {
      const Elem a = base->from_index(i);
      seen.insert(t.top()->index(t.embed(a)));
      auto back = t.pull_back(t.embed(a));
      pull &= back && *back == a;
      for (std::uint64_t j = 0; j < base->size(); j += 3) {
        const Elem b = base->from_index(j);
        mult &= t.embed(base->mul(a, b)) == t.top()->mul(t.embed(a), t.embed(b));
      }
    }
    CHECK(seen.size() == base->size());
    CHECK(mult);
    CHECK(pull);
  }
}

TEST_CASE("towers between different models of F_9 act as isomorphisms") {
  auto A = Field::make(3, 2, std::vector<std::int64_t>{1, 0, 1});
  auto B = Field::make(3, 2, std::vector<std::int64_t>{2, 1, 1});  // x^2 + x + 2
  Tower iso(A, B);
  std::set<std::uint64_t> img;
  for (std::uint64_t i = 0; i < 9; ++i) {
    const Elem a = A->from_index(i);
    img.insert(B->index(iso.embed(a)));
    for (std::uint64_t j = 0; j < 9; ++j) {
      const Elem b = A->from_index(j);
      CHECK(iso.embed(A->add(a, b)) == B->add(iso.embed(a), iso.embed(b)));
      CHECK(iso.embed(A->mul(a, b)) == B->mul(iso.embed(a), iso.embed(b)));
    }
  }
  CHECK(img.size() == 9);
}

TEST_CASE("polynomial toolkit basics") {
  auto F7 = Field::make(7, 1);
  Poly f = Poly::from_ints(F7, {0, -1, 0, 1});  // x^3 - x
  CHECK(f.derivative() == Poly::from_ints(F7, {-1, 0, 3}));
  CHECK(gcd(Poly::from_ints(F7, {-1, 0, 1}), Poly::from_ints(F7, {-1, 1})) == Poly::from_ints(F7, {-1, 1}));
  Matrix C = companion(Poly::from_ints(F7, {-1, 0, 1}));
  CHECK(C.at(0, 0) == F7->zero());
  CHECK(C.at(0, 1) == F7->one());
  CHECK(C.at(1, 0) == F7->one());
  CHECK(C.at(1, 1) == F7->zero());
  CHECK(char_poly(C) == Poly::from_ints(F7, {-1, 0, 1}));
  CHECK_THROWS_AS(Poly(F7).lead(), Error);
}

TEST_CASE("roots match exhaustive evaluation") {
  std::mt19937_64 rng(5);
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{7, 1}, {3, 2}, {5, 2}, {3, 3}}) {
    auto F = Field::make(p, e);
    for (int it = 0; it < 40; ++it) {
      const int d = 1 + static_cast<int>(rng() % 6);
      std::vector<Elem> c(d + 1);
      for (auto& x : c) x = random_elem(*F, rng);
      c[d] = F->one();
      Poly f(F, c);
      std::vector<Elem> oracle;
      for (std::uint64_t i = 0; i < F->size(); ++i)
        if (F->is_zero(f.eval(F->from_index(i)))) oracle.push_back(F->from_index(i));
      CHECK(roots(f) == oracle);
    }
  }
}

TEST_CASE("resultant equals the product over roots for split polynomials") {
  std::mt19937_64 rng(3);
  auto F = Field::make(5, 2);
  for (int it = 0; it < 50; ++it) {
    const int n = 1 + static_cast<int>(rng() % 4), m = 1 + static_cast<int>(rng() % 4);
    const Elem lc = F->from_index(1 + rng() % (F->size() - 1));
    std::vector<Elem> rts;
    Poly a = Poly::constant(F, lc);
    for (int i = 0; i < n; ++i) {
      rts.push_back(random_elem(*F, rng));
      a = a * Poly(F, {F->neg(rts.back()), F->one()});
    }
    std::vector<Elem> bc(m + 1);
    for (auto& x : bc) x = random_elem(*F, rng);
    bc[m] = F->from_index(1 + rng() % (F->size() - 1));
    Poly b(F, bc);
    // Res(a, b) = lc(a)^{deg b} prod b(alpha_i)
    Elem oracle = F->pow(lc, b.degree());
    for (const auto& r : rts) oracle = F->mul(oracle, b.eval(r));
    CHECK(resultant(a, b) == oracle);
  }
}

TEST_CASE("discriminant vanishes iff gcd(g, g') is non-constant") {
  std::mt19937_64 rng(9);
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    auto F = Field::make(p, e);
    for (int it = 0; it < 100; ++it) {
      int d = 2 + static_cast<int>(rng() % 5);
      if (d % static_cast<int>(p) == 0) ++d;
      std::vector<Elem> c(d + 1);
      for (auto& x : c) x = random_elem(*F, rng);
      c[d] = F->from_index(1 + rng() % (F->size() - 1));
      // force repeated roots on every third sample
      Poly g(F, c);
      if (it % 3 == 0) {
        Poly lin(F, {random_elem(*F, rng), F->one()});
        g = g * lin * lin;
        if (g.degree() % static_cast<int>(p) == 0) g = g * lin;
      }
      const bool disc_zero = F->is_zero(discriminant(g));
      const bool common = gcd(g, g.derivative()).degree() > 0;
      CHECK(disc_zero == common);
    }
  }
}

TEST_CASE("squarefree part handles p-th powers") {
  auto F = Field::make(3, 2);
  const Elem a = F->from_index(4), b = F->from_index(7);
  Poly la(F, {F->neg(a), F->one()}), lb(F, {F->neg(b), F->one()});
  Poly f = la * la * la * lb * lb;  // (x-a)^3 (x-b)^2
  CHECK(squarefree_part(f) == (la * lb).monic());
  Poly g = la * la * la;  // derivative vanishes
  CHECK(squarefree_part(g) == la);
  CHECK_FALSE(is_squarefree(g));
  CHECK(is_squarefree(la * lb));
}

TEST_CASE("char poly agrees with det(xI - M) at every point") {
  std::mt19937_64 rng(21);
  auto F = Field::make(7, 1);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 1 + rng() % 6;
    Matrix M(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M.at(i, j) = random_elem(*F, rng);
    const Poly cp = char_poly(M);
    CHECK(cp.degree() == static_cast<int>(n));
    for (std::uint64_t x = 0; x < 7; ++x) {
      const Elem xe = F->from_index(x);
      const Matrix xi = Matrix::identity(F, n).scaled(xe) - M;
      CHECK(cp.eval(xe) == det(xi));
    }
  }
}
