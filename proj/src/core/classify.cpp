// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "classify.hpp"

#include <algorithm>
#include <functional>

#include "error.hpp"
#include "tower.hpp"

namespace weillab::classify {

using ff::Field;
using ff::FieldPtr;

namespace {

void require_shape(const Poly& f, int min_degree) {
  if (f.degree() < min_degree)
    fail(ErrorCode::InvalidArgument, "polynomial of degree " + std::to_string(f.degree()) +
                                         " (need at least " + std::to_string(min_degree) + ")");
  if (f.degree() % static_cast<int>(f.F().p()) == 0)
    fail(ErrorCode::DegreeDivisibleByP, "p divides deg f");
}

Matrix critical_matrix(const Poly& f) {
  const Poly df = f.derivative();
  if (df.is_zero()) fail(ErrorCode::DegenerateDerivative, "f' is zero");
  return ff::eval_at(f, ff::companion(df.monic()));
}

// B ⊗ I - I ⊗ B: eigenvalues are all differences s_i - s_j.
Matrix difference_matrix(const Matrix& B) {
  const auto I = Matrix::identity(B.field(), B.rows());
  return ff::kron(B, I) - ff::kron(I, B);
}

// c(T) / T^k, which must be exact.
Poly strip_t_power(const Poly& c, int k) {
  const Field& F = c.F();
  for (int i = 0; i < k; ++i)
    if (!F.is_zero(c.coeff(i))) fail(ErrorCode::Internal, "difference matrix lost its zero eigenvalues");
  return Poly(c.field(), std::vector<Elem>(c.coeffs().begin() + k, c.coeffs().end()));
}

// Monic square root, if c is a perfect square.
std::optional<Poly> poly_sqrt(const Poly& c) {
  const Field& F = c.F();
  if (c.degree() < 0 || c.degree() % 2 || !F.is_one(c.lead())) return std::nullopt;
  const int k = c.degree() / 2;
  std::vector<Elem> g(k + 1, F.zero());
  g[k] = F.one();
  const Elem inv2 = F.inv(F.from_int(2));
  for (int i = k - 1; i >= 0; --i) {
    // coefficient of T^{k+i} in g^2 is 2 g_i + sum_{j+l=k+i, i<j,l<k} g_j g_l
    Elem acc = c.coeff(k + i);
    for (int j = i + 1; j < k; ++j) {
      const int l = k + i - j;
      if (l > i && l < k) acc = F.sub(acc, F.mul(g[j], g[l]));
    }
    g[i] = F.mul(acc, inv2);
  }
  Poly root(c.field(), g);
  if (!(root * root == c)) return std::nullopt;
  return root;
}

Matrix kronecker_sum(const Matrix& B, std::uint32_t k) {
  Matrix K = B;
  std::size_t dim = B.rows();
  const auto I = Matrix::identity(B.field(), B.rows());
  for (std::uint32_t i = 1; i < k; ++i) {
    K = ff::kron(K, I) + ff::kron(Matrix::identity(B.field(), dim), B);
    dim *= B.rows();
  }
  return K;
}

}  // namespace

std::string to_string(Reason r) {
  switch (r) {
    case Reason::Ok: return "ok";
    case Reason::Fails: return "fails";
    case Reason::PrecondCharTooSmall: return "PrecondCharTooSmall";
  }
  return "?";
}

CriticalData critical_data(const Poly& f) {
  require_shape(f, 2);
  Matrix B = critical_matrix(f);
  const Elem s = B.trace();
  Poly h = ff::char_poly(B);
  const Poly df = f.derivative();
  return CriticalData{std::move(B), s, std::move(h), ff::is_squarefree(df),
                      std::max(0, ff::gcd(f, df).degree())};
}

SlResult sl_hypothesis(const Poly& f) {
  require_shape(f, 2);
  const int d = f.degree();
  if (f.F().p() <= static_cast<std::uint32_t>(2 * d - 1)) return {false, Reason::PrecondCharTooSmall, std::nullopt};
  const Matrix B = critical_matrix(f);
  Poly g = strip_t_power(ff::char_poly(difference_matrix(B)), d - 1);
  const bool ok = !f.F().is_zero(ff::discriminant(g));
  return {ok, ok ? Reason::Ok : Reason::Fails, std::move(g)};
}

QuasiOddData quasi_odd(const Poly& f) {
  require_shape(f, 1);
  const Field& F = f.F();
  const int d = f.degree();
  // a = -2 c_{d-1} / (d c_d), b = 2 f(a/2)
  const Elem a = F.neg(F.div(F.mul(F.from_int(2), f.coeff(d - 1)), F.mul(F.from_int(d), f.lead())));
  const Elem b = F.mul(F.from_int(2), f.eval(F.div(a, F.from_int(2))));
  const Poly a_minus_x(f.field(), {a, F.neg(F.one())});
  const bool ok = f.compose(a_minus_x) == Poly::constant(f.field(), b) - f;
  return {a, b, ok};
}

SpResult sp_hypothesis(const Poly& f) {
  const QuasiOddData qo = quasi_odd(f);
  if (!qo.isQuasiOdd) fail(ErrorCode::NotQuasiOdd, "f is not quasi-odd");
  const Field& F = f.F();
  const bool b0 = F.is_zero(qo.b);
  const int d = f.degree();
  if (F.p() <= static_cast<std::uint32_t>(2 * d - 1)) return {false, b0, Reason::PrecondCharTooSmall};

  // Work with f - b/2, whose critical values are symmetric about 0.
  const Poly f0 = f - Poly::constant(f.field(), F.div(qo.b, F.from_int(2)));
  const Matrix B = critical_matrix(f0);
  const Poly h = ff::char_poly(B);
  // H(T) = 2^{d-1} h(T/2): roots 2 s_i = s_i - s_{d-i}.
  std::vector<Elem> hc(h.coeffs());
  Elem pw = F.one();
  for (int k = static_cast<int>(hc.size()) - 1; k >= 0; --k) {
    hc[k] = F.mul(hc[k], pw);
    pw = F.mul(pw, F.from_int(2));
  }
  const Poly H(f.field(), hc);
  const Poly rest = strip_t_power(ff::char_poly(difference_matrix(B)), d - 1);
  const auto [quo, rem] = ff::divmod(rest, H);
  if (!rem.is_zero()) return {false, b0, Reason::Fails};
  const auto g = poly_sqrt(quo);
  if (!g) return {false, b0, Reason::Fails};
  const bool ok = !F.is_zero(ff::discriminant(H * *g));
  return {ok, b0, ok ? Reason::Ok : Reason::Fails};
}

bool kronecker_sum_singular(const Matrix& B, std::uint32_t r) {
  if (r == 0) fail(ErrorCode::InvalidArgument, "r must be positive");
  const std::size_t n = B.rows();
  if (n == 0) return false;
  if (sat_pow(n, r) > kMaxKroneckerSize)
    fail(ErrorCode::MatrixTooLarge, "Kronecker sum of size " + std::to_string(n) + "^" + std::to_string(r));
  const Field& F = *B.field();
  if (r == 1) return F.is_zero(ff::det(B));
  // det(K_{r-1} ⊗ I + I ⊗ B) = ± det h(-K_{r-1}) with h the char poly of B,
  // which keeps the matrix at size n^{r-1}.
  const Matrix K = kronecker_sum(B, r - 1);
  const Matrix X = ff::eval_at(ff::char_poly(B), K.scaled(F.neg(F.one())));
  return F.is_zero(ff::det(X));
}

bool sum_hypersurface_nonsingular(const Poly& f, std::uint32_t r) {
  const CriticalData cd = critical_data(f);
  if (!cd.squarefreeDerivative)
    fail(ErrorCode::HypothesisViolation, "f' is not square-free");
  return !kronecker_sum_singular(cd.B, r);
}

std::string to_string(MonodromyClass c) {
  switch (c) {
    case MonodromyClass::SL: return "SL";
    case MonodromyClass::GL_p: return "GL_p";
    case MonodromyClass::GL_2: return "GL_2";
    case MonodromyClass::GL_2p: return "GL_2p";
    case MonodromyClass::Sp: return "Sp";
    case MonodromyClass::muP_Sp: return "muP_Sp";
    case MonodromyClass::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(Beta b) {
  switch (b) {
    case Beta::None: return "none";
    case Beta::Plus1: return "plus1";
    case Beta::Pm1Unknown: return "pm1-unknown";
  }
  return "?";
}

// External names of the bounds are part of the report schema.
std::string to_string(Bound b) {
  switch (b) {
    case Bound::Theorem: return "improved";
    case Bound::SpecialLinear: return "specialLinear";
    case Bound::Symplectic: return "symplectic";
    case Bound::WeilOnly: return "weilOnly";
  }
  return "?";
}

std::vector<mpz_class> ClassificationReport::main_terms() const {
  mpz_class base, shift;
  mpz_ui_pow_ui(base.get_mpz_t(), q, r);
  if (beta == Beta::None) return {base};
  mpz_ui_pow_ui(shift.get_mpz_t(), q, r / 2 + 1);
  if (beta == Beta::Plus1) return {base + shift};
  return {base + shift, base - shift};
}

ClassificationReport classify_monodromy(const Poly& f, std::uint32_t r) {
  if (r == 0) fail(ErrorCode::InvalidArgument, "r must be positive");
  require_shape(f, 1);
  const Field& F = f.F();
  const std::uint32_t d = static_cast<std::uint32_t>(f.degree());
  ClassificationReport rep;
  rep.q = F.size();
  rep.d = d;
  rep.r = r;
  rep.flags.pGreaterThan2dMinus1 = F.p() > 2 * d - 1;
  rep.flags.dDividesQMinus1 = (rep.q - 1) % d == 0;

  if (d == 1) {
    // No critical points: the count is exactly q^r.
    rep.flags.derivSquarefree = true;
    rep.flags.sumHypersurfaceNonsingular = true;
    rep.applicableBound = Bound::Theorem;
    return rep;
  }

  const CriticalData cd = critical_data(f);
  rep.s = cd.s;
  rep.flags.derivSquarefree = cd.squarefreeDerivative;
  if (cd.squarefreeDerivative) {
    try {
      rep.flags.sumHypersurfaceNonsingular = !kronecker_sum_singular(cd.B, r);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MatrixTooLarge) throw;
    }
  }
  const QuasiOddData qo = quasi_odd(f);
  rep.flags.quasiOdd = qo.isQuasiOdd;
  if (qo.isQuasiOdd) rep.b = qo.b;
  const SlResult sl = sl_hypothesis(f);
  rep.flags.slCriterion = sl.holds;
  std::optional<SpResult> sp;
  if (qo.isQuasiOdd) {
    sp = sp_hypothesis(f);
    rep.flags.spCriterion = sp->holds;
  }

  const bool s_zero = F.is_zero(cd.s);
  bool decided = false;
  if (sp && sp->holds) {
    rep.monodromyClass = sp->bIsZero ? MonodromyClass::Sp : MonodromyClass::muP_Sp;
    rep.applicableBound = Bound::Symplectic;
    if (r % 2 == 0 && r <= d - 1 && (sp->bIsZero || r % F.p() == 0)) rep.beta = Beta::Plus1;
    decided = true;
  } else if (sl.holds) {
    if (d % 2)
      rep.monodromyClass = s_zero ? MonodromyClass::SL : MonodromyClass::GL_p;
    else
      rep.monodromyClass = s_zero ? MonodromyClass::GL_2 : MonodromyClass::GL_2p;
    // For d = 2 the representation is one-dimensional and the bound does
    // not follow from the group; fall through to the generic test.
    if (d >= 3) {
      rep.applicableBound = Bound::SpecialLinear;
      if (d % 2 && s_zero && r == d - 1)
        rep.beta = rep.flags.dDividesQMinus1 ? Beta::Plus1 : Beta::Pm1Unknown;
      decided = true;
    }
  }
  if (!decided) {
    const bool generic = cd.squarefreeDerivative && (r % 2 == 1 || rep.flags.sumHypersurfaceNonsingular == true);
    rep.applicableBound = generic ? Bound::Theorem : Bound::WeilOnly;
  }
  return rep;
}

// --- multivariate ------------------------------------------------------------

bool MultivariateReport::applicable(std::uint32_t n, std::uint32_t r) const {
  const bool base = deligne == true && criticalEtale == true && distinctValues == true;
  return base && ((static_cast<std::uint64_t>(n) * r) % 2 == 1 || sumNonsingular == true);
}

namespace {

PolySpec partial(const PolySpec& f, std::uint32_t i) {
  const Field& F = *f.field();
  std::vector<ff::Term> out;
  for (const auto& t : f.terms()) {
    if (t.exps[i] == 0) continue;
    ff::Term u = t;
    u.coeff = F.mul(t.coeff, F.from_int(t.exps[i]));
    --u.exps[i];
    out.push_back(std::move(u));
  }
  return PolySpec(f.field(), f.nvars(), std::move(out));
}

PolySpec embed(const PolySpec& f, const ff::Tower& tw) {
  std::vector<ff::Term> out;
  for (auto t : f.terms()) {
    t.coeff = tw.embed(t.coeff);
    out.push_back(std::move(t));
  }
  return PolySpec(tw.top(), f.nvars(), std::move(out));
}

// g restricted to x_0..x_{k-1} = prefix, as a polynomial in x_k; variables
// after x_k are set to zero (callers only use k = n-1).
Poly restrict_last(const PolySpec& g, const std::vector<Elem>& prefix) {
  const Field& F = *g.field();
  const std::size_t k = prefix.size();
  std::vector<Elem> c;
  for (const auto& t : g.terms()) {
    Elem v = t.coeff;
    for (std::size_t i = 0; i < k; ++i) v = F.mul(v, F.pow(prefix[i], t.exps[i]));
    const std::uint32_t e = t.exps[k];
    if (c.size() <= e) c.resize(e + 1, F.zero());
    c[e] = F.add(c[e], v);
  }
  return Poly(g.field(), std::move(c));
}

// Common zeros of `eqs` in F^n with the first `fixed.size()` coordinates
// fixed. All free coordinates but the last are enumerated; the last is
// solved by a gcd. Returns false when some fibre is positive-dimensional.
// The visitor returns false to stop early.
bool common_zeros(const std::vector<PolySpec>& eqs, std::uint32_t n, const Field& F, std::vector<Elem> fixed,
                  const ExecConfig& cfg, const std::function<bool(const std::vector<Elem>&)>& visit) {
  const std::size_t free = n - fixed.size();
  if (free == 0) {
    for (const auto& g : eqs)
      if (!F.is_zero(g.eval(fixed))) return true;
    visit(fixed);
    return true;
  }
  const std::size_t outer = free - 1;
  cfg.charge(sat_pow(F.size(), outer), "critical point search");
  std::vector<std::uint64_t> odo(outer, 0);
  std::vector<Elem> prefix = fixed;
  prefix.resize(fixed.size() + outer);
  for (;;) {
    for (std::size_t i = 0; i < outer; ++i) prefix[fixed.size() + i] = F.from_index(odo[i]);
    Poly g(eqs.front().field());
    for (const auto& e : eqs) g = ff::gcd(g, restrict_last(e, prefix));
    if (g.is_zero()) return false;
    for (const Elem& z : ff::roots(g)) {
      std::vector<Elem> pt = prefix;
      pt.push_back(z);
      if (!visit(pt)) return true;
    }
    std::size_t i = 0;
    while (i < outer && ++odo[i] == F.size()) odo[i++] = 0;
    if (i == outer) break;
  }
  return true;
}

bool minimal_field_is(const Field& top, std::uint32_t e, std::uint32_t m, const std::vector<Elem>& xs) {
  for (std::uint32_t k = 1; k < m; ++k) {
    if (m % k) continue;
    bool fixed = true;
    for (const Elem& x : xs)
      if (!(top.frobenius(x, e * k) == x)) {
        fixed = false;
        break;
      }
    if (fixed) return false;
  }
  return true;
}

// Deligne condition for n = 2: the binary leading form is square-free.
bool binary_form_squarefree(const PolySpec& lead) {
  const FieldPtr& fp = lead.field();
  const Field& F = *fp;
  const int d = lead.degree();
  std::vector<Elem> c(d + 1, F.zero());
  for (const auto& t : lead.terms()) c[t.exps[0]] = F.add(c[t.exps[0]], t.coeff);
  const Poly dehom(fp, c);
  if (dehom.degree() < d - 1) return false;  // y^2 divides the form
  return ff::is_squarefree(dehom);
}

}  // namespace

MultivariateReport multivariate_checks(const PolySpec& f, std::uint32_t r, const ExecConfig& cfg,
                                       std::uint32_t searchBound) {
  const std::uint32_t n = f.nvars();
  if (n < 2) fail(ErrorCode::InvalidArgument, "multivariate checks need n >= 2");
  if (r == 0 || searchBound == 0) fail(ErrorCode::InvalidArgument, "r and searchBound must be positive");
  f.require_artin_schreier();
  const FieldPtr& base = f.field();
  const std::uint32_t e = base->degree();
  const std::uint32_t d = static_cast<std::uint32_t>(f.degree());

  MultivariateReport rep;
  rep.searchBound = searchBound;
  rep.expectedCriticalPoints = sat_pow(d - 1, n);

  const PolySpec lead = f.leading_form();
  if (n == 2) {
    rep.deligne = binary_form_squarefree(lead);
  } else {
    std::vector<PolySpec> grads;
    for (std::uint32_t i = 0; i < n; ++i) grads.push_back(partial(lead, i));
    for (std::uint32_t m = 1; m <= searchBound && !rep.deligne; ++m) {
      const ff::Tower tw = ff::Tower::over(base, m);
      const Field& T = *tw.top();
      std::vector<PolySpec> eqs;
      for (const auto& g : grads) eqs.push_back(embed(g, tw));
      // Projective charts: x_0 = .. = x_{k-1} = 0, x_k = 1.
      for (std::uint32_t k = 0; k < n && !rep.deligne; ++k) {
        std::vector<Elem> fixed(k, T.zero());
        fixed.push_back(T.one());
        bool found = false;
        if (!common_zeros(eqs, n, T, fixed, cfg, [&](const std::vector<Elem>&) { return !(found = true); }))
          found = true;  // a whole line of singular points
        if (found) rep.deligne = false;
      }
    }
  }

  std::vector<PolySpec> grads;
  for (std::uint32_t i = 0; i < n; ++i) grads.push_back(partial(f, i));
  std::vector<std::vector<PolySpec>> hess(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) hess[i].push_back(partial(grads[i], j));

  bool not_etale = false, repeated_value = false, infinite = false;
  std::uint64_t found = 0;
  Poly values_poly = Poly::constant(base, base->one());  // prod (T - f(z)) over found z
  for (std::uint32_t m = 1; m <= searchBound && !infinite; ++m) {
    const ff::Tower tw = ff::Tower::over(base, m);
    const Field& T = *tw.top();
    std::vector<PolySpec> eqs;
    for (const auto& g : grads) eqs.push_back(embed(g, tw));
    const PolySpec fm = embed(f, tw);
    std::vector<std::vector<PolySpec>> hm(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (const auto& h : hess[i]) hm[i].push_back(embed(h, tw));
    std::vector<std::uint64_t> vals;
    Poly level = Poly::constant(tw.top(), T.one());
    const bool finite = common_zeros(eqs, n, T, {}, cfg, [&](const std::vector<Elem>& z) {
      if (!minimal_field_is(T, e, m, z)) return true;
      ++found;
      Matrix H(tw.top(), n, n);
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) H.at(i, j) = hm[i][j].eval(z);
      if (T.is_zero(ff::det(H))) not_etale = true;
      const Elem v = fm.eval(z);
      if (!minimal_field_is(T, e, m, {v})) repeated_value = true;
      vals.push_back(T.index(v));
      level = level * Poly(tw.top(), {T.neg(v), T.one()});
      return found <= rep.expectedCriticalPoints;
    });
    if (!finite || found > rep.expectedCriticalPoints) {
      infinite = true;
      break;
    }
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) repeated_value = true;
    // The level product is Galois-stable, so it descends to F_q.
    std::vector<Elem> c;
    for (const Elem& x : level.coeffs()) {
      const auto y = tw.pull_back(x);
      if (!y) fail(ErrorCode::Internal, "critical value polynomial not defined over the base field");
      c.push_back(*y);
    }
    values_poly = values_poly * Poly(base, c);
  }
  rep.criticalPointsFound = found;

  if (infinite || not_etale) {
    rep.criticalEtale = false;
  } else if (rep.deligne == true && found == rep.expectedCriticalPoints) {
    rep.criticalEtale = true;
  }
  if (!infinite) {
    if (repeated_value)
      rep.distinctValues = false;
    else if (rep.criticalEtale == true)
      rep.distinctValues = true;
    if (values_poly.degree() > 0) {
      try {
        if (kronecker_sum_singular(ff::companion(values_poly), r))
          rep.sumNonsingular = false;
        else if (rep.criticalEtale == true)
          rep.sumNonsingular = true;
      } catch (const Error& ex) {
        if (ex.code() != ErrorCode::MatrixTooLarge) throw;
      }
    } else if (rep.criticalEtale == true) {
      rep.sumNonsingular = true;  // no critical points at all
    }
  }
  return rep;
}

}  // namespace weillab::classify
