// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "charsum.hpp"

#include "enumerate.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace weillab::charsum {

using ff::Coord;
using ff::Elem;

namespace {

void require_same(const ff::Field& a, const ff::Field& b) {
  if (!a.same_as(b)) fail(ErrorCode::FieldMismatch, a.describe() + " vs " + b.describe());
}

}  // namespace

CycloNumber psi_eval(const AdditiveCharacter& psi, const ff::FieldElement& x) {
  require_same(*psi.field, *x.field());
  return CycloNumber::zeta(psi.field->p(), psi.exponent(x.raw()));
}

MultiplicativeCharacter MultiplicativeCharacter::make(ff::FieldPtr f, std::uint32_t m, std::uint32_t j) {
  if (m == 0 || (f->size() - 1) % m)
    fail(ErrorCode::InvalidArgument,
         "character order " + std::to_string(m) + " does not divide q - 1 = " + std::to_string(f->size() - 1));
  auto gen = std::make_shared<const ff::GeneratorData>(ff::mult_generator(*f));
  return {std::move(f), std::move(gen), m, j % m};
}

std::uint64_t MultiplicativeCharacter::exponent_of(const Elem& x) const {
  const std::uint64_t k = gen->log(*field, x);
  return (k % order) * exponent % order;
}

int MultiplicativeCharacter::sign_at_minus_one() const {
  const std::uint64_t e = exponent_of(field->from_int(-1));
  // chi(-1)^2 = 1, so the exponent is 0 or m/2.
  return e == 0 ? 1 : -1;
}

CycloNumber chi_eval(const MultiplicativeCharacter& chi, const ff::FieldElement& x) {
  require_same(*chi.field, *x.field());
  return CycloNumber::zeta(chi.order, static_cast<std::int64_t>(chi.exponent_of(x.raw())));
}

CycloNumber gauss_sum(const MultiplicativeCharacter& chi, const AdditiveCharacter& psi) {
  require_same(*chi.field, *psi.field);
  if (chi.trivial()) fail(ErrorCode::TrivialCharacter, "Gauss sum of the trivial character");
  const ff::Field& F = *chi.field;
  const std::uint32_t p = F.p();
  const auto N = static_cast<std::uint32_t>(cyclo::lcm(p, chi.order));
  const std::uint64_t sp = N / p, sm = N / chi.order;
  std::vector<std::int64_t> counts(N, 0);
  for (std::uint64_t i = 1; i < F.size(); ++i) {
    const Elem t = F.from_index(i);
    const std::uint64_t k = (chi.exponent_of(t) * sm + psi.exponent(t) * sp) % N;
    --counts[k];
  }
  return CycloNumber::from_exponent_counts(N, counts);
}

std::vector<std::uint64_t> trace_histogram(const ff::PolySpec& f, std::uint32_t s, const ExecConfig& cfg) {
  const ff::Tower tower = ff::Tower::over(f.field(), s);
  const CoordinateForm form(f, tower, tower.trace_map());
  return form.histogram(cfg);
}

namespace {

CycloNumber character_dot(const std::vector<std::uint64_t>& hist, const ff::Field& F, const Elem& t,
                          const AdditiveCharacter& psi) {
  std::vector<std::int64_t> counts(F.p(), 0);
  for (std::uint64_t y = 0; y < hist.size(); ++y) {
    if (!hist[y]) continue;
    counts[psi.exponent(F.mul(t, F.from_index(y)))] += static_cast<std::int64_t>(hist[y]);
  }
  return CycloNumber::from_exponent_counts(F.p(), counts);
}

}  // namespace

CycloNumber inner_sum(const ff::PolySpec& f, const Elem& t, std::uint32_t s, const AdditiveCharacter& psi,
                      const ExecConfig& cfg) {
  f.require_artin_schreier();
  require_same(*f.field(), *psi.field);
  if (f.field()->is_zero(t)) fail(ErrorCode::ZeroArgument, "inner sums need t != 0");
  return character_dot(trace_histogram(f, s, cfg), *f.field(), t, psi);
}

std::string to_string(CountMethod m) {
  switch (m) {
    case CountMethod::CharSum: return "charsum";
    case CountMethod::TraceKernel: return "traceKernel";
    case CountMethod::Naive: return "naive";
  }
  return "?";
}

namespace {

std::uint64_t count_charsum(const ff::PolySpec& f, std::uint32_t r, const AdditiveCharacter& psi,
                            const ExecConfig& cfg) {
  const ff::Field& F = *f.field();
  const auto hist = trace_histogram(f, r, cfg);
  // Total over all t != 0 as one exponent-count vector, then one reduction.
  std::vector<std::int64_t> counts(F.p(), 0);
  for (std::uint64_t ti = 1; ti < F.size(); ++ti) {
    const Elem t = F.from_index(ti);
    for (std::uint64_t y = 0; y < hist.size(); ++y)
      if (hist[y]) counts[psi.exponent(F.mul(t, F.from_index(y)))] += static_cast<std::int64_t>(hist[y]);
  }
  const CycloNumber sum = CycloNumber::from_exponent_counts(F.p(), counts);
  const mpq_class main = mpq_class(mpz_class(std::to_string(sat_pow(F.size(), std::uint64_t{r} * f.nvars()))));
  const mpq_class total = main + sum.rational();
  if (total.get_den() != 1 || total < 0 || !total.get_num().fits_ulong_p())
    fail(ErrorCode::NotRational, "character-sum count is not a nonnegative integer");
  return total.get_num().get_ui();
}

// Evaluates f at every point by field arithmetic; trace by conjugate sums.
std::uint64_t count_trace_kernel(const ff::PolySpec& f, std::uint32_t r, const ExecConfig& cfg) {
  const ff::Tower tower = ff::Tower::over(f.field(), r);
  const ff::Field& K = *tower.top();
  const std::uint32_t n = f.nvars();
  const std::uint64_t Q = K.size(), pts = sat_pow(Q, n);
  cfg.charge(pts, "trace-kernel enumeration");
  std::vector<ff::Term> terms = f.terms();
  for (auto& t : terms) t.coeff = tower.embed(t.coeff);
  const ff::PolySpec fk(tower.top(), n, terms);
  const std::uint64_t chunks = std::min<std::uint64_t>(pts, 64);
  std::vector<std::uint64_t> part(chunks, 0);
  parallel_for(chunks, cfg.threads, [&](std::uint64_t c) {
    std::vector<Elem> x(n);
    for (std::uint64_t i = pts * c / chunks; i < pts * (c + 1) / chunks; ++i) {
      std::uint64_t t = i;
      for (std::uint32_t j = 0; j < n; ++j) {
        x[j] = K.from_index(t % Q);
        t /= Q;
      }
      if (tower.base()->is_zero(tower.trace(fk.eval(x)))) ++part[c];
    }
  });
  std::uint64_t zeros = 0;
  for (auto z : part) zeros += z;
  return f.field()->size() * zeros;
}

std::uint64_t count_naive(const ff::PolySpec& f, std::uint32_t r, const ExecConfig& cfg) {
  const ff::Tower tower = ff::Tower::over(f.field(), r);
  const ff::Field& K = *tower.top();
  const std::uint32_t n = f.nvars();
  const std::uint64_t Q = K.size(), pts = sat_pow(Q, n), pairs = sat_pow(Q, n + 1);
  if (pairs > kNaiveLimit)
    fail(ErrorCode::BudgetExceeded, "naive count needs " + std::to_string(pairs) + " pairs (limit 1e8)");
  cfg.charge(pairs, "naive enumeration");
  // y^q - y for every y, by index.
  std::vector<std::uint64_t> as_map(Q);
  for (std::uint64_t i = 0; i < Q; ++i) {
    const Elem y = K.from_index(i);
    as_map[i] = K.index(K.sub(tower.frob_q(y), y));
  }
  std::vector<ff::Term> terms = f.terms();
  for (auto& t : terms) t.coeff = tower.embed(t.coeff);
  const ff::PolySpec fk(tower.top(), n, terms);
  const std::uint64_t chunks = std::min<std::uint64_t>(pts, 64);
  std::vector<std::uint64_t> part(chunks, 0);
  parallel_for(chunks, cfg.threads, [&](std::uint64_t c) {
    std::vector<Elem> x(n);
    for (std::uint64_t i = pts * c / chunks; i < pts * (c + 1) / chunks; ++i) {
      std::uint64_t t = i;
      for (std::uint32_t j = 0; j < n; ++j) {
        x[j] = K.from_index(t % Q);
        t /= Q;
      }
      const std::uint64_t v = K.index(fk.eval(x));
      for (std::uint64_t y = 0; y < Q; ++y) part[c] += as_map[y] == v;
    }
  });
  std::uint64_t total = 0;
  for (auto z : part) total += z;
  return total;
}

}  // namespace

CountResult count_points(const ff::PolySpec& f, std::uint32_t r, CountMethod method, const ExecConfig& cfg,
                         const Elem* psi_shift) {
  f.require_artin_schreier();
  if (r == 0) fail(ErrorCode::InvalidArgument, "extension degree r must be positive");
  CountResult res;
  res.method = method;
  res.r = r;
  res.n = f.nvars();
  switch (method) {
    case CountMethod::CharSum: {
      AdditiveCharacter psi = AdditiveCharacter::standard(f.field());
      if (psi_shift) psi.shift = *psi_shift;
      if (psi.trivial()) fail(ErrorCode::InvalidArgument, "additive character must be nontrivial");
      res.N = count_charsum(f, r, psi, cfg);
      break;
    }
    case CountMethod::TraceKernel: res.N = count_trace_kernel(f, r, cfg); break;
    case CountMethod::Naive: res.N = count_naive(f, r, cfg); break;
  }
  if (res.N % f.field()->size())
    fail(ErrorCode::Internal, "point count " + std::to_string(res.N) + " is not divisible by q");
  return res;
}

CycloPoly fiber_frobenius_poly(const ff::Poly& f, const Elem& t, const AdditiveCharacter& psi,
                               const ExecConfig& cfg) {
  const ff::PolySpec spec = ff::PolySpec::from_poly(f);
  spec.require_artin_schreier();
  const ff::Field& F = *f.field();
  if (F.is_zero(t)) fail(ErrorCode::ZeroArgument, "fiber at t = 0 is not smooth");
  const int d = f.degree();
  std::uint64_t work = 0;
  for (int j = 1; j < d; ++j) work += sat_pow(F.size(), j);
  cfg.charge(work, "fiber Frobenius polynomial");
  std::vector<CycloNumber> S(d);
  for (int j = 1; j < d; ++j) S[j] = inner_sum(spec, t, j, psi, cfg);
  // k c_k = sum_{j=1}^k S_j c_{k-j}  (S_j = -sum alpha^j)
  CycloPoly c(d);
  c[0] = CycloNumber(1);
  for (int k = 1; k < d; ++k) {
    CycloNumber acc;
    for (int j = 1; j <= k; ++j) acc += S[j] * c[k - j];
    c[k] = acc * CycloNumber(mpq_class(1, k));
  }
  return c;
}

DetCheck det_frobenius_check(const ff::Poly& f, const Elem& t, const AdditiveCharacter& psi,
                             const ExecConfig& cfg) {
  const ff::FieldPtr& fp = f.field();
  const ff::Field& F = *fp;
  const int d = f.degree();
  const ff::Poly df = f.derivative();
  if (df.is_zero()) fail(ErrorCode::CriticalDataUnavailable, "derivative vanishes");
  if (!ff::is_squarefree(df)) fail(ErrorCode::HypothesisViolation, "f' is not square-free");
  if (d % 2 == 0 && (F.size() - 1) % d)
    fail(ErrorCode::HypothesisViolation, "even degree needs d | q - 1 (all d-th roots of unity in F_q)");
  // s = trace f(A_{f'}) = sum of critical values
  const Elem s = ff::eval_at(f, ff::companion(df.monic())).trace();

  DetCheck out;
  const CycloPoly P = fiber_frobenius_poly(f, t, psi, cfg);
  out.actual = (d % 2 == 1) ? P[d - 1] : -P[d - 1];  // (-1)^{d-1} c_{d-1}

  const CycloNumber psi_st = CycloNumber::zeta(F.p(), psi.exponent(F.mul(s, t)));
  const mpz_class q(std::to_string(F.size()));
  if (d % 2 == 1) {
    mpz_class qp;
    mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), (d - 1) / 2);
    out.expected = psi_st * CycloNumber(mpq_class(qp));
  } else {
    const auto rho = MultiplicativeCharacter::quadratic(fp);
    const int eps = (d % 8 == 0 || d % 8 == 2) ? 1 : (((F.size() - 1) / d) % 2 ? -1 : 1);
    const int rho_t = rho.exponent_of(t) ? -1 : 1;
    const int rho_ad = rho.exponent_of(f.lead()) ? -1 : 1;
    mpz_class qp;
    mpz_pow_ui(qp.get_mpz_t(), q.get_mpz_t(), (d - 2) / 2);
    out.expected = psi_st * gauss_sum(rho, psi) * CycloNumber(mpq_class(qp * (rho_t * eps * rho_ad)));
  }
  out.match = out.expected == out.actual;
  return out;
}

}  // namespace weillab::charsum
