// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfunction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bounds.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "tower.hpp"

namespace weillab::lfunction {

using cyclo::CycloNumber;
using cyclo::CycloPoly;
using ff::Field;
using ff::FieldPtr;
using cld = std::complex<long double>;

namespace {

ff::PolySpec embed(const ff::PolySpec& f, const ff::Tower& tw) {
  std::vector<ff::Term> terms;
  for (auto t : f.terms()) {
    t.coeff = tw.embed(t.coeff);
    terms.push_back(std::move(t));
  }
  return ff::PolySpec(tw.top(), f.nvars(), std::move(terms));
}

bool depth_fits(const ff::PolySpec& f, std::uint32_t r, std::uint32_t m, const ExecConfig& cfg) {
  const auto& F = *f.field();
  if (std::uint64_t{F.degree()} * r * m > ff::kMaxDegree) return false;
  return sat_pow(F.size(), std::uint64_t{f.nvars()} * r * m) <= cfg.budget;
}

QPoly one() { return QPoly{mpq_class(1)}; }

// (1 - c T)
QPoly linear(const mpq_class& c) { return QPoly{mpq_class(1), -c}; }

}  // namespace

mpz_class power_sum(const ff::PolySpec& f, std::uint32_t r, std::uint32_t m, const ExecConfig& cfg) {
  if (r == 0 || m == 0) fail(ErrorCode::InvalidArgument, "r and m must be positive");
  f.require_artin_schreier();
  const Field& F = *f.field();
  const std::uint64_t nrm = std::uint64_t{f.nvars()} * r * m;
  cfg.charge(sat_pow(F.size(), nrm), "power sum S_" + std::to_string(m));
  if (std::uint64_t{F.degree()} * r * m > ff::kMaxDegree)
    fail(ErrorCode::BudgetExceeded, "power sum S_" + std::to_string(m) + " needs a field beyond degree 32");
  const ff::Tower tm = ff::Tower::over(f.field(), m);
  const ff::Tower tt = ff::Tower::over(tm.top(), r);
  const charsum::CoordinateForm form(embed(f, tm), tt, tt.trace_map());
  const std::uint64_t A = form.kernel_count(cfg);
  return bounds::mpz_pow(F.size(), nrm) - bounds::mpz_pow(F.size(), m) * mpz_class(static_cast<unsigned long>(A));
}

std::uint32_t reachable_depth(const ff::PolySpec& f, std::uint32_t r, std::uint32_t maxM, const ExecConfig& cfg) {
  std::uint32_t m = 0;
  while (m < maxM && depth_fits(f, r, m + 1, cfg)) ++m;
  return m;
}

std::vector<mpz_class> power_sums(const ff::PolySpec& f, std::uint32_t r, std::uint32_t M, const ExecConfig& cfg) {
  std::vector<mpz_class> S(M);
  // Independent per m; the largest m dominates, so split over m.
  parallel_for(M, cfg.threads, [&](std::uint64_t i) {
    ExecConfig inner = cfg;
    inner.threads = 1;
    S[i] = power_sum(f, r, static_cast<std::uint32_t>(i + 1), inner);
  });
  return S;
}

QPoly series_from_power_sums(const std::vector<mpz_class>& S) {
  // k a_k = sum_{j=1}^k S_j a_{k-j}
  const std::size_t M = S.size();
  QPoly a(M + 1);
  a[0] = 1;
  for (std::size_t k = 1; k <= M; ++k) {
    mpq_class acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += mpq_class(S[j - 1]) * a[k - j];
    a[k] = acc / static_cast<long>(k);
  }
  return a;
}

QPoly truncated_series(const ff::PolySpec& f, std::uint32_t r, std::uint32_t M, const ExecConfig& cfg) {
  return series_from_power_sums(power_sums(f, r, M, cfg));
}

RationalT normalize(QPoly num, QPoly den) {
  cyclo::trim(num);
  cyclo::trim(den);
  if (den.empty()) fail(ErrorCode::DivisionByZero, "zero denominator");
  if (num.empty()) return RationalT{QPoly{}, one()};
  const QPoly g = cyclo::gcd(num, den);
  if (cyclo::degree(g) > 0) {
    num = cyclo::divmod(num, g).first;
    den = cyclo::divmod(den, g).first;
  }
  if (den[0] == 0) fail(ErrorCode::InvalidArgument, "rational function with a pole at T = 0");
  const mpq_class c = den[0];
  return RationalT{cyclo::scale(num, 1 / c), cyclo::scale(den, 1 / c)};
}

QPoly expand(const RationalT& r, std::size_t M) {
  QPoly out = cyclo::truncate(cyclo::mul(r.num, cyclo::series_inverse(r.den, M + 1)), M + 1);
  out.resize(M + 1);
  return out;
}

namespace {

// Solve sum_{j=0}^{b} D_j A_{k-j} = 0 for k = a+1..M with D_0 = 1.
std::optional<QPoly> pade_denominator(const QPoly& A, int a, int b) {
  const int M = static_cast<int>(A.size()) - 1;
  auto at = [&](int i) { return i >= 0 && i <= M ? A[i] : mpq_class(0); };
  const int rows = M - a;
  std::vector<std::vector<mpq_class>> sys(rows, std::vector<mpq_class>(b + 1));
  for (int k = a + 1; k <= M; ++k) {
    auto& row = sys[k - a - 1];
    for (int j = 1; j <= b; ++j) row[j - 1] = at(k - j);
    row[b] = -at(k);  // right-hand side
  }
  // Gaussian elimination; free unknowns are set to zero.
  std::vector<int> pivcol;
  int prow = 0;
  for (int c = 0; c < b && prow < rows; ++c) {
    int piv = -1;
    for (int i = prow; i < rows; ++i)
      if (sys[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(sys[piv], sys[prow]);
    const mpq_class inv = 1 / sys[prow][c];
    for (auto& x : sys[prow]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == prow || sys[i][c] == 0) continue;
      const mpq_class fct = sys[i][c];
      for (int j = c; j <= b; ++j) sys[i][j] -= fct * sys[prow][j];
    }
    pivcol.push_back(c);
    ++prow;
  }
  for (int i = prow; i < rows; ++i)
    if (sys[i][b] != 0) return std::nullopt;
  QPoly D(b + 1, mpq_class(0));
  D[0] = 1;
  for (int i = 0; i < prow; ++i) D[pivcol[i] + 1] = sys[i][b];
  return D;
}

}  // namespace

RationalT pade_reconstruct(const QPoly& series, int numBound, int denBound) {
  if (numBound < 0 || denBound < 0) fail(ErrorCode::InvalidArgument, "negative degree bound");
  const int M = static_cast<int>(series.size()) - 1;
  if (M < numBound + denBound + 2)
    fail(ErrorCode::InvalidArgument, "series depth " + std::to_string(M) + " is below numBound + denBound + 2 = " +
                                         std::to_string(numBound + denBound + 2));
  if (series.empty() || series[0] == 0) fail(ErrorCode::InvalidArgument, "series must start with a nonzero term");
  for (int total = 0; total <= numBound + denBound; ++total) {
    for (int b = std::max(0, total - numBound); b <= std::min(denBound, total); ++b) {
      const int a = total - b;
      const auto D = pade_denominator(series, a, b);
      if (!D) continue;
      QPoly N = cyclo::truncate(cyclo::mul(*D, series), static_cast<std::size_t>(a) + 1);
      RationalT r = normalize(N, *D);
      if (expand(r, M) == series) return r;
    }
  }
  fail(ErrorCode::NoSolution, "no rational function with numerator degree <= " + std::to_string(numBound) +
                                  " and denominator degree <= " + std::to_string(denBound) + " matches the series");
}

LocalFactor local_factor_zero(std::uint32_t d, std::uint32_t r, const charsum::AdditiveCharacter& psi) {
  if (d == 0 || r == 0) fail(ErrorCode::InvalidArgument, "d and r must be positive");
  const FieldPtr& F = psi.field;
  const std::uint64_t q = F->size();
  const std::uint32_t e = std::gcd(d, r);
  LocalFactor out{one(), (q - 1) % d == 0};
  if (e == 1) return out;
  if ((q - 1) % e != 0)
    fail(ErrorCode::HypothesisViolation,
         "no characters of order " + std::to_string(e) + " over F_" + std::to_string(q));
  CycloPoly prod{CycloNumber(1)};
  for (std::uint32_t j = 1; j < e; ++j) {
    const auto chi = charsum::MultiplicativeCharacter::make(F, e, j);
    const CycloNumber g = charsum::gauss_sum(chi, psi).pow(r);
    prod = cyclo::poly_mul(prod, CycloPoly{CycloNumber(1), -g});
  }
  const auto rat = cyclo::to_rational(prod);
  if (!rat) fail(ErrorCode::Internal, "local factor at 0 is not rational");
  out.poly = *rat;
  return out;
}

LocalFactor local_factor_infinity(const ff::Poly& f, std::uint32_t r) {
  if (r == 0) fail(ErrorCode::InvalidArgument, "r must be positive");
  const Field& F = f.F();
  const int d = f.degree();
  if (d < 1) fail(ErrorCode::InvalidArgument, "f must be nonconstant");
  const ff::Poly df = f.derivative();
  if (df.is_zero() || !ff::is_squarefree(df)) fail(ErrorCode::HypothesisViolation, "f' is not square-free");
  const int m = std::max(0, ff::gcd(f, df).degree());
  LocalFactor out{one(), static_cast<int>(ff::roots(df).size()) == df.degree()};
  if (r % 2) return out;
  const std::uint64_t q = F.size();
  const long rho_minus1 = ((q - 1) / 2) % 2 ? -1 : 1;
  mpz_class c;
  mpz_pow_ui(c.get_mpz_t(), mpz_class(rho_minus1 * static_cast<long>(q)).get_mpz_t(), r / 2);
  const std::uint32_t p = F.p();
  unsigned k = 0;
  if (r % (2 * p) == 0)
    k = static_cast<unsigned>(d - 1);
  else if (r % p != 0 && m > 0)
    k = static_cast<unsigned>(m);
  out.poly = cyclo::pow(linear(mpq_class(c)), k);
  return out;
}

std::vector<cld> reciprocal_roots(const QPoly& a0, long double scale) {
  QPoly a = a0;
  cyclo::trim(a);
  if (a.empty() || a[0] == 0) fail(ErrorCode::InvalidArgument, "reciprocal roots need a(0) != 0");
  // Multiplicities do not matter for moduli; the square-free part keeps the
  // iteration well conditioned.
  a = cyclo::squarefree_part(a);
  const int s = cyclo::degree(a);
  if (s <= 0) return {};
  // Reciprocal roots are the roots of sum a_k z^{s-k}; with z = scale*u the
  // coefficient of u^j is a_{s-j} scale^j.
  std::vector<cld> c(s + 1);
  long double sp = 1;
  for (int j = 0; j <= s; ++j) {
    c[j] = cld(a[s - j].get_d() * sp, 0);
    sp *= scale;
  }
  const cld lead = c[s];
  for (auto& x : c) x /= lead;
  auto evalp = [&](cld u, cld& dp) {
    cld v = c[s];
    dp = 0;
    for (int j = s - 1; j >= 0; --j) {
      dp = dp * u + v;
      v = v * u + c[j];
    }
    return v;
  };
  std::vector<cld> z(s);
  const long double pi = std::acos(-1.0L);
  for (int k = 0; k < s; ++k) z[k] = std::polar(1.0L, 2 * pi * k / s + 0.4L);
  bool converged = false;
  for (int it = 0; it < 200 && !converged; ++it) {
    long double maxstep = 0;
    for (int k = 0; k < s; ++k) {
      cld dp;
      const cld v = evalp(z[k], dp);
      if (std::abs(v) == 0) continue;
      const cld ratio = v / dp;
      cld sum = 0;
      for (int j = 0; j < s; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      const cld step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      maxstep = std::max(maxstep, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    converged = maxstep < 1e-16L;
  }
  long double norm = 0;
  for (const auto& x : c) norm += std::abs(x);
  for (const auto& u : z) {
    cld dp;
    long double mag = 0, pw = 1;
    for (int j = 0; j <= s; ++j) {
      mag += std::abs(c[j]) * pw;
      pw *= std::abs(u);
    }
    if (std::abs(evalp(u, dp)) > 1e-9L * std::max(norm, mag))
      fail(ErrorCode::RootFindingUnstable, "root refinement did not meet the residual check");
  }
  for (auto& u : z) u *= scale;
  return z;
}

namespace {

// Removes (1 - c T)^k from a; returns k.
unsigned strip_linear(QPoly& a, const mpq_class& c) {
  unsigned k = 0;
  for (;;) {
    if (cyclo::degree(a) < 1) return k;
    auto [qq, rr] = cyclo::divmod(a, linear(c));
    if (!rr.empty()) return k;
    a = std::move(qq);
    ++k;
  }
}

std::vector<long double> moduli(const QPoly& a, long double scale) {
  std::vector<long double> out;
  for (const auto& z : reciprocal_roots(a, scale)) out.push_back(std::abs(z));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PurePart assemble_pure_part(const RationalT& L, const ff::Poly& f, std::uint32_t r,
                            const classify::ClassificationReport& rep, const charsum::AdditiveCharacter& psi) {
  const Field& F = f.F();
  const std::uint64_t q = F.size();
  const std::uint32_t d = static_cast<std::uint32_t>(f.degree());
  PurePart out;
  out.P0 = local_factor_zero(d, r, psi);
  out.Pinf = local_factor_infinity(f, r);
  out.structurePredicted = rep.applicableBound != classify::Bound::WeilOnly;
  const QPoly P = cyclo::mul(out.P0.poly, out.Pinf.poly);
  const bool localValid = out.P0.hypothesesHold && out.Pinf.hypothesesHold;

  QPoly num = L.num, den = L.den;
  const mpq_class qd = static_cast<unsigned long>(q);
  auto qpow = [&](unsigned k) { return mpq_class(bounds::mpz_pow(q, k)); };

  if (out.structurePredicted && localValid) {
    auto [qq, rr] = cyclo::divmod(num, P);
    if (!rr.empty())
      fail(ErrorCode::NotDivisible, "local factors P_0 P_inf do not divide the numerator of L");
    num = std::move(qq);
    if (rep.beta != classify::Beta::None) {
      bool found = false;
      for (bool pole : {true, false})
        for (int beta : {1, -1}) {
          if (found) break;
          QPoly& side = pole ? den : num;
          if (const unsigned k = strip_linear(side, beta * qpow(r / 2 + 1))) {
            out.stripped.push_back({beta, r + 2, pole, k});
            found = true;
          }
        }
      if (!found) fail(ErrorCode::NotDivisible, "predicted factor (1 -+ q^{r/2+1} T) is absent from L");
    }
  } else {
    // No structural guarantee: divide as rational functions and peel off
    // the linear trivial factors of weight r and r+2 that are visible.
    RationalT R = normalize(num, cyclo::mul(den, P));
    num = R.num;
    den = R.den;
    if (r % 2 == 0)
      for (unsigned w : {r, r + 2})
        for (int beta : {1, -1})
          for (bool pole : {true, false}) {
            QPoly& side = pole ? den : num;
            if (const unsigned k = strip_linear(side, beta * qpow(w / 2)))
              out.stripped.push_back({beta, w, pole, k});
          }
  }
  (void)qd;
  out.Q = normalize(num, den);

  out.targetModulus = std::pow(static_cast<long double>(q), (r + 1) / 2.0L);
  out.zeroModuli = moduli(out.Q.num, out.targetModulus);
  out.poleModuli = moduli(out.Q.den, out.targetModulus);
  out.pure = true;
  for (const auto* v : {&out.zeroModuli, &out.poleModuli})
    for (long double m : *v)
      if (std::abs(m - out.targetModulus) > 1e-6L * out.targetModulus) out.pure = false;
  out.degreeBound = bounds::c_constant(d, r);
  out.withinDegreeBound = cyclo::degree(out.Q.num) + cyclo::degree(out.Q.den) <= out.degreeBound;
  return out;
}

std::uint32_t default_depth(std::uint32_t d, std::uint32_t r) {
  const mpz_class C = bounds::c_constant(d, r);
  const mpz_class M = 2 * (C + (d - 1) + std::gcd(d, r) + 2);
  return M > 64 ? 64u : static_cast<std::uint32_t>(M.get_ui());
}

LFunctionData compute_lfunction(const ff::Poly& f, std::uint32_t r, std::uint32_t depth, const ExecConfig& cfg,
                                const charsum::AdditiveCharacter& psi) {
  const ff::PolySpec spec = ff::PolySpec::from_poly(f);
  spec.require_artin_schreier();
  const std::uint32_t d = static_cast<std::uint32_t>(f.degree());
  LFunctionData out;
  out.r = r;
  out.requestedDepth = depth ? depth : default_depth(d, r);
  out.depth = reachable_depth(spec, r, out.requestedDepth, cfg);
  out.classification = classify::classify_monodromy(f, r);
  out.powerSums = power_sums(spec, r, out.depth, cfg);
  out.series = series_from_power_sums(out.powerSums);

  // Q has at most C zeros and poles together; local factors add gcd(d,r)-1
  // and d-1 zeros; one more on each side for a trivial linear factor.
  const mpz_class C = bounds::c_constant(d, r);
  const int c = C > 1000 ? 1000 : static_cast<int>(C.get_si());
  out.numBound = c + static_cast<int>(std::gcd(d, r)) - 1 + static_cast<int>(d) - 1 + 1;
  out.denBound = c + 1;
  const int M = static_cast<int>(out.depth);
  while (out.numBound + out.denBound + 2 > M && (out.numBound > 0 || out.denBound > 0)) {
    if (out.numBound >= out.denBound)
      --out.numBound;
    else
      --out.denBound;
  }
  if (out.numBound + out.denBound + 2 > M) {
    out.status = "partial";
    out.message = "budget allows only " + std::to_string(M) + " power sums";
    return out;
  }
  try {
    out.L = pade_reconstruct(out.series, out.numBound, out.denBound);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSolution) throw;
    out.status = out.depth < out.requestedDepth ? "partial" : "noSolution";
    out.message = e.what();
    return out;
  }
  try {
    out.pure = assemble_pure_part(*out.L, f, r, out.classification, psi);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDivisible)
      out.status = "notDivisible";
    else if (e.code() == ErrorCode::RootFindingUnstable)
      out.status = "rootFindingUnstable";
    else
      throw;
    out.message = e.what();
    return out;
  }
  out.status = out.depth < out.requestedDepth ? "partial" : "complete";
  if (out.status == "partial") out.message = "reconstructed from " + std::to_string(M) + " of " +
                                             std::to_string(out.requestedDepth) + " power sums";
  return out;
}

FunctionalEquation functional_equation_check(const ff::Poly& f, std::uint32_t r, std::uint32_t depth,
                                             const ExecConfig& cfg) {
  const auto psi = charsum::AdditiveCharacter::standard(f.field());
  const auto rep = classify::classify_monodromy(f, r);
  if (rep.applicableBound == classify::Bound::WeilOnly)
    fail(ErrorCode::HypothesisViolation, "trivial factors P, P' are not known to vanish");
  auto run = [&](const ff::Poly& g) {
    const LFunctionData data = compute_lfunction(g, r, depth, cfg, psi);
    if (!data.pure) fail(ErrorCode::NoSolution, "L-function pipeline ended with status " + data.status);
    return data.pure->Q;
  };
  FunctionalEquation out;
  out.Q = run(f);
  out.Qstar = run(-f);

  // Q(T) = N/D; T^s q^{(r+1)s}/c_s Q(q^{-(r+1)}/T) with s = deg N - deg D and
  // c_s = lc(N)/lc(D) equals q^{(r+1)s}/c_s * Nrev(T)/Drev(T), where
  // Nrev(T) = sum n_k q^{-(r+1)k} T^{deg N - k}.
  const std::uint64_t q = f.F().size();
  const int dn = cyclo::degree(out.Q.num), dd = cyclo::degree(out.Q.den);
  auto reversed = [&](const QPoly& a, int deg) {
    QPoly rev(deg + 1);
    for (int k = 0; k <= deg; ++k) rev[deg - k] = a[k] / mpq_class(bounds::mpz_pow(q, std::uint64_t(r + 1) * k));
    return rev;
  };
  if (dn < 0) return out;
  const int s = dn - dd;
  const mpq_class cs = out.Q.num[dn] / out.Q.den[dd];
  mpq_class factor = 1 / cs;
  if (s >= 0)
    factor *= mpq_class(bounds::mpz_pow(q, std::uint64_t(r + 1) * s));
  else
    factor /= mpq_class(bounds::mpz_pow(q, std::uint64_t(r + 1) * -s));
  const QPoly rhsNum = cyclo::scale(reversed(out.Q.num, dn), factor);
  const QPoly rhsDen = reversed(out.Q.den, dd);
  // Compare N*/D* with rhsNum/rhsDen by cross-multiplication.
  out.holds = cyclo::mul(out.Qstar.num, rhsDen) == cyclo::mul(rhsNum, out.Qstar.den);
  return out;
}

HodgeMultiplicities hodge_multiplicities(std::uint32_t d, std::uint32_t n) {
  if (d < 2 || n < 1) fail(ErrorCode::InvalidArgument, "hodge multiplicities need d >= 2, n >= 1");
  const mpz_class top = bounds::mpz_pow(d - 1, n);
  const mpz_class sign = n % 2 ? -1 : 1;
  const mpz_class diff = top - sign;
  if (diff % d != 0)
    fail(ErrorCode::NonIntegerMultiplicity, "d does not divide (d-1)^n - (-1)^n");
  const mpz_class nchi = diff / d;
  if (!nchi.fits_slong_p()) fail(ErrorCode::InvalidArgument, "multiplicity overflows 64 bits");
  HodgeMultiplicities h;
  h.d = d;
  h.n = n;
  h.nontrivial = nchi.get_si();
  h.trivial = sign.get_si() + h.nontrivial;
  return h;
}

}  // namespace weillab::lfunction
