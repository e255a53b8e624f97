// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "charsum.hpp"
#include "error.hpp"
#include "tower.hpp"

namespace weillab::bounds {

mpz_class mpz_pow(std::uint64_t q, std::uint64_t k) {
  mpz_class base(static_cast<unsigned long>(q)), out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), k);
  return out;
}

bool ScaledRoot::bounds_abs(const mpz_class& x) const {
  if (coeff < 0) return false;
  return x * x <= coeff * coeff * mpz_pow(q, halfExp);
}

mpz_class ScaledRoot::floor() const {
  mpz_class sq = coeff * coeff * mpz_pow(q, halfExp), root;
  mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
  return root;
}

double ScaledRoot::approx() const {
  return coeff.get_d() * std::pow(static_cast<double>(q), static_cast<double>(halfExp) / 2.0);
}

std::string ScaledRoot::str() const {
  std::string e = halfExp % 2 ? std::to_string(halfExp) + "/2" : std::to_string(halfExp / 2);
  return coeff.get_str() + "*" + std::to_string(q) + "^(" + e + ")";
}

namespace {

mpz_class binom(const mpz_class& n, unsigned long k) {
  mpz_class out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

}  // namespace

mpz_class c_constant(std::uint32_t d, std::uint32_t r, std::uint32_t n) {
  if (d < 1 || r < 1 || n < 1) fail(ErrorCode::InvalidArgument, "c_constant needs d, r, n >= 1");
  const mpz_class rank = mpz_pow(d - 1, n);
  mpz_class c = 0;
  for (std::uint32_t i = 0; i <= r; ++i) {
    const long w = std::abs(static_cast<long>(i) - 1);
    if (w == 0) continue;
    c += w * binom(rank + (r - i) - 1, r - i) * binom(rank, i);
  }
  return c;
}

ClassicalBounds classical_bounds(std::uint32_t d, std::uint64_t q, std::uint32_t r) {
  if (q % 2 == 0 || q < 3) fail(ErrorCode::InvalidArgument, "q must be an odd prime power");
  ClassicalBounds b;
  const mpz_class dq = mpz_class(d - 1) * mpz_class(static_cast<unsigned long>(q - 1));
  b.weil = ScaledRoot{dq, q, r};
  // floor(2 q^{r/2}) = isqrt(4 q^r)
  mpz_class four = 4 * mpz_pow(q, r), root;
  mpz_sqrt(root.get_mpz_t(), four.get_mpz_t());
  b.serre = dq / 2 * root;
  const mpz_class D = std::max<std::uint64_t>(d, q);
  b.stohrVoloch = D * (D + mpz_pow(q, r) - 1) / 2;
  return b;
}

ScaledRoot improved_bound(std::uint32_t d, std::uint64_t q, std::uint32_t r, std::uint32_t n) {
  return ScaledRoot{c_constant(d, r, n), q, static_cast<std::uint64_t>(n) * r + 1};
}

// --- verification ----------------------------------------------------------

bool BoundReport::holds_improved() const {
  return std::any_of(candidates.begin(), candidates.end(), [](const auto& c) { return c.holds; });
}

const CandidateCheck& BoundReport::best() const {
  if (candidates.empty()) fail(ErrorCode::Internal, "bound report without main terms");
  return *std::min_element(candidates.begin(), candidates.end(),
                           [](const auto& a, const auto& b) { return a.deviation < b.deviation; });
}

std::string compact_coeffs(const ff::PolySpec& f) {
  // Compact, comma-free form for CSV: univariate coefficients separated by
  // ';', extension coordinates bracketed.
  const ff::Field& F = *f.field();
  auto elem = [&](const ff::Elem& a) {
    std::uint64_t idx = F.index(a);
    if (F.degree() == 1) return std::to_string(idx);
    std::string s = "[";
    for (std::uint32_t i = 0; i < F.degree(); ++i, idx /= F.p()) s += (i ? " " : "") + std::to_string(idx % F.p());
    return s + "]";
  };
  std::string out;
  if (f.nvars() == 1) {
    const ff::Poly g = f.to_poly();
    const auto& c = g.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ";" : "") + elem(c[i]);
  } else {
    for (std::size_t k = 0; k < f.terms().size(); ++k) {
      const auto& t = f.terms()[k];
      out += k ? ";" : "";
      for (std::size_t i = 0; i < t.exps.size(); ++i) out += (i ? "." : "") + std::to_string(t.exps[i]);
      out += ":" + elem(t.coeff);
    }
  }
  return out;
}

BoundReport verify_bound(const ff::PolySpec& f, std::uint32_t r, const ExecConfig& cfg) {
  if (r == 0) fail(ErrorCode::InvalidArgument, "r must be positive");
  f.require_artin_schreier();
  BoundReport b;
  b.f = f.str();
  b.coeffs = compact_coeffs(f);
  b.q = f.field()->size();
  b.d = static_cast<std::uint32_t>(f.degree());
  b.r = r;
  b.n = f.nvars();
  const std::uint64_t nr = std::uint64_t{b.n} * r;

  // Classify first: it is cheap, and a malformed f fails before counting.
  std::vector<mpz_class> mains;
  if (b.n == 1) {
    b.classification = classify::classify_monodromy(f.to_poly(), r);
    b.applicable = b.classification->applicableBound;
    b.beta = b.classification->beta;
    mains = b.classification->main_terms();
  } else {
    b.multivariate = classify::multivariate_checks(f, r, cfg);
    b.applicable = b.multivariate->applicable(b.n, r) ? classify::Bound::Theorem : classify::Bound::WeilOnly;
    mains = {mpz_pow(b.q, nr)};
  }

  b.N = mpz_class(static_cast<unsigned long>(
      charsum::count_points(f, r, charsum::CountMethod::CharSum, cfg).N));
  b.improved = improved_bound(b.d, b.q, r, b.n);
  for (const auto& m : mains) {
    CandidateCheck c;
    c.mainTerm = m;
    c.deviation = abs(b.N - m);
    c.holds = b.improved.bounds_abs(c.deviation);
    b.candidates.push_back(std::move(c));
  }

  const mpz_class plain = abs(b.N - mpz_pow(b.q, nr));
  b.weil = ScaledRoot{mpz_pow(b.d - 1, b.n) * mpz_class(static_cast<unsigned long>(b.q - 1)), b.q, nr};
  b.weilHolds = b.weil.bounds_abs(plain);
  b.weilApplies = b.n == 1 || b.multivariate->deligne == true;
  if (b.n == 1) {
    const ClassicalBounds cb = classical_bounds(b.d, b.q, r);
    b.serre = cb.serre;
    b.stohrVoloch = cb.stohrVoloch;
    b.serreHolds = plain <= cb.serre;
    b.stohrVolochHolds = b.N <= cb.stohrVoloch;
  }
  return b;
}

// --- sweeps -------------------------------------------------------------------

std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q) {
  if (q < 2) fail(ErrorCode::InvalidArgument, "q = " + std::to_string(q) + " is not a prime power");
  const auto pf = ff::prime_factors(q);
  if (pf.size() != 1) fail(ErrorCode::InvalidArgument, "q = " + std::to_string(q) + " is not a prime power");
  std::uint32_t e = 0;
  for (std::uint64_t x = q; x > 1; x /= pf[0]) ++e;
  return {static_cast<std::uint32_t>(pf[0]), e};
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ff::Poly shift_canonical(const ff::Poly& f) {
  const ff::Field& F = f.F();
  const int d = f.degree();
  if (d < 1) return f;
  if (static_cast<std::uint32_t>(d) % F.p() == 0)
    fail(ErrorCode::DegreeDivisibleByP, "shift canonical form needs p not dividing the degree");
  const ff::Elem c = F.neg(F.div(f.coeff(d - 1), F.mul(F.from_int(d), f.lead())));
  return f.shift(c);
}

namespace {

std::string grid_key(const SweepGrid& g) {
  auto join = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  return "qs=" + join(g.qs) + ";ds=" + join(g.ds) + ";rs=" + join(g.rs) + ";n=" + std::to_string(g.n) +
         ";family=" + (g.family == Family::AllMonic ? "allMonic" : "random") +
         ";samples=" + std::to_string(g.samples) + ";seed=" + std::to_string(g.seed) +
         ";sumNonsingular=" + (g.requireSumNonsingular ? "1" : "0");
}

// Univariate shift representatives x^d + 0 x^{d-1} + a_{d-2} x^{d-2} + ...,
// in increasing index order with a_0 least significant.
std::vector<ff::Poly> canonical_monics(const ff::FieldPtr& F, std::uint32_t d, std::uint64_t limit) {
  const std::uint64_t count = d >= 2 ? sat_pow(F->size(), d - 1) : 1;
  if (count > limit) fail(ErrorCode::BudgetExceeded, "too many polynomials in the sweep family");
  std::vector<ff::Poly> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<ff::Elem> c(d + 1, F->zero());
    std::uint64_t k = idx;
    for (std::uint32_t i = 0; i + 1 < d; ++i) {
      c[i] = F->from_index(k % F->size());
      k /= F->size();
    }
    c[d] = F->one();
    out.emplace_back(F, std::move(c));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> monomials(std::uint32_t n, std::uint32_t d) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> e(n, 0);
  // graded lexicographic order, x_1^d excluded (it is fixed to 1)
  for (std::uint32_t deg = 0; deg <= d; ++deg) {
    std::vector<std::uint32_t> cur(n, 0);
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i, std::uint32_t left) {
      if (i + 1 == n) {
        cur[i] = left;
        if (!(cur[0] == d)) out.push_back(cur);
        return;
      }
      for (std::uint32_t a = left + 1; a-- > 0;) {
        cur[i] = a;
        rec(i + 1, left - a);
      }
    };
    rec(0, deg);
  }
  return out;
}

ff::PolySpec multivariate_from(const ff::FieldPtr& F, std::uint32_t n, std::uint32_t d,
                               const std::vector<std::vector<std::uint32_t>>& mons,
                               const std::vector<std::uint64_t>& coeffIdx) {
  std::vector<ff::Term> t;
  for (std::size_t i = 0; i < mons.size(); ++i)
    if (coeffIdx[i]) t.push_back({mons[i], F->from_index(coeffIdx[i])});
  std::vector<std::uint32_t> lead(n, 0);
  lead[0] = d;
  t.push_back({lead, F->one()});
  return ff::PolySpec(F, n, std::move(t));
}

struct Job {
  ff::PolySpec f;
  std::uint32_t r;
  std::uint64_t orbit;
};

}  // namespace

SweepReport sweep(const SweepGrid& grid, const ExecConfig& cfg) {
  if (grid.qs.empty() || grid.ds.empty() || grid.rs.empty()) fail(ErrorCode::InvalidArgument, "empty sweep grid");
  if (grid.n == 0) fail(ErrorCode::InvalidArgument, "n must be positive");
  SweepReport rep;
  rep.grid = grid;
  rep.hash = fnv1a_hex(grid_key(grid));

  std::vector<Job> jobs;
  std::uint64_t work = 0;
  auto add_work = [&](std::uint64_t w) {
    work = work + w < work ? UINT64_MAX : work + w;
    if (work > cfg.budget)
      fail(ErrorCode::BudgetExceeded, "sweep needs more than " + std::to_string(cfg.budget) + " points");
  };
  for (std::uint64_t q : grid.qs) {
    const auto [p, e] = split_prime_power(q);
    const auto F = ff::Field::make(p, e);
    for (std::uint32_t d : grid.ds) {
      if (d == 0 || d % p == 0) continue;  // outside the Artin-Schreier setting
      std::vector<std::pair<ff::PolySpec, std::uint64_t>> family;
      if (grid.n == 1) {
        std::vector<ff::Poly> polys;
        if (grid.family == Family::AllMonic) {
          polys = canonical_monics(F, d, cfg.budget);
        } else {
          std::mt19937_64 rng(grid.seed ^ (q * 1000003ULL + d));
          std::set<std::vector<std::uint64_t>> seen;
          for (std::uint32_t s = 0; s < grid.samples; ++s) {
            std::vector<ff::Elem> c(d + 1);
            for (auto& x : c) x = F->from_index(rng() % q);
            c[d] = F->one();
            ff::Poly g = shift_canonical(ff::Poly(F, std::move(c)));
            std::vector<std::uint64_t> key;
            for (const auto& x : g.coeffs()) key.push_back(F->index(x));
            if (seen.insert(key).second) polys.push_back(std::move(g));
          }
        }
        for (auto& g : polys) family.emplace_back(ff::PolySpec::from_poly(g), q);
      } else {
        const auto mons = monomials(grid.n, d);
        if (grid.family == Family::AllMonic) {
          const std::uint64_t count = sat_pow(q, mons.size());
          if (count > cfg.budget) fail(ErrorCode::BudgetExceeded, "too many polynomials in the sweep family");
          for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint64_t> ci(mons.size());
            std::uint64_t k = idx;
            for (auto& c : ci) {
              c = k % q;
              k /= q;
            }
            family.emplace_back(multivariate_from(F, grid.n, d, mons, ci), 1);
          }
        } else {
          std::mt19937_64 rng(grid.seed ^ (q * 1000003ULL + d));
          for (std::uint32_t s = 0; s < grid.samples; ++s) {
            std::vector<std::uint64_t> ci(mons.size());
            for (auto& c : ci) c = rng() % q;
            family.emplace_back(multivariate_from(F, grid.n, d, mons, ci), 1);
          }
        }
      }
      for (std::uint32_t r : grid.rs) {
        if (r == 0) fail(ErrorCode::InvalidArgument, "r must be positive");
        for (const auto& [f, orbit] : family) {
          if (grid.requireSumNonsingular && grid.n == 1 && r % 2 == 0 && d >= 2 &&
              classify::classify_monodromy(f.to_poly(), r).flags.sumHypersurfaceNonsingular != true)
            continue;
          add_work(sat_pow(q, std::uint64_t{grid.n} * r));
          jobs.push_back({f, r, orbit});
        }
      }
    }
  }

  rep.items.resize(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::uint64_t i) {
    ExecConfig inner = cfg;
    inner.threads = 1;
    rep.items[i] = SweepItem{verify_bound(jobs[i].f, jobs[i].r, inner), jobs[i].orbit};
  });

  std::map<classify::Bound, ClassSummary> classes;
  for (std::size_t i = 0; i < rep.items.size(); ++i) {
    const auto& it = rep.items[i];
    const auto& b = it.report;
    auto& cs = classes[b.applicable];
    cs.name = classify::to_string(b.applicable);
    ++cs.items;
    cs.members += it.orbitSize;
    const std::uint64_t nr = std::uint64_t{b.n} * b.r;
    const double dev = mpz_class(abs(b.N - mpz_pow(b.q, nr))).get_d() /
                       std::pow(static_cast<double>(b.q), static_cast<double>(nr + 1) / 2.0);
    cs.maxNormalizedDeviation = std::max(cs.maxNormalizedDeviation, dev);
    if (b.counterexample()) rep.counterexamples.push_back(i);
    if (b.weilApplies && !b.weilHolds) rep.weilViolations.push_back(i);
  }
  for (auto& [k, v] : classes) rep.classes.push_back(v);
  return rep;
}

// --- Kummer explorer ----------------------------------------------------------

KummerResult kummer_explore(const ff::Poly& f, std::uint32_t e, std::uint32_t r, const ExecConfig& cfg) {
  const auto& F = f.field();
  const std::uint64_t q = F->size();
  if (r == 0) fail(ErrorCode::InvalidArgument, "r must be positive");
  if (f.degree() < 1) fail(ErrorCode::InvalidArgument, "f must be non-constant");
  if (e == 0 || (q - 1) % e != 0)
    fail(ErrorCode::DivisibilityViolation, "e = " + std::to_string(e) + " does not divide q - 1 = " +
                                               std::to_string(q - 1));
  cfg.charge(sat_pow(q, r), "Kummer count");
  const std::uint64_t k = (q - 1) / e;
  const ff::Tower tw = ff::Tower::over(F, r);
  const ff::Field& K = *tw.top();
  std::vector<ff::Elem> co;
  for (const auto& c : f.coeffs()) co.push_back(tw.embed(c));
  const ff::Poly g(tw.top(), std::move(co));
  // y^k = c has k solutions for c a nonzero k-th power (k | q^r - 1), one for c = 0.
  const std::uint64_t Q = K.size();
  const std::uint64_t test = (Q - 1) / k;
  constexpr std::uint64_t kChunks = 64;
  std::vector<std::uint64_t> part(kChunks, 0);
  parallel_for(kChunks, cfg.threads, [&](std::uint64_t chunk) {
    std::uint64_t acc = 0;
    for (std::uint64_t i = chunk; i < Q; i += kChunks) {
      const ff::Elem v = g.eval(K.from_index(i));
      if (K.is_zero(v))
        acc += 1;
      else if (K.is_one(K.pow(v, test)))
        acc += k;
    }
    part[chunk] = acc;
  });
  KummerResult out;
  out.f = ff::to_string(f);
  out.q = q;
  out.d = static_cast<std::uint32_t>(f.degree());
  out.e = e;
  out.r = r;
  std::uint64_t N = 0;
  for (auto x : part) N += x;
  out.N = mpz_class(static_cast<unsigned long>(N));
  out.deviation = abs(out.N - mpz_pow(q, r));
  out.normalizedSquared = mpq_class(out.deviation * out.deviation, mpz_pow(q, r + 1));
  out.normalizedSquared.canonicalize();
  out.normalized = std::sqrt(out.normalizedSquared.get_d());
  return out;
}

KummerSweep kummer_sweep(const ff::FieldPtr& F, std::uint32_t d, std::uint32_t e, std::uint32_t r,
                         const ExecConfig& cfg) {
  if (d == 0) fail(ErrorCode::InvalidArgument, "d must be positive");
  std::vector<ff::Poly> polys;
  if (d % F->p() != 0) {
    polys = canonical_monics(F, d, cfg.budget);
  } else {
    const std::uint64_t count = sat_pow(F->size(), d);
    if (count > cfg.budget) fail(ErrorCode::BudgetExceeded, "too many polynomials in the Kummer family");
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<ff::Elem> c(d + 1);
      std::uint64_t k = idx;
      for (std::uint32_t i = 0; i < d; ++i) {
        c[i] = F->from_index(k % F->size());
        k /= F->size();
      }
      c[d] = F->one();
      polys.emplace_back(F, std::move(c));
    }
  }
  const std::uint64_t per = sat_pow(F->size(), r);
  cfg.charge(polys.empty() || per <= UINT64_MAX / polys.size() ? per * polys.size() : UINT64_MAX, "Kummer sweep");
  KummerSweep out;
  out.items.resize(polys.size());
  parallel_for(polys.size(), cfg.threads, [&](std::uint64_t i) {
    ExecConfig inner = cfg;
    inner.threads = 1;
    out.items[i] = kummer_explore(polys[i], e, r, inner);
  });
  for (std::size_t i = 0; i < out.items.size(); ++i)
    if (i == 0 || out.items[i].normalizedSquared > out.maxNormalizedSquared) {
      out.maxNormalizedSquared = out.items[i].normalizedSquared;
      out.argmax = i;
    }
  if (!out.items.empty()) out.maxNormalized = out.items[out.argmax].normalized;
  return out;
}

}  // namespace weillab::bounds
