// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "enumerate.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"

namespace weillab::charsum {

using ff::Coord;
using ff::Elem;
using Mono = std::vector<std::uint8_t>;
using SymPoly = std::map<Mono, Elem>;

namespace {

SymPoly sym_mul(const SymPoly& a, const SymPoly& b, const ff::Field& K) {
  const std::uint32_t p = K.p();
  SymPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m = ma;
      for (std::size_t v = 0; v < m.size(); ++v) {
        unsigned e = m[v] + mb[v];
        if (e >= p) e -= p - 1;  // c^p = c on F_p
        m[v] = static_cast<std::uint8_t>(e);
      }
      const Elem c = K.mul(ca, cb);
      auto [it, fresh] = out.try_emplace(std::move(m), c);
      if (!fresh) it->second = K.add(it->second, c);
    }
  std::erase_if(out, [&K](const auto& kv) { return K.is_zero(kv.second); });
  return out;
}

}  // namespace

CoordinateForm::CoordinateForm(const ff::PolySpec& f, const ff::Tower& tower, const ff::LinearMap& L)
    : p_(tower.top()->p()), k_(L.rows) {
  const ff::Field& K = *tower.top();
  if (!f.field()->same_as(*tower.base()))
    fail(ErrorCode::FieldMismatch, "polynomial is not defined over the tower base");
  if (L.cols != K.degree()) fail(ErrorCode::InvalidArgument, "linear map does not start at the top field");
  if (p_ > 255) {
    // exponents are stored in a byte
    fail(ErrorCode::InvalidArgument, "coordinate expansion supports p < 256");
  }
  const std::uint32_t nk = K.degree(), n = f.nvars();
  vars_ = n * nk;
  if (vars_ > 64) fail(ErrorCode::BudgetExceeded, "too many coordinates to enumerate");

  // X_j = sum_i u^i c_{j,i}
  std::vector<Elem> basis(nk);
  for (std::uint32_t i = 0; i < nk; ++i) basis[i].c[i] = 1;
  std::vector<std::vector<SymPoly>> powers(n);  // powers[j][a] = X_j^a
  const SymPoly one{{Mono(vars_, 0), K.one()}};
  for (std::uint32_t j = 0; j < n; ++j) {
    SymPoly X;
    for (std::uint32_t i = 0; i < nk; ++i) {
      Mono m(vars_, 0);
      m[j * nk + i] = 1;
      X.emplace(std::move(m), basis[i]);
    }
    powers[j].push_back(one);
    powers[j].push_back(std::move(X));
  }
  SymPoly total;
  for (const auto& t : f.terms()) {
    SymPoly prod{{Mono(vars_, 0), tower.embed(t.coeff)}};
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t a = t.exps[j];
      while (powers[j].size() <= a) powers[j].push_back(sym_mul(powers[j].back(), powers[j][1], K));
      if (a) prod = sym_mul(prod, powers[j][a], K);
    }
    for (auto& [m, c] : prod) {
      auto [it, fresh] = total.try_emplace(m, c);
      if (!fresh) it->second = K.add(it->second, c);
    }
  }

  // Project through L and drop monomials that vanish.
  std::vector<Mono> monos;
  std::vector<Coord> coeffs;
  for (const auto& [m, c] : total) {
    const Elem img = L.apply(c);
    bool nz = false;
    for (std::size_t o = 0; o < k_; ++o) nz |= img.c[o] != 0;
    if (!nz) continue;
    monos.push_back(m);
    for (std::size_t o = 0; o < k_; ++o) coeffs.push_back(img.c[o]);
  }

  level_size_.assign(vars_ + 1, 0);
  target_.assign(vars_ + 1, {});
  power_.assign(vars_ + 1, {});
  top_ = std::move(coeffs);
  level_size_[vars_] = monos.size();
  std::vector<Mono> cur = std::move(monos);
  for (std::uint32_t m = vars_; m >= 1; --m) {
    std::map<Mono, std::uint32_t> ids;
    std::vector<Mono> next;
    target_[m].resize(cur.size());
    power_[m].resize(cur.size());
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      Mono key(cur[idx].begin(), cur[idx].begin() + (m - 1));
      auto [it, fresh] = ids.try_emplace(key, static_cast<std::uint32_t>(next.size()));
      if (fresh) next.push_back(std::move(key));
      target_[m][idx] = it->second;
      power_[m][idx] = cur[idx][m - 1];
    }
    level_size_[m - 1] = next.size();
    cur = std::move(next);
  }

  powtab_.assign(p_, std::vector<Coord>(p_, 0));
  for (std::uint32_t v = 0; v < p_; ++v) {
    std::uint64_t pw = 1;
    for (std::uint32_t j = 0; j < p_; ++j) {
      powtab_[v][j] = static_cast<Coord>(pw);
      pw = pw * v % p_;
    }
  }
}

std::uint64_t CoordinateForm::points() const noexcept { return sat_pow(p_, vars_); }

void CoordinateForm::substitute(std::uint32_t m, Coord v, const std::vector<Coord>& in,
                                std::vector<Coord>& out, std::vector<std::uint64_t>& scr) const {
  const std::size_t k = k_, nt = level_size_[m - 1] * k;
  scr.assign(nt, 0);
  const auto& tgt = target_[m];
  const auto& pw = power_[m];
  const auto& tab = powtab_[v];
  const std::size_t ns = level_size_[m];
  for (std::size_t idx = 0; idx < ns; ++idx) {
    const std::uint64_t c = tab[pw[idx]];
    if (!c) continue;
    const Coord* src = &in[idx * k];
    std::uint64_t* dst = &scr[tgt[idx] * k];
    for (std::size_t o = 0; o < k; ++o) dst[o] += src[o] * c;
  }
  out.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) out[i] = static_cast<Coord>(scr[i] % p_);
}

namespace {

struct HistAcc {
  std::uint32_t p;
  std::size_t k;
  std::vector<std::uint64_t> hist;
  void leaf(const Coord* out) {
    std::uint64_t idx = 0;
    for (std::size_t o = k; o-- > 0;) idx = idx * p + out[o];
    ++hist[idx];
  }
};

struct KernelAcc {
  std::size_t k;
  std::uint64_t count = 0;
  void leaf(const Coord* out) {
    for (std::size_t o = 0; o < k; ++o)
      if (out[o]) return;
    ++count;
  }
};

}  // namespace

template <class Acc>
void CoordinateForm::descend(std::uint32_t m, std::vector<std::vector<Coord>>& coef,
                             std::vector<std::vector<std::uint64_t>>& scratch, Acc& acc) const {
  if (m == 0) {
    acc.leaf(coef[0].data());
    return;
  }
  for (Coord v = 0; v < p_; ++v) {
    substitute(m, v, coef[m], coef[m - 1], scratch[m - 1]);
    descend(m - 1, coef, scratch, acc);
  }
}

template <class Acc>
void CoordinateForm::run(const ExecConfig& cfg, std::vector<Acc>& per_task) const {
  // Pre-assign the top `split` coordinates so tasks are independent.
  std::uint32_t split = 0;
  std::uint64_t tasks = 1;
  if (cfg.threads > 1)
    while (split < vars_ && tasks < 8ULL * cfg.threads) {
      ++split;
      tasks *= p_;
    }
  const Acc proto = per_task.front();
  per_task.assign(tasks, proto);
  parallel_for(tasks, cfg.threads, [&](std::uint64_t task) {
    std::vector<std::vector<Coord>> coef(vars_ + 1);
    std::vector<std::vector<std::uint64_t>> scratch(vars_ + 1);
    coef[vars_] = top_;
    std::uint64_t t = task;
    for (std::uint32_t s = 0; s < split; ++s) {
      const std::uint32_t m = vars_ - s;
      substitute(m, static_cast<Coord>(t % p_), coef[m], coef[m - 1], scratch[m - 1]);
      t /= p_;
    }
    const std::uint32_t start = vars_ - split;
    if (level_size_[0] == 0) {
      // L(f(x)) is identically zero.
      std::vector<Coord> zero(k_, 0);
      const std::uint64_t cnt = sat_pow(p_, start);
      for (std::uint64_t i = 0; i < cnt; ++i) per_task[task].leaf(zero.data());
      return;
    }
    descend(start, coef, scratch, per_task[task]);
  });
}

std::vector<std::uint64_t> CoordinateForm::histogram(const ExecConfig& cfg) const {
  cfg.charge(points(), "trace histogram");
  const std::uint64_t size = sat_pow(p_, k_);
  if (size > (1ULL << 30)) fail(ErrorCode::BudgetExceeded, "histogram too large");
  std::vector<HistAcc> acc{HistAcc{p_, k_, std::vector<std::uint64_t>(size, 0)}};
  run(cfg, acc);
  std::vector<std::uint64_t> out(size, 0);
  for (const auto& a : acc)
    for (std::uint64_t i = 0; i < size; ++i) out[i] += a.hist[i];
  return out;
}

std::uint64_t CoordinateForm::kernel_count(const ExecConfig& cfg) const {
  cfg.charge(points(), "trace kernel count");
  std::vector<KernelAcc> acc{KernelAcc{k_}};
  run(cfg, acc);
  std::uint64_t total = 0;
  for (const auto& a : acc) total += a.count;
  return total;
}

std::vector<std::uint64_t> histogram_direct(const ff::PolySpec& f, const ff::Tower& tower,
                                            const ff::LinearMap& L, const ExecConfig& cfg) {
  const ff::Field& K = *tower.top();
  const std::uint32_t n = f.nvars();
  const std::uint64_t Q = K.size();
  const std::uint64_t pts = sat_pow(Q, n);
  cfg.charge(pts, "direct enumeration");
  const std::uint64_t size = sat_pow(K.p(), L.rows);
  std::vector<ff::Term> terms = f.terms();
  for (auto& t : terms) t.coeff = tower.embed(t.coeff);
  const ff::PolySpec fk(tower.top(), n, terms);

  const std::uint64_t chunks = std::min<std::uint64_t>(pts, 64);
  std::vector<std::vector<std::uint64_t>> part(chunks, std::vector<std::uint64_t>(size, 0));
  parallel_for(chunks, cfg.threads, [&](std::uint64_t c) {
    const std::uint64_t lo = pts * c / chunks, hi = pts * (c + 1) / chunks;
    std::vector<Elem> x(n);
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::uint64_t t = i;
      for (std::uint32_t j = 0; j < n; ++j) {
        x[j] = K.from_index(t % Q);
        t /= Q;
      }
      const Elem v = L.apply(fk.eval(x));
      std::uint64_t idx = 0;
      for (std::size_t o = L.rows; o-- > 0;) idx = idx * K.p() + v.c[o];
      ++part[c][idx];
    }
  });
  std::vector<std::uint64_t> out(size, 0);
  for (const auto& h : part)
    for (std::uint64_t i = 0; i < size; ++i) out[i] += h[i];
  return out;
}

}  // namespace weillab::charsum
