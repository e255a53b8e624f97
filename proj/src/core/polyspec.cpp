// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "polyspec.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace weillab::ff {

namespace {

std::uint32_t total(const std::vector<std::uint32_t>& e) {
  return std::accumulate(e.begin(), e.end(), 0U);
}

}  // namespace

PolySpec::PolySpec(FieldPtr f, std::uint32_t nvars, std::vector<Term> terms)
    : f_(std::move(f)), n_(nvars) {
  if (n_ == 0) fail(ErrorCode::InvalidArgument, "a polynomial needs at least one variable");
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, Elem> merged;
  for (auto& t : terms) {
    if (t.exps.size() != n_)
      fail(ErrorCode::InvalidArgument, "term has " + std::to_string(t.exps.size()) +
                                           " exponents, expected " + std::to_string(n_));
    auto key = std::make_pair(total(t.exps), t.exps);
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(std::move(key), t.coeff);
    else
      it->second = f_->add(it->second, t.coeff);
  }
  for (auto& [k, c] : merged)
    if (!f_->is_zero(c)) terms_.push_back({k.second, c});
}

PolySpec PolySpec::from_poly(const Poly& f) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    if (!f.F().is_zero(f.coeffs()[i])) t.push_back({{static_cast<std::uint32_t>(i)}, f.coeffs()[i]});
  return PolySpec(f.field(), 1, std::move(t));
}

int PolySpec::degree() const noexcept {
  if (terms_.empty()) return -1;
  return static_cast<int>(total(terms_.back().exps));
}

Poly PolySpec::to_poly() const {
  if (n_ != 1) fail(ErrorCode::InvalidArgument, "polynomial is not univariate");
  std::vector<Elem> c(terms_.empty() ? 0 : terms_.back().exps[0] + 1);
  for (const auto& t : terms_) c[t.exps[0]] = t.coeff;
  return Poly(f_, std::move(c));
}

PolySpec PolySpec::scaled(const Elem& c) const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.coeff = f_->mul(x.coeff, c);
  return PolySpec(f_, n_, std::move(t));
}

PolySpec PolySpec::leading_form() const {
  const int d = degree();
  std::vector<Term> t;
  for (const auto& x : terms_)
    if (static_cast<int>(total(x.exps)) == d) t.push_back(x);
  return PolySpec(f_, n_, std::move(t));
}

Elem PolySpec::eval(std::span<const Elem> x) const {
  if (x.size() != n_) fail(ErrorCode::InvalidArgument, "wrong number of arguments");
  Elem acc{};
  for (const auto& t : terms_) {
    Elem m = t.coeff;
    for (std::uint32_t j = 0; j < n_; ++j)
      if (t.exps[j]) m = f_->mul(m, f_->pow(x[j], t.exps[j]));
    acc = f_->add(acc, m);
  }
  return acc;
}

void PolySpec::require_artin_schreier() const {
  const int d = degree();
  if (d < 1) fail(ErrorCode::InvalidArgument, "polynomial must be non-constant");
  if (static_cast<std::uint32_t>(d) % f_->p() == 0)
    fail(ErrorCode::DegreeDivisibleByP,
         "degree " + std::to_string(d) + " is divisible by p = " + std::to_string(f_->p()));
}

std::string PolySpec::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  static const char* names[] = {"x", "y", "z", "w"};
  bool first = true;
  for (std::size_t k = terms_.size(); k-- > 0;) {
    const auto& t = terms_[k];
    if (!first) os << " + ";
    first = false;
    const bool unit = f_->is_one(t.coeff);
    const bool constant = total(t.exps) == 0;
    if (!unit || constant) os << f_->str(t.coeff);
    bool firstvar = unit;
    for (std::uint32_t j = 0; j < n_; ++j) {
      if (!t.exps[j]) continue;
      if (!firstvar) os << '*';
      firstvar = false;
      if (n_ == 1)
        os << 'x';
      else if (n_ <= 4)
        os << names[j];
      else
        os << "x" << (j + 1);
      if (t.exps[j] > 1) os << '^' << t.exps[j];
    }
  }
  return os.str();
}

}  // namespace weillab::ff
