// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "weillab/weillab.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "bounds.hpp"
#include "charsum.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "io.hpp"
#include "lfunction.hpp"

using namespace weillab;
using io::json;

struct wl_context {
  ExecConfig cfg;
};

struct wl_field {
  ff::FieldPtr F;
};

struct wl_poly {
  ff::PolySpec f;
};

namespace {

thread_local std::string last_error;

template <class Fn>
wl_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return WL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<wl_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return WL_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) { *out = dup_string(j.dump()); }

ExecConfig config(const wl_context* ctx) { return ctx ? ctx->cfg : ExecConfig::from_env(); }

ff::Elem elem_from(const ff::Field& F, const int64_t* coords) {
  std::vector<std::int64_t> c(coords, coords + F.degree());
  return F.from_coords(c);
}

charsum::CountMethod method_of(wl_count_method m) {
  switch (m) {
    case WL_COUNT_CHARSUM: return charsum::CountMethod::CharSum;
    case WL_COUNT_TRACE_KERNEL: return charsum::CountMethod::TraceKernel;
    case WL_COUNT_NAIVE: return charsum::CountMethod::Naive;
    default: break;
  }
  fail(ErrorCode::InvalidArgument, "unknown count method");
}

bounds::SweepReport run_sweep(const wl_context* ctx, const char* grid_json) {
  require(grid_json, "grid_json");
  json g;
  try {
    g = json::parse(grid_json);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed grid JSON: ") + e.what());
  }
  return bounds::sweep(io::grid_from_json(g), config(ctx));
}

}  // namespace

extern "C" {

const char* wl_status_name(wl_status s) {
  switch (s) {
    case WL_OK: return "ok";
    case WL_INVALID_ARGUMENT: return "invalidArgument";
    case WL_NON_PRIME: return "nonPrime";
    case WL_EVEN_CHARACTERISTIC: return "evenCharacteristic";
    case WL_REDUCIBLE: return "reducible";
    case WL_FIELD_MISMATCH: return "fieldMismatch";
    case WL_DIVISION_BY_ZERO: return "divisionByZero";
    case WL_NOT_IN_BASE_IMAGE: return "notInBaseImage";
    case WL_TABLE_LIMIT_EXCEEDED: return "tableLimitExceeded";
    case WL_ZERO_POLYNOMIAL: return "zeroPolynomial";
    case WL_ZERO_ARGUMENT: return "zeroArgument";
    case WL_TRIVIAL_CHARACTER: return "trivialCharacter";
    case WL_DEGREE_DIVISIBLE_BY_P: return "degreeDivisibleByP";
    case WL_NOT_RATIONAL: return "notRational";
    case WL_BUDGET_EXCEEDED: return "budgetExceeded";
    case WL_HYPOTHESIS_VIOLATION: return "hypothesisViolation";
    case WL_CRITICAL_DATA_UNAVAILABLE: return "criticalDataUnavailable";
    case WL_DEGENERATE_DERIVATIVE: return "degenerateDerivative";
    case WL_MATRIX_TOO_LARGE: return "matrixTooLarge";
    case WL_NOT_QUASI_ODD: return "notQuasiOdd";
    case WL_NO_SOLUTION: return "noSolution";
    case WL_NOT_DIVISIBLE: return "notDivisible";
    case WL_ROOT_FINDING_UNSTABLE: return "rootFindingUnstable";
    case WL_NON_INTEGER_MULTIPLICITY: return "nonIntegerMultiplicity";
    case WL_DIVISIBILITY_VIOLATION: return "divisibilityViolation";
    case WL_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* wl_last_error(void) { return last_error.c_str(); }

void wl_string_free(char* s) { std::free(s); }

const char* wl_version(void) { return "0.1.0"; }

// --- context -----------------------------------------------------------------

wl_status wl_context_new(wl_context** out) {
  return guard([&] {
    require(out, "out");
    *out = new wl_context{ExecConfig::from_env()};
  });
}

void wl_context_free(wl_context* ctx) { delete ctx; }

wl_status wl_context_set_budget(wl_context* ctx, uint64_t budget) {
  return guard([&] {
    require(ctx, "ctx");
    if (budget == 0) fail(ErrorCode::InvalidArgument, "budget must be positive");
    ctx->cfg.budget = budget;
  });
}

wl_status wl_context_set_threads(wl_context* ctx, unsigned threads) {
  return guard([&] {
    require(ctx, "ctx");
    if (threads == 0) fail(ErrorCode::InvalidArgument, "threads must be positive");
    ctx->cfg.threads = threads;
  });
}

uint64_t wl_context_budget(const wl_context* ctx) { return ctx ? ctx->cfg.budget : 0; }

// --- fields and polynomials ----------------------------------------------------

wl_status wl_field_new(uint32_t p, uint32_t e, const int64_t* modulus, size_t modulus_len, wl_field** out) {
  return guard([&] {
    require(out, "out");
    std::optional<std::vector<std::int64_t>> m;
    if (modulus) m = std::vector<std::int64_t>(modulus, modulus + modulus_len);
    *out = new wl_field{ff::Field::make(p, e, m)};
  });
}

void wl_field_free(wl_field* f) { delete f; }

wl_status wl_field_info(const wl_field* f, char** json_out) {
  return guard([&] {
    require(f, "field");
    require(json_out, "json_out");
    emit(io::field_info_json(f->F), json_out);
  });
}

wl_status wl_poly_from_json(const char* text, wl_poly** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new wl_poly{io::poly_from_string(text)};
  });
}

void wl_poly_free(wl_poly* f) { delete f; }

wl_status wl_poly_to_json(const wl_poly* f, char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    emit(io::poly_to_json(f->f), json_out);
  });
}

uint32_t wl_poly_degree(const wl_poly* f) { return f && f->f.degree() > 0 ? static_cast<uint32_t>(f->f.degree()) : 0; }

uint32_t wl_poly_nvars(const wl_poly* f) { return f ? f->f.nvars() : 0; }

// --- counting ------------------------------------------------------------------

wl_status wl_count(const wl_context* ctx, const wl_poly* f, uint32_t r, wl_count_method method,
                   const int64_t* psi_shift, char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    const ExecConfig cfg = config(ctx);
    const ff::Field& F = *f->f.field();
    std::optional<ff::Elem> shift;
    if (psi_shift) shift = elem_from(F, psi_shift);
    const ff::Elem* sp = shift ? &*shift : nullptr;
    const std::uint64_t nr = std::uint64_t{f->f.nvars()} * r;
    json j{{"field", io::field_to_json(F)}, {"f", f->f.str()}, {"r", r}, {"n", f->f.nvars()}};
    if (method == WL_COUNT_ALL) {
      json counts = json::object();
      std::optional<std::uint64_t> first;
      bool agree = true;
      for (auto m : {charsum::CountMethod::CharSum, charsum::CountMethod::TraceKernel, charsum::CountMethod::Naive}) {
        const auto res = charsum::count_points(f->f, r, m, cfg, sp);
        counts[charsum::to_string(m)] = std::to_string(res.N);
        if (first && *first != res.N) agree = false;
        if (!first) first = res.N;
      }
      j["counts"] = counts;
      j["agree"] = agree;
      j["N_r"] = std::to_string(*first);
      j["S_1"] = io::mpz_to_json(bounds::mpz_pow(F.size(), nr) - mpz_class(static_cast<unsigned long>(*first)));
    } else {
      const auto res = charsum::count_points(f->f, r, method_of(method), cfg, sp);
      j["method"] = charsum::to_string(res.method);
      j["N_r"] = std::to_string(res.N);
      j["S_1"] = io::mpz_to_json(bounds::mpz_pow(F.size(), nr) - mpz_class(static_cast<unsigned long>(res.N)));
    }
    emit(j, json_out);
  });
}

wl_status wl_count_value(const wl_context* ctx, const wl_poly* f, uint32_t r, wl_count_method method, uint64_t* out) {
  return guard([&] {
    require(f, "poly");
    require(out, "out");
    *out = charsum::count_points(f->f, r, method_of(method), config(ctx)).N;
  });
}

// --- classification and bounds -------------------------------------------------

wl_status wl_classify(const wl_context* ctx, const wl_poly* f, uint32_t r, char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    if (f->f.nvars() == 1) {
      emit(io::classification_to_json(classify::classify_monodromy(f->f.to_poly(), r), *f->f.field()), json_out);
    } else {
      const auto rep = classify::multivariate_checks(f->f, r, config(ctx));
      json j = io::multivariate_to_json(rep);
      j["applicable"] = rep.applicable(f->f.nvars(), r);
      emit(j, json_out);
    }
  });
}

wl_status wl_verify(const wl_context* ctx, const wl_poly* f, uint32_t r, char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    emit(io::bound_report_to_json(bounds::verify_bound(f->f, r, config(ctx)), *f->f.field()), json_out);
  });
}

// --- L-functions ---------------------------------------------------------------

wl_status wl_lfunction(const wl_context* ctx, const wl_poly* f, uint32_t r, uint32_t depth, char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    if (f->f.nvars() != 1) fail(ErrorCode::InvalidArgument, "the L-function pipeline is univariate");
    const auto psi = charsum::AdditiveCharacter::standard(f->f.field());
    const auto data = lfunction::compute_lfunction(f->f.to_poly(), r, depth, config(ctx), psi);
    emit(io::lfunction_to_json(data, *f->f.field()), json_out);
  });
}

wl_status wl_functional_equation(const wl_context* ctx, const wl_poly* f, uint32_t r, uint32_t depth,
                                 char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    if (f->f.nvars() != 1) fail(ErrorCode::InvalidArgument, "the functional equation check is univariate");
    emit(io::functional_equation_to_json(
             lfunction::functional_equation_check(f->f.to_poly(), r, depth, config(ctx))),
         json_out);
  });
}

wl_status wl_power_sums(const wl_context* ctx, const wl_poly* f, uint32_t r, uint32_t m_max, char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    const auto S = lfunction::power_sums(f->f, r, m_max, config(ctx));
    json sums = json::array();
    for (const auto& s : S) sums.push_back(io::mpz_to_json(s));
    emit(json{{"r", r}, {"powerSums", sums}, {"series", io::qpoly_to_json(lfunction::series_from_power_sums(S))}},
         json_out);
  });
}

// --- characters and closed forms -------------------------------------------------

wl_status wl_gauss(const wl_field* f, uint32_t order, uint32_t exponent, const int64_t* shift, char** json_out) {
  return guard([&] {
    require(f, "field");
    require(json_out, "json_out");
    const auto& F = f->F;
    const auto chi = charsum::MultiplicativeCharacter::make(F, order, exponent);
    charsum::AdditiveCharacter psi = charsum::AdditiveCharacter::standard(F);
    if (shift) psi.shift = elem_from(*F, shift);
    const auto g = charsum::gauss_sum(chi, psi);
    const auto gc = charsum::gauss_sum(chi.conj(), psi);
    const auto z = g.embed();
    emit(json{{"field", io::field_to_json(*F)},
              {"order", order},
              {"exponent", exponent},
              {"shift", io::elem_to_json(*F, psi.shift)},
              {"value", io::cyclo_to_json(g)},
              {"embedding", json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())})},
              {"abs", static_cast<double>(std::abs(z))},
              {"sqrtQ", std::sqrt(static_cast<double>(F->size()))},
              {"productWithConjugate", io::cyclo_to_json(g * gc)},
              {"chiMinusOne", chi.trivial() ? 1 : chi.sign_at_minus_one()}},
         json_out);
  });
}

wl_status wl_constant(uint32_t d, uint32_t r, uint32_t n, char** json_out) {
  return guard([&] {
    require(json_out, "json_out");
    emit(json{{"d", d}, {"r", r}, {"n", n}, {"C", io::mpz_to_json(bounds::c_constant(d, r, n))}}, json_out);
  });
}

wl_status wl_hodge(uint32_t d, uint32_t n, char** json_out) {
  return guard([&] {
    require(json_out, "json_out");
    emit(io::hodge_to_json(lfunction::hodge_multiplicities(d, n)), json_out);
  });
}

// --- sweeps --------------------------------------------------------------------

wl_status wl_sweep(const wl_context* ctx, const char* grid_json, const char* out_dir, char** json_out) {
  return guard([&] {
    require(json_out, "json_out");
    const auto report = run_sweep(ctx, grid_json);
    json j = io::sweep_to_json(report);
    if (out_dir) {
      const auto [jp, cp] = io::write_sweep(report, out_dir);
      j["files"] = json{{"json", jp}, {"csv", cp}};
    }
    emit(j, json_out);
  });
}

wl_status wl_sweep_csv(const wl_context* ctx, const char* grid_json, char** csv_out) {
  return guard([&] {
    require(csv_out, "csv_out");
    *csv_out = dup_string(io::sweep_to_csv(run_sweep(ctx, grid_json)));
  });
}

wl_status wl_kummer(const wl_context* ctx, const wl_poly* f, uint32_t e, uint32_t r, char** json_out) {
  return guard([&] {
    require(f, "poly");
    require(json_out, "json_out");
    if (f->f.nvars() != 1) fail(ErrorCode::InvalidArgument, "Kummer curves take a univariate f");
    emit(io::kummer_to_json(bounds::kummer_explore(f->f.to_poly(), e, r, config(ctx))), json_out);
  });
}

wl_status wl_kummer_sweep(const wl_context* ctx, const wl_field* f, uint32_t d, uint32_t e, uint32_t r,
                          char** json_out) {
  return guard([&] {
    require(f, "field");
    require(json_out, "json_out");
    emit(io::kummer_sweep_to_json(bounds::kummer_sweep(f->F, d, e, r, config(ctx))), json_out);
  });
}

}  // extern "C"
