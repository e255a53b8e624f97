// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its public header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "weillab/weillab.h"

using json = nlohmann::ordered_json;

namespace {

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  wl_string_free(s);
  return j;
}

struct Ctx {
  wl_context* c = nullptr;
  Ctx() { REQUIRE(wl_context_new(&c) == WL_OK); }
  ~Ctx() { wl_context_free(c); }
};

struct Poly {
  wl_poly* f = nullptr;
  explicit Poly(const std::string& text) { REQUIRE(wl_poly_from_json(text.c_str(), &f) == WL_OK); }
  ~Poly() { wl_poly_free(f); }
};

}  // namespace

TEST_CASE("status names and error messages") {
  CHECK(std::string(wl_status_name(WL_OK)) == "ok");
  CHECK(std::string(wl_status_name(WL_BUDGET_EXCEEDED)) == "budgetExceeded");
  CHECK(std::string(wl_version()) == "0.1.0");

  wl_field* F = nullptr;
  CHECK(wl_field_new(9, 1, nullptr, 0, &F) == WL_NON_PRIME);
  CHECK(F == nullptr);
  CHECK(std::string(wl_last_error()).find("9") != std::string::npos);
  CHECK(wl_field_new(2, 1, nullptr, 0, &F) == WL_EVEN_CHARACTERISTIC);
  const std::int64_t reducible[] = {1, 1, 1};  // x^2 + x + 1 = (x - 1)^2 over F_3
  CHECK(wl_field_new(3, 2, reducible, 3, &F) == WL_REDUCIBLE);
  CHECK(wl_field_new(3, 1, nullptr, 0, nullptr) == WL_INVALID_ARGUMENT);
  CHECK(wl_field_new(3, 2, nullptr, 0, &F) == WL_OK);
  CHECK(std::string(wl_last_error()).empty());

  char* out = nullptr;
  REQUIRE(wl_field_info(F, &out) == WL_OK);
  const json info = take(out);
  CHECK(info["q"] == "9");
  CHECK(info["modulus"].size() == 3);
  wl_field_free(F);

  wl_poly* f = nullptr;
  CHECK(wl_poly_from_json("{\"p\":3,\"e\":1,\"coeffs\":[0,0,0,1]}", &f) == WL_OK);
  char* s = nullptr;
  CHECK(wl_count(nullptr, f, 1, WL_COUNT_CHARSUM, nullptr, &s) == WL_DEGREE_DIVISIBLE_BY_P);
  CHECK(s == nullptr);
  wl_poly_free(f);
  CHECK(wl_poly_from_json("[", &f) == WL_INVALID_ARGUMENT);
}

TEST_CASE("counts agree across methods and with the integer entry point") {
  Ctx ctx;
  Poly f(R"({"p":3,"e":1,"coeffs":[0,0,1]})");
  CHECK(wl_poly_degree(f.f) == 2);
  CHECK(wl_poly_nvars(f.f) == 1);
  char* out = nullptr;
  REQUIRE(wl_count(ctx.c, f.f, 2, WL_COUNT_ALL, nullptr, &out) == WL_OK);
  const json j = take(out);
  CHECK(j["agree"] == true);
  // x^2 over F_9: quadratic Gauss sum makes N_2 = 9 + 6.
  CHECK(j["N_r"] == "15");
  CHECK(j["S_1"] == "-6");
  std::uint64_t N = 0;
  for (auto m : {WL_COUNT_CHARSUM, WL_COUNT_TRACE_KERNEL, WL_COUNT_NAIVE}) {
    REQUIRE(wl_count_value(ctx.c, f.f, 2, m, &N) == WL_OK);
    CHECK(N == 15);
  }
  CHECK(wl_count_value(ctx.c, f.f, 2, WL_COUNT_ALL, &N) == WL_INVALID_ARGUMENT);

  // psi(a x) for a != 0 permutes the fibres: the count is unchanged.
  const std::int64_t shift[] = {2};
  REQUIRE(wl_count(ctx.c, f.f, 2, WL_COUNT_CHARSUM, shift, &out) == WL_OK);
  CHECK(take(out)["N_r"] == "15");
  const std::int64_t zero[] = {0};
  CHECK(wl_count(ctx.c, f.f, 2, WL_COUNT_CHARSUM, zero, &out) == WL_INVALID_ARGUMENT);
}

TEST_CASE("budget from the context and from WEILLAB_BUDGET") {
  Poly f(R"({"p":5,"e":1,"coeffs":[0,1,0,1]})");
  {
    Ctx ctx;
    REQUIRE(wl_context_set_budget(ctx.c, 100) == WL_OK);
    CHECK(wl_context_budget(ctx.c) == 100);
    std::uint64_t N = 0;
    CHECK(wl_count_value(ctx.c, f.f, 3, WL_COUNT_NAIVE, &N) == WL_BUDGET_EXCEEDED);
    CHECK(wl_context_set_budget(ctx.c, 0) == WL_INVALID_ARGUMENT);
    CHECK(wl_context_set_threads(ctx.c, 0) == WL_INVALID_ARGUMENT);
  }
  setenv("WEILLAB_BUDGET", "1234", 1);
  {
    Ctx ctx;
    CHECK(wl_context_budget(ctx.c) == 1234);
  }
  unsetenv("WEILLAB_BUDGET");
}

TEST_CASE("classification, verification and the shifted main term") {
  Ctx ctx;
  Poly f(R"({"p":7,"e":1,"coeffs":[0,-1,0,1]})");
  char* out = nullptr;
  REQUIRE(wl_classify(ctx.c, f.f, 2, &out) == WL_OK);
  const json c = take(out);
  CHECK(c["monodromyClass"] == "Sp");
  CHECK(c["applicableBound"] == "symplectic");
  REQUIRE(wl_verify(ctx.c, f.f, 2, &out) == WL_OK);
  const json v = take(out);
  CHECK(v["N_r"] == "91");
  CHECK(v["mainTermCandidates"][0]["mainTerm"] == "98");
  CHECK(v["holdsImproved"] == true);
  CHECK(v["coeffs"] == "0;6;0;1");
}

TEST_CASE("L-function, functional equation and power sums") {
  Ctx ctx;
  Poly f(R"({"p":3,"e":1,"coeffs":[0,0,1]})");
  char* out = nullptr;
  REQUIRE(wl_lfunction(ctx.c, f.f, 2, 8, &out) == WL_OK);
  const json L = take(out);
  CHECK(L["status"] == "complete");
  // (1 + 3T) / (1 + 9T)
  CHECK(L["L"]["num"].size() == 2);
  CHECK(L["L"]["num"][1]["coords"][0][0] == "3");
  CHECK(L["L"]["den"][1]["coords"][0][0] == "9");

  REQUIRE(wl_functional_equation(ctx.c, f.f, 1, 6, &out) == WL_OK);
  CHECK(take(out)["holds"] == true);

  REQUIRE(wl_power_sums(ctx.c, f.f, 2, 3, &out) == WL_OK);
  const json S = take(out);
  CHECK(S["powerSums"] == json::array({"-6", "72", "-702"}));
}

TEST_CASE("Gauss sums, constants and multiplicities") {
  wl_field* F = nullptr;
  REQUIRE(wl_field_new(5, 1, nullptr, 0, &F) == WL_OK);
  char* out = nullptr;
  REQUIRE(wl_gauss(F, 4, 1, nullptr, &out) == WL_OK);
  const json g = take(out);
  CHECK(g["abs"].get<double>() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(g["chiMinusOne"] == -1);  // -1 = 2^2 and chi(2) = i
  CHECK(wl_gauss(F, 3, 1, nullptr, &out) == WL_INVALID_ARGUMENT);
  wl_field_free(F);

  REQUIRE(wl_constant(4, 3, 1, &out) == WL_OK);
  CHECK(take(out)["C"] == "21");  // (d-1)(d^2-3d+3)
  REQUIRE(wl_hodge(4, 2, &out) == WL_OK);
  CHECK(take(out)["total"] == 9);
}

TEST_CASE("sweeps and Kummer exploration") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(wl_sweep(ctx.c, R"({"qs":[3],"ds":[2],"rs":[1,2]})", nullptr, &out) == WL_OK);
  const json s = take(out);
  CHECK(s["counterexamples"].empty());
  CHECK(s["hash"].get<std::string>().size() == 16);
  REQUIRE(wl_sweep_csv(ctx.c, R"({"qs":[3],"ds":[2],"rs":[1]})", &out) == WL_OK);
  const std::string csv(out);
  wl_string_free(out);
  CHECK(csv.rfind("q,d,r,n,f_coeffs,class,N_r,main_term,deviation,bound,holds\n", 0) == 0);
  CHECK(wl_sweep(ctx.c, "{\"qs\":[3]}", nullptr, &out) == WL_INVALID_ARGUMENT);

  Poly f(R"({"p":7,"e":1,"coeffs":[1,0,1]})");
  REQUIRE(wl_kummer(ctx.c, f.f, 2, 1, &out) == WL_OK);
  const json k = take(out);
  CHECK(k["e"] == 2);
  CHECK(wl_kummer(ctx.c, f.f, 4, 1, &out) == WL_DIVISIBILITY_VIOLATION);
}

TEST_CASE("handles are usable from several threads") {
  Poly f(R"({"p":5,"e":1,"coeffs":[1,2,0,1]})");
  std::vector<std::uint64_t> got(4);
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i)
    pool.emplace_back([&, i] {
      wl_context* c = nullptr;
      wl_context_new(&c);
      wl_count_value(c, f.f, 2, i % 2 ? WL_COUNT_NAIVE : WL_COUNT_CHARSUM, &got[i]);
      wl_context_free(c);
    });
  for (auto& t : pool) t.join();
  for (auto v : got) CHECK(v == got[0]);
  CHECK(got[0] > 0);
}
