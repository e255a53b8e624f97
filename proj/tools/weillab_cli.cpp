// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Everything goes through the C interface; the JSON
// header is used only to assemble inputs and render outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weillab/weillab.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kVerdict = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failing library call, carrying its status.
struct CallError : std::runtime_error {
  wl_status status;
  CallError(wl_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

void check(wl_status s) {
  if (s != WL_OK) throw CallError(s, std::string(wl_status_name(s)) + ": " + wl_last_error());
}

int exit_code(wl_status s) {
  switch (s) {
    case WL_OK: return kOk;
    case WL_BUDGET_EXCEEDED: return kBudget;
    case WL_INVALID_ARGUMENT:
    case WL_NON_PRIME:
    case WL_EVEN_CHARACTERISTIC:
    case WL_REDUCIBLE:
    case WL_ZERO_POLYNOMIAL:
    case WL_DEGREE_DIVISIBLE_BY_P:
    case WL_FIELD_MISMATCH: return kUsage;
    default: return kVerdict;
  }
}

// Owned JSON string returned by the library.
json take(char* s) {
  std::unique_ptr<char, void (*)(char*)> guard(s, wl_string_free);
  return json::parse(s);
}

struct Options {
  // field and polynomial
  std::uint32_t p = 0, e = 1;
  std::string modulus, poly, input;
  // computation
  std::uint32_t r = 1, n = 1, depth = 0, order = 2, exponent = 1, kummerE = 0, d = 0, mMax = 0;
  std::string method = "all", shift, grid, family = "allMonic";
  std::vector<std::uint64_t> qs, ds, rs;
  std::uint32_t samples = 50;
  std::uint64_t seed = 1;
  bool sumNonsingular = false, functionalEquation = false;
  // execution and output
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
  std::string format = "json", out;
  bool strict = false;
};

// "0,1,[1,2]" -> [0,1,[1,2]]: constant-first coefficient list.
json parse_list(const std::string& text, const char* what) {
  try {
    json j = json::parse("[" + text + "]");
    for (const auto& c : j)
      if (!c.is_number_integer() && !c.is_array())
        throw UsageError(std::string(what) + ": entries must be integers or [..] coordinate vectors");
    return j;
  } catch (const json::parse_error&) {
    throw UsageError(std::string(what) + ": expected comma-separated integers, e.g. 0,-1,0,1");
  }
}

json field_json(const Options& o) {
  if (o.p == 0) throw UsageError("--p is required");
  json j{{"p", o.p}, {"e", o.e}};
  if (!o.modulus.empty()) j["modulus"] = parse_list(o.modulus, "--modulus");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using PolyPtr = std::unique_ptr<wl_poly, void (*)(wl_poly*)>;
using FieldPtr = std::unique_ptr<wl_field, void (*)(wl_field*)>;

PolyPtr make_poly(const Options& o) {
  std::string text;
  if (!o.input.empty()) {
    if (!o.poly.empty()) throw UsageError("give either --poly or --input, not both");
    text = read_file(o.input);
  } else {
    if (o.poly.empty()) throw UsageError("--poly (or --input FILE) is required");
    json j = field_json(o);
    j["coeffs"] = parse_list(o.poly, "--poly");
    text = j.dump();
  }
  wl_poly* f = nullptr;
  check(wl_poly_from_json(text.c_str(), &f));
  return PolyPtr(f, wl_poly_free);
}

FieldPtr make_field(const Options& o) {
  const json fj = field_json(o);
  std::vector<std::int64_t> mod;
  if (fj.contains("modulus"))
    for (const auto& c : fj["modulus"]) {
      if (!c.is_number_integer()) throw UsageError("--modulus takes integers");
      mod.push_back(c.get<std::int64_t>());
    }
  wl_field* F = nullptr;
  check(wl_field_new(o.p, o.e, mod.empty() ? nullptr : mod.data(), mod.size(), &F));
  return FieldPtr(F, wl_field_free);
}

// Coordinate vector of length e for a field element given on the command line.
std::vector<std::int64_t> coords(const std::string& text, std::uint32_t e, const char* what) {
  json j = parse_list(text, what);
  if (j.size() == 1 && j[0].is_array()) j = j[0];
  std::vector<std::int64_t> c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw UsageError(std::string(what) + ": expected integer coordinates");
    c.push_back(x.get<std::int64_t>());
  }
  if (c.size() > e) throw UsageError(std::string(what) + ": more coordinates than the field degree");
  c.resize(e, 0);
  return c;
}

wl_count_method count_method(const std::string& m) {
  if (m == "charsum") return WL_COUNT_CHARSUM;
  if (m == "traceKernel") return WL_COUNT_TRACE_KERNEL;
  if (m == "naive") return WL_COUNT_NAIVE;
  if (m == "all") return WL_COUNT_ALL;
  throw UsageError("--method must be charsum, traceKernel, naive or all");
}

json grid_json(const Options& o) {
  if (!o.grid.empty()) {
    try {
      return json::parse(read_file(o.grid));
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("--grid: ") + e.what());
    }
  }
  if (o.qs.empty() || o.ds.empty() || o.rs.empty()) throw UsageError("sweep needs --grid FILE or --q, --d and --r lists");
  return json{{"qs", o.qs},           {"ds", o.ds},         {"rs", o.rs},
              {"n", o.n},             {"family", o.family}, {"samples", o.samples},
              {"seed", o.seed},       {"requireSumNonsingular", o.sumNonsingular}};
}

void print_text(const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      std::cout << indent << k << ":\n";
      print_text(v, indent + "  ");
    } else {
      std::cout << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Options& o, const json& j) {
  if (o.format == "text")
    print_text(j);
  else
    std::cout << j.dump(2) << "\n";
}

bool falsy(const json& j, const char* key) { return j.contains(key) && j[key].is_boolean() && !j[key].get<bool>(); }

// Strict mode: the verdict-bearing fields of each report.
bool verdict_failed(const std::string& cmd, const json& j) {
  if (cmd == "verify")
    return j.value("counterexample", false) || j.value("applicable", "") == "weilOnly" ||
           (j.value("weilApplies", false) && !j.value("weilHolds", true));
  if (cmd == "classify") return j.value("applicableBound", "") == "weilOnly" || j.value("applicable", "") == "weilOnly";
  if (cmd == "count") return falsy(j, "agree");
  if (cmd == "lfunction") return j.value("status", "complete") != "complete" || falsy(j, "holds");
  if (cmd == "sweep") return !j.value("counterexamples", json::array()).empty() || !j.value("weilViolations", json::array()).empty();
  return false;
}

int run(const std::string& cmd, const Options& o) {
  if (o.format != "json" && o.format != "text" && o.format != "csv") throw UsageError("--format must be json, csv or text");
  if (o.format == "csv" && cmd != "sweep") throw UsageError("--format csv is only available for sweep");

  std::unique_ptr<wl_context, void (*)(wl_context*)> ctx(nullptr, wl_context_free);
  {
    wl_context* c = nullptr;
    check(wl_context_new(&c));
    ctx.reset(c);
  }
  if (o.budget) check(wl_context_set_budget(ctx.get(), *o.budget));
  check(wl_context_set_threads(ctx.get(), o.threads));

  char* raw = nullptr;
  json result;
  if (cmd == "field-info") {
    auto F = make_field(o);
    check(wl_field_info(F.get(), &raw));
    result = take(raw);
  } else if (cmd == "count") {
    auto f = make_poly(o);
    std::vector<std::int64_t> shift;
    if (!o.shift.empty()) {
      const json pj = take([&] { char* s = nullptr; check(wl_poly_to_json(f.get(), &s)); return s; }());
      shift = coords(o.shift, pj.at("e").get<std::uint32_t>(), "--shift");
    }
    check(wl_count(ctx.get(), f.get(), o.r, count_method(o.method), shift.empty() ? nullptr : shift.data(), &raw));
    result = take(raw);
  } else if (cmd == "classify") {
    auto f = make_poly(o);
    check(wl_classify(ctx.get(), f.get(), o.r, &raw));
    result = take(raw);
  } else if (cmd == "verify") {
    auto f = make_poly(o);
    check(wl_verify(ctx.get(), f.get(), o.r, &raw));
    result = take(raw);
  } else if (cmd == "lfunction") {
    auto f = make_poly(o);
    if (o.mMax > 0) {
      check(wl_power_sums(ctx.get(), f.get(), o.r, o.mMax, &raw));
    } else if (o.functionalEquation) {
      check(wl_functional_equation(ctx.get(), f.get(), o.r, o.depth, &raw));
    } else {
      check(wl_lfunction(ctx.get(), f.get(), o.r, o.depth, &raw));
    }
    result = take(raw);
  } else if (cmd == "sweep") {
    const std::string grid = grid_json(o).dump();
    if (o.format == "csv" && o.out.empty()) {
      check(wl_sweep_csv(ctx.get(), grid.c_str(), &raw));
      std::unique_ptr<char, void (*)(char*)> g(raw, wl_string_free);
      std::cout << raw;
      // The CSV carries the holds column; strict mode looks for any "false".
      return o.strict && std::string(raw).find(",false") != std::string::npos ? kVerdict : kOk;
    }
    if (!o.out.empty()) std::filesystem::create_directories(o.out);
    check(wl_sweep(ctx.get(), grid.c_str(), o.out.empty() ? nullptr : o.out.c_str(), &raw));
    result = take(raw);
    if (o.format == "csv") {
      std::cout << read_file(result["files"]["csv"].get<std::string>());
      return o.strict && verdict_failed(cmd, result) ? kVerdict : kOk;
    }
  } else if (cmd == "kummer") {
    if (o.kummerE == 0) throw UsageError("--kummer-e is required");
    if (!o.poly.empty() || !o.input.empty()) {
      auto f = make_poly(o);
      check(wl_kummer(ctx.get(), f.get(), o.kummerE, o.r, &raw));
    } else {
      if (o.d == 0) throw UsageError("kummer needs --poly, --input or --d for a sweep");
      auto F = make_field(o);
      check(wl_kummer_sweep(ctx.get(), F.get(), o.d, o.kummerE, o.r, &raw));
    }
    result = take(raw);
  } else if (cmd == "gauss") {
    auto F = make_field(o);
    std::vector<std::int64_t> shift;
    if (!o.shift.empty()) shift = coords(o.shift, o.e, "--shift");
    check(wl_gauss(F.get(), o.order, o.exponent, shift.empty() ? nullptr : shift.data(), &raw));
    result = take(raw);
  } else if (cmd == "constant") {
    check(wl_constant(o.d, o.r, o.n, &raw));
    result = take(raw);
  } else if (cmd == "hodge") {
    check(wl_hodge(o.d, o.n, &raw));
    result = take(raw);
  }
  emit(o, result);
  return o.strict && verdict_failed(cmd, result) ? kVerdict : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weillab: exact point counts, character sums and bounds for Artin-Schreier curves y^q - y = f(x)"};
  app.require_subcommand(1);
  Options o;

  auto field_opts = [&](CLI::App* s) {
    s->add_option("--p", o.p, "characteristic (odd prime)");
    s->add_option("--e", o.e, "extension degree, q = p^e");
    s->add_option("--modulus", o.modulus, "monic irreducible modulus for F_q, constant first (e.g. 2,2,1)");
  };
  auto poly_opts = [&](CLI::App* s) {
    field_opts(s);
    s->add_option("--poly", o.poly, "coefficients of f, constant first; [a,b] is a coordinate vector in F_q");
    s->add_option("--input", o.input, "JSON file with the field and polynomial (required for several variables)");
    s->add_option("--r", o.r, "work over F_{q^r}")->check(CLI::PositiveNumber);
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--budget", o.budget, "enumeration budget in points (overrides WEILLAB_BUDGET)");
    s->add_option("--format", o.format, "json, text or csv");
    s->add_option("--out", o.out, "directory for report files");
    s->add_flag("--strict", o.strict, "exit 1 when a hypothesis or verdict fails");
  };

  auto* fi = app.add_subcommand("field-info", "describe F_q: modulus, generator, trace form");
  field_opts(fi);
  auto* count = app.add_subcommand("count", "number of affine points N_r");
  poly_opts(count);
  count->add_option("--method", o.method, "charsum, traceKernel, naive or all");
  count->add_option("--shift", o.shift, "additive character shift a for psi(a*x) (charsum method)");
  auto* classify = app.add_subcommand("classify", "monodromy hypotheses and applicable bound");
  poly_opts(classify);
  auto* verify = app.add_subcommand("verify", "count and compare with the improved, Weil, Serre and Stohr-Voloch bounds");
  poly_opts(verify);
  auto* lf = app.add_subcommand("lfunction", "power sums, rational reconstruction and weight analysis");
  poly_opts(lf);
  lf->add_option("--depth", o.depth, "number of power sums (0 = default)");
  lf->add_flag("--functional-equation", o.functionalEquation, "compare Q for f and -f");
  lf->add_option("--power-sums", o.mMax, "only compute S_1..S_M");
  auto* sweep = app.add_subcommand("sweep", "exhaustive or random sweep with JSON/CSV reports");
  sweep->add_option("--grid", o.grid, "grid JSON file");
  sweep->add_option("--q", o.qs, "field sizes");
  sweep->add_option("--d", o.ds, "degrees");
  sweep->add_option("--r", o.rs, "extension degrees");
  sweep->add_option("--n", o.n, "number of variables");
  sweep->add_option("--family", o.family, "allMonic or random");
  sweep->add_option("--samples", o.samples, "random samples per (q, d)");
  sweep->add_option("--seed", o.seed, "random seed");
  sweep->add_flag("--sum-nonsingular", o.sumNonsingular, "keep only f passing the sum-hypersurface test");
  auto* kummer = app.add_subcommand("kummer", "explore y^((q-1)/e) = f(x)");
  poly_opts(kummer);
  kummer->add_option("--kummer-e", o.kummerE, "e dividing q - 1");
  kummer->add_option("--d", o.d, "sweep all monic f of this degree when no --poly is given");
  auto* gauss = app.add_subcommand("gauss", "exact Gauss sum g(chi, psi)");
  field_opts(gauss);
  gauss->add_option("--order", o.order, "order of chi (divides q - 1)");
  gauss->add_option("--exponent", o.exponent, "chi = omega^exponent for omega of that order");
  gauss->add_option("--shift", o.shift, "additive character shift a");
  auto* constant = app.add_subcommand("constant", "constant C_{d,r} of the improved bound");
  constant->add_option("--d", o.d)->required();
  constant->add_option("--r", o.r)->required();
  constant->add_option("--n", o.n);
  auto* hodge = app.add_subcommand("hodge", "character multiplicities for degree d in n variables");
  hodge->add_option("--d", o.d)->required();
  hodge->add_option("--n", o.n);

  for (auto* s : app.get_subcommands([](const CLI::App*) { return true; })) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.get_subcommand(cmd)->help();
    return kUsage;
  } catch (const CallError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerdict;
  }
}
