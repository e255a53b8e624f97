// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "io.hpp"

using namespace weillab;
using io::json;

namespace {

template <class F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

}  // namespace

TEST_CASE("univariate polynomials round-trip through JSON") {
  const auto f = io::poly_from_string(R"({"p":3,"e":2,"modulus":[2,2,1],"coeffs":[[1,2],0,[0,1],1]})");
  CHECK(f.nvars() == 1);
  CHECK(f.degree() == 3);
  const json j = io::poly_to_json(f);
  CHECK(j["modulus"] == json::array({2, 2, 1}));
  CHECK(j["coeffs"] == json::parse("[[1,2],[0,0],[0,1],[1,0]]"));
  const auto g = io::poly_from_json(j);
  CHECK(g.str() == f.str());
  CHECK(io::poly_to_json(g) == j);
}

TEST_CASE("multivariate polynomials round-trip through JSON") {
  const auto f = io::poly_from_string(
      R"({"p":5,"e":1,"n":2,"terms":[{"exp":[3,0],"coeff":1},{"exp":[0,3],"coeff":[2]},{"exp":[1,1],"coeff":4}]})");
  CHECK(f.nvars() == 2);
  CHECK(f.degree() == 3);
  const auto g = io::poly_from_json(io::poly_to_json(f));
  CHECK(g.str() == f.str());
  CHECK(io::poly_to_json(g) == io::poly_to_json(f));
}

TEST_CASE("malformed input is rejected with InvalidArgument") {
  CHECK(code_of([] { io::poly_from_string("{not json"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { io::poly_from_string(R"({"p":3,"e":1})"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { io::poly_from_string(R"({"p":3,"e":1,"coeffs":"x^2"})"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { io::poly_from_string(R"({"p":3,"e":1,"coeffs":[[0,1]]})"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { io::poly_from_string(R"({"p":9,"e":1,"coeffs":[0,1]})"); }) == ErrorCode::NonPrime);
  CHECK(code_of([] { io::poly_from_string(R"({"p":3,"e":2,"modulus":[1,1,1],"coeffs":[0,1]})"); }) ==
        ErrorCode::Reducible);
  CHECK(code_of([] { io::grid_from_json(json::parse(R"({"qs":[3],"ds":[2]})")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { io::grid_from_json(json::parse(R"({"qs":[3],"ds":[2],"rs":[1],"family":"x"})")); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("cyclotomic numbers round-trip exactly") {
  const auto a = cyclo::CycloNumber::zeta(12, 5) * cyclo::CycloNumber(mpq_class(7, 3)) + cyclo::CycloNumber(mpq_class(-1, 2), 12);
  const json j = io::cyclo_to_json(a);
  CHECK(j["n"] == 12);
  CHECK(io::cyclo_from_json(j) == a);
  CHECK(io::cyclo_from_json(json::parse(j.dump())) == a);
}

TEST_CASE("sweep grids round-trip") {
  bounds::SweepGrid g;
  g.qs = {3, 5};
  g.ds = {2, 4};
  g.rs = {1, 2};
  g.family = bounds::Family::Random;
  g.samples = 7;
  g.seed = 99;
  g.requireSumNonsingular = true;
  const json j = io::grid_to_json(g);
  const auto h = io::grid_from_json(j);
  CHECK(io::grid_to_json(h) == j);
}

TEST_CASE("sweep reports: stable CSV columns and files named by hash") {
  bounds::SweepGrid g;
  g.qs = {3};
  g.ds = {2};
  g.rs = {1, 2};
  ExecConfig cfg;
  const auto rep = bounds::sweep(g, cfg);
  const auto csv = io::sweep_to_csv(rep);
  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() == rep.items.size() + 1);
  CHECK(lines[0] == "q,d,r,n,f_coeffs,class,N_r,main_term,deviation,bound,holds");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    CHECK(cols.size() == 11);
    CHECK(cols[0] == "3");
    CHECK((cols[10] == "true" || cols[10] == "false"));
  }

  const json j = io::sweep_to_json(rep);
  CHECK(j["hash"] == rep.hash);
  CHECK(j["items"].size() == rep.items.size());
  CHECK(j["items"][0].contains("classification"));

  const auto dir = std::filesystem::temp_directory_path() / "weillab-io-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto [jp, cp] = io::write_sweep(rep, dir.string());
  CHECK(std::filesystem::path(jp).filename() == "sweep-" + rep.hash + ".json");
  CHECK(std::filesystem::path(cp).filename() == "sweep-" + rep.hash + ".csv");
  std::ifstream in(cp);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == csv);
  std::ifstream jin(jp);
  CHECK(json::parse(jin) == j);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are identical for 1 and 3 threads") {
  bounds::SweepGrid g;
  g.qs = {5};
  g.ds = {3};
  g.rs = {1, 2};
  ExecConfig one;
  one.threads = 1;
  ExecConfig three;
  three.threads = 3;
  CHECK(io::sweep_to_json(bounds::sweep(g, one)).dump() == io::sweep_to_json(bounds::sweep(g, three)).dump());
}
