// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <string>
#include <utility>

#include "bounds.hpp"
#include "charsum.hpp"
#include "classify.hpp"
#include "cyclo.hpp"
#include "field.hpp"
#include "lfunction.hpp"
#include "polyspec.hpp"

// JSON schemas shared by the C API and the CLI. Big integers are decimal
// strings; field elements are coordinate vectors over F_p, constant first.
namespace weillab::io {

using json = nlohmann::ordered_json;

// {"p", "e", "modulus"?}; InvalidArgument on malformed input.
ff::FieldPtr field_from_json(const json& j);
// {"p", "e", "modulus"?, "coeffs": [[..], ..]} or, for several variables,
// {"p", "e", "modulus"?, "n", "terms": [{"exp": [..], "coeff": [..]}, ..]}.
// A bare integer is accepted wherever a coordinate vector is expected.
ff::PolySpec poly_from_json(const json& j);
ff::PolySpec poly_from_string(const std::string& text);

json elem_to_json(const ff::Field& F, const ff::Elem& a);
ff::Elem elem_from_json(const ff::Field& F, const json& j);
json field_to_json(const ff::Field& F);
json poly_to_json(const ff::PolySpec& f);

json mpz_to_json(const mpz_class& z);
json cyclo_to_json(const cyclo::CycloNumber& a);
cyclo::CycloNumber cyclo_from_json(const json& j);
json qpoly_to_json(const cyclo::QPoly& a);
json cyclo_poly_to_json(const cyclo::CycloPoly& a);

json field_info_json(const ff::FieldPtr& F);
json classification_to_json(const classify::ClassificationReport& r, const ff::Field& F);
json multivariate_to_json(const classify::MultivariateReport& r);
json bound_report_to_json(const bounds::BoundReport& b, const ff::Field& F);
json lfunction_to_json(const lfunction::LFunctionData& d, const ff::Field& F);
json functional_equation_to_json(const lfunction::FunctionalEquation& fe);
json hodge_to_json(const lfunction::HodgeMultiplicities& h);
json kummer_to_json(const bounds::KummerResult& k);
json kummer_sweep_to_json(const bounds::KummerSweep& s);

// {"qs", "ds", "rs", "n"?, "family"?: "allMonic"|"random", "samples"?,
// "seed"?, "requireSumNonsingular"?}
bounds::SweepGrid grid_from_json(const json& j);
json grid_to_json(const bounds::SweepGrid& g);
json sweep_to_json(const bounds::SweepReport& s);
// Columns q,d,r,n,f_coeffs,class,N_r,main_term,deviation,bound,holds.
std::string sweep_to_csv(const bounds::SweepReport& s);
// Writes <dir>/sweep-<hash>.json and .csv; returns both paths.
std::pair<std::string, std::string> write_sweep(const bounds::SweepReport& s, const std::string& dir);

}  // namespace weillab::io
