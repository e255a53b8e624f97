// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "error.hpp"

namespace weillab::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidArgument, what); }

template <class T>
T get_uint(const json& j, const char* key, T fallback, bool required) {
  if (!j.contains(key)) {
    if (required) bad(std::string("missing field \"") + key + "\"");
    return fallback;
  }
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) bad(std::string("field \"") + key + "\" must be a non-negative integer");
  return static_cast<T>(v.get<std::uint64_t>());
}

std::vector<std::int64_t> int_vector(const json& j, const char* what) {
  if (j.is_number_integer()) return {j.get<std::int64_t>()};
  if (!j.is_array()) bad(std::string(what) + " must be an integer or an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad(std::string(what) + " must contain integers only");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

json rational_pair(const mpq_class& x) { return json::array({x.get_num().get_str(), x.get_den().get_str()}); }

mpq_class rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    bad("rational must be [\"num\", \"den\"]");
  mpq_class q;
  try {
    q = mpq_class(mpz_class(j[0].get<std::string>()), mpz_class(j[1].get<std::string>()));
  } catch (const std::invalid_argument&) {
    bad("rational components must be decimal integers");
  }
  if (q.get_den() == 0) bad("zero denominator");
  q.canonicalize();
  return q;
}

json rational_t(const lfunction::RationalT& r) {
  return json{{"num", qpoly_to_json(r.num)}, {"den", qpoly_to_json(r.den)}};
}

json local_factor(const lfunction::LocalFactor& lf) {
  return json{{"poly", qpoly_to_json(lf.poly)}, {"hypothesesHold", lf.hypothesesHold}};
}

json moduli(const std::vector<long double>& v) {
  json a = json::array();
  for (long double x : v) a.push_back(static_cast<double>(x));
  return a;
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

}  // namespace

// --- parsing -------------------------------------------------------------------

ff::FieldPtr field_from_json(const json& j) {
  if (!j.is_object()) bad("field description must be a JSON object");
  const auto p = get_uint<std::uint32_t>(j, "p", 0, true);
  const auto e = get_uint<std::uint32_t>(j, "e", 1, false);
  std::optional<std::vector<std::int64_t>> modulus;
  if (j.contains("modulus") && !j.at("modulus").is_null()) modulus = int_vector(j.at("modulus"), "modulus");
  return ff::Field::make(p, e, modulus);
}

ff::Elem elem_from_json(const ff::Field& F, const json& j) {
  const auto c = int_vector(j, "coefficient");
  if (c.size() > F.degree()) bad("coordinate vector longer than the field degree");
  return F.from_coords(c);
}

ff::PolySpec poly_from_json(const json& j) {
  const ff::FieldPtr F = field_from_json(j);
  if (j.contains("terms")) {
    const auto n = get_uint<std::uint32_t>(j, "n", 1, true);
    if (n == 0) bad("n must be positive");
    std::vector<ff::Term> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.is_object() || !t.contains("exp") || !t.contains("coeff")) bad("term must be {\"exp\", \"coeff\"}");
      const auto ex = int_vector(t.at("exp"), "exp");
      if (ex.size() != n) bad("exponent vector must have n entries");
      std::vector<std::uint32_t> e;
      for (auto x : ex) {
        if (x < 0) bad("exponents must be non-negative");
        e.push_back(static_cast<std::uint32_t>(x));
      }
      terms.push_back({std::move(e), elem_from_json(*F, t.at("coeff"))});
    }
    return ff::PolySpec(F, n, std::move(terms));
  }
  if (!j.contains("coeffs") || !j.at("coeffs").is_array()) bad("missing \"coeffs\" array");
  std::vector<ff::Elem> c;
  for (const auto& x : j.at("coeffs")) c.push_back(elem_from_json(*F, x));
  return ff::PolySpec::from_poly(ff::Poly(F, std::move(c)));
}

ff::PolySpec poly_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return poly_from_json(j);
}

// --- primitive values ------------------------------------------------------------

json elem_to_json(const ff::Field& F, const ff::Elem& a) {
  json c = json::array();
  std::uint64_t idx = F.index(a);
  for (std::uint32_t i = 0; i < F.degree(); ++i) {
    c.push_back(idx % F.p());
    idx /= F.p();
  }
  return c;
}

json field_to_json(const ff::Field& F) {
  json m = json::array();
  for (auto c : F.modulus()) m.push_back(c);
  return json{{"p", F.p()}, {"e", F.degree()}, {"q", std::to_string(F.size())}, {"modulus", m}};
}

json poly_to_json(const ff::PolySpec& f) {
  const ff::Field& F = *f.field();
  json j = field_to_json(F);
  j.erase("q");
  if (f.nvars() == 1) {
    json c = json::array();
    const ff::Poly g = f.to_poly();
    for (const auto& x : g.coeffs()) c.push_back(elem_to_json(F, x));
    j["coeffs"] = c;
  } else {
    j["n"] = f.nvars();
    json terms = json::array();
    for (const auto& t : f.terms()) terms.push_back(json{{"exp", t.exps}, {"coeff", elem_to_json(F, t.coeff)}});
    j["terms"] = terms;
  }
  return j;
}

json mpz_to_json(const mpz_class& z) { return z.get_str(); }

json cyclo_to_json(const cyclo::CycloNumber& a) {
  json c = json::array();
  for (const auto& x : a.coords()) c.push_back(rational_pair(x));
  return json{{"n", a.conductor()}, {"coords", c}};
}

cyclo::CycloNumber cyclo_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("coords")) bad("cyclotomic number must be {\"n\", \"coords\"}");
  const auto n = get_uint<std::uint32_t>(j, "n", 1, true);
  if (n == 0) bad("conductor must be positive");
  std::vector<mpq_class> c;
  for (const auto& x : j.at("coords")) c.push_back(rational_from(x));
  return cyclo::CycloNumber::from_coords(n, std::move(c));
}

json qpoly_to_json(const cyclo::QPoly& a) {
  json out = json::array();
  for (const auto& c : a) out.push_back(cyclo_to_json(cyclo::CycloNumber(c)));
  return out;
}

json cyclo_poly_to_json(const cyclo::CycloPoly& a) {
  json out = json::array();
  for (const auto& c : a) out.push_back(cyclo_to_json(c));
  return out;
}

// --- reports ---------------------------------------------------------------------

json field_info_json(const ff::FieldPtr& F) {
  json j = field_to_json(*F);
  j["description"] = F->describe();
  j["generator"] = elem_to_json(*F, ff::find_generator(*F));
  json tr = json::array();
  for (auto c : F->abs_trace_form()) tr.push_back(c);
  j["absTraceForm"] = tr;
  return j;
}

json classification_to_json(const classify::ClassificationReport& r, const ff::Field& F) {
  json flags{{"derivSquarefree", r.flags.derivSquarefree},
             {"slCriterion", r.flags.slCriterion},
             {"spCriterion", r.flags.spCriterion},
             {"quasiOdd", r.flags.quasiOdd},
             {"sumHypersurfaceNonsingular", opt_bool(r.flags.sumHypersurfaceNonsingular)},
             {"pGreaterThan2dMinus1", r.flags.pGreaterThan2dMinus1},
             {"dDividesQMinus1", r.flags.dDividesQMinus1}};
  json mains = json::array();
  for (const auto& m : r.main_terms()) mains.push_back(mpz_to_json(m));
  json j{{"q", std::to_string(r.q)},
         {"d", r.d},
         {"r", r.r},
         {"hypothesisFlags", flags},
         {"monodromyClass", classify::to_string(r.monodromyClass)},
         {"beta", classify::to_string(r.beta)},
         {"mainTerm", mains},
         {"applicableBound", classify::to_string(r.applicableBound)}};
  j["s"] = r.s ? elem_to_json(F, *r.s) : json(nullptr);
  j["b"] = r.b ? elem_to_json(F, *r.b) : json(nullptr);
  return j;
}

json multivariate_to_json(const classify::MultivariateReport& r) {
  return json{{"deligne", opt_bool(r.deligne)},
              {"criticalEtale", opt_bool(r.criticalEtale)},
              {"distinctValues", opt_bool(r.distinctValues)},
              {"sumNonsingular", opt_bool(r.sumNonsingular)},
              {"criticalPointsFound", r.criticalPointsFound},
              {"expectedCriticalPoints", r.expectedCriticalPoints},
              {"searchBound", r.searchBound}};
}

json bound_report_to_json(const bounds::BoundReport& b, const ff::Field& F) {
  json cands = json::array();
  for (const auto& c : b.candidates)
    cands.push_back(json{{"mainTerm", mpz_to_json(c.mainTerm)},
                         {"deviation", mpz_to_json(c.deviation)},
                         {"holds", c.holds}});
  auto root = [](const bounds::ScaledRoot& s) {
    return json{{"coeff", mpz_to_json(s.coeff)},
                {"q", std::to_string(s.q)},
                {"halfExponent", s.halfExp},
                {"floor", mpz_to_json(s.floor())},
                {"expr", s.str()}};
  };
  json j{{"f", b.f},
         {"coeffs", b.coeffs},
         {"q", std::to_string(b.q)},
         {"d", b.d},
         {"r", b.r},
         {"n", b.n},
         {"N_r", mpz_to_json(b.N)},
         {"beta", classify::to_string(b.beta)},
         {"mainTermCandidates", cands},
         {"improvedBound", root(b.improved)},
         {"holdsImproved", b.holds_improved()},
         {"counterexample", b.counterexample()},
         {"applicable", classify::to_string(b.applicable)},
         {"weilBound", root(b.weil)},
         {"weilHolds", b.weilHolds},
         {"weilApplies", b.weilApplies}};
  j["serreBound"] = b.serre ? mpz_to_json(*b.serre) : json(nullptr);
  j["serreHolds"] = b.serreHolds;
  j["stohrVolochBound"] = b.stohrVoloch ? mpz_to_json(*b.stohrVoloch) : json(nullptr);
  j["stohrVolochHolds"] = b.stohrVolochHolds;
  j["classification"] = b.classification ? classification_to_json(*b.classification, F) : json(nullptr);
  j["multivariate"] = b.multivariate ? multivariate_to_json(*b.multivariate) : json(nullptr);
  return j;
}

json lfunction_to_json(const lfunction::LFunctionData& d, const ff::Field& F) {
  json sums = json::array();
  for (const auto& s : d.powerSums) sums.push_back(mpz_to_json(s));
  json j{{"r", d.r},
         {"requestedDepth", d.requestedDepth},
         {"depth", d.depth},
         {"powerSums", sums},
         {"series", qpoly_to_json(d.series)},
         {"numBound", d.numBound},
         {"denBound", d.denBound}};
  j["L"] = d.L ? rational_t(*d.L) : json(nullptr);
  if (d.pure) {
    const auto& p = *d.pure;
    json stripped = json::array();
    for (const auto& s : p.stripped)
      stripped.push_back(
          json{{"beta", s.beta}, {"weight", s.weight}, {"pole", s.pole}, {"multiplicity", s.multiplicity}});
    j["pure"] = json{{"Q", rational_t(p.Q)},
                     {"QIsPolynomial", p.Q.is_polynomial()},
                     {"P0", local_factor(p.P0)},
                     {"Pinf", local_factor(p.Pinf)},
                     {"stripped", stripped},
                     {"structurePredicted", p.structurePredicted},
                     {"zeroModuli", moduli(p.zeroModuli)},
                     {"poleModuli", moduli(p.poleModuli)},
                     {"targetModulus", static_cast<double>(p.targetModulus)},
                     {"pure", p.pure},
                     {"degreeBound", mpz_to_json(p.degreeBound)},
                     {"withinDegreeBound", p.withinDegreeBound}};
  } else {
    j["pure"] = nullptr;
  }
  j["classification"] = classification_to_json(d.classification, F);
  j["status"] = d.status;
  j["message"] = d.message;
  return j;
}

json functional_equation_to_json(const lfunction::FunctionalEquation& fe) {
  return json{{"holds", fe.holds}, {"Q", rational_t(fe.Q)}, {"Qstar", rational_t(fe.Qstar)}};
}

json hodge_to_json(const lfunction::HodgeMultiplicities& h) {
  return json{{"d", h.d}, {"n", h.n}, {"nontrivial", h.nontrivial}, {"trivial", h.trivial}, {"total", h.total()}};
}

json kummer_to_json(const bounds::KummerResult& k) {
  return json{{"f", k.f},
              {"q", std::to_string(k.q)},
              {"d", k.d},
              {"e", k.e},
              {"r", k.r},
              {"N_r", mpz_to_json(k.N)},
              {"deviation", mpz_to_json(k.deviation)},
              {"normalizedSquared", k.normalizedSquared.get_str()},
              {"normalized", k.normalized}};
}

json kummer_sweep_to_json(const bounds::KummerSweep& s) {
  json items = json::array();
  for (const auto& k : s.items) items.push_back(kummer_to_json(k));
  return json{{"items", items},
              {"argmax", s.argmax},
              {"sEstimateSquared", s.maxNormalizedSquared.get_str()},
              {"sEstimate", s.maxNormalized}};
}

bounds::SweepGrid grid_from_json(const json& j) {
  if (!j.is_object()) bad("sweep grid must be a JSON object");
  bounds::SweepGrid g;
  auto list = [&](const char* key, auto& out) {
    if (!j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    for (auto v : int_vector(j.at(key), key)) {
      if (v <= 0) bad(std::string(key) + " entries must be positive");
      out.push_back(static_cast<std::remove_reference_t<decltype(out[0])>>(v));
    }
  };
  list("qs", g.qs);
  list("ds", g.ds);
  list("rs", g.rs);
  g.n = get_uint<std::uint32_t>(j, "n", 1, false);
  if (j.contains("family")) {
    const auto f = j.at("family").get<std::string>();
    if (f == "allMonic")
      g.family = bounds::Family::AllMonic;
    else if (f == "random")
      g.family = bounds::Family::Random;
    else
      bad("family must be \"allMonic\" or \"random\"");
  }
  g.samples = get_uint<std::uint32_t>(j, "samples", g.samples, false);
  g.seed = get_uint<std::uint64_t>(j, "seed", g.seed, false);
  if (j.contains("requireSumNonsingular")) g.requireSumNonsingular = j.at("requireSumNonsingular").get<bool>();
  return g;
}

json grid_to_json(const bounds::SweepGrid& g) {
  return json{{"qs", g.qs},
              {"ds", g.ds},
              {"rs", g.rs},
              {"n", g.n},
              {"family", g.family == bounds::Family::AllMonic ? "allMonic" : "random"},
              {"samples", g.samples},
              {"seed", g.seed},
              {"requireSumNonsingular", g.requireSumNonsingular}};
}

json sweep_to_json(const bounds::SweepReport& s) {
  // Sweeps run over the default model of each F_q.
  std::map<std::uint64_t, ff::FieldPtr> fields;
  json items = json::array();
  for (const auto& it : s.items) {
    auto& F = fields[it.report.q];
    if (!F) {
      const auto [p, e] = bounds::split_prime_power(it.report.q);
      F = ff::Field::make(p, e);
    }
    json j = bound_report_to_json(it.report, *F);
    j["orbitSize"] = it.orbitSize;
    items.push_back(std::move(j));
  }
  json classes = json::array();
  for (const auto& c : s.classes)
    classes.push_back(json{{"class", c.name},
                           {"items", c.items},
                           {"members", c.members},
                           {"maxNormalizedDeviation", c.maxNormalizedDeviation}});
  return json{{"hash", s.hash},
              {"grid", grid_to_json(s.grid)},
              {"classes", classes},
              {"counterexamples", s.counterexamples},
              {"weilViolations", s.weilViolations},
              {"items", items}};
}

std::string sweep_to_csv(const bounds::SweepReport& s) {
  std::ostringstream os;
  os << "q,d,r,n,f_coeffs,class,N_r,main_term,deviation,bound,holds\n";
  for (const auto& it : s.items) {
    const auto& b = it.report;
    const auto& best = b.best();
    os << b.q << ',' << b.d << ',' << b.r << ',' << b.n << ',' << b.coeffs << ','
       << classify::to_string(b.applicable) << ',' << b.N.get_str() << ',' << best.mainTerm.get_str() << ','
       << best.deviation.get_str() << ',' << b.improved.str() << ',' << (b.holds_improved() ? "true" : "false")
       << '\n';
  }
  return os.str();
}

std::pair<std::string, std::string> write_sweep(const bounds::SweepReport& s, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) bad("cannot create output directory " + dir + ": " + ec.message());
  const fs::path base = fs::path(dir) / ("sweep-" + s.hash);
  const std::string jp = base.string() + ".json", cp = base.string() + ".csv";
  std::ofstream(jp) << sweep_to_json(s).dump(2) << '\n';
  std::ofstream(cp) << sweep_to_csv(s);
  if (!fs::exists(jp) || !fs::exists(cp)) bad("failed to write sweep reports under " + dir);
  return {jp, cp};
}

}  // namespace weillab::io
