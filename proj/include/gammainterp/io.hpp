#pragma once

// JSON schemas for every input and report type. Complex numbers are [re, im].

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gammainterp/cnu.hpp"
#include "gammainterp/counterexample.hpp"
#include "gammainterp/eclass.hpp"
#include "gammainterp/examples.hpp"
#include "gammainterp/families.hpp"
#include "gammainterp/gamma_core.hpp"
#include "gammainterp/pick.hpp"
#include "gammainterp/ratfun.hpp"
#include "gammainterp/spectral.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) { j = json::array({z.real(), z.imag()}); }
  static void from_json(const json& j, std::complex<double>& z) {
    if (j.is_number()) {
      z = {j.get<double>(), 0.0};
      return;
    }
    if (!j.is_array() || j.size() != 2) throw gammainterp::PreconditionError("complex number must be [re, im]");
    z = {j.at(0).get<double>(), j.at(1).get<double>()};
  }
};

template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v) j = *v;
    else j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null()) v.reset();
    else v = j.get<T>();
  }
};

// Eigen types live outside gammainterp, so ADL cannot find free functions for them.
template <>
struct adl_serializer<Eigen::VectorXcd> {
  static void to_json(json& j, const Eigen::VectorXcd& v) {
    j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(std::complex<double>(v(i)));
  }
  static void from_json(const json& j, Eigen::VectorXcd& v) {
    const auto xs = j.get<std::vector<std::complex<double>>>();
    v.resize(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  }
};

template <>
struct adl_serializer<Eigen::Matrix2cd> {
  static void to_json(json& j, const Eigen::Matrix2cd& w) {
    j = json::array({json::array({std::complex<double>(w(0, 0)), std::complex<double>(w(0, 1))}),
                     json::array({std::complex<double>(w(1, 0)), std::complex<double>(w(1, 1))})});
  }
  static void from_json(const json& j, Eigen::Matrix2cd& w) {
    if (!j.is_array() || j.size() != 2 || !j.at(0).is_array() || !j.at(1).is_array() || j.at(0).size() != 2 ||
        j.at(1).size() != 2)
      throw gammainterp::PreconditionError("matrix must be [[a, b], [c, d]]");
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c)
        w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j.at(r).at(c).get<std::complex<double>>();
  }
};

}  // namespace nlohmann

namespace gammainterp {

using json = nlohmann::json;

namespace detail {
template <class E>
E enum_from(const json& j, E last) {
  const std::string s = j.get<std::string>();
  for (int k = 0; k <= static_cast<int>(last); ++k)
    if (s == to_string(static_cast<E>(k))) return static_cast<E>(k);
  throw PreconditionError("unknown enumerator: " + s);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}
}  // namespace detail

inline void to_json(json& j, const Poly& p) { j = p.coeffs(); }
inline void from_json(const json& j, Poly& p) { p = Poly(j.get<std::vector<cplx>>()); }

inline void to_json(json& j, const RationalFn& f) { j = {{"num", f.num()}, {"den", f.den()}}; }
inline void from_json(const json& j, RationalFn& f) {
  f = RationalFn(j.at("num").get<Poly>(), detail::get_or<Poly>(j, "den", Poly::constant(1.0)));
}

inline void to_json(json& j, const BlaschkeProduct& b) { j = {{"phase", b.phase()}, {"zeros", b.zeros()}}; }
inline void from_json(const json& j, BlaschkeProduct& b) {
  b = BlaschkeProduct(detail::get_or<double>(j, "phase", 0.0), detail::get_or<std::vector<cplx>>(j, "zeros", {}));
}

inline void to_json(json& j, const GammaPoint& z) { j = {{"s", z.s}, {"p", z.p}}; }
inline void from_json(const json& j, GammaPoint& z) { z = {j.at("s").get<cplx>(), j.at("p").get<cplx>()}; }

inline void to_json(json& j, const GammaData& d) {
  j = {{"nodes", d.nodes}, {"targets", d.targets}, {"require_open", d.require_open}};
}
inline void from_json(const json& j, GammaData& d) {
  d.nodes = j.at("nodes").get<std::vector<cplx>>();
  d.targets = j.at("targets").get<std::vector<GammaPoint>>();
  d.require_open = detail::get_or<bool>(j, "require_open", true);
}

inline void to_json(json& j, const GammaMap& h) { j = {{"s", h.s}, {"p", h.p}}; }
inline void from_json(const json& j, GammaMap& h) { h = {j.at("s").get<RationalFn>(), j.at("p").get<RationalFn>()}; }

inline void to_json(json& j, const NPData& d) { j = {{"nodes", d.nodes}, {"targets", d.targets}}; }
inline void from_json(const json& j, NPData& d) {
  d.nodes = j.at("nodes").get<std::vector<cplx>>();
  d.targets = j.at("targets").get<std::vector<cplx>>();
}

inline void to_json(json& j, const NPStatus& s) {
  j = {{"kind", to_string(s.kind)}, {"min_eigenvalue", s.min_eigenvalue}, {"rank", s.rank}, {"band", s.band}};
}
inline void from_json(const json& j, NPStatus& s) {
  s.kind = detail::enum_from(j.at("kind"), NPKind::unsolvable);
  s.min_eigenvalue = j.at("min_eigenvalue").get<double>();
  s.rank = j.at("rank").get<int>();
  s.band = j.at("band").get<double>();
}

inline void to_json(json& j, const MembershipReport& m) {
  j = {{"kind", to_string(m.kind)}, {"open_g", m.open_g},   {"closed_gamma", m.closed_gamma},
       {"boundary", m.boundary},    {"distinguished", m.distinguished}, {"skew", m.skew},
       {"defect", m.defect}};
}
inline void from_json(const json& j, MembershipReport& m) {
  m.kind = detail::enum_from(j.at("kind"), Membership::outside);
  m.open_g = j.at("open_g").get<bool>();
  m.closed_gamma = j.at("closed_gamma").get<bool>();
  m.boundary = j.at("boundary").get<bool>();
  m.distinguished = j.at("distinguished").get<bool>();
  m.skew = j.at("skew").get<double>();
  m.defect = j.at("defect").get<double>();
}

inline void to_json(json& j, const ViolationCertificate& c) {
  j = {{"upsilon", c.upsilon}, {"eigenvalue", c.eigenvalue}, {"eigenvector", c.eigenvector}};
}
inline void from_json(const json& j, ViolationCertificate& c) {
  c.upsilon = j.at("upsilon").get<BlaschkeProduct>();
  c.eigenvalue = j.at("eigenvalue").get<double>();
  c.eigenvector = j.at("eigenvector").get<CVector>();
}

inline void to_json(json& j, const SearchLogEntry& e) {
  j = {{"degree", e.degree},         {"grid_evaluations", e.grid_evaluations},
       {"refine_evaluations", e.refine_evaluations}, {"grid_best", e.grid_best},
       {"refined_best", e.refined_best}, {"converged", e.converged},
       {"best", e.best}};
}
inline void from_json(const json& j, SearchLogEntry& e) {
  e.degree = j.at("degree").get<int>();
  e.grid_evaluations = j.at("grid_evaluations").get<long>();
  e.refine_evaluations = j.at("refine_evaluations").get<long>();
  e.grid_best = j.at("grid_best").get<double>();
  e.refined_best = j.at("refined_best").get<double>();
  e.converged = j.at("converged").get<bool>();
  e.best = j.at("best").get<BlaschkeProduct>();
}

inline void to_json(json& j, const CnuConfig& c) {
  j = {{"tol", c.tol},         {"strict_band", c.strict_band}, {"grid0", c.grid0},
       {"angles1", c.angles1}, {"disc1", c.disc1},             {"starts1", c.starts1},
       {"seeds", c.seeds},     {"refinements", c.refinements}, {"nm_iterations", c.nm_iterations},
       {"zero_clamp", c.zero_clamp}, {"seed", c.seed},         {"extract_witness", c.extract_witness}};
}
inline void from_json(const json& j, CnuConfig& c) {
  const CnuConfig def;
  c.tol = detail::get_or(j, "tol", def.tol);
  c.strict_band = detail::get_or(j, "strict_band", c.tol);
  c.grid0 = detail::get_or(j, "grid0", def.grid0);
  c.angles1 = detail::get_or(j, "angles1", def.angles1);
  c.disc1 = detail::get_or(j, "disc1", def.disc1);
  c.starts1 = detail::get_or(j, "starts1", def.starts1);
  c.seeds = detail::get_or(j, "seeds", def.seeds);
  c.refinements = detail::get_or(j, "refinements", def.refinements);
  c.nm_iterations = detail::get_or(j, "nm_iterations", def.nm_iterations);
  c.zero_clamp = detail::get_or(j, "zero_clamp", def.zero_clamp);
  c.seed = detail::get_or(j, "seed", def.seed);
  c.extract_witness = detail::get_or(j, "extract_witness", def.extract_witness);
}

/// Report JSON; the search log is included only when verbose.
inline json cnu_report_json(const CnuReport& r, bool verbose = true) {
  json j = {{"nu", r.nu},
            {"status", to_string(r.status)},
            {"sup_norm", r.sup_norm},
            {"argmax", r.argmax},
            {"witness_m", r.witness_m},
            {"witness_q", r.witness_q},
            {"violation", r.violation},
            {"evaluations", r.evaluations},
            {"note", r.note}};
  if (verbose) j["search_log"] = r.log;
  return j;
}
inline void to_json(json& j, const CnuReport& r) { j = cnu_report_json(r, true); }
inline void from_json(const json& j, CnuReport& r) {
  r.nu = j.at("nu").get<int>();
  r.status = detail::enum_from(j.at("status"), CnuStatus::inconclusive);
  r.sup_norm = j.at("sup_norm").get<double>();
  r.argmax = j.at("argmax").get<BlaschkeProduct>();
  r.witness_m = j.at("witness_m").get<std::optional<BlaschkeProduct>>();
  r.witness_q = j.at("witness_q").get<std::optional<BlaschkeProduct>>();
  r.violation = j.at("violation").get<std::optional<ViolationCertificate>>();
  r.evaluations = j.at("evaluations").get<long>();
  r.note = j.at("note").get<std::string>();
  r.log = detail::get_or<std::vector<SearchLogEntry>>(j, "search_log", {});
}

inline void to_json(json& j, const EMembership& m) {
  j = {{"nu", m.nu},          {"k", m.k},           {"in", m.in},
       {"exact", m.exact},    {"witness_m", m.witness_m}, {"resulting_q", m.resulting_q},
       {"method", m.method}};
}
inline void from_json(const json& j, EMembership& m) {
  m.nu = j.at("nu").get<int>();
  m.k = j.at("k").get<int>();
  m.in = j.at("in").get<bool>();
  m.exact = j.at("exact").get<bool>();
  m.witness_m = j.at("witness_m").get<std::optional<BlaschkeProduct>>();
  m.resulting_q = j.at("resulting_q").get<std::optional<BlaschkeProduct>>();
  m.method = j.at("method").get<std::string>();
}

inline void to_json(json& j, const ExtremalCertificate& c) { j = {{"k", c.k}, {"nu", c.nu}, {"m", c.m}}; }
inline void from_json(const json& j, ExtremalCertificate& c) {
  c.k = j.at("k").get<int>();
  c.nu = j.at("nu").get<int>();
  c.m = j.at("m").get<BlaschkeProduct>();
}

inline void to_json(json& j, const EClassReport& r) {
  j = {{"map", r.map},
       {"dp", r.dp},
       {"nu_max", r.nu_max},
       {"k_max", r.k_max},
       {"memberships", r.memberships},
       {"superficial", r.superficial},
       {"omega", r.omega},
       {"geodesic", r.geodesic},
       {"k_extremal", r.k_extremal},
       {"column_checks_ok", r.column_checks_ok},
       {"notes", r.notes}};
}
inline void from_json(const json& j, EClassReport& r) {
  r.map = j.at("map").get<GammaMap>();
  r.dp = j.at("dp").get<int>();
  r.nu_max = j.at("nu_max").get<int>();
  r.k_max = j.at("k_max").get<int>();
  r.memberships = j.at("memberships").get<std::vector<EMembership>>();
  r.superficial = j.at("superficial").get<bool>();
  r.omega = j.at("omega").get<std::optional<cplx>>();
  r.geodesic = j.at("geodesic").get<bool>();
  r.k_extremal = j.at("k_extremal").get<std::vector<ExtremalCertificate>>();
  r.column_checks_ok = j.at("column_checks_ok").get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
}

inline void to_json(json& j, const OmegaScan& s) {
  j = {{"points", s.points}, {"min_eigenvalue", s.min_eigenvalue}, {"scale", s.scale}, {"argmin_angle", s.argmin_angle}};
}
inline void from_json(const json& j, OmegaScan& s) {
  s.points = j.at("points").get<int>();
  s.min_eigenvalue = j.at("min_eigenvalue").get<double>();
  s.scale = j.at("scale").get<double>();
  s.argmin_angle = j.at("argmin_angle").get<double>();
}

inline void to_json(json& j, const BisectionStep& s) { j = {{"epsilon", s.epsilon}, {"violated", s.violated}}; }
inline void from_json(const json& j, BisectionStep& s) {
  s.epsilon = j.at("epsilon").get<double>();
  s.violated = j.at("violated").get<bool>();
}

inline void to_json(json& j, const CounterexampleReport& r) {
  j = {{"nu", r.nu},
       {"r", r.r},
       {"seed", r.seed},
       {"base", r.base},
       {"perturbed", r.perturbed},
       {"epsilon", r.epsilon},
       {"m", r.m},
       {"q", r.q},
       {"violation", r.violation},
       {"lower_evidence", r.lower_evidence},
       {"lower_scan", r.lower_scan},
       {"evidence_grade", r.evidence_grade},
       {"trace", r.trace}};
}
inline void from_json(const json& j, CounterexampleReport& r) {
  r.nu = j.at("nu").get<int>();
  r.r = j.at("r").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.base = j.at("base").get<GammaData>();
  r.perturbed = j.at("perturbed").get<GammaData>();
  r.epsilon = j.at("epsilon").get<double>();
  r.m = j.at("m").get<BlaschkeProduct>();
  r.q = j.at("q").get<BlaschkeProduct>();
  r.violation = j.at("violation").get<ViolationCertificate>();
  r.lower_evidence = j.at("lower_evidence").get<CnuReport>();
  r.lower_scan = j.at("lower_scan").get<std::optional<OmegaScan>>();
  r.evidence_grade = j.at("evidence_grade").get<std::string>();
  r.trace = j.at("trace").get<std::vector<BisectionStep>>();
}

inline void to_json(json& j, const SpectralNPProblem& p) { j = {{"nodes", p.nodes}, {"matrices", p.matrices}}; }
inline void from_json(const json& j, SpectralNPProblem& p) {
  p.nodes = j.at("nodes").get<std::vector<cplx>>();
  p.matrices = j.at("matrices").get<std::vector<Matrix2c>>();
}

inline void to_json(json& j, const FamilySpec& f) {
  j = {{"family", to_string(f.name)}, {"nu", f.nu},     {"j", f.j},         {"r", f.r},
       {"beta", f.beta},              {"a", f.a},       {"c", f.c},         {"omega", f.omega},
       {"phi", f.phi},                {"psi", f.psi},   {"operands", f.operands}};
}
inline void from_json(const json& j, FamilySpec& f) {
  const FamilySpec def;
  f.name = family_from_string(j.at("family").get<std::string>());
  f.nu = detail::get_or(j, "nu", def.nu);
  f.j = detail::get_or(j, "j", def.j);
  f.r = detail::get_or(j, "r", def.r);
  f.beta = detail::get_or(j, "beta", def.beta);
  f.a = detail::get_or(j, "a", def.a);
  f.c = detail::get_or(j, "c", def.c);
  f.omega = detail::get_or(j, "omega", def.omega);
  f.phi = detail::get_or(j, "phi", def.phi);
  f.psi = detail::get_or(j, "psi", def.psi);
  f.operands = detail::get_or<std::vector<FamilySpec>>(j, "operands", {});
}

inline void to_json(json& j, const Assertion& a) {
  j = {{"what", a.what}, {"pass", a.pass}, {"observed", a.observed}, {"threshold", a.threshold}};
}
inline void from_json(const json& j, Assertion& a) {
  a.what = j.at("what").get<std::string>();
  a.pass = j.at("pass").get<bool>();
  a.observed = j.at("observed").get<double>();
  a.threshold = j.at("threshold").get<double>();
}

inline void to_json(json& j, const ExampleResult& r) {
  j = {{"id", r.id}, {"subject", r.subject}, {"pass", r.pass}, {"assertions", r.assertions}, {"errors", r.errors}};
}
inline void from_json(const json& j, ExampleResult& r) {
  r.id = j.at("id").get<std::string>();
  r.subject = j.at("subject").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  r.assertions = j.at("assertions").get<std::vector<Assertion>>();
  r.errors = j.at("errors").get<std::vector<std::string>>();
}

inline void to_json(json& j, const SuiteReport& r) {
  j = {{"pass", r.pass}, {"tol", r.tol}, {"seed", r.seed}, {"results", r.results}};
}
inline void from_json(const json& j, SuiteReport& r) {
  r.pass = j.at("pass").get<bool>();
  r.tol = j.at("tol").get<std::optional<double>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.results = j.at("results").get<std::vector<ExampleResult>>();
}

/// A map given either as {"family": ...} parameters or as explicit {"s": ..., "p": ...} rationals.
inline GammaMap map_from_json(const json& j) {
  if (j.contains("family")) return build(j.get<FamilySpec>());
  const GammaMap h = j.get<GammaMap>();
  const GammaInnerDiagnostics diag = verify_gamma_inner(h);
  if (!diag.ok) throw PreconditionError("map is not rational Gamma-inner: " + diag.reason);
  return reduced(h);
}

/// Run-wide settings loaded from --config.
struct RunConfig {
  CnuConfig cnu;
  bool verbose = false;
};

inline void validate(const RunConfig& c) {
  if (!(c.cnu.tol > 0.0)) throw PreconditionError("config: tol must be positive");
  if (!(c.cnu.strict_band > 0.0)) throw PreconditionError("config: strict_band must be positive");
  if (c.cnu.grid0 < 16 || c.cnu.angles1 < 4 || c.cnu.disc1 < 2 || c.cnu.seeds < 10)
    throw PreconditionError("config: grid sizes below the minima (grid0 16, angles1 4, disc1 2, seeds 10)");
  if (c.cnu.refinements < 1 || c.cnu.starts1 < 1 || c.cnu.nm_iterations < 1)
    throw PreconditionError("config: refinement budgets must be >= 1");
}

inline void to_json(json& j, const RunConfig& c) {
  j = c.cnu;
  j["verbose"] = c.verbose;
}
inline void from_json(const json& j, RunConfig& c) {
  c.cnu = j.get<CnuConfig>();
  c.verbose = detail::get_or(j, "verbose", false);
  validate(c);
}

}  // namespace gammainterp
