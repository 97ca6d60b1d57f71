#pragma once

// Reproduction suite for the worked examples. Each entry runs with fixed seeds
// and records every assertion it makes, so a failing run says which quantity
// missed and by how much.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gammainterp/cnu.hpp"
#include "gammainterp/eclass.hpp"
#include "gammainterp/errors.hpp"
#include "gammainterp/families.hpp"
#include "gammainterp/gamma_core.hpp"

namespace gammainterp {

struct Assertion {
  std::string what;
  bool pass = false;
  double observed = 0.0;
  double threshold = 0.0;
};

struct ExampleResult {
  std::string id;
  std::string subject;
  bool pass = true;
  std::vector<Assertion> assertions;
  std::vector<std::string> errors;
};

struct SuiteOptions {
  std::optional<std::string> id;      // exact id
  std::optional<std::string> filter;  // case-insensitive substring of the id
  std::optional<double> tol;          // replaces every per-assertion tolerance
  std::uint64_t seed = 0;
};

struct SuiteReport {
  bool pass = true;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::vector<ExampleResult> results;
};

namespace detail {

class Recorder {
 public:
  Recorder(ExampleResult& out, std::optional<double> tol) : out_(out), tol_(tol) {}

  double tol(double fallback) const { return tol_.value_or(fallback); }

  /// observed <= threshold
  void at_most(const std::string& what, double observed, double fallback) {
    const double t = tol(fallback);
    push({what, observed <= t, observed, t});
  }
  /// observed < threshold, with a threshold that does not scale with --tol
  void below(const std::string& what, double observed, double threshold) {
    push({what, observed < threshold, observed, threshold});
  }
  void check(const std::string& what, bool ok) { push({what, ok, ok ? 1.0 : 0.0, 1.0}); }
  void error(const std::string& what, const std::exception& e) {
    out_.errors.push_back(what + ": " + e.what());
    out_.pass = false;
  }

 private:
  void push(Assertion a) {
    out_.pass = out_.pass && a.pass;
    out_.assertions.push_back(std::move(a));
  }
  ExampleResult& out_;
  std::optional<double> tol_;
};

inline const std::vector<cplx>& three_nodes() {
  static const std::vector<cplx> n{{0.1, 0.2}, {-0.3, 0.1}, {0.2, -0.4}};
  return n;
}

inline double sup_distance(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g, int points = 50) {
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const cplx z = std::polar(0.2 + 0.7 * k / points, 2.399963 * k);
    worst = std::max(worst, std::abs(f(z) - g(z)));
  }
  return worst;
}

inline BlaschkeProduct random_bl1(std::mt19937_64& rng, bool constant, double max_modulus = 0.7) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi), radius(0.0, max_modulus);
  const double phase = angle(rng);
  if (constant) return BlaschkeProduct(phase, {});
  return BlaschkeProduct(phase, {std::polar(radius(rng), angle(rng))});
}

inline std::string label(const std::string& base, int k) { return base + " #" + std::to_string(k); }

inline double interpolation_error(const BlaschkeProduct& q, const BlaschkeProduct& m, const GammaData& d) {
  double worst = 0.0;
  for (std::size_t j = 0; j < d.nodes.size(); ++j)
    worst = std::max(worst, std::abs(q(d.nodes[j]) - phi(m(d.nodes[j]), d.targets[j])));
  return worst;
}

// (2 r l, l^2): every constant is an auxiliary extremal, no degree-1 m is.
inline void exdm1(Recorder& rec, std::uint64_t seed) {
  const double r = 0.5;
  const GammaMap h{RationalFn(Poly::monomial(1, 2.0 * r)), RationalFn(Poly::monomial(2))};
  const GammaData d = sample_data(h, three_nodes());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const BlaschkeProduct w = BlaschkeProduct::unimodular(unit(kTwoPi * (k + jitter(rng)) / 20.0));
    try {
      rec.at_most(label("| ||X(omega)|| - 1 |", k), std::abs(x_norm(w, d) - 1.0), 1e-6);
      const BlaschkeProduct q = auxiliary_extremal(d, 1, w, rec.tol(1e-6)).second;
      rec.check(label("q in Bl_2", k), q.degree() <= 2);
      rec.at_most(label("q interpolates the transformed data", k), interpolation_error(q, w, d), 1e-9);
    } catch (const Error& e) {
      rec.error(label("constant omega", k), e);
    }
  }
  for (int k = 0; k < 10; ++k) {
    const BlaschkeProduct m = random_bl1(rng, false, 0.6);
    rec.below(label("degree-1 m is not extremal: ||X(m)||", k), x_norm(m, d), 1.0 - 1e-6);
  }
}

// (r(1 + l), l): every m in Bl_1 is extremal with d(q) = d(m) + 1.
inline void exdm2(Recorder& rec, std::uint64_t seed) {
  const double r = 0.5;
  const GammaMap h{RationalFn(Poly{r, r}), RationalFn(Poly::monomial(1))};
  const GammaData d = sample_data(h, three_nodes());
  std::mt19937_64 rng(seed + 1);
  for (int k = 0; k < 10; ++k) {
    const BlaschkeProduct m = random_bl1(rng, k < 4);
    try {
      rec.at_most(label("| ||X(m)|| - 1 |", k), std::abs(x_norm(m, d) - 1.0), 1e-6);
      const BlaschkeProduct q = auxiliary_extremal(d, 1, m, rec.tol(1e-6)).second;
      rec.check(label("d(q) = d(m) + 1", k), q.degree() == m.degree() + 1);
      rec.at_most(label("q interpolates the transformed data", k), interpolation_error(q, m, d), 1e-9);
    } catch (const Error& e) {
      rec.error(label("m", k), e);
    }
  }
}

// h_1: m = -l is extremal with q = -l^2, and no constant is.
inline void exdm3(Recorder& rec, std::uint64_t) {
  const GammaData d = sample_data(h_nu(1, 0.5), three_nodes());
  const BlaschkeProduct m = BlaschkeProduct::power(1, -1.0);
  try {
    rec.at_most("| ||X(-l)|| - 1 |", std::abs(x_norm(m, d) - 1.0), 1e-6);
    const BlaschkeProduct q = auxiliary_extremal(d, 1, m, rec.tol(1e-6)).second;
    const BlaschkeProduct target = BlaschkeProduct::power(2, -1.0);
    rec.check("d(q) = 2", q.degree() == 2);
    rec.at_most("sup |q + l^2| on 50 points", sup_distance(q, target), 1e-9);
  } catch (const Error& e) {
    rec.error("m = -l", e);
  }
  double best = 0.0;
  for (int k = 0; k < 1024; ++k)
    best = std::max(best, x_norm(BlaschkeProduct::unimodular(unit(kTwoPi * k / 1024.0)), d));
  rec.below("max over 1024 constants of ||X(omega)||", best, 1.0 - 1e-6);
}

// (2f, f^2), f = B_0.3: q = -f for every m.
inline void exdm4(Recorder& rec, std::uint64_t seed) {
  const BlaschkeProduct f = BlaschkeProduct::factor(0.3);
  const GammaMap h = royal_lift(f);
  const GammaData d = sample_data(h, three_nodes());
  auto minus_f = [&](cplx z) { return -f(z); };
  std::mt19937_64 rng(seed + 3);
  for (int k = 0; k < 10; ++k) {
    const BlaschkeProduct m = random_bl1(rng, k < 3);
    try {
      const PhiComposition c = phi_compose(m, h);
      rec.at_most(label("sup |Phi(m, h) + f| on 50 points", k), sup_distance(c.inner, minus_f), 1e-9);
      const BlaschkeProduct q = auxiliary_extremal(d, 1, m, rec.tol(1e-6)).second;
      rec.at_most(label("sup |q + f| from the data", k), sup_distance(q, minus_f), 1e-7);
    } catch (const Error& e) {
      rec.error(label("m", k), e);
    }
  }
}

inline void membership_pair(Recorder& rec, const GammaMap& h, const std::string& name, int nu_in, int k_in, int nu_out,
                            int k_out) {
  const EMembership yes = in_Enuk(h, nu_in, k_in);
  const EMembership no = in_Enuk(h, nu_out, k_out);
  rec.check(name + " in E_{" + std::to_string(nu_in) + "," + std::to_string(k_in) + "}", yes.in && yes.exact);
  rec.check(name + " not in E_{" + std::to_string(nu_out) + "," + std::to_string(k_out) + "}", !no.in && no.exact);
}

inline double roots_of_unity_error(const RoyalNodes& rn, int n, double sign) {
  if (static_cast<int>(rn.nodes.size()) != n) return 1.0;
  double worst = 0.0;
  for (const auto& node : rn.nodes) worst = std::max(worst, std::abs(std::pow(node.zeta, n) - sign));
  return worst;
}

// h_psi in E_{1,d+2} \ E_{1,d+1}; royal nodes where psi = 1.
inline void hpsi(Recorder& rec, std::uint64_t) {
  const std::vector<std::pair<std::string, BlaschkeProduct>> psis{
      {"psi = l^3", BlaschkeProduct::power(3)},
      {"psi = l^2", BlaschkeProduct::power(2)},
      {"psi = l B_0.4", BlaschkeProduct(0.0, {0.0, 0.4})}};
  for (const auto& [name, psi] : psis) {
    try {
      const GammaMap h = h_psi(psi);
      const int dpsi = psi.degree();
      membership_pair(rec, h, name, 1, dpsi + 2, 1, dpsi + 1);
      const RoyalNodes rn = royal_nodes(h);
      double worst = static_cast<int>(rn.nodes.size()) == dpsi ? 0.0 : 1.0;
      for (const auto& node : rn.nodes) worst = std::max(worst, std::abs(psi(node.zeta) - 1.0));
      rec.at_most(name + ": royal nodes are the d(psi) solutions of psi = 1", worst, 1e-8);
    } catch (const Error& e) {
      rec.error(name, e);
    }
  }
}

// h_j in E_{1,2j+4} \ E_{0,2j+4}; m = l gives a degree 2j+3 product for j = 1.
inline void hj(Recorder& rec, std::uint64_t) {
  for (int j : {1, 2}) {
    const std::string name = "h_" + std::to_string(j);
    try {
      const GammaMap h = h_j(j);
      membership_pair(rec, h, name, 1, 2 * j + 4, 0, 2 * j + 4);
      rec.at_most(name + ": royal nodes are the roots of unity of order 2j+1",
                  roots_of_unity_error(royal_nodes(h), 2 * j + 1, 1.0), 1e-8);
    } catch (const Error& e) {
      rec.error(name, e);
    }
  }
  try {
    const PhiComposition c = phi_compose(BlaschkeProduct::identity(), h_j(1));
    const RationalFn expected(Poly{0.0, 0.0, -1.0, 0.0, 0.0, -2.0}, Poly{2.0, 0.0, 0.0, 1.0});
    rec.at_most("h_1, m = l: sup |Phi - (-l^2 (2l^3 + 1)/(l^3 + 2))|", sup_distance(c.reduced, expected), 1e-10);
    rec.check("h_1, m = l: degree 5", c.inner.degree() == 5);
    rec.check("h_1, m = l: 3 cancellations", c.cancellations == 3);
  } catch (const Error& e) {
    rec.error("h_1 witness", e);
  }
}

// Phi(-l^nu, h_nu) = -l^{nu+1} with 2nu+1 cancellations; h_nu in E_{nu,nu+2} \ E_{nu-1,nu+2}.
inline void hnu(Recorder& rec, std::uint64_t) {
  for (int nu = 1; nu <= 4; ++nu) {
    for (double r : {0.3, 0.5, 0.9}) {
      std::ostringstream name;
      name << "h_" << nu << " (r = " << r << ")";
      try {
        const GammaMap h = h_nu(nu, r);
        const PhiComposition c = phi_compose(BlaschkeProduct::power(nu, -1.0), h);
        const RationalFn expected(Poly::monomial(nu + 1, -1.0));
        rec.at_most(name.str() + ": sup |Phi(-l^nu, h) + l^{nu+1}|", sup_distance(c.reduced, expected), 1e-10);
        rec.check(name.str() + ": 2nu+1 cancellations", c.cancellations == 2 * nu + 1);
        rec.at_most(name.str() + ": royal nodes are the roots of -1 of order 2nu+1",
                    roots_of_unity_error(royal_nodes(h), 2 * nu + 1, -1.0), 1e-8);
      } catch (const Error& e) {
        rec.error(name.str(), e);
      }
    }
  }
  for (int nu : {1, 2}) {
    try {
      membership_pair(rec, h_nu(nu, 0.5), "h_" + std::to_string(nu), nu, nu + 2, nu - 1, nu + 2);
    } catch (const Error& e) {
      rec.error("h_" + std::to_string(nu) + " membership", e);
    }
  }
}

// (beta l + conj(beta), l): Gamma-inner, not a symmetrization, a geodesic.
inline void flat_geo(Recorder& rec, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 7);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi), radius(0.0, 0.9);
  for (cplx beta : {cplx(0.5), cplx(0.0, 0.3), cplx(-0.2, 0.6)}) {
    std::ostringstream name;
    name << "beta = " << beta.real() << (beta.imag() < 0 ? "-" : "+") << std::abs(beta.imag()) << "i";
    try {
      const GammaMap h = flat_geodesic(beta);
      rec.check(name.str() + ": Gamma-inner", verify_gamma_inner(h).ok);
      rec.check(name.str() + ": not a symmetrization", !is_symmetrization(h).has_value());
      const EClassReport rep = classify(h, 1, 3);
      rec.check(name.str() + ": not superficial", !rep.superficial);
      rec.check(name.str() + ": geodesic", rep.geodesic);
      const bool cert = std::any_of(rep.k_extremal.begin(), rep.k_extremal.end(),
                                    [](const ExtremalCertificate& c) { return c.k == 2; });
      rec.check(name.str() + ": 2-extremal certificate", cert);
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        const cplx a = std::polar(radius(rng), angle(rng)), b = std::polar(radius(rng), angle(rng));
        worst = std::max(worst, std::abs(kobayashi_defect(h, a, b)));
      }
      rec.at_most(name.str() + ": max Kobayashi defect over 20 pairs", worst, 1e-6);
    } catch (const Error& e) {
      rec.error(name.str(), e);
    }
  }
}

// A pole of p that is not a pole of s.
inline void surprise_example(Recorder& rec, std::uint64_t) {
  const cplx a = 0.5, b = 0.4;
  try {
    const GammaMap h = reduced(surprise(a, 1.0));
    rec.check("Gamma-inner", verify_gamma_inner(h).ok);
    rec.check("s is finite at infinity", h.s.num().degree() <= h.s.den().degree());
    rec.check("p has a pole at infinity", h.p.num().degree() > h.p.den().degree());
    rec.at_most("| s(infinity) + c / conj(a) |",
                std::abs(h.s.num().coeffs().back() / h.s.den().coeffs().back() + 1.0 / std::conj(a)), 1e-12);
    const GammaMap hb = reduced(compose_inner(h, BlaschkeProduct::factor(b)));
    const cplx pole = 1.0 / std::conj(b);
    rec.check("composed map is Gamma-inner", verify_gamma_inner(hb).ok);
    rec.at_most("p_b has a pole at 1/conj(b): |den(p_b)|", std::abs(hb.p.den()(pole)), 1e-10);
    rec.below("s_b has no pole at 1/conj(b): |den(s_b)| stays away from 0", -std::abs(hb.s.den()(pole)), -1e-3);
    rec.at_most("| s_b(1/conj(b)) + c / conj(a) |", std::abs(hb.s(pole) + 1.0 / std::conj(a)), 1e-9);
  } catch (const Error& e) {
    rec.error("surprise", e);
  }
}

struct Entry {
  const char* id;
  const char* subject;
  void (*run)(Recorder&, std::uint64_t);
};

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"exdm1", "(2rl, l^2): every constant omega is an auxiliary extremal, no degree-1 m is", exdm1},
      {"exdm2", "(r(1+l), l): every m in Bl_1 is extremal, d(q) = d(m)+1", exdm2},
      {"exdm3", "h_1: m = -l extremal with q = -l^2; no extremal constant", exdm3},
      {"exdm4", "(2f, f^2): q = -f for every m in Bl_1", exdm4},
      {"E-1-k+2", "h_psi in E_{1,d(psi)+2} minus E_{1,d(psi)+1}", hpsi},
      {"E-1-2j+4", "h_j in E_{1,2j+4} minus E_{0,2j+4}", hj},
      {"hnu", "Phi(-l^nu, h_nu) = -l^{nu+1}; h_nu in E_{nu,nu+2} minus E_{nu-1,nu+2}", hnu},
      {"flatGeo", "(beta l + conj(beta), l) is a Gamma-inner geodesic, not a symmetrization", flat_geo},
      {"surprise", "p can have a pole that s does not share", surprise_example},
  };
  return entries;
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace detail

inline std::vector<std::string> example_ids() {
  std::vector<std::string> out;
  for (const auto& e : detail::registry()) out.emplace_back(e.id);
  return out;
}

inline SuiteReport reproduce_examples(const SuiteOptions& opts = {}) {
  if (opts.tol && !(*opts.tol > 0.0)) throw PreconditionError("examples: tol must be positive");
  SuiteReport rep;
  rep.tol = opts.tol;
  rep.seed = opts.seed;
  bool matched = false;
  for (const auto& e : detail::registry()) {
    if (opts.id && *opts.id != e.id) continue;
    if (opts.filter && detail::lower(e.id).find(detail::lower(*opts.filter)) == std::string::npos) continue;
    matched = true;
    ExampleResult res{e.id, e.subject, true, {}, {}};
    detail::Recorder rec(res, opts.tol);
    try {
      e.run(rec, opts.seed);
    } catch (const Error& err) {
      rec.error("unhandled", err);
    }
    rep.pass = rep.pass && res.pass;
    rep.results.push_back(std::move(res));
  }
  if (!matched) throw PreconditionError("examples: no example matches the selection");
  return rep;
}

}  // namespace gammainterp
