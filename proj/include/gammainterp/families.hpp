#pragma once

// Explicit Gamma-inner maps and the operations producing new ones from old.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gammainterp/errors.hpp"
#include "gammainterp/gamma_core.hpp"
#include "gammainterp/ratfun.hpp"

namespace gammainterp {

enum class FamilyName {
  symmetrize,
  royalLift,
  semigroupProduct,
  scaleS,
  composeInner,
  superficialOf,
  flatGeodesic,
  hNu,
  hPsi,
  hJ,
  surprise
};

inline const char* to_string(FamilyName n) {
  switch (n) {
    case FamilyName::symmetrize: return "symmetrize";
    case FamilyName::royalLift: return "royalLift";
    case FamilyName::semigroupProduct: return "semigroupProduct";
    case FamilyName::scaleS: return "scaleS";
    case FamilyName::composeInner: return "composeInner";
    case FamilyName::superficialOf: return "superficialOf";
    case FamilyName::flatGeodesic: return "flatGeodesic";
    case FamilyName::hNu: return "hNu";
    case FamilyName::hPsi: return "hPsi";
    case FamilyName::hJ: return "hJ";
    case FamilyName::surprise: return "surprise";
  }
  return "?";
}

inline FamilyName family_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(FamilyName::surprise); ++k)
    if (s == to_string(static_cast<FamilyName>(k))) return static_cast<FamilyName>(k);
  throw PreconditionError("unknown family: " + s);
}

/// Parameters of a family member. Only the fields the family uses are read:
///   symmetrize(phi, psi)       royalLift(phi)          semigroupProduct(operands[0..1])
///   scaleS(operands[0], r)     composeInner(operands[0], phi)
///   superficialOf(omega, phi)  flatGeodesic(beta)      hNu(nu, r)
///   hPsi(psi)                  hJ(j)                   surprise(a, c)
struct FamilySpec {
  FamilyName name = FamilyName::flatGeodesic;
  int nu = 1;
  int j = 1;
  double r = 0.5;
  cplx beta = 0.0;
  cplx a = 0.5;
  double c = 1.0;
  cplx omega = 1.0;
  BlaschkeProduct phi = BlaschkeProduct::identity();
  BlaschkeProduct psi = BlaschkeProduct::identity();
  std::vector<FamilySpec> operands;
};

inline constexpr int kPsiDegreeCap = 20;

namespace detail {

inline GammaMap checked(GammaMap h, const char* what) {
  h = reduced(h);
  const GammaInnerDiagnostics g = verify_gamma_inner(h);
  if (!g.ok) throw PreconditionError(std::string(what) + ": result is not Gamma-inner (" + g.reason + ")");
  return h;
}

inline RationalFn mono(int k, cplx c = 1.0) { return RationalFn(Poly::monomial(k, c)); }

// Largest admissible factor r for (r s, p): min(2/sup|s|, inf (1-|p|^2)/|s - conj(s) p|),
// estimated on 512 circle angles times 32 radii.
inline double scale_bound(const GammaMap& h) {
  double sup_s = 0.0;
  for (cplx u : circle_samples(512, 0.003)) sup_s = std::max(sup_s, std::abs(h.s(u)));
  double inf_ratio = std::numeric_limits<double>::infinity();
  for (int ri = 0; ri < 32; ++ri) {
    const double rad = 1.0 - std::pow((32.0 - ri) / 33.0, 2.0);
    for (cplx u : circle_samples(512, 0.003)) {
      const GammaPoint v = h(rad * u);
      const double skew = std::abs(v.s - std::conj(v.s) * v.p);
      if (skew > 1e-14) inf_ratio = std::min(inf_ratio, (1.0 - std::norm(v.p)) / skew);
    }
  }
  double bound = inf_ratio;
  if (sup_s > 1e-14) bound = std::min(bound, 2.0 / sup_s);
  return bound;
}

}  // namespace detail

inline GammaMap flat_geodesic(cplx beta) {
  if (!(std::abs(beta) < 1.0)) throw PreconditionError("flatGeodesic: |beta| must be < 1");
  return detail::checked({RationalFn(Poly{std::conj(beta), beta}), detail::mono(1)}, "flatGeodesic");
}

/// h_nu = (2(1-r) l^{nu+1} / (1 + r l^{2nu+1}), l (l^{2nu+1} + r) / (1 + r l^{2nu+1}))
inline GammaMap h_nu(int nu, double r) {
  if (nu < 1) throw PreconditionError("hNu: nu must be >= 1");
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("hNu: r must lie in (0, 1)");
  const int m = 2 * nu + 1;
  const Poly den = Poly::monomial(m, r) + Poly::constant(1.0);
  const RationalFn s(Poly::monomial(nu + 1, 2.0 * (1.0 - r)), den);
  const RationalFn p(Poly::monomial(m + 1) + Poly::monomial(1, r), den);
  return detail::checked({s, p}, "hNu");
}

/// h_psi = (l + l psi, l^2 psi)
inline GammaMap h_psi(const BlaschkeProduct& psi) {
  if (psi.degree() > kPsiDegreeCap) throw PreconditionError("hPsi: degree of psi exceeds the cap");
  const RationalFn ps = psi.to_rational();
  const RationalFn id = detail::mono(1);
  return detail::checked({id + id * ps, detail::mono(2) * ps}, "hPsi");
}

/// h_j = (l^2 + l^{2j+3}, l^{2j+5})
inline GammaMap h_j(int j) {
  if (j < 1) throw PreconditionError("hJ: j must be >= 1");
  return detail::checked({RationalFn(Poly::monomial(2) + Poly::monomial(2 * j + 3)), detail::mono(2 * j + 5)}, "hJ");
}

/// (c l / (1 - conj(a) l), l (l - a) / (1 - conj(a) l)), c real
inline GammaMap surprise(cplx a, double c) {
  if (!(std::abs(a) < 1.0) || std::abs(a) < 1e-14) throw PreconditionError("surprise: a must lie in the punctured disc");
  if (std::abs(c) > 2.0 * (1.0 - std::abs(a)) + 1e-12) throw PreconditionError("surprise: |c| exceeds 2(1 - |a|)");
  const Poly den{1.0, -std::conj(a)};
  return detail::checked({RationalFn(Poly::monomial(1, cplx(c)), den), RationalFn(Poly{0.0, -a, 1.0}, den)}, "surprise");
}

inline GammaMap symmetrize(const BlaschkeProduct& phi, const BlaschkeProduct& psi) {
  const RationalFn f = phi.to_rational(), g = psi.to_rational();
  return detail::checked({f + g, f * g}, "symmetrize");
}

/// (2 u, u^2)
inline GammaMap royal_lift(const BlaschkeProduct& u) {
  const RationalFn f = u.to_rational();
  return detail::checked({cplx(2.0) * f, f * f}, "royalLift");
}

/// (omega p + conj(omega), p)
inline GammaMap superficial_of(cplx omega, const BlaschkeProduct& p) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw PreconditionError("superficialOf: omega must be unimodular");
  const RationalFn pr = p.to_rational();
  return detail::checked({omega * pr + std::conj(omega), pr}, "superficialOf");
}

/// (s t / 2, p q)
inline GammaMap semigroup_product(const GammaMap& a, const GammaMap& b) {
  return detail::checked({cplx(0.5) * (a.s * b.s), a.p * b.p}, "semigroupProduct");
}

inline GammaMap compose_inner(const GammaMap& h, const BlaschkeProduct& f) {
  const RationalFn fr = f.to_rational();
  return detail::checked({h.s.compose(fr), h.p.compose(fr)}, "composeInner");
}

inline constexpr double kScaleMargin = 1e-6;

/// (r s, p), admitted when r stays below the sampled scale bound by a safety margin.
inline GammaMap scale_s(const GammaMap& h, double r) {
  if (r < 0.0) throw PreconditionError("scaleS: r must be >= 0");
  const double bound = detail::scale_bound(h);
  if (r > bound - kScaleMargin) throw PreconditionError("scaleS: r exceeds the admissible bound");
  return detail::checked({cplx(r) * h.s, h.p}, "scaleS");
}

inline double scale_bound(const GammaMap& h) { return detail::scale_bound(h); }

inline GammaMap build(const FamilySpec& spec) {
  auto operand = [&](std::size_t i) {
    if (spec.operands.size() <= i) throw PreconditionError(std::string(to_string(spec.name)) + ": missing operand");
    return build(spec.operands[i]);
  };
  switch (spec.name) {
    case FamilyName::symmetrize: return symmetrize(spec.phi, spec.psi);
    case FamilyName::royalLift: return royal_lift(spec.phi);
    case FamilyName::semigroupProduct: return semigroup_product(operand(0), operand(1));
    case FamilyName::scaleS: return scale_s(operand(0), spec.r);
    case FamilyName::composeInner: return compose_inner(operand(0), spec.phi);
    case FamilyName::superficialOf: return superficial_of(spec.omega, spec.phi);
    case FamilyName::flatGeodesic: return flat_geodesic(spec.beta);
    case FamilyName::hNu: return h_nu(spec.nu, spec.r);
    case FamilyName::hPsi: return h_psi(spec.psi);
    case FamilyName::hJ: return h_j(spec.j);
    case FamilyName::surprise: return surprise(spec.a, spec.c);
  }
  throw PreconditionError("unknown family");
}

/// Targets h(lambda_j); the open flag records whether every target lies in G.
inline GammaData sample_data(const GammaMap& h, const std::vector<cplx>& nodes) {
  GammaData d;
  d.nodes = nodes;
  d.require_open = true;
  for (cplx z : nodes) {
    if (!(std::abs(z) < 1.0)) throw PreconditionError("sample_data: node outside the open disc");
    const GammaPoint v = h(z);
    const MembershipReport m = membership(v);
    if (!m.closed_gamma) throw PreconditionError("sample_data: target outside Gamma (invalid map)");
    if (!m.open_g) d.require_open = false;
    d.targets.push_back(v);
  }
  validate(d);
  return d;
}

}  // namespace gammainterp
