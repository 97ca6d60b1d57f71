#pragma once

// Points and maps into the symmetrised bidisc: the functions Phi_omega,
// membership predicates, royal nodes and structural decompositions of
// rational Gamma-inner maps, and the Caratheodory distance.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gammainterp/errors.hpp"
#include "gammainterp/ratfun.hpp"

namespace gammainterp {

struct GammaPoint {
  cplx s;
  cplx p;
  friend bool operator==(const GammaPoint&, const GammaPoint&) = default;
};

/// (z + w, z w)
inline GammaPoint symmetrize(cplx z, cplx w) { return {z + w, z * w}; }

/// Phi(z, s, p) = (2 z p - s) / (2 - z s).
inline cplx phi(cplx z, const GammaPoint& pt) {
  const cplx den = 2.0 - z * pt.s;
  if (std::abs(den) < 1e-12) throw PolePointError("phi: z*s = 2 (excluded point of Phi)");
  return (2.0 * z * pt.p - pt.s) / den;
}

/// Pseudohyperbolic distance on the disc.
inline double pseudo_hyperbolic(cplx z, cplx w) {
  const double den = std::abs(1.0 - std::conj(w) * z);
  if (den < 1e-15) return 0.0;
  return std::min(1.0, std::abs(z - w) / den);
}

enum class Membership { openG, closedGammaOnly, boundaryTopological, distinguishedBoundary, outside };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::openG: return "openG";
    case Membership::closedGammaOnly: return "closedGammaOnly";
    case Membership::boundaryTopological: return "boundaryTopological";
    case Membership::distinguishedBoundary: return "distinguishedBoundary";
    case Membership::outside: return "outside";
  }
  return "outside";
}

struct MembershipReport {
  bool open_g = false;
  bool closed_gamma = false;
  bool boundary = false;
  bool distinguished = false;
  Membership kind = Membership::outside;
  double skew = 0.0;    // |s - conj(s) p|
  double defect = 0.0;  // 1 - |p|^2
};

inline constexpr double kMembershipTol = 1e-9;

inline MembershipReport membership(const GammaPoint& pt, double tol = kMembershipTol) {
  MembershipReport r;
  r.skew = std::abs(pt.s - std::conj(pt.s) * pt.p);
  r.defect = 1.0 - std::norm(pt.p);
  const bool s_ok = std::abs(pt.s) <= 2.0 + tol;
  r.open_g = r.skew < r.defect - tol;
  r.closed_gamma = s_ok && r.skew <= r.defect + tol;
  r.boundary = s_ok && std::abs(r.skew - r.defect) <= tol;
  r.distinguished = r.boundary && std::abs(std::abs(pt.p) - 1.0) <= tol && r.skew <= tol;
  if (r.distinguished) r.kind = Membership::distinguishedBoundary;
  else if (r.boundary) r.kind = Membership::boundaryTopological;
  else if (r.open_g) r.kind = Membership::openG;
  else if (r.closed_gamma) r.kind = Membership::closedGammaOnly;
  else r.kind = Membership::outside;
  return r;
}

inline bool in_open_g(const GammaPoint& pt, double tol = kMembershipTol) { return membership(pt, tol).open_g; }
inline bool in_gamma(const GammaPoint& pt, double tol = kMembershipTol) { return membership(pt, tol).closed_gamma; }

/// A pair (s, p) of rational functions.
struct GammaMap {
  RationalFn s;
  RationalFn p;

  GammaPoint operator()(cplx z) const { return {s(z), p(z)}; }
};

inline GammaMap reduced(const GammaMap& h) {
  return {reduce_rational(h.s).value, reduce_rational(h.p).value};
}

/// s = ns / d and p = np / d over one denominator. When the poles of s lie
/// among those of p the denominator is that of p.
struct CommonForm {
  Poly ns;
  Poly np;
  Poly d;
  bool s_poles_in_p = true;
};

inline CommonForm common_form(const GammaMap& h) {
  const Poly& ds = h.s.den();
  const Poly& dp = h.p.den();
  if (ds.degree() == 0) return {h.s.num() * (dp * (1.0 / ds.leading())), h.p.num(), dp, true};
  if (ds.degree() <= dp.degree()) {
    auto [quot, rem] = divmod(dp, ds);
    if (rem.max_abs_coeff() <= 1e-9 * std::max(1.0, dp.max_abs_coeff())) return {h.s.num() * quot, h.p.num(), dp, true};
  }
  return {h.s.num() * dp, h.p.num() * ds, dp * ds, false};
}

struct GammaInnerDiagnostics {
  bool ok = false;
  bool poles_outside = false;
  double max_p_deviation = 0.0;  // max ||p| - 1| on the circle
  double max_s = 0.0;            // max |s| on the circle
  double max_skew = 0.0;         // max |s - conj(s) p| on the circle
  std::string reason;
};

inline constexpr int kGammaInnerSamples = 256;

inline GammaInnerDiagnostics verify_gamma_inner(const GammaMap& h, double tol = 1e-8) {
  GammaInnerDiagnostics g;
  auto poles_ok = [](const RationalFn& f) {
    if (f.den().degree() < 1) return true;
    for (cplx r : roots(f.den()))
      if (!(std::abs(r) > 1.0 + 1e-10)) return false;
    return true;
  };
  g.poles_outside = poles_ok(h.p) && poles_ok(h.s);
  for (cplx z : circle_samples(kGammaInnerSamples, 0.0123)) {
    const GammaPoint v = h(z);
    g.max_p_deviation = std::max(g.max_p_deviation, std::abs(std::abs(v.p) - 1.0));
    g.max_s = std::max(g.max_s, std::abs(v.s));
    g.max_skew = std::max(g.max_skew, std::abs(v.s - std::conj(v.s) * v.p));
  }
  if (!g.poles_outside) g.reason = "a pole lies in the closed disc";
  else if (g.max_p_deviation > tol) g.reason = "|p| != 1 on the circle";
  else if (g.max_s > 2.0 + tol) g.reason = "|s| > 2 on the circle";
  else if (g.max_skew > tol) g.reason = "s != conj(s) p on the circle";
  g.ok = g.reason.empty();
  return g;
}

/// Circle point where h meets the royal variety: h(zeta) = (2 conj(omega), conj(omega)^2).
struct RoyalNode {
  cplx zeta;
  cplx omega;
  cplx target;  // conj(s(zeta)) / 2, equal to omega
};

struct RoyalNodes {
  bool royal_map = false;  // s^2 - 4p vanishes identically
  std::vector<RoyalNode> nodes;
};

/// Numerator of s^2 - 4p over the common denominator d^2.
inline Poly royal_polynomial(const GammaMap& h) {
  const CommonForm cf = common_form(h);
  return cf.ns * cf.ns - 4.0 * (cf.np * cf.d);
}

inline RoyalNodes royal_nodes(const GammaMap& h, double band = 1e-6) {
  RoyalNodes out;
  const Poly q = royal_polynomial(h).chopped(1e-12);
  if (q.is_zero()) {
    out.royal_map = true;
    return out;
  }
  if (q.degree() < 1) return out;
  // On the circle s^2 - 4p = p (|s|^2 - 4) <= 0 touches zero, so circle roots
  // have even multiplicity and arrive as clusters; polish them on q'.
  std::vector<cplx> cand;
  for (cplx r : roots(q))
    if (std::abs(std::abs(r) - 1.0) < std::sqrt(band)) cand.push_back(r);
  std::vector<std::vector<cplx>> clusters;
  for (cplx r : cand) {
    bool placed = false;
    for (auto& c : clusters)
      if (std::abs(c.front() - r) < 1e-3) {
        c.push_back(r);
        placed = true;
        break;
      }
    if (!placed) clusters.push_back({r});
  }
  const Poly dq = q.derivative();
  const Poly ddq = dq.derivative();
  for (const auto& c : clusters) {
    cplx z = 0.0;
    for (cplx r : c) z += r;
    z /= static_cast<double>(c.size());
    z /= std::abs(z);
    for (int it = 0; it < 8; ++it) {
      const cplx f = dq(z), df = ddq(z);
      if (df == cplx{}) break;
      cplx next = z - f / df;
      next /= std::abs(next);
      if (std::abs(dq(next)) >= std::abs(f) && it > 0) break;
      z = next;
    }
    const cplx sz = h.s(z);
    if (std::abs(std::abs(sz) - 2.0) > 1e-7) continue;
    if (std::abs(q(z)) > std::sqrt(band) * std::max(1.0, q.magnitude_at(z))) continue;
    const cplx target = 0.5 * std::conj(sz);
    out.nodes.push_back({z, target, target});
  }
  std::sort(out.nodes.begin(), out.nodes.end(),
            [](const RoyalNode& a, const RoyalNode& b) { return wrap_angle(std::arg(a.zeta)) < wrap_angle(std::arg(b.zeta)); });
  return out;
}

inline bool is_full(const GammaMap& h) {
  const RoyalNodes rn = royal_nodes(h);
  if (rn.royal_map) return h.p.degree() > 0;
  return !rn.nodes.empty();
}

/// omega with s = omega p + conj(omega), when h has that form.
inline std::optional<cplx> is_superficial(const GammaMap& h, double tol = 1e-8) {
  if (h.p.degree() == 0) {
    if (h.s.degree() != 0) return std::nullopt;
    const GammaPoint v = h(0.0);
    if (!membership(v, tol).distinguished) return std::nullopt;
    // s = w1 + w2, p = w1 w2 on the torus; omega = conj(w1) works.
    const cplx disc = std::sqrt(v.s * v.s - 4.0 * v.p);
    const cplx w1 = 0.5 * (v.s + disc);
    const cplx omega = std::conj(w1 / std::abs(w1));
    if (std::abs(omega * v.p + std::conj(omega) - v.s) > 10 * tol) return std::nullopt;
    return omega;
  }
  constexpr int kSamples = 24;
  Eigen::MatrixXcd a(kSamples, 2);
  Eigen::VectorXcd b(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    const cplx z = std::polar(0.3 + 0.5 * (k % 3) / 2.0, kTwoPi * k / kSamples + 0.37);
    a(k, 0) = h.p(z);
    a(k, 1) = 1.0;
    b(k) = h.s(z);
  }
  const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(b);
  const cplx omega = x(0);
  const double resid = (a * x - b).norm() / std::sqrt(static_cast<double>(kSamples));
  if (resid > tol || std::abs(std::abs(omega) - 1.0) > tol || std::abs(x(1) - std::conj(omega)) > tol)
    return std::nullopt;
  return omega / std::abs(omega);
}

namespace detail {
// Square root of a polynomial known to be a perfect square, computed by the
// formal power series recurrence from whichever end has the larger
// coefficient. Returns nothing when the square does not reproduce.
inline std::optional<Poly> poly_sqrt(const Poly& q) {
  const int z = q.low_order_zeros();
  if (z % 2 != 0) return std::nullopt;
  Poly core = q.shifted_down(z);
  const int n = core.degree();
  if (n % 2 != 0) return std::nullopt;
  const bool from_top = std::abs(core.leading()) > std::abs(core.coeff(0));
  std::vector<cplx> c = core.coeffs();
  if (from_top) std::reverse(c.begin(), c.end());
  const int m = n / 2;
  std::vector<cplx> g(static_cast<std::size_t>(m) + 1, 0.0);
  g[0] = std::sqrt(c[0]);
  for (int k = 1; k <= m; ++k) {
    cplx acc = c[static_cast<std::size_t>(k)];
    for (int i = 1; i < k; ++i) acc -= g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(k - i)];
    g[static_cast<std::size_t>(k)] = acc / (2.0 * g[0]);
  }
  if (from_top) std::reverse(g.begin(), g.end());
  Poly root = Poly(std::move(g)).shifted_up(z / 2);
  const Poly diff = root * root - q;
  if (diff.max_abs_coeff() > 1e-9 * std::max(1.0, q.max_abs_coeff())) return std::nullopt;
  return root;
}
}  // namespace detail

/// Inner (phi, psi) with h = (phi + psi, phi psi), if they exist.
inline std::optional<std::pair<BlaschkeProduct, BlaschkeProduct>> is_symmetrization(const GammaMap& h) {
  const CommonForm cf = common_form(h);
  const Poly q = (cf.ns * cf.ns - 4.0 * (cf.np * cf.d)).chopped(1e-13);
  std::optional<Poly> g;
  if (q.is_zero()) g = Poly{};
  else g = detail::poly_sqrt(q);
  if (!g) return std::nullopt;
  const Poly twice_d = cf.d * cplx(2.0);
  const auto first = classify_inner(reduce_rational(RationalFn(cf.ns - *g, twice_d)).value);
  const auto second = classify_inner(reduce_rational(RationalFn(cf.ns + *g, twice_d)).value);
  if (!first || !second) return std::nullopt;
  if (first->degree() <= second->degree()) return std::pair(*first, *second);
  return std::pair(*second, *first);
}

/// p = c lambda^k conj-reflected(D)/D, s = lambda^l N_s / D with D(0) = 1.
struct StructuralForm {
  bool zero_s = false;
  int ell = 0;
  Poly ns;
  Poly dp;
  cplx c;
  int k = 0;
  int n = 0;
  bool symmetric = false;
  double symmetry_error = 0.0;
  std::string diagnostic;
};

inline StructuralForm structural_form(const GammaMap& h) {
  StructuralForm f;
  const CommonForm cf = common_form(h);
  const cplx d0 = cf.d.coeff(0);
  if (std::abs(d0) < 1e-14) throw PreconditionError("structural_form: p has a pole at 0");
  f.dp = cf.d * (1.0 / d0);
  f.n = f.dp.degree();
  const Poly np = (cf.np * (1.0 / d0)).chopped(1e-12);
  const Poly ns = (cf.ns * (1.0 / d0)).chopped(1e-12);
  f.k = np.low_order_zeros();
  f.c = np.leading();
  const Poly expected_np = f.dp.reflected(f.n).shifted_up(f.k) * f.c;
  const double p_err = (np - expected_np).max_abs_coeff();
  if (p_err > 1e-8) f.diagnostic = "p is not of the form c lambda^k reflected(D)/D";
  if (ns.is_zero()) {
    f.zero_s = true;
    f.symmetric = f.diagnostic.empty();
    return f;
  }
  f.ell = ns.low_order_zeros();
  f.ns = ns.shifted_down(f.ell);
  const int m = f.n + f.k - 2 * f.ell;
  if (m < 0) {
    f.diagnostic = "2l exceeds n + k";
    return f;
  }
  if (f.ns.degree() > m) f.diagnostic = "degree of N_s exceeds n + k - 2l";
  for (int j = 0; j <= m; ++j)
    f.symmetry_error = std::max(f.symmetry_error, std::abs(f.ns.coeff(j) - f.c * std::conj(f.ns.coeff(m - j))));
  if (f.symmetry_error > 1e-8 && f.diagnostic.empty()) f.diagnostic = "coefficient symmetry fails: not Gamma-inner";
  f.symmetric = f.diagnostic.empty();
  return f;
}

namespace detail {
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}
}  // namespace detail

inline constexpr int kCaratheodoryGrid = 512;

/// max over |omega| = 1 of rho(Phi_omega(a), Phi_omega(b)).
inline double caratheodory_distance(const GammaPoint& a, const GammaPoint& b, double tol = kMembershipTol) {
  if (!in_gamma(a, tol) || !in_gamma(b, tol)) throw PreconditionError("caratheodory_distance: point outside Gamma");
  auto objective = [&](double theta) {
    const cplx w = unit(theta);
    if (std::abs(2.0 - w * a.s) < 1e-12 || std::abs(2.0 - w * b.s) < 1e-12) return 0.0;
    return pseudo_hyperbolic(phi(w, a), phi(w, b));
  };
  const double step = kTwoPi / kCaratheodoryGrid;
  std::vector<std::pair<double, int>> vals;
  for (int k = 0; k < kCaratheodoryGrid; ++k) vals.emplace_back(objective(k * step), k);
  std::sort(vals.begin(), vals.end(), [](auto& x, auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); });
  double best = vals.front().first;
  for (std::size_t i = 0; i < std::min<std::size_t>(4, vals.size()); ++i) {
    const double c = vals[i].second * step;
    best = std::max(best, detail::golden_max(objective, c - step, c + step, 1e-10));
  }
  return best;
}

/// Gamma-interpolation data: nodes in the disc with targets (s_j, p_j).
struct GammaData {
  std::vector<cplx> nodes;
  std::vector<GammaPoint> targets;
  bool require_open = true;  // every target in G (otherwise closed Gamma suffices)
};

inline void validate(const GammaData& d, double tol = kMembershipTol) {
  if (d.nodes.empty()) throw PreconditionError("Gamma data has no nodes");
  if (d.nodes.size() != d.targets.size()) throw PreconditionError("Gamma data: node/target count mismatch");
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (!(std::abs(d.nodes[i]) < 1.0)) throw PreconditionError("node outside the open unit disc");
    for (std::size_t j = i + 1; j < d.nodes.size(); ++j)
      if (std::abs(d.nodes[i] - d.nodes[j]) <= 1e-10) throw PreconditionError("coincident interpolation nodes");
    const MembershipReport m = membership(d.targets[i], tol);
    if (d.require_open ? !m.open_g : !m.closed_gamma)
      throw PreconditionError(d.require_open ? "target not in the open symmetrised bidisc" : "target outside Gamma");
  }
}

/// rho(l1, l2) - C(h(l1), h(l2)); zero certifies the Kobayashi-disc equality at the pair.
inline double kobayashi_defect(const GammaMap& h, cplx l1, cplx l2) {
  if (std::abs(l1 - l2) < 1e-12) throw PreconditionError("kobayashi_defect: coincident points");
  if (!(std::abs(l1) < 1.0) || !(std::abs(l2) < 1.0)) throw PreconditionError("kobayashi_defect: point outside the disc");
  return pseudo_hyperbolic(l1, l2) - caratheodory_distance(h(l1), h(l2));
}

}  // namespace gammainterp
