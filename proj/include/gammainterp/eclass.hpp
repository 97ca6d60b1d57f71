#pragma once

// The classes E_{nu,k}: rational Gamma-inner h admitting m in Bl_nu with
// Phi(m, h) in Bl_{k-1}. Degrees drop only through cancellations at royal
// nodes on the circle, one per node where m(zeta) = conj(s(zeta)) / 2, so the
// question is a boundary interpolation problem for m at those nodes.

#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gammainterp/cnu.hpp"
#include "gammainterp/errors.hpp"
#include "gammainterp/gamma_core.hpp"
#include "gammainterp/ratfun.hpp"

namespace gammainterp {

struct PhiComposition {
  RationalFn reduced;
  BlaschkeProduct inner;
  int cancellations = 0;
};

/// Reduced Phi(upsilon, h) = (2 upsilon p - s) / (2 - upsilon s) and its cancellation count.
inline PhiComposition phi_compose(const BlaschkeProduct& u, const GammaMap& h_in) {
  const GammaMap h = reduced(h_in);
  const int dp = h.p.degree();
  const RoyalNodes rn = royal_nodes(h);
  if (rn.royal_map) {
    // Phi(m, 2f, f^2) = -f for every m
    const RationalFn f = cplx(0.5) * h.s;
    const auto q = classify_inner(reduce_rational(cplx(-1.0) * f).value);
    if (!q) throw NumericalError("phi_compose: royal map whose s/2 is not inner");
    return {q->to_rational(), *q, u.degree() + dp - q->degree()};
  }
  const CommonForm cf = common_form(h);
  const RationalFn ur = u.to_rational();
  const Poly& nu = ur.num();
  const Poly& du = ur.den();
  const Poly num = (nu * cf.np) * cplx(2.0) - du * cf.ns;
  const Poly den = (du * cf.d) * cplx(2.0) - nu * cf.ns;
  if (den.chopped(1e-13).is_zero()) throw PreconditionError("phi_compose: 2 - upsilon s vanishes identically");
  const RationalFn red = reduce_rational(RationalFn(num, den)).value;
  const auto q = classify_inner(red);
  if (!q) throw NumericalError("phi_compose: reduced composition is not a finite Blaschke product");
  const int count = u.degree() + dp - q->degree();
  if (count < 0) throw NumericalError("phi_compose: composition degree exceeds d(upsilon p)");
  return {red, *q, count};
}

struct CancellationRecord {
  RoyalNode node;
  bool satisfied = false;
};

inline constexpr double kRoyalMatchTol = 1e-8;

/// One record per royal node on the circle; empty when h is not full.
inline std::vector<CancellationRecord> cancellation_points(const BlaschkeProduct& u, const GammaMap& h,
                                                           double tol = kRoyalMatchTol) {
  std::vector<CancellationRecord> out;
  const RoyalNodes rn = royal_nodes(reduced(h));
  for (const RoyalNode& n : rn.nodes) out.push_back({n, std::abs(u(n.zeta) - n.target) < tol});
  return out;
}

struct EMembership {
  int nu = 0;
  int k = 1;
  bool in = false;
  bool exact = true;
  std::optional<BlaschkeProduct> witness_m;
  std::optional<BlaschkeProduct> resulting_q;
  std::string method;
};

namespace detail {

inline constexpr std::size_t kSubsetBudget = 20000;

// Calls f on each size-r subset of [0, n) in lexicographic order until it returns true.
template <class F>
bool for_each_subset(int n, int r, F&& f) {
  if (r < 0 || r > n) return false;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (f(idx)) return true;
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

// Accepts m when Phi(m, h) has degree <= k - 1.
inline std::optional<EMembership> verify_witness(const GammaMap& h, int nu, int k, const BlaschkeProduct& m,
                                                 const char* method) {
  if (m.degree() > nu) return std::nullopt;
  try {
    const PhiComposition pc = phi_compose(m, h);
    if (pc.inner.degree() > k - 1) return std::nullopt;
    return EMembership{nu, k, true, true, m, pc.inner, method};
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Blaschke product P / reflected(P) from a polynomial with all zeros strictly inside,
// phase fixed by one boundary value.
inline std::optional<BlaschkeProduct> blaschke_from_poly(const Poly& p, int d, cplx zeta, cplx t) {
  if (p.degree() != d) return std::nullopt;
  std::vector<cplx> zs = roots(p);
  for (cplx z : zs)
    if (!(std::abs(z) < 1.0 - 1e-9)) return std::nullopt;
  const BlaschkeProduct base(0.0, zs);
  return BlaschkeProduct(std::arg(t / base(zeta)), zs);
}

// Real kernel of Im(P(zeta_i) conj(sigma_i)) = 0, sigma_i^2 = t_i zeta_i^d, over
// coefficient vectors of polynomials of degree <= d.
inline Eigen::MatrixXd boundary_kernel(const std::vector<cplx>& zetas, const std::vector<cplx>& targets, int d) {
  const int cols = 2 * (d + 1);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(zetas.size()), cols);
  for (std::size_t i = 0; i < zetas.size(); ++i) {
    const cplx sigma = std::sqrt(targets[i] * std::pow(zetas[i], d));
    cplx w = std::conj(sigma);
    for (int j = 0; j <= d; ++j) {
      a(static_cast<Eigen::Index>(i), 2 * j) = w.imag();
      a(static_cast<Eigen::Index>(i), 2 * j + 1) = w.real();
      w *= zetas[i];
    }
  }
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * std::max(top, 1.0)) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

inline Poly poly_from_real(const Eigen::VectorXd& x) {
  std::vector<cplx> c(static_cast<std::size_t>(x.size() / 2));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = cplx(x(2 * static_cast<Eigen::Index>(j)), x(2 * static_cast<Eigen::Index>(j) + 1));
  return Poly(std::move(c));
}

inline double max_zero_modulus(const Poly& p, int d) {
  const Poly t = p.chopped(1e-12);
  if (t.degree() < d) return 10.0;  // zeros escaped to infinity
  double worst = 0.0;
  for (cplx z : roots(t)) worst = std::max(worst, std::abs(z));
  return worst;
}

// Degree-d boundary interpolation on one node subset. Returns m (matching every
// node in the subset) or nothing; `certain` is cleared when the answer came from
// an unsuccessful search rather than linear algebra.
inline std::optional<BlaschkeProduct> boundary_interpolant(const std::vector<cplx>& zetas,
                                                           const std::vector<cplx>& targets, int d, bool& certain) {
  const Eigen::MatrixXd ker = boundary_kernel(zetas, targets, d);
  const auto dim = ker.cols();
  if (dim == 0) return std::nullopt;
  if (dim == 1) return blaschke_from_poly(poly_from_real(ker.col(0)).chopped(1e-12), d, zetas.front(), targets.front());
  // Search the kernel sphere for a polynomial whose zeros all lie inside the disc.
  auto objective = [&](const std::vector<double>& y) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ker.rows());
    for (Eigen::Index i = 0; i < dim; ++i) v += y[static_cast<std::size_t>(i)] * ker.col(i);
    if (v.norm() < 1e-12) return -10.0;
    return -max_zero_modulus(poly_from_real(v / v.norm()), d);
  };
  std::mt19937_64 rng(static_cast<std::uint64_t>(1000 * d + zetas.size()));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int start = 0; start < 12; ++start) {
    std::vector<double> y(static_cast<std::size_t>(dim));
    for (double& c : y) c = g(rng);
    const auto r = nelder_mead_max(objective, y, std::vector<double>(y.size(), 0.3), 400, 1e-13);
    if (-r.value < 1.0 - 1e-7) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(ker.rows());
      for (Eigen::Index i = 0; i < dim; ++i) v += r.x[static_cast<std::size_t>(i)] * ker.col(i);
      if (auto m = blaschke_from_poly(poly_from_real(v / v.norm()).chopped(1e-12), d, zetas.front(), targets.front()))
        return m;
    }
  }
  certain = false;
  return std::nullopt;
}

// Groups royal-node targets that agree within the matching tolerance.
inline std::vector<std::vector<std::size_t>> target_groups(const std::vector<RoyalNode>& nodes) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    bool placed = false;
    for (auto& g : groups)
      if (std::abs(nodes[g.front()].target - nodes[i].target) < kRoyalMatchTol) {
        g.push_back(i);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({i});
  }
  return groups;
}

}  // namespace detail

/// Decides whether h lies in E_{nu,k}. Exclusions are exact except those that
/// rest on an unsuccessful kernel search (degree >= 2) or a truncated subset scan.
inline EMembership in_Enuk(const GammaMap& h_in, int nu, int k) {
  if (nu < 0 || k < 1) throw PreconditionError("in_Enuk: need nu >= 0 and k >= 1");
  const GammaMap h = reduced(h_in);
  EMembership out{nu, k, false, true, std::nullopt, std::nullopt, ""};
  const int dp = h.p.degree();
  const RoyalNodes rn = royal_nodes(h);
  if (rn.royal_map) {
    // h = (2f, f^2): Phi(m, h) = -f for every m
    const BlaschkeProduct one = BlaschkeProduct::unimodular(1.0);
    const PhiComposition pc = phi_compose(one, h);
    out.method = "royal map: Phi(m, 2f, f^2) = -f";
    if (pc.inner.degree() <= k - 1) {
      out.in = true;
      out.witness_m = one;
      out.resulting_q = pc.inner;
    }
    return out;
  }
  const auto& nodes = rn.nodes;
  const int r = static_cast<int>(nodes.size());
  auto need = [&](int d) { return d + dp - (k - 1); };

  // d = 0: trivial, or a constant equal to the common target of enough nodes.
  if (need(0) <= 0) {
    if (auto w = detail::verify_witness(h, nu, k, BlaschkeProduct::unimodular(1.0), "degree count")) return *w;
    throw NumericalError("in_Enuk: trivial membership failed verification");
  }
  for (const auto& g : detail::target_groups(nodes)) {
    if (static_cast<int>(g.size()) < need(0)) continue;
    if (auto w = detail::verify_witness(h, nu, k, BlaschkeProduct::unimodular(nodes[g.front()].target),
                                        "constant royal target"))
      return *w;
  }
  out.method = "constant targets exhausted";
  if (nu == 0) return out;

  // d = 1: automorphisms through boundary point pairs.
  const int n1 = need(1);
  if (n1 <= r) {
    if (n1 == 1) {
      const RoyalNode& a = nodes.front();
      if (auto w = detail::verify_witness(h, nu, k, BlaschkeProduct(std::arg(a.target * std::conj(a.zeta)), {0.0}),
                                          "rotation through one royal node"))
        return *w;
    } else if (n1 == 2) {
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          const RoyalNode& a = nodes[static_cast<std::size_t>(i)];
          const RoyalNode& b = nodes[static_cast<std::size_t>(j)];
          if (std::abs(a.target - b.target) < kRoyalMatchTol) continue;
          // third pair at arc midpoints keeps the cyclic order
          const double za = std::arg(a.zeta), zb = wrap_angle(std::arg(b.zeta) - za);
          const double ta = std::arg(a.target), tb = wrap_angle(std::arg(b.target) - ta);
          const auto m = mobius_from_boundary_triple({a.zeta, b.zeta, unit(za + zb / 2)},
                                                     {a.target, b.target, unit(ta + tb / 2)});
          if (m)
            if (auto w = detail::verify_witness(h, nu, k, *m, "automorphism through two royal nodes")) return *w;
        }
    } else {
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          for (int l = j + 1; l < r; ++l) {
            const auto& a = nodes[static_cast<std::size_t>(i)];
            const auto& b = nodes[static_cast<std::size_t>(j)];
            const auto& c = nodes[static_cast<std::size_t>(l)];
            std::optional<BlaschkeProduct> m;
            try {
              m = mobius_from_boundary_triple({a.zeta, b.zeta, c.zeta}, {a.target, b.target, c.target});
            } catch (const PreconditionError&) {
              continue;
            }
            if (!m) continue;
            int hits = 0;
            for (const auto& n : nodes) hits += std::abs((*m)(n.zeta) - n.target) < 1e-7 ? 1 : 0;
            if (hits < n1) continue;
            if (auto w = detail::verify_witness(h, nu, k, *m, "automorphism through royal-node triple")) return *w;
          }
    }
  }
  out.method = "degree <= 1 boundary interpolation exhausted";
  if (nu == 1) return out;

  // d >= 2: linear boundary conditions on m = P / reflected(P).
  for (int d = 2; d <= nu; ++d) {
    const int nd = need(d);
    if (nd > r) continue;  // not enough royal nodes: exact
    if (detail::binomial(r, nd) > static_cast<double>(detail::kSubsetBudget)) {
      out.exact = false;
      continue;
    }
    std::optional<EMembership> found;
    detail::for_each_subset(r, nd, [&](const std::vector<int>& idx) {
      std::vector<cplx> zs, ts;
      for (int i : idx) {
        zs.push_back(nodes[static_cast<std::size_t>(i)].zeta);
        ts.push_back(nodes[static_cast<std::size_t>(i)].target);
      }
      bool certain = true;
      const auto m = detail::boundary_interpolant(zs, ts, d, certain);
      if (!certain) out.exact = false;
      if (!m) return false;
      found = detail::verify_witness(h, nu, k, *m, "boundary interpolation at royal nodes");
      return found.has_value();
    });
    if (found) return *found;
  }
  out.method = out.exact ? "boundary interpolation exhausted" : "boundary interpolation search found no witness";
  return out;
}

/// d(p) <= 2n - 2 for members of E_{nu,n}.
inline bool degree_bound_check(const GammaMap& h, int n) { return reduced(h).p.degree() <= 2 * n - 2; }

struct ExtremalCertificate {
  int k = 0;
  int nu = 0;
  BlaschkeProduct m;
};

struct EClassReport {
  GammaMap map;
  int dp = 0;
  int nu_max = 0;
  int k_max = 0;
  std::vector<EMembership> memberships;  // row-major in (nu, k)
  bool superficial = false;
  std::optional<cplx> omega;
  bool geodesic = false;
  std::vector<ExtremalCertificate> k_extremal;
  bool column_checks_ok = true;
  std::vector<std::string> notes;

  const EMembership& at(int nu, int k) const {
    return memberships.at(static_cast<std::size_t>(nu * k_max + (k - 1)));
  }
};

inline EClassReport classify(const GammaMap& h_in, int nu_max, int k_max) {
  if (nu_max < 0 || k_max < 2) throw PreconditionError("classify: need nu_max >= 0 and k_max >= 2");
  EClassReport rep;
  rep.map = reduced(h_in);
  rep.dp = rep.map.p.degree();
  rep.nu_max = nu_max;
  rep.k_max = k_max;
  rep.memberships.resize(static_cast<std::size_t>((nu_max + 1) * k_max));
  parallel_for(rep.memberships.size(), [&](std::size_t i) {
    const int nu = static_cast<int>(i) / k_max, k = static_cast<int>(i) % k_max + 1;
    rep.memberships[i] = in_Enuk(rep.map, nu, k);
  });
  rep.omega = is_superficial(rep.map);
  rep.superficial = rep.omega.has_value();
  rep.geodesic = rep.at(0, 2).in && !rep.superficial;
  if (!rep.superficial) {
    for (int k = 2; k <= k_max; ++k)
      for (int nu = 0; nu <= nu_max; ++nu)
        if (rep.at(nu, k).in) {
          rep.k_extremal.push_back({k, nu, *rep.at(nu, k).witness_m});
          break;
        }
  }
  for (int nu = 0; nu <= nu_max; ++nu) {
    if (rep.at(nu, 1).in && !rep.superficial) {
      rep.column_checks_ok = false;
      rep.notes.push_back("member of E_{" + std::to_string(nu) + ",1} that is not superficial");
    }
    if (rep.at(nu, 2).in && !rep.superficial && !rep.at(0, 2).in) {
      rep.column_checks_ok = false;
      rep.notes.push_back("member of E_{" + std::to_string(nu) + ",2} that is neither superficial nor a geodesic");
    }
    for (int k = 1; k <= k_max; ++k) {
      const auto& c = rep.at(nu, k);
      const bool right = k < k_max && !rep.at(nu, k + 1).in;
      const bool down = nu < nu_max && !rep.at(nu + 1, k).in;
      if (c.in && (right || down)) {
        rep.column_checks_ok = false;
        rep.notes.push_back("membership table is not monotone at (" + std::to_string(nu) + "," + std::to_string(k) + ")");
      }
      // A superficial witness has m q = -1 identically and escapes the degree bound.
      if (c.in && !rep.superficial && !degree_bound_check(rep.map, k)) {
        rep.column_checks_ok = false;
        rep.notes.push_back("degree bound d(p) <= 2k - 2 violated at k = " + std::to_string(k));
      }
    }
  }
  return rep;
}

}  // namespace gammainterp
