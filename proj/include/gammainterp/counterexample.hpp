#pragma once

// Data that satisfy C_{nu-1} but not C_nu. Start from samples of h_nu, which
// satisfy C_nu extremally at m = -lambda^nu with q = -lambda^{nu+1}; push the
// q values radially outwards and pull the change back through the Mobius map
// s -> Phi(m(lambda_j), s, p_j), keeping p_j fixed.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gammainterp/cnu.hpp"
#include "gammainterp/errors.hpp"
#include "gammainterp/families.hpp"
#include "gammainterp/gamma_core.hpp"
#include "gammainterp/parallel.hpp"

namespace gammainterp {

/// Minimum pencil eigenvalue over constant unimodular upsilon (exhaustive 1-D scan).
struct OmegaScan {
  int points = 0;
  double min_eigenvalue = 0.0;
  double scale = 0.0;  // largest pencil diagonal seen, the yardstick for the 1e-9 band
  double argmin_angle = 0.0;
};

inline OmegaScan omega_scan(const GammaData& d, int points) {
  if (points < 8) throw PreconditionError("omega_scan: need at least 8 grid points");
  std::vector<double> eig(static_cast<std::size_t>(points)), diag(static_cast<std::size_t>(points));
  auto eval = [&](double t, double* dmax) {
    const CMatrix p = pencil_matrix(BlaschkeProduct::unimodular(unit(t)), d);
    if (dmax) {
      *dmax = 0.0;
      for (Eigen::Index i = 0; i < p.rows(); ++i) *dmax = std::max(*dmax, p(i, i).real());
    }
    return jacobi_eigen(p).values.front();
  };
  const double step = kTwoPi / points;
  parallel_for(eig.size(), [&](std::size_t k) { eig[k] = eval(step * static_cast<double>(k), &diag[k]); });
  OmegaScan out;
  out.points = points;
  out.min_eigenvalue = eig[0];
  for (std::size_t k = 0; k < eig.size(); ++k) {
    out.scale = std::max(out.scale, diag[k]);
    if (eig[k] < out.min_eigenvalue) {
      out.min_eigenvalue = eig[k];
      out.argmin_angle = step * static_cast<double>(k);
    }
  }
  // golden refinement around the grid minimum
  long evals = 0;
  auto neg = [&](double t) { return -eval(t, nullptr); };
  const auto [t, v] = detail::golden_argmax(neg, out.argmin_angle - step, out.argmin_angle + step, 1e-12, evals);
  if (-v < out.min_eigenvalue) {
    out.min_eigenvalue = -v;
    out.argmin_angle = wrap_angle(t);
  }
  return out;
}

struct BisectionStep {
  double epsilon = 0.0;
  bool violated = false;  // certificate at m valid and targets in G
};

struct CounterexampleReport {
  int nu = 0;
  double r = 0.0;
  std::uint64_t seed = 0;
  GammaData base;
  GammaData perturbed;
  double epsilon = 0.0;
  BlaschkeProduct m;
  BlaschkeProduct q;
  ViolationCertificate violation;
  CnuReport lower_evidence;  // check_cnu at nu - 1
  std::optional<OmegaScan> lower_scan;  // nu = 1 only
  std::string evidence_grade;
  std::vector<BisectionStep> trace;
};

struct CounterexampleConfig {
  double epsilon_max = 0.2;
  int bisection_steps = 40;
  double violation_eig = 1e-6;  // certificate eigenvalue must be <= -violation_eig
  double scan_band = 1e-9;      // lower scan must stay >= -scan_band * scale
  int omega_points = 4096;
  CnuConfig cnu;  // used for the nu-1 search when nu >= 2
};

/// nu + 2 equispaced points of modulus 0.4, rotated by a seed-derived angle.
inline std::vector<cplx> default_counterexample_nodes(int nu, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = nu + 2;
  const double offset = std::uniform_real_distribution<double>(0.0, kTwoPi / n)(rng);
  std::vector<cplx> out;
  for (int j = 0; j < n; ++j) out.push_back(std::polar(0.4, offset + kTwoPi * j / n));
  return out;
}

/// Targets with q values inflated by 1 + epsilon: s_j = 2(m_j p_j - w_j) / (1 - w_j m_j).
inline GammaData inflate_targets(const GammaData& base, const BlaschkeProduct& m, const BlaschkeProduct& q,
                                 double epsilon) {
  GammaData out{base.nodes, {}, true};
  for (std::size_t j = 0; j < base.nodes.size(); ++j) {
    const cplx mj = m(base.nodes[j]);
    const cplx w = (1.0 + epsilon) * q(base.nodes[j]);
    const cplx p = base.targets[j].p;
    const cplx den = 1.0 - w * mj;
    if (std::abs(den) < 1e-14) throw PolePointError("inflate_targets: w m = 1");
    out.targets.push_back({2.0 * (mj * p - w) / den, p});
  }
  return out;
}

inline bool all_in_open_g(const GammaData& d) {
  for (const auto& t : d.targets)
    if (!in_open_g(t)) return false;
  return true;
}

namespace detail {

inline bool violated_at(const GammaData& d, const BlaschkeProduct& m, double eig_bound, double tol) {
  if (!all_in_open_g(d)) return false;
  return pencil_certificate(m, d).eigenvalue <= -eig_bound && x_norm(m, d) >= 1.0 + 10.0 * tol;
}

inline void lower_evidence(CounterexampleReport& rep, const CounterexampleConfig& cfg, int scale_factor) {
  if (rep.nu == 1) {
    rep.lower_scan = omega_scan(rep.perturbed, cfg.omega_points * scale_factor);
    CnuConfig c = cfg.cnu;
    c.grid0 = std::max(c.grid0, cfg.omega_points * scale_factor);
    rep.lower_evidence = check_cnu(rep.perturbed, 0, c);
    rep.evidence_grade = "dense constant-omega scan (exhaustive up to grid refinement)";
  } else {
    CnuConfig c = cfg.cnu;
    c.grid0 *= scale_factor;
    c.angles1 *= scale_factor;
    c.seeds *= scale_factor;
    rep.lower_evidence = check_cnu(rep.perturbed, rep.nu - 1, c);
    rep.evidence_grade = "budgeted multi-start search over Bl_" + std::to_string(rep.nu - 1) + " (heuristic)";
  }
}

inline bool lower_holds(const CounterexampleReport& rep, const CounterexampleConfig& cfg) {
  if (rep.lower_evidence.status == CnuStatus::fails) return false;
  if (rep.lower_scan && rep.lower_scan->min_eigenvalue < -cfg.scan_band * rep.lower_scan->scale) return false;
  return true;
}

}  // namespace detail

/// Builds data satisfying C_{nu-1} but failing C_nu with an explicit certificate.
inline CounterexampleReport generate_counterexample(int nu, double r, std::optional<std::vector<cplx>> nodes = std::nullopt,
                                                    std::uint64_t seed = 0, const CounterexampleConfig& cfg = {}) {
  if (nu < 1) throw PreconditionError("counterexample: nu must be >= 1");
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("counterexample: r must lie in (0, 1)");
  CounterexampleReport rep;
  rep.nu = nu;
  rep.r = r;
  rep.seed = seed;
  const std::vector<cplx> pts = nodes ? *nodes : default_counterexample_nodes(nu, seed);
  if (static_cast<int>(pts.size()) != nu + 2) throw PreconditionError("counterexample: exactly nu + 2 nodes are required");
  rep.m = BlaschkeProduct::power(nu, -1.0);
  rep.q = BlaschkeProduct::power(nu + 1, -1.0);
  for (cplx z : pts)
    if (std::abs(rep.q(z)) < 1e-8)
      throw PreconditionError("counterexample: q vanishes at a node, radial inflation is degenerate; choose other nodes");
  rep.base = sample_data(h_nu(nu, r), pts);
  // internal consistency: the base data are extremal at m with solution q
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (std::abs(phi(rep.m(pts[j]), rep.base.targets[j]) - rep.q(pts[j])) > 1e-9)
      throw NumericalError("counterexample: base data are not extremal at m = -lambda^nu");

  const double tol = cfg.cnu.tol;
  auto test = [&](double eps) {
    const bool v = detail::violated_at(inflate_targets(rep.base, rep.m, rep.q, eps), rep.m, cfg.violation_eig, tol);
    rep.trace.push_back({eps, v});
    return v;
  };
  double hi = cfg.epsilon_max;
  while (!test(hi)) {
    hi /= 2.0;
    if (hi < 1e-12) throw NumericalError("counterexample: no inflation gives a certified violation inside G");
  }
  double lo = 0.0;
  for (int step = 0; step < cfg.bisection_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (test(mid)) hi = mid;
    else lo = mid;
  }
  rep.epsilon = hi;
  rep.perturbed = inflate_targets(rep.base, rep.m, rep.q, hi);
  rep.violation = pencil_certificate(rep.m, rep.perturbed);
  detail::lower_evidence(rep, cfg, 1);
  if (!detail::lower_holds(rep, cfg))
    throw NumericalError("counterexample: C_{nu-1} fails at the smallest certified inflation");
  return rep;
}

/// Independent recheck: certificate at m, a doubled-grid C_{nu-1} check, and G membership.
inline bool verify_counterexample(const CounterexampleReport& rep, const CounterexampleConfig& cfg = {}) {
  try {
    if (!all_in_open_g(rep.perturbed)) return false;
    if (pencil_certificate(rep.m, rep.perturbed).eigenvalue >= -cfg.violation_eig) return false;
    CounterexampleReport fresh = rep;
    detail::lower_evidence(fresh, cfg, 2);
    return detail::lower_holds(fresh, cfg);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace gammainterp
