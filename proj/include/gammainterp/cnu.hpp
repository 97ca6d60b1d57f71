#pragma once

// Condition C_nu: the Phi pencil of Pick matrices, the operator norm of
// X(upsilon), a multi-start search for its supremum over Bl_nu, and
// auxiliary extremals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gammainterp/errors.hpp"
#include "gammainterp/gamma_core.hpp"
#include "gammainterp/linalg.hpp"
#include "gammainterp/parallel.hpp"
#include "gammainterp/pick.hpp"
#include "gammainterp/ratfun.hpp"

namespace gammainterp {

/// NP data lambda_j -> Phi(upsilon(lambda_j), z_j).
inline NPData phi_data(const BlaschkeProduct& u, const GammaData& d) {
  NPData out{d.nodes, {}};
  for (std::size_t j = 0; j < d.nodes.size(); ++j) out.targets.push_back(phi(u(d.nodes[j]), d.targets[j]));
  return out;
}

/// Hermitian pencil entry matrix; PSD iff the Phi-transformed data are solvable.
inline CMatrix pencil_matrix(const BlaschkeProduct& u, const GammaData& d) {
  const auto n = static_cast<Eigen::Index>(d.nodes.size());
  std::vector<cplx> uv(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    uv[i] = u(d.nodes[i]);
    if (std::abs(2.0 - uv[i] * d.targets[i].s) < 1e-12) throw PolePointError("pencil_matrix: upsilon(lambda_i) s_i = 2");
  }
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
      const cplx ui = uv[a], uj = std::conj(uv[b]);
      const cplx si = d.targets[a].s, pi = d.targets[a].p;
      const cplx sj = std::conj(d.targets[b].s), pj = std::conj(d.targets[b].p);
      const cplx num = 1.0 - ui * pi * pj * uj - 0.5 * ui * (si - pi * sj) - 0.5 * (sj - pj * si) * uj -
                       0.25 * (1.0 - ui * uj) * si * sj;
      m(i, j) = num / (1.0 - d.nodes[a] * std::conj(d.nodes[b]));
    }
  }
  return m;
}

/// Szego kernel Gram matrix G_ij = 1/(1 - lambda_i conj(lambda_j)).
inline CMatrix kernel_gram(const std::vector<cplx>& nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = 1.0 / (1.0 - nodes[static_cast<std::size_t>(i)] * std::conj(nodes[static_cast<std::size_t>(j)]));
  return g;
}

/// ||X(upsilon)||: square root of the largest mu with W G W* v = mu G v, W = diag(Phi values).
inline double x_norm(const BlaschkeProduct& u, const GammaData& d) {
  const NPData pd = phi_data(u, d);
  const CMatrix g = kernel_gram(d.nodes);
  CMatrix wgw = g;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      wgw(i, j) = pd.targets[static_cast<std::size_t>(i)] * g(i, j) * std::conj(pd.targets[static_cast<std::size_t>(j)]);
  return std::sqrt(std::max(0.0, max_generalized_eigenvalue(wgw, g)));
}

/// x_norm with the kernel Cholesky factor cached: ||X|| = ||L^{-1} W L||_2.
class XNormEvaluator {
 public:
  explicit XNormEvaluator(const GammaData& d) : d_(d) {
    Eigen::LLT<CMatrix> llt(kernel_gram(d.nodes));
    if (llt.info() != Eigen::Success) throw NumericalError("kernel Gram matrix is not positive definite");
    l_ = llt.matrixL();
    linv_ = l_.triangularView<Eigen::Lower>().solve(CMatrix::Identity(l_.rows(), l_.cols()));
  }

  double operator()(const BlaschkeProduct& u) const {
    const auto n = l_.rows();
    CMatrix wl(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      wl.row(i) = phi(u(d_.nodes[k]), d_.targets[k]) * l_.row(i);
    }
    const CMatrix m = linv_ * wl;
    return std::sqrt(std::max(0.0, jacobi_eigen(m * m.adjoint()).values.back()));
  }

  const GammaData& data() const { return d_; }

 private:
  GammaData d_;
  CMatrix l_;
  CMatrix linv_;
};

enum class CnuStatus { holdsStrictly, holdsExtremally, fails, inconclusive };

inline const char* to_string(CnuStatus s) {
  switch (s) {
    case CnuStatus::holdsStrictly: return "holdsStrictly";
    case CnuStatus::holdsExtremally: return "holdsExtremally";
    case CnuStatus::fails: return "fails";
    case CnuStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct CnuConfig {
  double tol = 1e-6;          // band on the supremum around 1
  double strict_band = 1e-6;  // width below 1 still counted as extremal
  int grid0 = 1024;           // degree 0: angles
  int angles1 = 64;           // degree 1: angles x disc grid
  int disc1 = 12;
  int starts1 = 20;
  int seeds = 2000;  // degree >= 2: quasi-random seeds
  int refinements = 30;
  int nm_iterations = 600;
  double zero_clamp = 1.0 - 1e-6;
  std::uint64_t seed = 0;
  bool extract_witness = true;
};

struct ViolationCertificate {
  BlaschkeProduct upsilon;
  double eigenvalue = 0.0;
  CVector eigenvector;
};

struct SearchLogEntry {
  int degree = 0;
  long grid_evaluations = 0;
  long refine_evaluations = 0;
  double grid_best = 0.0;
  double refined_best = 0.0;
  bool converged = true;
  BlaschkeProduct best;
};

struct CnuReport {
  int nu = 0;
  CnuStatus status = CnuStatus::inconclusive;
  double sup_norm = 0.0;
  BlaschkeProduct argmax;
  std::optional<BlaschkeProduct> witness_m;
  std::optional<BlaschkeProduct> witness_q;
  std::optional<ViolationCertificate> violation;
  std::vector<SearchLogEntry> log;
  long evaluations = 0;
  std::string note;
};

/// Pencil minimum eigenpair at upsilon; a negative value certifies failure of C_nu.
inline ViolationCertificate pencil_certificate(const BlaschkeProduct& u, const GammaData& d) {
  const HermitianEigen e = jacobi_eigen(pencil_matrix(u, d));
  return {u, e.values.front(), e.vectors.col(0)};
}

/// The Blaschke product q solving the extremal data lambda_j -> Phi(m(lambda_j), z_j).
inline std::pair<BlaschkeProduct, BlaschkeProduct> auxiliary_extremal(const GammaData& d, int nu, const BlaschkeProduct& m,
                                                                      double tol = 1e-6) {
  if (m.degree() > nu) throw PreconditionError("auxiliary_extremal: m has degree above nu");
  const double xn = x_norm(m, d);
  if (std::abs(xn - 1.0) > tol) throw PreconditionError("auxiliary_extremal: ||X(m)|| is not 1 within tolerance");
  const NPData pd = phi_data(m, d);
  const double loose = std::max(tol, kExtremalBand);
  return {m, solve_extremal(pd, std::max(1e-9, 10 * tol), loose, std::max(detail::kUnimodularStop, tol))};
}

namespace detail {

inline BlaschkeProduct from_params(const std::vector<double>& x, double clamp) {
  std::vector<cplx> zeros;
  for (std::size_t i = 1; i + 1 < x.size(); i += 2) {
    cplx a(x[i], x[i + 1]);
    if (std::abs(a) > clamp) a *= clamp / std::abs(a);
    zeros.push_back(a);
  }
  return BlaschkeProduct(x.empty() ? 0.0 : x[0], zeros);
}

// Zeros pressed against the circle are replaced by their boundary limit
// B_a -> -a/|a|, which lowers the degree.
inline BlaschkeProduct drop_boundary_zeros(const BlaschkeProduct& b, double edge = 1.0 - 1e-4) {
  std::vector<cplx> keep;
  double phase = b.phase();
  for (cplx a : b.zeros()) {
    if (std::abs(a) > edge) phase += std::arg(-a);
    else keep.push_back(a);
  }
  return BlaschkeProduct(phase, keep);
}

inline double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

inline constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

struct NMResult {
  std::vector<double> x;
  double value = -1.0;
  long evaluations = 0;
  bool converged = false;
};

// Nelder-Mead maximization.
template <class F>
NMResult nelder_mead_max(F&& f, std::vector<double> x0, const std::vector<double>& step, int max_iter,
                         double ftol = 1e-14) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts{x0};
  for (std::size_t i = 0; i < n; ++i) {
    auto p = x0;
    p[i] += step[i];
    pts.push_back(p);
  }
  NMResult res;
  std::vector<double> val;
  for (auto& p : pts) val.push_back(f(p));
  res.evaluations = static_cast<long>(pts.size());
  std::vector<std::size_t> idx(n + 1);
  for (int it = 0; it < max_iter; ++it) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[n - 1];
    if (std::abs(val[best] - val[worst]) <= ftol * (1.0 + std::abs(val[best]))) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[idx[k]][i] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (pts[worst][i] - centroid[i]);
      return p;
    };
    auto xr = along(-1.0);
    const double fr = f(xr);
    ++res.evaluations;
    if (fr > val[best]) {
      auto xe = along(-2.0);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe > fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
    } else if (fr > val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
    } else {
      auto xc = fr > val[worst] ? along(-0.5) : along(0.5);
      const double fc = f(xc);
      ++res.evaluations;
      if (fc > std::max(fr, val[worst])) {
        pts[worst] = xc;
        val[worst] = fc;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          auto& p = pts[idx[k]];
          for (std::size_t i = 0; i < n; ++i) p[i] = pts[best][i] + 0.5 * (p[i] - pts[best][i]);
          val[idx[k]] = f(p);
          ++res.evaluations;
        }
      }
    }
  }
  const auto top = static_cast<std::size_t>(std::max_element(val.begin(), val.end()) - val.begin());
  res.x = pts[top];
  res.value = val[top];
  return res;
}

struct Scored {
  double value;
  std::size_t order;
  std::vector<double> x;
};

inline bool better(const Scored& a, const Scored& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.order < b.order;
}

// Seeds for the degree-d search, in a fixed order.
inline std::vector<std::vector<double>> seeds_for_degree(int d, const CnuConfig& cfg) {
  std::vector<std::vector<double>> out;
  if (d == 0) {
    for (int k = 0; k < cfg.grid0; ++k) out.push_back({kTwoPi * k / cfg.grid0});
    return out;
  }
  if (d == 1) {
    for (int a = 0; a < cfg.angles1; ++a)
      for (int i = 0; i < cfg.disc1; ++i)
        for (int j = 0; j < cfg.disc1; ++j) {
          const double x = -1.0 + (2.0 * i + 1.0) / cfg.disc1, y = -1.0 + (2.0 * j + 1.0) / cfg.disc1;
          if (x * x + y * y < 0.999 * 0.999) out.push_back({kTwoPi * a / cfg.angles1, x, y});
        }
    return out;
  }
  // Halton points with a seed-derived Cranley-Patterson shift.
  std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(d));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t dims = 1 + 2 * static_cast<std::size_t>(d);
  std::vector<double> shift(dims);
  for (auto& s : shift) s = u(rng);
  for (int k = 1; k <= cfg.seeds; ++k) {
    std::vector<double> h(dims);
    for (std::size_t t = 0; t < dims; ++t)
      h[t] = std::fmod(radical_inverse(static_cast<std::uint64_t>(k), kPrimes[t % std::size(kPrimes)]) + shift[t], 1.0);
    std::vector<double> x{kTwoPi * h[0]};
    for (int z = 0; z < d; ++z) {
      const double r = 0.999 * std::sqrt(h[1 + 2 * z]);
      const double ang = kTwoPi * h[2 + 2 * z];
      x.push_back(r * std::cos(ang));
      x.push_back(r * std::sin(ang));
    }
    out.push_back(std::move(x));
  }
  return out;
}

template <class F>
std::pair<double, double> golden_argmax(F&& f, double lo, double hi, double tol, long& evals) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  evals += 2;
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
    ++evals;
  }
  return f1 >= f2 ? std::pair(x1, f1) : std::pair(x2, f2);
}

}  // namespace detail

/// Multi-start search over Blaschke products of degree exactly d (zeros clamped inside).
inline std::pair<detail::Scored, SearchLogEntry> search_degree(const XNormEvaluator& eval, int d, const CnuConfig& cfg) {
  using detail::Scored;
  auto objective = [&](const std::vector<double>& x) {
    try {
      return eval(detail::from_params(x, cfg.zero_clamp));
    } catch (const PolePointError&) {
      return -1.0;
    } catch (const NumericalError&) {
      return -1.0;
    }
  };
  const auto seeds = detail::seeds_for_degree(d, cfg);
  std::vector<double> vals(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { vals[i] = objective(seeds[i]); });
  std::vector<Scored> ranked;
  ranked.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) ranked.push_back({vals[i], i, seeds[i]});
  std::sort(ranked.begin(), ranked.end(), detail::better);

  SearchLogEntry entry;
  entry.degree = d;
  entry.grid_evaluations = static_cast<long>(seeds.size());
  entry.grid_best = ranked.empty() ? -1.0 : ranked.front().value;

  const std::size_t starts = std::min<std::size_t>(
      ranked.size(), static_cast<std::size_t>(d == 0 ? 5 : (d == 1 ? cfg.starts1 : cfg.refinements)));
  std::vector<Scored> refined(starts);
  std::vector<long> evals(starts, 0);
  std::vector<char> conv(starts, 1);
  parallel_for(starts, [&](std::size_t k) {
    const Scored& s = ranked[k];
    if (d == 0) {
      const double step = kTwoPi / cfg.grid0;
      auto f = [&](double t) { return objective({t}); };
      auto [t, v] = detail::golden_argmax(f, s.x[0] - step, s.x[0] + step, 1e-10, evals[k]);
      refined[k] = v >= s.value ? Scored{v, k, {t}} : Scored{s.value, k, s.x};
      return;
    }
    std::vector<double> step(s.x.size(), 0.05);
    step[0] = 0.1;
    auto r = detail::nelder_mead_max(objective, s.x, step, cfg.nm_iterations);
    // restart once from the refined point to escape premature collapse
    auto r2 = detail::nelder_mead_max(objective, r.x, std::vector<double>(s.x.size(), 0.01), cfg.nm_iterations);
    evals[k] = r.evaluations + r2.evaluations;
    conv[k] = r2.converged ? 1 : 0;
    const auto& pick = r2.value >= r.value ? r2 : r;
    refined[k] = pick.value >= s.value ? Scored{pick.value, k, pick.x} : Scored{s.value, k, s.x};
  });
  Scored best = ranked.empty() ? Scored{-1.0, 0, std::vector<double>(1 + 2 * static_cast<std::size_t>(d), 0.0)}
                               : ranked.front();
  bool best_conv = true;
  for (std::size_t k = 0; k < starts; ++k) {
    entry.refine_evaluations += evals[k];
    if (refined[k].value > best.value || (refined[k].value == best.value && k == 0)) {
      best = refined[k];
      best_conv = conv[k] != 0;
    }
  }
  // canonical parameters: zeros clamped as evaluated
  const BlaschkeProduct b = detail::from_params(best.x, cfg.zero_clamp);
  std::vector<double> canon{b.phase()};
  for (cplx a : b.zeros()) {
    canon.push_back(a.real());
    canon.push_back(a.imag());
  }
  best.x = canon;
  entry.refined_best = best.value;
  entry.converged = best_conv;
  entry.best = b;
  return {best, entry};
}

/// Estimates sup over Bl_nu of ||X(upsilon)|| and classifies condition C_nu.
inline CnuReport check_cnu(const GammaData& data, int nu, const CnuConfig& cfg = {}) {
  if (nu < 0) throw PreconditionError("check_cnu: nu must be >= 0");
  if (cfg.tol <= 0.0) throw PreconditionError("check_cnu: tol must be positive");
  validate(data);
  const XNormEvaluator eval(data);
  CnuReport rep;
  rep.nu = nu;
  detail::Scored best{-1.0, 0, {0.0}};
  bool best_converged = true;
  for (int d = 0; d <= nu; ++d) {
    auto [cand, entry] = search_degree(eval, d, cfg);
    rep.evaluations += entry.grid_evaluations + entry.refine_evaluations;
    rep.log.push_back(entry);
    cand.order = static_cast<std::size_t>(d);
    if (cand.value > best.value) {
      best = cand;
      best_converged = entry.converged;
    }
  }
  rep.argmax = detail::from_params(best.x, cfg.zero_clamp);
  rep.sup_norm = best.value;
  if (rep.sup_norm > 1.0 + cfg.tol) {
    rep.status = CnuStatus::fails;
    rep.violation = pencil_certificate(rep.argmax, data);
    return rep;
  }
  if (rep.sup_norm >= 1.0 - std::max(cfg.tol, cfg.strict_band)) {
    rep.status = CnuStatus::holdsExtremally;
    if (cfg.extract_witness) {
      for (const BlaschkeProduct& m : {detail::drop_boundary_zeros(rep.argmax), rep.argmax}) {
        try {
          auto [mm, q] = auxiliary_extremal(data, nu, m, std::max(cfg.tol, cfg.strict_band));
          rep.witness_m = mm;
          rep.witness_q = q;
          break;
        } catch (const Error& e) {
          rep.note = std::string("witness extraction failed: ") + e.what();
        }
      }
      if (rep.witness_m) rep.note.clear();
    }
    return rep;
  }
  // Close to 1 but below the band with an unconverged refinement: do not guess.
  if (rep.sup_norm >= 1.0 - 100.0 * std::max(cfg.tol, cfg.strict_band) && !best_converged) {
    rep.status = CnuStatus::inconclusive;
    rep.note = "supremum estimate close to 1 and the local refinement did not converge";
    return rep;
  }
  rep.status = CnuStatus::holdsStrictly;
  return rep;
}

/// Solvability certificate for data whose p values are themselves extremal.
struct FlatCertificate {
  CnuReport c0;
  NPStatus p_status;
};

inline std::optional<FlatCertificate> flat_case_decision(const GammaData& d, const CnuConfig& cfg = {}) {
  NPData pd{d.nodes, {}};
  for (const auto& t : d.targets) pd.targets.push_back(t.p);
  const NPStatus ps = np_status(pd);
  if (ps.kind != NPKind::extremallySolvable) return std::nullopt;
  CnuReport c0 = check_cnu(d, 0, cfg);
  if (c0.status == CnuStatus::fails || c0.status == CnuStatus::inconclusive) return std::nullopt;
  return FlatCertificate{std::move(c0), ps};
}

}  // namespace gammainterp
