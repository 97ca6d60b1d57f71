#pragma once

// Scalar Nevanlinna-Pick: Pick matrices, solvability status and the Schur
// recursion for extremal data.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gammainterp/errors.hpp"
#include "gammainterp/linalg.hpp"
#include "gammainterp/ratfun.hpp"

namespace gammainterp {

struct NPData {
  std::vector<cplx> nodes;
  std::vector<cplx> targets;
};

inline constexpr double kNodeSeparation = 1e-10;

inline void validate_nodes(const std::vector<cplx>& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(std::abs(nodes[i]) < 1.0)) throw PreconditionError("node outside the open unit disc");
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (std::abs(nodes[i] - nodes[j]) <= kNodeSeparation) throw PreconditionError("coincident interpolation nodes");
  }
}

inline void validate(const NPData& d) {
  if (d.nodes.empty()) throw PreconditionError("NP data has no nodes");
  if (d.nodes.size() != d.targets.size()) throw PreconditionError("NP data: node/target count mismatch");
  validate_nodes(d.nodes);
}

/// P_ij = (1 - w_i conj(w_j)) / (1 - lambda_i conj(lambda_j))
inline CMatrix pick_matrix(const NPData& d) {
  validate(d);
  const auto n = static_cast<Eigen::Index>(d.nodes.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = (1.0 - d.targets[static_cast<std::size_t>(i)] * std::conj(d.targets[static_cast<std::size_t>(j)])) /
                (1.0 - d.nodes[static_cast<std::size_t>(i)] * std::conj(d.nodes[static_cast<std::size_t>(j)]));
  return m;
}

enum class NPKind { strictlySolvable, extremallySolvable, unsolvable };

inline const char* to_string(NPKind k) {
  switch (k) {
    case NPKind::strictlySolvable: return "strictlySolvable";
    case NPKind::extremallySolvable: return "extremallySolvable";
    case NPKind::unsolvable: return "unsolvable";
  }
  return "unsolvable";
}

struct NPStatus {
  NPKind kind = NPKind::unsolvable;
  double min_eigenvalue = 0.0;
  int rank = 0;
  double band = 0.0;
};

inline constexpr double kExtremalBand = 1e-8;

/// Status with the exact-zero test banded at rel_band * trace.
inline NPStatus np_status(const NPData& d, double rel_band = kExtremalBand) {
  const CMatrix p = pick_matrix(d);
  const HermitianEigen e = jacobi_eigen(p);
  // Trace of the Pick matrix, floored by the kernel trace sum 1/(1-|l_i|^2)
  // so that fully cancelled (unimodular-constant) data keep a sensible scale.
  double scale = 0.0, kernel = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    scale += std::abs(p(i, i).real());
    kernel += 1.0 / (1.0 - std::norm(d.nodes[static_cast<std::size_t>(i)]));
  }
  scale = std::max(scale, kernel);
  NPStatus st;
  st.band = rel_band * std::max(scale, 1e-300);
  st.min_eigenvalue = e.values.front();
  if (st.min_eigenvalue < -st.band) st.kind = NPKind::unsolvable;
  else if (st.min_eigenvalue <= st.band) st.kind = NPKind::extremallySolvable;
  else st.kind = NPKind::strictlySolvable;
  if (st.kind != NPKind::unsolvable)
    st.rank = static_cast<int>(std::count_if(e.values.begin(), e.values.end(), [&](double v) { return v > st.band; }));
  return st;
}

/// Schur reduction at node `pivot`; the remaining nodes keep their order.
inline NPData schur_reduce(const NPData& d, std::size_t pivot = 0) {
  validate(d);
  if (d.nodes.size() < 2) throw PreconditionError("schur_reduce: needs at least two nodes");
  if (pivot >= d.nodes.size()) throw PreconditionError("schur_reduce: pivot out of range");
  const cplx l1 = d.nodes[pivot];
  const cplx w1 = d.targets[pivot];
  if (!(std::abs(w1) < 1.0)) throw PreconditionError("schur_reduce: pivot target is not inside the disc");
  NPData out;
  for (std::size_t j = 0; j < d.nodes.size(); ++j) {
    if (j == pivot) continue;
    const cplx lj = d.nodes[j];
    const cplx wj = d.targets[j];
    out.nodes.push_back(lj);
    out.targets.push_back(((1.0 - std::conj(l1) * lj) / (lj - l1)) * ((wj - w1) / (1.0 - std::conj(w1) * wj)));
  }
  return out;
}

namespace detail {
inline constexpr double kUnimodularStop = 1e-7;

// Unreduced rational solution; the recursion keeps it rational so that the
// Blaschke form is read off once at the end.
inline RationalFn schur_solve(NPData d, double stop = kUnimodularStop) {
  std::size_t hit = 0;
  double closest = 2.0;
  for (std::size_t j = 0; j < d.targets.size(); ++j) {
    const double gap = 1.0 - std::abs(d.targets[j]);
    if (gap < closest) {
      closest = gap;
      hit = j;
    }
  }
  if (closest <= stop) return RationalFn::constant(d.targets[hit] / std::abs(d.targets[hit]));
  if (d.nodes.size() == 1) throw PreconditionError("solve_extremal: data are not extremal (strictly solvable tail)");
  std::size_t pivot = 0;
  for (std::size_t j = 1; j < d.targets.size(); ++j)
    if (std::abs(d.targets[j]) < std::abs(d.targets[pivot])) pivot = j;
  const cplx a = d.nodes[pivot];
  const cplx w = d.targets[pivot];
  const RationalFn inner = schur_solve(schur_reduce(d, pivot), stop);
  // q = (B_a q' + w) / (1 + conj(w) B_a q'), cleared of (1 - conj(a) lambda).
  const Poly lin{-a, 1.0};
  const Poly rev{1.0, -std::conj(a)};
  return RationalFn(lin * inner.num() + (rev * inner.den()) * w,
                    rev * inner.den() + (lin * inner.num()) * std::conj(w));
}
}  // namespace detail

/// The unique Blaschke product solving extremal data, verified at the nodes.
/// Looser verify_tol / rel_band / stop suit data that are extremal only to
/// search accuracy.
inline BlaschkeProduct solve_extremal(const NPData& d, double verify_tol = 1e-9, double rel_band = kExtremalBand,
                                      double stop = detail::kUnimodularStop) {
  const NPStatus st = np_status(d, rel_band);
  if (st.kind != NPKind::extremallySolvable)
    throw PreconditionError(std::string("solve_extremal: data are ") + to_string(st.kind) + ", not extremally solvable");
  const RationalFn raw = detail::schur_solve(d, stop);
  const RationalFn red = reduce_rational(raw).value;
  const auto q = classify_inner(red);
  if (!q) throw NumericalError("solve_extremal: recovered function is not a Blaschke product");
  for (std::size_t j = 0; j < d.nodes.size(); ++j)
    if (std::abs((*q)(d.nodes[j]) - d.targets[j]) > verify_tol)
      throw NumericalError("solve_extremal: solution misses a target beyond tolerance");
  return *q;
}

}  // namespace gammainterp
