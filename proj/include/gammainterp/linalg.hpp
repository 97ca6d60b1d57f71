#pragma once

// Small dense Hermitian linear algebra: cyclic Jacobi eigensolver and the
// Cholesky-whitened largest generalized eigenvalue used for operator norms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "gammainterp/errors.hpp"

namespace gammainterp {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k pairs with values[k]
};

/// Cyclic Jacobi for Hermitian matrices. The strictly lower triangle is
/// mirrored from the upper one before iterating.
inline HermitianEigen jacobi_eigen(const CMatrix& input, double off_tol = 1e-13,
                                   int max_sweeps = 100) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw PreconditionError("jacobi_eigen: matrix is not square");
  CMatrix a = input;
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = cplx(a(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
  }
  CMatrix v = CMatrix::Identity(n, n);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };
  const double scale = std::max(a.norm(), 1e-300);

  for (int sweep = 0; sweep < max_sweeps && off_norm() > off_tol * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double b = std::abs(apq);
        if (b <= 1e-300) continue;
        const cplx e = apq / b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = diag(1, conj(e)) * [[c, s], [-s, c]] restricted to (p, q).
        const cplx upp = c, upq = s, uqp = -s * std::conj(e), uqq = c * std::conj(e);
        for (Eigen::Index k = 0; k < n; ++k) {  // a <- a U
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // a <- U^H a
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
        for (Eigen::Index k = 0; k < n; ++k) {  // v <- v U
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }
  if (off_norm() > 1e3 * off_tol * scale)
    throw NumericalError("jacobi_eigen: no convergence within sweep budget");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out;
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values.push_back(a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real());
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

inline double min_eigenvalue(const CMatrix& m) { return jacobi_eigen(m).values.front(); }

/// Largest mu with (W G W^*) v = mu G v, G Hermitian positive definite.
inline double max_generalized_eigenvalue(const CMatrix& numerator, const CMatrix& gram) {
  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw NumericalError("gram matrix is not positive definite");
  const CMatrix l = llt.matrixL();
  CMatrix tmp = l.triangularView<Eigen::Lower>().solve(numerator);
  CMatrix whitened = l.triangularView<Eigen::Lower>().solve(tmp.adjoint()).adjoint();
  return jacobi_eigen(whitened).values.back();
}

}  // namespace gammainterp
