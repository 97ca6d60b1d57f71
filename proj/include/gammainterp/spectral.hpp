#pragma once

// 2x2 spectral Nevanlinna-Pick problems, reduced to Gamma data via (tr, det).

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gammainterp/cnu.hpp"
#include "gammainterp/errors.hpp"
#include "gammainterp/gamma_core.hpp"
#include "gammainterp/pick.hpp"

namespace gammainterp {

using Matrix2c = Eigen::Matrix2cd;

struct SpectralNPProblem {
  std::vector<cplx> nodes;
  std::vector<Matrix2c> matrices;
};

inline constexpr double kScalarMatrixTol = 1e-10;

/// [[0, 1], [-p, s]]: trace s, determinant p.
inline Matrix2c companion(const GammaPoint& z) {
  Matrix2c w;
  w << 0.0, 1.0, -z.p, z.s;
  return w;
}

inline GammaData to_gamma_data(const SpectralNPProblem& prob) {
  if (prob.nodes.size() != prob.matrices.size()) throw PreconditionError("spectral problem: node/matrix count mismatch");
  validate_nodes(prob.nodes);
  GammaData d{prob.nodes, {}, false};
  bool open = true;
  for (std::size_t j = 0; j < prob.matrices.size(); ++j) {
    const Matrix2c& w = prob.matrices[j];
    const cplx tr = w.trace();
    if ((w - 0.5 * tr * Matrix2c::Identity()).norm() <= kScalarMatrixTol)
      throw ScalarMatrixError("matrix " + std::to_string(j) +
                              " is scalar; the reduction to (trace, determinant) data does not apply");
    const GammaPoint t{tr, w.determinant()};
    const MembershipReport m = membership(t);
    if (!m.closed_gamma)
      throw SpectralRadiusError("matrix " + std::to_string(j) + " has spectral radius above 1");
    open = open && m.open_g;
    d.targets.push_back(t);
  }
  d.require_open = open;
  return d;
}

/// C_nu screening; the default level is n - 2. A fails status certifies the problem unsolvable.
inline CnuReport screen(const SpectralNPProblem& prob, std::optional<int> nu = std::nullopt, const CnuConfig& cfg = {}) {
  const GammaData d = to_gamma_data(prob);
  const int level = nu ? *nu : std::max(0, static_cast<int>(prob.nodes.size()) - 2);
  return check_cnu(d, level, cfg);
}

inline SpectralNPProblem companion_problem(const GammaData& d) {
  SpectralNPProblem prob{d.nodes, {}};
  for (const auto& t : d.targets) prob.matrices.push_back(companion(t));
  return prob;
}

}  // namespace gammainterp
