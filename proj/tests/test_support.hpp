#pragma once

#include <complex>
#include <random>
#include <vector>

#include "gammainterp/ratfun.hpp"

namespace gammainterp::testkit {

inline cplx random_disc(std::mt19937_64& rng, double radius = 0.9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), kTwoPi * u(rng));
}

inline cplx random_circle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  return unit(u(rng));
}

inline BlaschkeProduct random_blaschke(std::mt19937_64& rng, int degree, double radius = 0.9) {
  std::vector<cplx> zeros;
  for (int k = 0; k < degree; ++k) zeros.push_back(random_disc(rng, radius));
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  return BlaschkeProduct(u(rng), zeros);
}

// Distinct nodes with a minimum pairwise separation.
inline std::vector<cplx> random_nodes(std::mt19937_64& rng, int n, double radius = 0.8, double sep = 0.1) {
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < n) {
    const cplx z = random_disc(rng, radius);
    bool ok = true;
    for (cplx w : out) ok = ok && std::abs(z - w) > sep;
    if (ok) out.push_back(z);
  }
  return out;
}

inline double max_coeff_diff(const Poly& a, const Poly& b) { return (a - b).max_abs_coeff(); }

}  // namespace gammainterp::testkit
