#include <gtest/gtest.h>

#include <random>

#include "gammainterp/counterexample.hpp"
#include "gammainterp/families.hpp"
#include "gammainterp/spectral.hpp"
#include "test_support.hpp"

using namespace gammainterp;
using gammainterp::testkit::random_disc;
using gammainterp::testkit::random_nodes;

TEST(Spectral, CompanionRoundTrip) {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 100; ++k) {
    const GammaPoint z = symmetrize(random_disc(rng), random_disc(rng));
    const Matrix2c w = companion(z);
    EXPECT_EQ(w.trace(), z.s);
    EXPECT_EQ(w.determinant(), z.p);
  }
}

TEST(Spectral, Examples) {
  Matrix2c diag = Matrix2c::Zero();
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.2;
  const GammaData d = to_gamma_data({{0.1}, {diag}});
  EXPECT_NEAR(std::abs(d.targets[0].s - 0.7), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.targets[0].p - 0.1), 0.0, 1e-15);
  EXPECT_TRUE(in_open_g(d.targets[0]));

  const Matrix2c half = 0.5 * Matrix2c::Identity();
  EXPECT_THROW(to_gamma_data({{0.1}, {half}}), ScalarMatrixError);

  Matrix2c big = Matrix2c::Zero();
  big(0, 0) = 1.5;
  big(0, 1) = 1.0;
  EXPECT_THROW(to_gamma_data({{0.1}, {big}}), SpectralRadiusError);
}

TEST(Spectral, SimilarityInvariance) {
  std::mt19937_64 rng(72);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const GammaPoint z = symmetrize(random_disc(rng), random_disc(rng));
    Matrix2c t;
    t << cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
    if (std::abs(t.determinant()) < 0.1) continue;
    const Matrix2c w = t * companion(z) * t.inverse();
    const GammaData d = to_gamma_data({{0.0}, {w}});
    EXPECT_NEAR(std::abs(d.targets[0].s - z.s), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(d.targets[0].p - z.p), 0.0, 1e-10);
  }
}

TEST(Spectral, FamilyDataDoNotFail) {
  std::mt19937_64 rng(73);
  CnuConfig cfg;
  cfg.seeds = 300;
  cfg.refinements = 6;
  cfg.extract_witness = false;
  for (const GammaMap& h : {h_nu(1, 0.5), h_j(1), surprise(cplx(0.2, 0.1), 1.0)}) {
    const GammaData d = sample_data(h, random_nodes(rng, 4, 0.8, 0.15));
    EXPECT_NE(screen(companion_problem(d), std::nullopt, cfg).status, CnuStatus::fails);
  }
}

TEST(Spectral, CounterexampleFails) {
  const CounterexampleReport rep = generate_counterexample(1, 0.5);
  const SpectralNPProblem prob = companion_problem(rep.perturbed);
  EXPECT_EQ(screen(prob, rep.nu).status, CnuStatus::fails);
  EXPECT_NE(screen(prob, rep.nu - 1).status, CnuStatus::fails);
}

TEST(Spectral, SmallDiagonalHoldsStrictly) {
  Matrix2c a = Matrix2c::Zero(), b = Matrix2c::Zero();
  a(0, 0) = 0.1;
  a(1, 1) = -0.05;
  b(0, 0) = cplx(0.0, 0.08);
  b(1, 1) = 0.02;
  const CnuReport r = screen({{0.1, cplx(-0.2, 0.3)}, {a, b}});
  EXPECT_EQ(r.nu, 0);
  EXPECT_EQ(r.status, CnuStatus::holdsStrictly);
}

TEST(Spectral, ScreeningMonotone) {
  std::mt19937_64 rng(74);
  CnuConfig cfg;
  cfg.seeds = 300;
  cfg.refinements = 6;
  cfg.extract_witness = false;
  for (int k = 0; k < 5; ++k) {
    SpectralNPProblem prob{random_nodes(rng, 3, 0.7, 0.2), {}};
    for (int j = 0; j < 3; ++j) prob.matrices.push_back(companion(symmetrize(random_disc(rng, 0.95), random_disc(rng, 0.95))));
    bool failed = false;
    for (int nu = 0; nu <= 2; ++nu) {
      const CnuReport r = screen(prob, nu, cfg);
      if (failed) {
        EXPECT_EQ(r.status, CnuStatus::fails);
      }
      failed = r.status == CnuStatus::fails;
    }
  }
}
