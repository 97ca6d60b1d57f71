#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "gammainterp/linalg.hpp"
#include "gammainterp/ratfun.hpp"
#include "test_support.hpp"

using namespace gammainterp;
using gammainterp::testkit::random_blaschke;
using gammainterp::testkit::random_circle;

namespace {

bool same_multiset(std::vector<cplx> a, std::vector<cplx> b, double tol) {
  if (a.size() != b.size()) return false;
  for (cplx x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx u, cplx v) { return std::abs(u - x) < std::abs(v - x); });
    if (it == b.end() || std::abs(*it - x) > tol) return false;
    b.erase(it);
  }
  return true;
}

}  // namespace

TEST(Poly, TrimsAndEvaluates) {
  const Poly p{1.0, 2.0, 0.0, 0.0};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_NEAR(std::abs(p(cplx(0.5, 0.0)) - 2.0), 0.0, 1e-15);
  EXPECT_TRUE(Poly{}.is_zero());
  EXPECT_EQ(Poly{}.degree(), -1);
}

TEST(Poly, ArithmeticAndDivision) {
  const Poly a = Poly::from_roots(std::vector<cplx>{1.0, cplx(0, 1), -0.5});
  const Poly b{-1.0, 1.0};
  auto [q, r] = divmod(a, b);
  EXPECT_TRUE(r.is_zero() || r.max_abs_coeff() < 1e-14);
  EXPECT_LT(testkit::max_coeff_diff(q * b, a), 1e-14);
  EXPECT_LT(testkit::max_coeff_diff(deflate(a, 1.0), q), 1e-14);
  EXPECT_LT(testkit::max_coeff_diff(deflate(a, 1.0), q), 1e-14);
  const Poly big = Poly::from_roots(std::vector<cplx>{3.0, -2.0});
  EXPECT_LT(testkit::max_coeff_diff(deflate(big, 3.0), Poly{2.0, 1.0}), 1e-14);
}

TEST(Poly, ReflectionAndShifts) {
  const Poly p{cplx(1, 1), 2.0};
  const Poly r = p.reflected(3);
  EXPECT_EQ(r.degree(), 3);
  EXPECT_EQ(r.coeff(3), cplx(1, -1));
  EXPECT_EQ(r.coeff(2), cplx(2, 0));
  EXPECT_EQ(r.low_order_zeros(), 2);
  EXPECT_EQ(r.shifted_down(2).degree(), 1);
}

TEST(Roots, RecoversKnownRoots) {
  const std::vector<cplx> rs{0.0, 0.0, 0.5, cplx(0.2, -0.7), 2.0, cplx(-1.0, 1.0)};
  EXPECT_TRUE(same_multiset(roots(Poly::from_roots(rs, cplx(0.3, 2.0))), rs, 1e-10));
  EXPECT_THROW(roots(Poly{}), PreconditionError);
}

TEST(ReduceRational, CommonRootOne) {
  const auto r = reduce_rational(RationalFn(Poly{-1.0, 0.0, 1.0}, Poly{-1.0, 1.0}));
  EXPECT_EQ(r.cancellations, 1);
  EXPECT_LT(testkit::max_coeff_diff(r.value.num(), Poly{1.0, 1.0}), 1e-12);
  EXPECT_EQ(r.value.den().degree(), 0);
  EXPECT_EQ(r.value.degree(), 1);
}

TEST(ReduceRational, CubicFamilyFactorization) {
  // (2l^8 - l^5 - l^2) / (2 - l^3 - l^6) = -l^2 (2l^3 + 1) / (l^3 + 2)
  const Poly num{0, 0, -1.0, 0, 0, -1.0, 0, 0, 2.0};
  const Poly den{2.0, 0, 0, -1.0, 0, 0, -1.0};
  const auto r = reduce_rational(RationalFn(num, den));
  EXPECT_EQ(r.cancellations, 3);
  EXPECT_EQ(r.value.degree(), 5);
  const RationalFn expected(Poly{0, 0, -1.0, 0, 0, -2.0}, Poly{2.0, 0, 0, 1.0});
  EXPECT_LT(testkit::max_coeff_diff(r.value.num(), expected.num()), 1e-10);
  EXPECT_LT(testkit::max_coeff_diff(r.value.den(), expected.den()), 1e-10);
}

TEST(ReduceRational, AlreadyCoprime) {
  const RationalFn f(Poly{0.0, 1.0}, Poly{1.0, -0.5});
  const auto r = reduce_rational(f);
  EXPECT_EQ(r.cancellations, 0);
  EXPECT_LT(testkit::max_coeff_diff(r.value.num(), f.num()), 1e-15);
  EXPECT_LT(testkit::max_coeff_diff(r.value.den(), f.den()), 1e-15);
}

TEST(ReduceRational, MultipleCommonRoot) {
  const std::vector<cplx> shared{0.3, 0.3, 0.3};
  std::vector<cplx> nr = shared, dr = shared;
  nr.push_back(-0.5);
  dr.push_back(2.0);
  dr.push_back(cplx(0, 3));
  const auto r = reduce_rational(RationalFn(Poly::from_roots(nr), Poly::from_roots(dr)));
  EXPECT_EQ(r.cancellations, 3);
  EXPECT_EQ(r.value.degree(), 2);
}

TEST(ReduceRational, IdempotentAndDegreeNonincreasing) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> common, nr, dr;
    for (int k = 0; k < trial % 3; ++k) common.push_back(testkit::random_disc(rng, 2.0));
    nr = common;
    dr = common;
    for (int k = 0; k < 2; ++k) nr.push_back(testkit::random_disc(rng, 2.0));
    for (int k = 0; k < 3; ++k) dr.push_back(testkit::random_disc(rng, 2.0));
    const RationalFn f(Poly::from_roots(nr), Poly::from_roots(dr));
    const auto once = reduce_rational(f);
    const auto twice = reduce_rational(once.value);
    EXPECT_LE(once.value.degree(), f.degree());
    EXPECT_EQ(twice.cancellations, 0);
    EXPECT_EQ(twice.value.degree(), once.value.degree());
  }
}

TEST(ClassifyInner, Examples) {
  const auto sq = classify_inner(RationalFn(Poly::monomial(2)));
  ASSERT_TRUE(sq);
  EXPECT_NEAR(sq->phase(), 0.0, 1e-12);
  EXPECT_TRUE(same_multiset(sq->zeros(), {0.0, 0.0}, 1e-12));

  const auto b = classify_inner(RationalFn(Poly{-0.5, 1.0}, Poly{1.0, -0.5}));
  ASSERT_TRUE(b);
  EXPECT_NEAR(std::abs(unit(b->phase()) - 1.0), 0.0, 1e-10);
  EXPECT_TRUE(same_multiset(b->zeros(), {0.5}, 1e-12));

  EXPECT_FALSE(classify_inner(RationalFn(Poly{2.0, 1.0}, Poly{1.0, 2.0})));
  EXPECT_FALSE(classify_inner(RationalFn(Poly{0.0, 0.5})));
}

TEST(Blaschke, RejectsBoundaryZeros) {
  EXPECT_THROW(BlaschkeProduct(0.0, {cplx(1.0 - 1e-12, 0.0)}), PreconditionError);
  EXPECT_NO_THROW(BlaschkeProduct(0.0, {cplx(0.999, 0.0)}));
}

TEST(Blaschke, UnimodularOnCircleAndPolesOutside) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const BlaschkeProduct f = random_blaschke(rng, trial % 7);
    for (cplx z : circle_samples(64, 0.05)) EXPECT_NEAR(std::abs(f(z)), 1.0, 1e-10);
    const RationalFn r = f.to_rational();
    if (r.den().degree() > 0) {
      for (cplx pole : roots(r.den())) EXPECT_GT(std::abs(pole), 1.0);
    }
    const cplx z = testkit::random_disc(rng);
    EXPECT_NEAR(std::abs(r(z) - f(z)), 0.0, 1e-10);
  }
}

TEST(Blaschke, ClassifyRecoversZeros) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const BlaschkeProduct f = random_blaschke(rng, 1 + trial % 6);
    const auto g = classify_inner(f.to_rational());
    ASSERT_TRUE(g);
    EXPECT_TRUE(same_multiset(g->zeros(), f.zeros(), 1e-8));
    EXPECT_NEAR(std::abs(unit(g->phase()) - unit(f.phase())), 0.0, 1e-8);
  }
}

TEST(Phasar, Examples) {
  EXPECT_NEAR(phasar_derivative(BlaschkeProduct::identity(), unit(0.7)), 1.0, 1e-15);
  EXPECT_NEAR(phasar_derivative(BlaschkeProduct::factor(0.5), 1.0), 3.0, 1e-14);
}

TEST(Phasar, AdditiveAndPositive) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const BlaschkeProduct f = random_blaschke(rng, 1 + trial % 4);
    const BlaschkeProduct g = random_blaschke(rng, 1 + trial % 3);
    for (int k = 0; k < 8; ++k) {
      const cplx z = random_circle(rng);
      const double af = phasar_derivative(f, z), ag = phasar_derivative(g, z);
      EXPECT_NEAR(phasar_derivative(f * g, z), af + ag, 1e-9);
      EXPECT_GT(af, 0.0);
      // numerical d/dtheta arg f(e^{i theta})
      const double h = 1e-6, t = std::arg(z);
      const double fd = std::arg(f(unit(t + h)) / f(unit(t - h))) / (2 * h);
      EXPECT_NEAR(af, fd, 1e-5 * std::max(1.0, af));
    }
  }
}

TEST(Mobius, BoundaryTripleExamples) {
  const std::array<cplx, 3> t1{1.0, cplx(0, 1), -1.0};
  auto id = mobius_from_boundary_triple(t1, t1);
  ASSERT_TRUE(id);
  EXPECT_EQ(id->degree(), 1);
  for (cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.2)}) EXPECT_NEAR(std::abs((*id)(z) - z), 0.0, 1e-12);

  const cplx w = unit(kTwoPi / 3);
  const std::array<cplx, 3> cube{1.0, w, w * w};
  auto id3 = mobius_from_boundary_triple(cube, cube);
  ASSERT_TRUE(id3);
  EXPECT_NEAR(std::abs((*id3)(0.4) - 0.4), 0.0, 1e-12);

  const std::array<cplx, 3> flipped{1.0, std::conj(w), std::conj(w * w)};
  EXPECT_FALSE(mobius_from_boundary_triple(cube, flipped));
  EXPECT_FALSE(mobius_from_boundary_triple(cube, {1.0, 1.0, 1.0}));
  EXPECT_THROW(mobius_from_boundary_triple({1.0, 1.0, w}, cube), PreconditionError);
}

TEST(Mobius, RandomTriplesInterpolate) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<cplx, 3> src{random_circle(rng), random_circle(rng), random_circle(rng)};
    std::array<cplx, 3> dst{random_circle(rng), random_circle(rng), random_circle(rng)};
    const auto m = mobius_from_boundary_triple(src, dst);
    EXPECT_EQ(m.has_value(), same_cyclic_order(src, dst));
    if (!m) continue;
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs((*m)(src[k]) - dst[k]), 0.0, 1e-8);
  }
}

TEST(CyclicOrder, Examples) {
  const std::array<cplx, 3> t{1.0, cplx(0, 1), -1.0};
  EXPECT_TRUE(same_cyclic_order(t, t));
  EXPECT_FALSE(same_cyclic_order(t, {1.0, cplx(0, -1), -1.0}));
  const cplx w = unit(kTwoPi / 3);
  EXPECT_TRUE(same_cyclic_order({1.0, w, w * w}, {1.0, std::conj(w * w), std::conj(w)}));
  EXPECT_THROW(same_cyclic_order({1.0, 1.0, w}, t), PreconditionError);
}

TEST(Compose, MatchesPointwise) {
  std::mt19937_64 rng(12);
  const RationalFn f = random_blaschke(rng, 2).to_rational();
  const RationalFn g = random_blaschke(rng, 2).to_rational();
  const RationalFn fg = f.compose(g);
  const cplx z = testkit::random_disc(rng);
  EXPECT_NEAR(std::abs(fg(z) - f(g(z))), 0.0, 1e-10);
}

TEST(Jacobi, AgreesWithEigenOracle) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 12;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    const CMatrix h = a + a.adjoint();
    const HermitianEigen ours = jacobi_eigen(h);
    Eigen::SelfAdjointEigenSolver<CMatrix> oracle(h);
    for (int k = 0; k < n; ++k) EXPECT_NEAR(ours.values[k], oracle.eigenvalues()(k), 1e-10);
    const CMatrix& recon = ours.vectors;
    for (int k = 0; k < n; ++k) {
      const CVector v = ours.vectors.col(k);
      EXPECT_LT((h * v - ours.values[k] * v).norm(), 1e-9);
    }
    EXPECT_LT((recon.adjoint() * recon - CMatrix::Identity(n, n)).norm(), 1e-10);
  }
}
