#include <gtest/gtest.h>

#include <random>

#include "gammainterp/pick.hpp"
#include "test_support.hpp"

using namespace gammainterp;
using gammainterp::testkit::random_blaschke;
using gammainterp::testkit::random_disc;
using gammainterp::testkit::random_nodes;

namespace {

NPData sample(const BlaschkeProduct& q, const std::vector<cplx>& nodes) {
  NPData d{nodes, {}};
  for (cplx z : nodes) d.targets.push_back(q(z));
  return d;
}

}  // namespace

TEST(PickMatrix, Examples) {
  const CMatrix a = pick_matrix({{0.0}, {0.5}});
  EXPECT_NEAR(std::abs(a(0, 0) - 0.75), 0.0, 1e-15);

  const CMatrix b = pick_matrix({{0.0, 0.5}, {0.0, 0.5}});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(b(i, j) - 1.0), 0.0, 1e-15);

  const CMatrix c = pick_matrix({{0.0, 0.5}, {0.0, 0.9}});
  EXPECT_NEAR(std::abs(c(1, 1) - 0.19 / 0.75), 0.0, 1e-14);
  EXPECT_LT(jacobi_eigen(c).values.front(), 0.0);
  EXPECT_THROW(pick_matrix({{0.1, 0.1}, {0.0, 0.0}}), PreconditionError);
}

TEST(PickMatrix, Hermitian) {
  std::mt19937_64 rng(31);
  NPData d{random_nodes(rng, 5), {}};
  for (int k = 0; k < 5; ++k) d.targets.push_back(random_disc(rng));
  const CMatrix p = pick_matrix(d);
  EXPECT_LT((p - p.adjoint()).norm(), 1e-14);
}

TEST(NPStatus, Examples) {
  EXPECT_EQ(np_status({{0.0}, {0.5}}).kind, NPKind::strictlySolvable);
  const NPStatus e = np_status({{0.0, 0.5}, {0.0, 0.5}});
  EXPECT_EQ(e.kind, NPKind::extremallySolvable);
  EXPECT_EQ(e.rank, 1);
  EXPECT_EQ(np_status({{0.0, 0.5}, {0.0, 0.9}}).kind, NPKind::unsolvable);
}

TEST(SchurReduce, Examples) {
  const NPData r = schur_reduce({{0.0, 0.5}, {0.0, 0.5}});
  ASSERT_EQ(r.nodes.size(), 1u);
  EXPECT_NEAR(std::abs(r.targets[0] - 1.0), 0.0, 1e-15);
  const cplx l2(0.3, 0.4), w2(0.1, -0.2);
  const NPData s = schur_reduce({{0.0, l2}, {0.0, w2}});
  EXPECT_NEAR(std::abs(s.targets[0] - w2 / l2), 0.0, 1e-15);
  EXPECT_THROW(schur_reduce({{0.0, 0.5}, {1.0, 0.5}}), PreconditionError);
}

TEST(SchurReduce, PreservesStatusKind) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 3;
    const auto nodes = random_nodes(rng, n, 0.7, 0.15);
    // extremal: sampled from a Blaschke product of degree < n
    const NPData ext = sample(random_blaschke(rng, n - 2, 0.7), nodes);
    EXPECT_EQ(np_status(schur_reduce(ext)).kind, NPKind::extremallySolvable);
    // strictly solvable: sampled from a contraction of a Blaschke product
    NPData strict = sample(random_blaschke(rng, n - 1, 0.7), nodes);
    for (cplx& w : strict.targets) w *= 0.8;
    ASSERT_EQ(np_status(strict).kind, NPKind::strictlySolvable);
    EXPECT_EQ(np_status(schur_reduce(strict)).kind, NPKind::strictlySolvable);
  }
}

TEST(SolveExtremal, Examples) {
  const BlaschkeProduct q = solve_extremal({{0.0, 0.5}, {0.0, 0.5}});
  EXPECT_EQ(q.degree(), 1);
  EXPECT_NEAR(std::abs(q(cplx(0.2, 0.3)) - cplx(0.2, 0.3)), 0.0, 1e-12);

  const BlaschkeProduct target = BlaschkeProduct::factor(0.3) * BlaschkeProduct::factor(-0.2);
  const NPData d = sample(target, {0.1, cplx(-0.4, 0.3), cplx(0.5, 0.5)});
  const BlaschkeProduct r = solve_extremal(d);
  EXPECT_EQ(r.degree(), 2);
  for (cplx z : {cplx(0.7, -0.1), cplx(-0.2, -0.6), cplx(0.0, 0.9)}) EXPECT_NEAR(std::abs(r(z) - target(z)), 0.0, 1e-9);

  const BlaschkeProduct c = solve_extremal({{0.0}, {1.0}});
  EXPECT_EQ(c.degree(), 0);
  EXPECT_NEAR(std::abs(c(0.3) - 1.0), 0.0, 1e-15);

  EXPECT_THROW(solve_extremal({{0.0}, {0.5}}), PreconditionError);
}

TEST(SolveExtremal, RoundTripProperty) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const auto nodes = random_nodes(rng, n, 0.8, 0.1);
    const BlaschkeProduct q = random_blaschke(rng, trial % n, 0.8);
    const NPData d = sample(q, nodes);
    const NPStatus st = np_status(d);
    ASSERT_EQ(st.kind, NPKind::extremallySolvable) << "trial " << trial;
    EXPECT_EQ(st.rank, q.degree());
    const BlaschkeProduct r = solve_extremal(d);
    EXPECT_EQ(r.degree(), q.degree());
    for (int k = 0; k < 50; ++k) {
      const cplx z = random_disc(rng, 0.99);
      EXPECT_NEAR(std::abs(r(z) - q(z)), 0.0, 1e-9);
    }
  }
}

TEST(SolveExtremal, AppendingConsistentNodeKeepsRank) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const BlaschkeProduct q = random_blaschke(rng, 2, 0.7);
    auto nodes = random_nodes(rng, 4, 0.7, 0.15);
    const NPData d = sample(q, {nodes.begin(), nodes.begin() + 3});
    const NPData e = sample(q, nodes);
    const NPStatus a = np_status(d), b = np_status(e);
    EXPECT_EQ(a.kind, NPKind::extremallySolvable);
    EXPECT_EQ(b.kind, NPKind::extremallySolvable);
    EXPECT_EQ(a.rank, b.rank);
  }
}

TEST(Inflation, RadialInflationMakesUnsolvable) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3;
    const auto nodes = random_nodes(rng, n, 0.6, 0.2);
    const BlaschkeProduct q = BlaschkeProduct(0.3, {random_disc(rng, 0.95), random_disc(rng, 0.95)});
    NPData d = sample(q, nodes);
    bool nonvanishing = true;
    for (cplx w : d.targets) nonvanishing = nonvanishing && std::abs(w) > 1e-3;
    if (!nonvanishing) continue;
    for (cplx& w : d.targets) w *= 1.0 + 1e-3;
    EXPECT_EQ(np_status(d).kind, NPKind::unsolvable);
  }
}
