#include <gtest/gtest.h>

#include <random>

#include "gammainterp/io.hpp"
#include "test_support.hpp"

using namespace gammainterp;
using testkit::random_blaschke;
using testkit::random_nodes;

namespace {

// parse(serialize(x)) re-serializes to the same bytes.
template <class T>
void expect_round_trip(const T& x) {
  const std::string once = json(x).dump();
  const T back = json::parse(once).get<T>();
  EXPECT_EQ(json(back).dump(), once);
}

CnuConfig light() {
  CnuConfig c;
  c.grid0 = 64;
  c.angles1 = 8;
  c.disc1 = 4;
  c.starts1 = 3;
  c.seeds = 100;
  c.refinements = 4;
  c.nm_iterations = 150;
  return c;
}

const std::vector<cplx> kThree{{0.1, 0.2}, {-0.3, 0.1}, {0.2, -0.4}};

}  // namespace

TEST(Json, ComplexIsPair) {
  const json j = cplx(1.5, -2.0);
  EXPECT_EQ(j.dump(), "[1.5,-2.0]");
  EXPECT_EQ(json::parse("[0.25,3]").get<cplx>(), cplx(0.25, 3.0));
  EXPECT_THROW(json::parse("[1,2,3]").get<cplx>(), PreconditionError);
}

TEST(Json, BitExactDoubles) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const cplx z = testkit::random_disc(rng);
    EXPECT_EQ(json::parse(json(z).dump()).get<cplx>(), z);
  }
}

TEST(Json, ValueTypesRoundTrip) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const BlaschkeProduct b = random_blaschke(rng, k % 4);
    expect_round_trip(b);
    const BlaschkeProduct back = json(b).get<BlaschkeProduct>();
    EXPECT_EQ(back.phase(), b.phase());
    EXPECT_EQ(back.zeros(), b.zeros());
    expect_round_trip(b.to_rational());
    expect_round_trip(b.to_rational().num());
  }
  expect_round_trip(GammaPoint{{0.3, 0.1}, {-0.2, 0.05}});
  expect_round_trip(h_nu(2, 0.4));
  expect_round_trip(sample_data(h_nu(1, 0.5), kThree));
  expect_round_trip(NPData{kThree, {0.1, 0.2, 0.3}});
  expect_round_trip(np_status(NPData{kThree, {0.1, 0.2, 0.3}}));
  expect_round_trip(membership({{2.0, 0.0}, {1.0, 0.0}}));
  expect_round_trip(companion_problem(sample_data(h_nu(1, 0.5), kThree)));
}

TEST(Json, FamilySpecRoundTrip) {
  FamilySpec inner;
  inner.name = FamilyName::hNu;
  inner.nu = 2;
  inner.r = 0.3;
  FamilySpec outer;
  outer.name = FamilyName::composeInner;
  outer.phi = BlaschkeProduct(0.5, {{0.2, 0.1}});
  outer.operands = {inner};
  expect_round_trip(outer);
  const GammaMap direct = build(outer);
  const GammaMap parsed = map_from_json(json(outer));
  EXPECT_EQ(json(direct).dump(), json(parsed).dump());
}

TEST(Json, FamilyDefaultsFromMinimalInput) {
  const GammaMap h = map_from_json(json::parse(R"({"family":"hJ","j":2})"));
  EXPECT_EQ(json(h).dump(), json(h_j(2)).dump());
  EXPECT_THROW(map_from_json(json::parse(R"({"family":"nope"})")), PreconditionError);
}

TEST(Json, ExplicitMapMustBeGammaInner) {
  const json ok = json::parse(R"({"s":{"num":[[0,0],[2,0]]},"p":{"num":[[0,0],[0,0],[1,0]]}})");
  EXPECT_NO_THROW(map_from_json(ok));
  const json bad = json::parse(R"({"s":{"num":[[3,0]]},"p":{"num":[[0,0],[1,0]]}})");
  EXPECT_THROW(map_from_json(bad), PreconditionError);
}

TEST(Json, ReportsRoundTrip) {
  const GammaData d = sample_data(h_nu(1, 0.5), kThree);
  CnuConfig cfg = light();
  const CnuReport extremal = check_cnu(d, 1, cfg);
  ASSERT_TRUE(extremal.witness_m.has_value());
  expect_round_trip(extremal);
  expect_round_trip(check_cnu(d, 0, cfg));
  expect_round_trip(pencil_certificate(BlaschkeProduct::power(1, -1.0), d));
  expect_round_trip(cfg);
  expect_round_trip(in_Enuk(h_j(1), 1, 6));
  expect_round_trip(classify(flat_geodesic(0.5), 1, 3));
  expect_round_trip(omega_scan(d, 64));
}

TEST(Json, CounterexampleRoundTrip) {
  const CounterexampleReport rep = generate_counterexample(1, 0.5);
  expect_round_trip(rep);
  const CounterexampleReport back = json(rep).get<CounterexampleReport>();
  EXPECT_TRUE(verify_counterexample(back));
}

TEST(Json, SuiteRoundTrip) {
  SuiteOptions o;
  o.id = "hnu";
  expect_round_trip(reproduce_examples(o));
}

TEST(Json, SearchLogOnlyWhenVerbose) {
  const CnuReport r = check_cnu(sample_data(h_nu(1, 0.5), kThree), 1, light());
  EXPECT_TRUE(cnu_report_json(r, true).contains("search_log"));
  EXPECT_FALSE(cnu_report_json(r, false).contains("search_log"));
}

TEST(Determinism, SameSeedSameBytes) {
  std::mt19937_64 rng(21);
  const GammaData d = sample_data(h_nu(2, 0.5), random_nodes(rng, 4, 0.6));
  CnuConfig cfg = light();
  cfg.seed = 42;
  EXPECT_EQ(json(check_cnu(d, 2, cfg)).dump(), json(check_cnu(d, 2, cfg)).dump());
  EXPECT_EQ(json(generate_counterexample(1, 0.5, std::nullopt, 3)).dump(),
            json(generate_counterexample(1, 0.5, std::nullopt, 3)).dump());
  EXPECT_EQ(json(reproduce_examples()).dump(), json(reproduce_examples()).dump());
}

TEST(RunConfig, DefaultsAndValidation) {
  const RunConfig c = json::parse("{}").get<RunConfig>();
  EXPECT_EQ(c.cnu.tol, 1e-6);
  EXPECT_FALSE(c.verbose);
  const RunConfig v = json::parse(R"({"tol":1e-8,"grid0":2048,"seed":7,"verbose":true})").get<RunConfig>();
  EXPECT_EQ(v.cnu.tol, 1e-8);
  EXPECT_EQ(v.cnu.strict_band, 1e-8);
  EXPECT_EQ(v.cnu.grid0, 2048);
  EXPECT_EQ(v.cnu.seed, 7u);
  EXPECT_TRUE(v.verbose);
  expect_round_trip(v);
  EXPECT_THROW(json::parse(R"({"tol":0})").get<RunConfig>(), PreconditionError);
  EXPECT_THROW(json::parse(R"({"tol":-1})").get<RunConfig>(), PreconditionError);
  EXPECT_THROW(json::parse(R"({"grid0":4})").get<RunConfig>(), PreconditionError);
  EXPECT_THROW(json::parse(R"({"seeds":3})").get<RunConfig>(), PreconditionError);
  EXPECT_THROW(json::parse(R"({"refinements":0})").get<RunConfig>(), PreconditionError);
}

TEST(Json, SpectralMatrixShape) {
  EXPECT_THROW(json::parse("[[[1,0],[0,0]]]").get<Matrix2c>(), PreconditionError);
  const Matrix2c w = json::parse("[[[0,0],[1,0]],[[-0.1,0],[0.3,0]]]").get<Matrix2c>();
  EXPECT_EQ(w(1, 0), cplx(-0.1));
}
