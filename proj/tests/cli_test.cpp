#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
  json parsed() const { return json::parse(out); }
};

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

// stdout only; stderr is discarded.
Invocation run(const std::string& args) {
  const std::string cmd = std::string(GAMMA_INTERP_BIN) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gamma_interp_cli_" + name)).string();
}

}  // namespace

TEST(Cli, CheckPointInline) {
  const Invocation r = run(R"(gamma check-point '{"s":[2,0],"p":[1,0]}')");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed()["kind"], "distinguishedBoundary");
  EXPECT_EQ(run("gamma check-point " + sample("point_open.json")).parsed()["kind"], "openG");
}

TEST(Cli, PreconditionExitCodes) {
  EXPECT_EQ(run(R"(gamma check-point '{"s":[2,0')").code, 2);
  EXPECT_EQ(run(R"(gamma check-point '{"s":"two","p":[1,0]}')").code, 2);
  EXPECT_EQ(run("gamma check-point /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("gamma check-point --bogus " + sample("point_open.json")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("counterexample --nu 1 --r 1.5").code, 2);
  const Invocation err = run("counterexample --nu 1 --r 1.5");
  EXPECT_EQ(err.parsed()["error"], "precondition");
}

TEST(Cli, NpSolve) {
  const Invocation ex = run("np solve " + sample("np_extremal.json"));
  ASSERT_EQ(ex.code, 0);
  EXPECT_EQ(ex.parsed()["status"]["kind"], "extremallySolvable");
  EXPECT_EQ(ex.parsed()["solution"]["zeros"].size(), 2u);
  const Invocation st = run("np solve " + sample("np_strict.json"));
  ASSERT_EQ(st.code, 0);
  EXPECT_EQ(st.parsed()["status"]["kind"], "strictlySolvable");
  EXPECT_FALSE(st.parsed().contains("solution"));
}

TEST(Cli, ClassifyMap) {
  const Invocation r = run("gamma classify-map --nu-max 1 --k-max 3 " + sample("map_flat_geodesic.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed()["geodesic"], true);
  EXPECT_EQ(r.parsed()["superficial"], false);
  const Invocation royal = run("gamma classify-map --nu-max 1 --k-max 3 " + sample("map_royal_explicit.json"));
  ASSERT_EQ(royal.code, 0);
  EXPECT_EQ(royal.parsed()["geodesic"], true);
}

TEST(Cli, CnuCheckExtremalWithConfig) {
  const Invocation r = run("--config " + sample("config_quick.json") + " cnu check --nu 1 " + sample("h1_three_points.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed()["status"], "holdsExtremally");
  EXPECT_FALSE(r.parsed().contains("search_log"));
  const Invocation v = run("--verbose cnu check --nu 0 " + sample("h1_three_points.json"));
  ASSERT_EQ(v.code, 0);
  EXPECT_TRUE(v.parsed().contains("search_log"));
}

TEST(Cli, BadConfigRejected) {
  EXPECT_EQ(run(R"(--config '{"tol":0}' cnu check --nu 1 )" + sample("h1_three_points.json")).code, 2);
  EXPECT_EQ(run(R"(--config '{"grid0":2}' cnu check --nu 1 )" + sample("h1_three_points.json")).code, 2);
}

TEST(Cli, InconclusiveExitCode) {
  // one Nelder-Mead iteration cannot converge near an extremal sup
  const std::string cfg = R"('{"grid0":16,"angles1":4,"disc1":2,"starts1":1,"seeds":10,"refinements":1,"nm_iterations":1}')";
  const Invocation r = run("--config " + cfg + " cnu check --nu 1 " + sample("h1_three_points.json"));
  if (r.parsed()["status"] == "inconclusive") {
    EXPECT_EQ(r.code, 3);
  } else {
    EXPECT_EQ(r.code, 0);
  }
}

TEST(Cli, CounterexampleThenCnuCheckFails) {
  const std::string out = temp_path("cx.json");
  const Invocation cx = run("counterexample --nu 1 --r 0.5 --seed 0 --out " + out);
  ASSERT_EQ(cx.code, 0);
  EXPECT_EQ(json::parse(cx.out), json::parse(run("counterexample --nu 1 --r 0.5 --seed 0").out));
  const Invocation check = run("cnu check --nu 1 " + out);
  ASSERT_EQ(check.code, 0);
  EXPECT_EQ(check.parsed()["status"], "fails");
  EXPECT_LT(check.parsed()["violation"]["eigenvalue"].get<double>(), 0.0);
  const Invocation lower = run("cnu check --nu 0 " + out);
  EXPECT_NE(lower.parsed()["status"], "fails");
  const Invocation spec = run("spectral screen --nu 1 " + out);
  ASSERT_EQ(spec.code, 0);
  EXPECT_EQ(spec.parsed()["status"], "fails");
  std::filesystem::remove(out);
}

TEST(Cli, CounterexampleCustomNodes) {
  const Invocation r = run("counterexample --nu 1 --r 0.5 --nodes " + sample("nodes_nu1.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed()["perturbed"]["nodes"].size(), 3u);
  EXPECT_EQ(run(R"(counterexample --nu 1 --nodes '[[0.1,0],[0.2,0]]')").code, 2);
}

TEST(Cli, SpectralScreen) {
  const Invocation r = run("spectral screen " + sample("spectral_h1.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed()["nu"], 1);
  EXPECT_EQ(r.parsed()["status"], "holdsExtremally");
  EXPECT_EQ(run(R"(spectral screen '{"nodes":[[0.1,0]],"matrices":[[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]}')").code, 2);
}

TEST(Cli, ExamplesReproduce) {
  const Invocation one = run("examples reproduce --id exdm3");
  ASSERT_EQ(one.code, 0);
  ASSERT_EQ(one.parsed()["results"].size(), 1u);
  EXPECT_EQ(one.parsed()["results"][0]["id"], "exdm3");
  const Invocation filtered = run("examples reproduce --filter hnu");
  ASSERT_EQ(filtered.code, 0);
  EXPECT_EQ(filtered.parsed()["results"].size(), 1u);
  const Invocation tight = run("examples reproduce --tol 1e-18");
  EXPECT_EQ(tight.code, 1);
  EXPECT_EQ(tight.parsed()["pass"], false);
  EXPECT_EQ(run("examples reproduce --id nothing").code, 2);
}

TEST(Cli, ByteIdenticalReports) {
  const std::string args = "cnu check --nu 1 --seed 9 " + sample("h1_three_points.json");
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run("examples reproduce").out, run("examples reproduce").out);
}
