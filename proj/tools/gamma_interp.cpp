// gamma_interp: JSON-in, JSON-out front end.
// Exit codes: 0 success, 1 numerical failure or failing example suite,
// 2 precondition error (bad input, unknown flag), 3 inconclusive search.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "gammainterp/io.hpp"

namespace gi = gammainterp;
using gi::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitInconclusive = 3;

// Inline JSON when the argument starts with '{' or '[', "-" for stdin, otherwise a file path.
json read_input(const std::string& arg) {
  std::string text;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(arg);
    if (!in) throw gi::PreconditionError("cannot open input file: " + arg);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw gi::PreconditionError(std::string("malformed JSON: ") + e.what());
  }
}

// Gamma data straight, or the perturbed data of a counterexample report.
gi::GammaData read_gamma_data(const json& j) {
  if (j.contains("perturbed")) return j.at("perturbed").get<gi::GammaData>();
  auto d = j.get<gi::GammaData>();
  gi::validate(d);
  return d;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Options {
  std::string config_path;
  bool verbose = false;
  std::string input;
  int nu = -1;
  int nu_max = 2;
  int k_max = 4;
  double r = 0.5;
  std::string nodes;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string example_id;
  std::string filter;
  double tol = 0.0;
};

gi::RunConfig load_config(const Options& o) {
  gi::RunConfig cfg;
  if (!o.config_path.empty()) cfg = read_input(o.config_path).get<gi::RunConfig>();
  if (o.verbose) cfg.verbose = true;
  if (o.seed_given) cfg.cnu.seed = o.seed;
  gi::validate(cfg);
  return cfg;
}

int cnu_exit(const gi::CnuReport& r) {
  return r.status == gi::CnuStatus::inconclusive ? kExitInconclusive : kExitOk;
}

int run_check_point(const Options& o) {
  emit(gi::membership(read_input(o.input).get<gi::GammaPoint>()));
  return kExitOk;
}

int run_classify_map(const Options& o) {
  const gi::GammaMap h = gi::map_from_json(read_input(o.input));
  const gi::EClassReport rep = gi::classify(h, o.nu_max, o.k_max);
  emit(rep);
  for (const auto& m : rep.memberships)
    if (!m.exact) return kExitInconclusive;
  return kExitOk;
}

int run_np_solve(const Options& o) {
  const auto d = read_input(o.input).get<gi::NPData>();
  gi::validate(d);
  const gi::NPStatus st = gi::np_status(d);
  json out = {{"status", st}};
  if (st.kind == gi::NPKind::extremallySolvable) out["solution"] = gi::solve_extremal(d);
  emit(out);
  return kExitOk;
}

int run_cnu_check(const Options& o) {
  const gi::RunConfig cfg = load_config(o);
  const gi::CnuReport rep = gi::check_cnu(read_gamma_data(read_input(o.input)), o.nu, cfg.cnu);
  emit(gi::cnu_report_json(rep, cfg.verbose));
  return cnu_exit(rep);
}

int run_counterexample(const Options& o) {
  const gi::RunConfig cfg = load_config(o);
  gi::CounterexampleConfig cc;
  cc.cnu = cfg.cnu;
  std::optional<std::vector<gi::cplx>> nodes;
  if (!o.nodes.empty()) nodes = read_input(o.nodes).get<std::vector<gi::cplx>>();
  const auto rep = gi::generate_counterexample(o.nu, o.r, nodes, cfg.cnu.seed, cc);
  const json j = rep;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw gi::PreconditionError("cannot write " + o.out);
    f << j.dump(2) << '\n';
  }
  emit(j);
  return kExitOk;
}

int run_spectral_screen(const Options& o) {
  const gi::RunConfig cfg = load_config(o);
  const json in = read_input(o.input);
  const gi::SpectralNPProblem prob =
      in.contains("perturbed") ? gi::companion_problem(read_gamma_data(in)) : in.get<gi::SpectralNPProblem>();
  std::optional<int> nu;
  if (o.nu >= 0) nu = o.nu;
  const gi::CnuReport rep = gi::screen(prob, nu, cfg.cnu);
  emit(gi::cnu_report_json(rep, cfg.verbose));
  return cnu_exit(rep);
}

int run_examples(const Options& o) {
  const gi::RunConfig cfg = load_config(o);
  gi::SuiteOptions so;
  if (!o.example_id.empty()) so.id = o.example_id;
  if (!o.filter.empty()) so.filter = o.filter;
  if (o.tol != 0.0) so.tol = o.tol;
  so.seed = cfg.cnu.seed;
  const gi::SuiteReport rep = gi::reproduce_examples(so);
  emit(rep);
  for (const auto& r : rep.results) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.subject << '\n';
    for (const auto& a : r.assertions)
      if (!a.pass) std::cerr << "    " << a.what << ": observed " << a.observed << ", threshold " << a.threshold << '\n';
    for (const auto& e : r.errors) std::cerr << "    " << e << '\n';
  }
  return rep.pass ? kExitOk : kExitFailure;
}

int fail(int code, const char* kind, const std::string& msg) {
  emit({{"error", kind}, {"message", msg}});
  std::cerr << "gamma_interp: " << msg << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma interpolation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_path, "RunConfig JSON (file or inline)");
  app.add_flag("--verbose", o.verbose, "include search logs in reports");

  auto input = [&](CLI::App* sub) { sub->add_option("input", o.input, "JSON literal, file path, or - for stdin")->required(); };
  auto seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed")->each([&](const std::string&) { o.seed_given = true; });
  };

  std::function<int()> action;

  auto* gamma = app.add_subcommand("gamma", "points and maps into Gamma");
  gamma->require_subcommand(1);
  auto* check_point = gamma->add_subcommand("check-point", "classify a point (s, p)");
  input(check_point);
  check_point->callback([&] { action = [&] { return run_check_point(o); }; });
  auto* classify_map = gamma->add_subcommand("classify-map", "E-class table of a rational Gamma-inner map");
  input(classify_map);
  classify_map->add_option("--nu-max", o.nu_max, "largest nu")->check(CLI::Range(0, 6));
  classify_map->add_option("--k-max", o.k_max, "largest k")->check(CLI::Range(2, 12));
  classify_map->callback([&] { action = [&] { return run_classify_map(o); }; });

  auto* np = app.add_subcommand("np", "classical Nevanlinna-Pick");
  np->require_subcommand(1);
  auto* np_solve = np->add_subcommand("solve", "solvability status and extremal solution");
  input(np_solve);
  np_solve->callback([&] { action = [&] { return run_np_solve(o); }; });

  auto* cnu = app.add_subcommand("cnu", "condition C_nu");
  cnu->require_subcommand(1);
  auto* cnu_check = cnu->add_subcommand("check", "decide C_nu for Gamma data");
  input(cnu_check);
  cnu_check->add_option("--nu", o.nu, "level")->required()->check(CLI::Range(0, 8));
  seed(cnu_check);
  cnu_check->callback([&] { action = [&] { return run_cnu_check(o); }; });

  auto* cx = app.add_subcommand("counterexample", "data satisfying C_{nu-1} but not C_nu");
  cx->add_option("--nu", o.nu, "level")->required()->check(CLI::Range(1, 6));
  cx->add_option("--r", o.r, "h_nu parameter in (0, 1)");
  cx->add_option("--nodes", o.nodes, "nu + 2 nodes as a JSON array or file");
  cx->add_option("--out", o.out, "also write the report here");
  seed(cx);
  cx->callback([&] { action = [&] { return run_counterexample(o); }; });

  auto* spectral = app.add_subcommand("spectral", "2x2 spectral Nevanlinna-Pick");
  spectral->require_subcommand(1);
  auto* spectral_screen = spectral->add_subcommand("screen", "screen a spectral problem with C_nu");
  input(spectral_screen);
  spectral_screen->add_option("--nu", o.nu, "level (default n - 2)")->check(CLI::Range(0, 8));
  seed(spectral_screen);
  spectral_screen->callback([&] { action = [&] { return run_spectral_screen(o); }; });

  auto* examples = app.add_subcommand("examples", "worked examples");
  examples->require_subcommand(1);
  auto* reproduce = examples->add_subcommand("reproduce", "run the reproduction suite");
  reproduce->add_option("--id", o.example_id, "run one example");
  reproduce->add_option("--filter", o.filter, "run examples whose id contains this");
  reproduce->add_option("--tol", o.tol, "override every tolerance")->check(CLI::PositiveNumber);
  seed(reproduce);
  reproduce->callback([&] { action = [&] { return run_examples(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitPrecondition, "usage", e.what());
  }

  try {
    return action();
  } catch (const gi::PreconditionError& e) {
    return fail(kExitPrecondition, "precondition", e.what());
  } catch (const json::exception& e) {
    return fail(kExitPrecondition, "schema", e.what());
  } catch (const gi::Error& e) {
    return fail(kExitFailure, "numerical", e.what());
  }
}
