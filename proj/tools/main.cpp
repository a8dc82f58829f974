#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

#include "cmaj/error.hpp"
#include "cmaj/parallel.hpp"

namespace {

using cmaj::cli::Format;
using cmaj::cli::Options;

void common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "increment law, e.g. gaussian, cauchy, rademacher, bernoulli:1/3");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--threads", o.threads, "worker threads for Monte Carlo loops")->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}},
                                          CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concave majorants of random walks: samplers, exact laws and checks"};
  app.require_subcommand(1);
  Options o;
  std::string out_path;
  app.add_option("--out", out_path, "write output to this file instead of stdout");

  auto* sim = app.add_subcommand("simulate", "sample walks and summarise their majorants");
  common_flags(sim, o);
  sim->add_option("--n", o.n, "fixed walk length");
  sim->add_option("--q", o.q, "geometric length parameter in (0, 1)");
  sim->add_option("--samples", o.samples, "number of walks");
  sim->add_option("--out", out_path, "output file");

  auto* poi = app.add_subcommand("poisson", "sample the face point process at geometric length");
  common_flags(poi, o);
  poi->add_option("--q", o.q, "geometric length parameter in (0, 1)")->required();
  poi->add_option("--samples", o.samples, "number of draws");
  poi->add_option("--out", out_path, "output file");

  auto* gf = app.add_subcommand("gf", "exact generating-function coefficients of H, K and F");
  common_flags(gf, o);
  gf->add_option("--order-s", o.order_s, "highest power of s (walk length)");
  gf->add_option("--order-t", o.order_t, "highest power of t (count)");
  gf->add_option("--out", out_path, "output file");

  auto* tr = app.add_subcommand("transform", "apply a path transformation");
  common_flags(tr, o);
  tr->add_option("--n", o.n, "walk length when sampling the input");
  tr->add_option("--increments", o.increments, "explicit comma-separated increments (rationals allowed)");
  tr->add_option("--kind", o.kind, "theorem1 or 3214");
  tr->add_option("--u", o.u, "U in [1, n] for the 3214 transform");
  tr->add_option("--out", out_path, "output file");

  auto* ver = app.add_subcommand("verify", "run acceptance criteria and emit a report");
  common_flags(ver, o);
  ver->add_option("suite", o.suite, "all, fast, or a criterion name");
  ver->add_flag("--timing", o.timing, "include wall time in the report");
  ver->add_option("--out", out_path, "output file");

  auto* exp = app.add_subcommand("experiment", "exploratory Monte Carlo runs");
  common_flags(exp, o);
  exp->add_option("name", o.experiment, "experiment name (stable-index)");
  exp->add_option("--alpha", o.alphas, "comma-separated stability indices");
  exp->add_option("--samples", o.samples, "samples per grid point");
  exp->add_option("--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);
  cmaj::set_worker_count(o.threads);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << '\n';
      return 2;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  try {
    if (sim->parsed()) return cmaj::cli::cmd_simulate(o, out);
    if (poi->parsed()) return cmaj::cli::cmd_poisson(o, out);
    if (gf->parsed()) return cmaj::cli::cmd_gf(o, out);
    if (tr->parsed()) return cmaj::cli::cmd_transform(o, out);
    if (ver->parsed()) return cmaj::cli::cmd_verify(o, out);
    if (exp->parsed()) return cmaj::cli::cmd_experiment(o, out);
  } catch (const cmaj::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
