// crn: command-line front end for network analysis, stationary laws,
// simulation, copy enumeration and balance checks.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using crn::cli::json;

void add_global(CLI::App* sub, crn::cli::GlobalOptions& g, double& rel, double& abs) {
  sub->add_option("--tol", rel, "relative tolerance")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol-abs", abs, "absolute tolerance floor")->check(CLI::NonNegativeNumber);
  sub->add_option("--json-out", g.json_out, "write the JSON report to a file instead of stdout");
  sub->add_flag("--quiet", g.quiet, "suppress the report on stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reaction network analysis tool"};
  app.set_version_flag("--version", crn::cli::kToolVersion);
  app.require_subcommand(1);

  crn::cli::GlobalOptions g;
  double rel = 1e-9, abs = 1e-10;

  crn::cli::AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "structural invariants and deficiency");
  analyze->add_option("file", an.file, "network file")->required();
  analyze->add_flag("--auxiliary", an.auxiliary, "also analyze the auxiliary network");
  add_global(analyze, g, rel, abs);

  crn::cli::StationaryOptions st;
  auto* stationary = app.add_subcommand("stationary", "stationary law of a finite truncation");
  stationary->add_option("file", st.file, "network file")->required();
  auto* box_opt = stationary->add_option("--box", st.box, "truncate to {0..N}^n")->check(CLI::NonNegativeNumber);
  stationary->add_option("--states", st.states_file, "CSV of states (header row, one state per row)")
      ->excludes(box_opt);
  stationary->add_flag("--solve-all-classes", st.solve_all, "solve every closed class");
  stationary->add_option("--chain", st.chain, "truncation or copies")
      ->check(CLI::IsMember({"truncation", "copies"}));
  stationary->add_option("--boundary", st.boundary, "strict or reflect")->check(CLI::IsMember({"strict", "reflect"}));
  stationary->add_option("--csv-out", st.csv_out, "write pi as CSV");
  add_global(stationary, g, rel, abs);

  crn::cli::SimulateOptions si;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Gillespie simulation with occupancy statistics");
  simulate->add_option("file", si.file, "network file")->required();
  simulate->add_option("--x0", si.x0, "initial state, comma separated")->required();
  simulate->add_option("--t-end", si.t_end, "time horizon")->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "RNG seed (generated and recorded when omitted)");
  simulate->add_option("--burn-in", si.burn_in, "fraction of [0, t_end] discarded");
  simulate->add_option("--batches", si.batches, "number of batches for error estimates")->check(CLI::PositiveNumber);
  simulate->add_option("--hist-out", si.hist_out, "write the occupancy histogram as CSV");
  add_global(simulate, g, rel, abs);

  crn::cli::CopiesOptions co;
  auto* copies = app.add_subcommand("copies", "enumerate copies of the network in a box");
  copies->add_option("file", co.file, "network file")->required();
  copies->add_option("--box", co.box, "images restricted to {0..N}^n")->required()->check(CLI::NonNegativeNumber);
  copies->add_flag("--injective-only", co.injective_only, "only injective copies");
  copies->add_option("--measure", co.measure, "product[:c=..], table:FILE or stationary:N");
  copies->add_option("--csv-out", co.csv_out, "write copies as CSV");
  copies->add_option("--limit", co.limit, "maximum copies listed in the report");
  add_global(copies, g, rel, abs);

  crn::cli::VerifyOptions ve;
  auto* verify = app.add_subcommand("verify", "check the copy/balance equivalences on a box");
  verify->add_option("file", ve.file, "network file")->required();
  verify->add_option("--theorem", ve.theorem, "any, single, translations or cube")
      ->required()
      ->check(CLI::IsMember({"any", "single", "translations", "cube"}));
  verify->add_option("--measure", ve.measure, "product[:c=..], table:FILE or stationary:N");
  verify->add_option("--c", ve.c, "product-form parameter, comma separated");
  verify->add_option("--box", ve.box, "enumeration box")->check(CLI::NonNegativeNumber);
  verify->add_option("--m1", ve.m1, "cube side for the cube check")->check(CLI::NonNegativeNumber);
  verify->add_flag("--full", ve.full, "check the full translate grid instead of the probe grid");
  verify->add_flag("--probe-grid", "probe grid (default)");
  verify->add_option("--side", ve.side, "grid side for --full (default 2d+2)");
  verify->add_option("--offsets", ve.offsets, "copy offsets, one comma list per linkage class separated by ';'");
  add_global(verify, g, rel, abs);

  crn::cli::CheckOptions ch;
  auto* check = app.add_subcommand("check", "stationarity and complex balance of a measure on a box");
  check->add_option("file", ch.file, "network file")->required();
  check->add_option("--measure", ch.measure, "product[:c=..], table:FILE or stationary:N")->required();
  check->add_option("--box", ch.box, "domain {0..N}^n")->check(CLI::NonNegativeNumber);
  check->add_option("--what", ch.what, "stationary, complex-balance or both")
      ->check(CLI::IsMember({"stationary", "complex-balance", "both"}));
  add_global(check, g, rel, abs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  g.tol = crn::Tolerance{abs, rel};
  if (*seed_opt) si.seed = seed;

  json report;
  int status = 0;
  try {
    if (*analyze) status = crn::cli::cmd_analyze(an, g, report);
    else if (*stationary) status = crn::cli::cmd_stationary(st, g, report);
    else if (*simulate) status = crn::cli::cmd_simulate(si, g, report);
    else if (*copies) status = crn::cli::cmd_copies(co, g, report);
    else if (*verify) status = crn::cli::cmd_verify(ve, g, report);
    else if (*check) status = crn::cli::cmd_check(ch, g, report);
  } catch (const std::exception& e) {
    std::cerr << "crn: " << e.what() << "\n";
    return 1;
  }
  report["exit_code"] = status;
  const std::string text = report.dump(2) + "\n";
  if (!g.json_out.empty()) {
    try {
      crn::cli::write_file(g.json_out, text);
    } catch (const std::exception& e) {
      std::cerr << "crn: " << e.what() << "\n";
      return 1;
    }
  }
  if (!g.quiet && g.json_out.empty()) std::cout << text;
  if (status == 2 && !g.quiet) std::cerr << "crn: one or more checks failed\n";
  return status;
}
