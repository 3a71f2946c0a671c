#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ufg/errors.hpp"
#include "ufg/version.hpp"

namespace {

using ufgdepth::RunConfig;

void add_input(CLI::App& cmd, RunConfig& c, bool required = true) {
  auto* opt = cmd.add_option("--input", c.input,
                             "Sample file (.txt or .json) or performance table (.csv)");
  if (required) opt->required();
  cmd.add_option("--orientations", c.orientations,
                 "Measure orientations (`measure: higher|lower` lines) for a .csv input");
  cmd.add_option("--measures", c.measures, "Comma-separated measure subset")->delimiter(',');
  cmd.add_option("--epsilon", c.epsilon,
                 "Treat differences up to this value as ties when building dominance posets");
}

void add_common(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--out-dir", c.out_dir, "Directory for reports")->capture_default_str();
  cmd.add_option("--threads", c.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

void add_family(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--cap", c.cap, "Override the cardinality cap on family sets")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--no-cache", c.no_cache, "Do not read or write the family cache");
}

void add_search(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--k", c.k, "Number of extremal posets to report")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--timeout-secs", c.timeout_secs, "Extremal search time limit")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Union-free generic depth for samples of partial orders"};
  app.set_version_flag("--version", std::string(ufg::kVersion));
  app.require_subcommand(1);
  RunConfig c;

  auto* ingest = app.add_subcommand("ingest", "Turn a performance table into a poset sample");
  add_input(*ingest, c);
  add_common(*ingest, c);

  auto* analyze = app.add_subcommand("analyze", "Depth, deepest posets, persistence, dispersion");
  add_input(*analyze, c);
  add_common(*analyze, c);
  add_family(*analyze, c);
  add_search(*analyze, c);
  analyze->add_option("--enum-limit", c.enum_limit, "Rank all posets up to this many items")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  analyze->add_option("--alpha", c.alpha, "Comma-separated dispersion levels")->delimiter(',');

  auto* compare = app.add_subcommand("compare", "Rank shift between two depth functions");
  add_input(*compare, c);
  add_common(*compare, c);
  add_family(*compare, c);
  compare->add_option("--input-b", c.input_b, "Second sample file");
  compare->add_option("--measures-b", c.measures_b, "Second measure subset")->delimiter(',');
  compare->add_option("--enum-limit", c.enum_limit, "Largest item count to rank")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();

  auto* davidson = app.add_subcommand("davidson", "Fit the Bradley-Terry model with ties");
  add_input(*davidson, c);
  add_common(*davidson, c);

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate the union-free generic family");
  add_input(*enumerate, c);
  add_common(*enumerate, c);
  add_family(*enumerate, c);

  auto* extremal = app.add_subcommand("extremal", "Exact k deepest or k shallowest posets");
  add_input(*extremal, c);
  add_common(*extremal, c);
  add_family(*extremal, c);
  add_search(*extremal, c);
  extremal->add_option("--direction", c.direction, "max or min")
      ->check(CLI::IsMember({"max", "min"}))
      ->capture_default_str();
  extremal->add_option("--lp-out", c.lp_out, "Also write the 0-1 program in LP format");

  auto* selfcheck = app.add_subcommand("selfcheck", "Randomized property suites");
  add_common(*selfcheck, c);
  selfcheck->add_option("--rounds", c.rounds, "Samples per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  selfcheck->add_flag("--inject-fault", c.inject_fault,
                      "Generate the family from prefix joins only (incomplete)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ufgdepth::kDataError;
  }

  try {
    if (*ingest) return ufgdepth::cmd_ingest(c);
    if (*analyze) return ufgdepth::cmd_analyze(c);
    if (*compare) return ufgdepth::cmd_compare(c);
    if (*davidson) return ufgdepth::cmd_davidson(c);
    if (*enumerate) return ufgdepth::cmd_enumerate(c);
    if (*extremal) return ufgdepth::cmd_extremal(c);
    if (*selfcheck) return ufgdepth::cmd_selfcheck(c);
  } catch (const ufg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ufgdepth::kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ufgdepth::kDataError;
  }
  return ufgdepth::kDataError;
}
