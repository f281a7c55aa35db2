// Command-line front end: pick a group, run the sequential or parallel
// rewritability-length search, print a table or JSON report.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rwlen/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rewritability length of small finite groups"};
  rwlen::cli::RunConfig cfg;

  app.add_option("-g,--group", cfg.group_spec,
                 "group spec: alt:N, sym:N, cyclic:N, dihedral:N, q8, file:PATH")
      ->required();
  app.add_option("-l,--limit", cfg.limit,
                 "largest word length to search (default 10)");
  std::string mode = "seq";
  app.add_option("-m,--mode", mode, "seq or par")
      ->check(CLI::IsMember({"seq", "par"}));
  app.add_option("--start-depth", cfg.start_depth,
                 "parallel mode: word length at which tasks are farmed out");
  app.add_option("-w,--workers", cfg.workers,
                 "parallel mode: worker count (0 = all cores)");
  std::string format = "table";
  app.add_option("-f,--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_option("--checkpoint", cfg.checkpoint_path,
                 "checkpoint file; resumed from when it already exists");
  app.add_option("-v,--verbosity", cfg.verbosity,
                 "0 = report only, 1 = per-length progress, 2 = per-task");
  app.add_option("--baseline", cfg.baseline_path,
                 "timing record to compute speedup/efficiency against");
  app.add_option("--timing-out", cfg.timing_out_path,
                 "write this run's timing record (workers + wall time)");
  app.add_option("--audit", cfg.audit_path,
                 "parallel mode: stream all discovered records to this file");
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option(
      "--task-order-seed", seed,
      "shuffle parallel task order (determinism check; report is unchanged)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rwlen::cli::exit_usage;
  }

  cfg.mode = (mode == "par") ? rwlen::cli::Mode::parallel
                             : rwlen::cli::Mode::sequential;
  cfg.format = (format == "json") ? rwlen::cli::Format::json
                                  : rwlen::cli::Format::table;
  if (seed_opt->count() > 0) cfg.task_order_seed = seed;

  return rwlen::cli::run(cfg, std::cout, std::cerr);
}
