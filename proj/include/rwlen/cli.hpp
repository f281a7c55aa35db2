#ifndef RWLEN_CLI_HPP_
#define RWLEN_CLI_HPP_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "rwlen/enumerate.hpp"
#include "rwlen/parallel.hpp"

namespace rwlen::cli {

enum class Mode { sequential, parallel };
enum class Format { table, json };

// Exit codes: 0 = length found, 1 = usage error, 2 = resource/internal error,
// 3 = limit reached without a result.
inline constexpr int exit_found = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_resource = 2;
inline constexpr int exit_limit = 3;

struct RunConfig {
  std::string group_spec;  // alt:N | sym:N | cyclic:N | dihedral:N | q8 | file:PATH
  int limit = 10;
  Mode mode = Mode::sequential;
  int start_depth = 4;
  int workers = 0;  // 0 = hardware concurrency
  Format format = Format::table;
  std::string checkpoint_path;  // resumed from when the file already exists
  int verbosity = 1;            // 0 report, 1 per-length progress, 2 per-task
  std::string baseline_path;    // timing record to compute speedup against
  std::string timing_out_path;  // where to write this run's timing record
  std::string audit_path;       // parallel mode: stream records for audit
  std::optional<std::uint64_t> task_order_seed;
};

inline GroupTable build_group(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  auto param = [&]() -> int {
    if (colon == std::string::npos)
      throw std::invalid_argument("group spec '" + spec +
                                  "' needs a parameter, e.g. " + head + ":5");
    try {
      return std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad group parameter in '" + spec + "'");
    }
  };
  if (head == "alt") return builtin_group(GroupFamily::alternating, param());
  if (head == "sym") return builtin_group(GroupFamily::symmetric, param());
  if (head == "cyclic") return builtin_group(GroupFamily::cyclic, param());
  if (head == "dihedral") return builtin_group(GroupFamily::dihedral, param());
  if (spec == "q8") return builtin_group(GroupFamily::quaternion, 8);
  if (head == "file") {
    if (colon == std::string::npos)
      throw std::invalid_argument("file spec needs a path: file:PATH");
    return build_group_from_generators(
        read_generator_file(spec.substr(colon + 1)));
  }
  throw std::invalid_argument(
      "unknown group spec '" + spec +
      "' (expected alt:N, sym:N, cyclic:N, dihedral:N, q8, or file:PATH)");
}

namespace detail {

inline std::string format_hms(std::chrono::milliseconds ms) {
  auto s = std::chrono::duration_cast<std::chrono::seconds>(ms).count();
  std::ostringstream out;
  out << s / 3600 << "h " << (s % 3600) / 60 << "m " << s % 60 << "s";
  return out.str();
}

struct TimingRecord {
  int workers = 1;
  std::int64_t wall_ms = 0;
};

inline void write_timing(const std::string& path, const RunConfig& cfg,
                         int workers, std::chrono::milliseconds wall) {
  nlohmann::ordered_json j;
  j["group"] = cfg.group_spec;
  j["limit"] = cfg.limit;
  j["mode"] = cfg.mode == Mode::parallel ? "parallel" : "sequential";
  j["workers"] = workers;
  j["wall_ms"] = wall.count();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write timing file: " + path);
  out << j.dump(2) << "\n";
}

inline TimingRecord read_timing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open baseline file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return {j.value("workers", 1), j.at("wall_ms").get<std::int64_t>()};
}

}  // namespace detail

// Runs the configured search and writes the report to `out`; progress and
// diagnostics go to `diag`. Returns the process exit status.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    if (cfg.limit < 2) {
      diag << "error: --limit must be at least 2\n";
      return exit_usage;
    }
    if (cfg.limit > max_word_length) {
      diag << "error: --limit beyond the supported word length ("
           << max_word_length << ")\n";
      return exit_usage;
    }
    if (cfg.mode == Mode::parallel &&
        (cfg.start_depth < 2 || cfg.start_depth > cfg.limit)) {
      diag << "error: --start-depth must satisfy 2 <= start-depth <= limit\n";
      return exit_usage;
    }
    if (cfg.verbosity < 0 || cfg.verbosity > 2) {
      diag << "error: --verbosity must be 0, 1 or 2\n";
      return exit_usage;
    }

    GroupTable table;
    try {
      table = build_group(cfg.group_spec);
    } catch (const std::invalid_argument& e) {
      diag << "error: " << e.what() << "\n";
      return exit_usage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    AutSet auts = automorphism_set(table);
    PermutationCache cache(cfg.limit);

    EnumerationOptions eopt;
    eopt.checkpoint_path = cfg.checkpoint_path;
    CheckpointState resume_state;
    if (!cfg.checkpoint_path.empty() &&
        std::filesystem::exists(cfg.checkpoint_path)) {
      resume_state = read_checkpoint(cfg.checkpoint_path);
      eopt.resume = &resume_state;
      if (cfg.verbosity >= 1)
        diag << "Resuming from checkpoint at length "
             << resume_state.frontier_length << "\n";
    }
    if (cfg.verbosity >= 1) {
      eopt.on_length_start = [&diag](int n) {
        diag << "Started enumeration of NRW of length " << n << "\n";
      };
      eopt.on_length_done = [&diag](int n, std::uint64_t k) {
        diag << k << " NRW of length " << n << " constructed\n";
      };
    }

    int workers = cfg.workers;
    if (workers <= 0)
      workers = std::max(1u, std::thread::hardware_concurrency());

    LengthReport report;
    ParallelStats pstats;
    if (cfg.mode == Mode::sequential) {
      report = rewritability_length(table, auts, cache, cfg.limit, eopt);
    } else {
      ParallelOptions popt;
      popt.enumeration = eopt;
      popt.task_order_seed = cfg.task_order_seed;
      popt.audit_path = cfg.audit_path;
      if (cfg.verbosity >= 2) {
        popt.on_task_done = [&diag](std::size_t i, int w, const TaskResult& r) {
          std::uint64_t total = 0;
          for (auto c : r.counts) total += c;
          diag << "task " << i << " done on worker " << w << ": " << total
               << " NRW in subtree\n";
        };
      }
      report = rewritability_parallel(table, auts, cache, cfg.limit,
                                      cfg.start_depth, workers, popt, &pstats);
    }
    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);

    std::optional<detail::TimingRecord> baseline;
    if (!cfg.baseline_path.empty())
      baseline = detail::read_timing(cfg.baseline_path);
    if (!cfg.timing_out_path.empty())
      detail::write_timing(cfg.timing_out_path, cfg, workers, wall);

    if (cfg.format == Format::json) {
      nlohmann::ordered_json j;
      j["group"] = {{"spec", cfg.group_spec},
                    {"order", table.order},
                    {"aut_size", auts.size()},
                    {"fingerprint", table.fingerprint_hex()}};
      j["mode"] = cfg.mode == Mode::parallel ? "parallel" : "sequential";
      j["limit"] = cfg.limit;
      nlohmann::ordered_json counts = nlohmann::ordered_json::object();
      for (const auto& [len, cnt] : report.counts)
        counts[std::to_string(len)] = cnt;
      j["counts"] = std::move(counts);
      if (report.result)
        j["result"] = *report.result;
      else
        j["result"] = nullptr;
      j["limit_reached"] = !report.result.has_value();
      j["wall_ms"] = wall.count();
      if (cfg.mode == Mode::parallel) {
        nlohmann::ordered_json p;
        p["workers"] = workers;
        p["start_depth"] = cfg.start_depth;
        p["tasks"] = pstats.task_count;
        p["per_worker_tasks"] = pstats.tasks_per_worker;
        if (baseline) {
          const double speedup =
              wall.count() > 0 ? double(baseline->wall_ms) / double(wall.count())
                               : 0.0;
          p["baseline_wall_ms"] = baseline->wall_ms;
          p["speedup"] = speedup;
          p["efficiency"] = speedup / double(workers);
        }
        j["parallel"] = std::move(p);
      }
      out << j.dump(2) << "\n";
    } else {
      out << "group: " << cfg.group_spec << "\n";
      out << "order: " << table.order << "\n";
      out << "|Aut|: " << auts.size() << "\n";
      out << "fingerprint: " << table.fingerprint_hex() << "\n";
      if (cfg.mode == Mode::parallel) {
        out << "mode: parallel (" << workers << " workers, start depth "
            << cfg.start_depth << ", " << pstats.task_count << " tasks)\n";
      }
      out << "\n   r  N(r)\n";
      for (const auto& [len, cnt] : report.counts)
        out << std::setw(4) << len << "  " << cnt << "\n";
      out << "\n";
      if (report.result)
        out << "rewritability length: " << *report.result << "\n";
      else
        out << "no result up to length " << cfg.limit << " (limit reached)\n";
      out << "wall time: " << detail::format_hms(wall) << "\n";
      if (baseline && cfg.mode == Mode::parallel) {
        const double speedup =
            wall.count() > 0 ? double(baseline->wall_ms) / double(wall.count())
                             : 0.0;
        out << "speedup vs baseline (" << baseline->workers
            << " worker): " << std::fixed << std::setprecision(2) << speedup
            << " (efficiency " << speedup / double(workers) << ")\n";
      }
    }
    return report.result ? exit_found : exit_limit;
  } catch (const checkpoint_error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const resource_limit_error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return exit_resource;
  }
}

}  // namespace rwlen::cli

#endif  // RWLEN_CLI_HPP_
