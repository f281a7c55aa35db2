#ifndef RWLEN_PARALLEL_HPP_
#define RWLEN_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rwlen/enumerate.hpp"

namespace rwlen {

// One unit of independent work: a frontier record whose whole extension
// subtree a worker explores to exhaustion.
struct TaskSpec {
  NRWRecord record;
  int max_length = 0;
};

// Per-length survivor tallies for one task's subtree. counts[i] is the number
// of non-rewritable representative words of length first_length + i.
struct TaskResult {
  int first_length = 0;
  std::vector<std::uint64_t> counts;
  bool operator==(const TaskResult&) const = default;
};

struct ParallelOptions {
  EnumerationOptions enumeration;
  // Shuffles task dispatch order; the report must not change. Exists to
  // demonstrate completion-order independence.
  std::optional<std::uint64_t> task_order_seed;
  // When set, every record discovered during the task phase is streamed to
  // this file (in task order) for audit runs; workers normally tally counts
  // only.
  std::string audit_path;
  std::function<void(std::size_t task_index, int worker, const TaskResult&)>
      on_task_done;
};

struct ParallelStats {
  std::size_t task_count = 0;
  std::vector<std::size_t> tasks_per_worker;
  std::chrono::milliseconds wall{0};
};

// Depth-first exhaustive extension of one record through max_length, tallying
// survivors per length. Touches no shared mutable state; audit_sink, when
// given, receives every discovered record.
inline TaskResult run_task(const GroupTable& g, const AutSet& auts,
                           const TaskSpec& task, const PermutationCache& cache,
                           const EnumerationOptions& opt = {},
                           std::vector<NRWRecord>* audit_sink = nullptr) {
  TaskResult res;
  res.first_length = task.record.length + 1;
  if (task.max_length < res.first_length) return res;
  res.counts.assign(std::size_t(task.max_length - res.first_length) + 1, 0);
  std::uint64_t total = 0;
  auto dfs = [&](auto&& self, const NRWRecord& rec) -> void {
    detail::extend_into(g, auts, rec, cache, opt, nullptr,
                        [&](NRWRecord child) {
      if (++total > opt.frontier_cap)
        throw resource_limit_error("task subtree cap (" +
                                   std::to_string(opt.frontier_cap) +
                                   ") exceeded");
      ++res.counts[child.length - res.first_length];
      if (audit_sink) audit_sink->push_back(child);
      if (child.length < task.max_length) self(self, child);
    });
  };
  dfs(dfs, task.record);
  return res;
}

// The parallel search: the frontier is built sequentially up to
// start_depth - 1, then each frontier record becomes one task farmed to a
// fixed pool of workers pulling from a shared queue. Per-length counts are
// summed over all tasks; the report is identical to the sequential engine's
// for every worker count and completion order, because the per-task counts
// are fixed and summation commutes.
inline LengthReport rewritability_parallel(
    const GroupTable& g, const AutSet& auts, const PermutationCache& cache,
    int limit, int start_depth, int workers,
    const ParallelOptions& options = {}, ParallelStats* stats = nullptr) {
  if (limit < 2) throw std::invalid_argument("limit must be at least 2");
  if (limit > cache.max_length())
    throw std::invalid_argument("limit exceeds the permutation cache bound");
  if (start_depth < 2 || start_depth > limit)
    throw std::invalid_argument("start depth must satisfy 2 <= start <= limit");
  if (workers < 1) throw std::invalid_argument("need at least one worker");
  if (options.enumeration.resume &&
      options.enumeration.resume->frontier_length >= limit)
    throw std::invalid_argument(
        "resume checkpoint is at or beyond the requested limit");

  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](detail::EngineState state,
                    std::size_t task_count) -> LengthReport {
    if (stats) {
      stats->task_count = task_count;
      if (stats->tasks_per_worker.empty())
        stats->tasks_per_worker.assign(std::size_t(workers), 0);
      stats->wall = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - t0);
    }
    return {std::move(state.counts), state.result};
  };

  // Sequential prefix; an early empty length ends the whole run here.
  detail::EngineState state =
      detail::run_lengths(g, auts, cache, detail::initial_state(g, auts, options.enumeration),
                          start_depth - 1, limit, options.enumeration);
  if (state.finished) return finish(std::move(state), 0);

  std::vector<TaskSpec> tasks;
  tasks.reserve(state.frontier.size());
  for (NRWRecord& rec : state.frontier)
    tasks.push_back(TaskSpec{std::move(rec), limit});
  state.frontier.clear();
  if (options.task_order_seed) {
    std::mt19937_64 rng(*options.task_order_seed);
    std::shuffle(tasks.begin(), tasks.end(), rng);
  }

  const bool audit = !options.audit_path.empty();
  std::vector<TaskResult> results(tasks.size());
  std::vector<std::vector<NRWRecord>> audit_records(audit ? tasks.size() : 0);
  std::vector<std::size_t> per_worker(std::size_t(workers), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::size_t failed_task = 0;
  std::mutex callback_mutex;

  {
    std::vector<std::jthread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (;;) {
          if (failed.load(std::memory_order_relaxed)) return;
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= tasks.size()) return;
          try {
            results[i] = run_task(g, auts, tasks[i], cache, options.enumeration,
                                  audit ? &audit_records[i] : nullptr);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
              failed_task = i;
            }
            failed.store(true, std::memory_order_relaxed);
            return;
          }
          ++per_worker[std::size_t(w)];
          if (options.on_task_done) {
            std::lock_guard lock(callback_mutex);
            options.on_task_done(i, w, results[i]);
          }
        }
      });
    }
  }

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw std::runtime_error("task " + std::to_string(failed_task) +
                               " failed: " + e.what());
    }
  }

  for (const TaskResult& r : results)
    for (std::size_t i = 0; i < r.counts.size(); ++i)
      state.counts[r.first_length + int(i)] += r.counts[i];

  // Resolve exactly as the sequential engine does: first empty length wins,
  // later (necessarily empty) lengths are not reported.
  for (auto it = state.counts.begin(); it != state.counts.end(); ++it) {
    if (it->second == 0) {
      state.result = it->first;
      state.counts.erase(std::next(it), state.counts.end());
      break;
    }
  }

  if (audit) {
    std::ofstream out(options.audit_path, std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write audit file: " +
                               options.audit_path);
    out << "rwlen-audit 1\n";
    out << "group " << g.fingerprint_hex() << "\n";
    for (const auto& task_records : audit_records)
      for (const NRWRecord& r : task_records)
        detail::write_record_line(out, r);
  }

  if (stats) stats->tasks_per_worker = std::move(per_worker);
  return finish(std::move(state), tasks.size());
}

inline LengthReport rewritability_parallel(const GroupTable& g, int limit,
                                           int start_depth, int workers) {
  if (limit < 2) throw std::invalid_argument("limit must be at least 2");
  AutSet auts = automorphism_set(g);
  PermutationCache cache(limit);
  return rewritability_parallel(g, auts, cache, limit, start_depth, workers);
}

}  // namespace rwlen

#endif  // RWLEN_PARALLEL_HPP_
