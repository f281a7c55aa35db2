#ifndef RWLEN_ENUMERATE_HPP_
#define RWLEN_ENUMERATE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rwlen/aut.hpp"
#include "rwlen/common.hpp"
#include "rwlen/group.hpp"
#include "rwlen/rewritable.hpp"

namespace rwlen {

// A non-rewritable word together with the pointwise stabilizer of its entries
// in Aut(G). Deep in the search almost every stabilizer is trivial, so the
// trivial subgroup is stored as an empty id list instead of materializing
// {identity} hundreds of thousands of times.
struct NRWRecord {
  std::array<element_t, max_word_length> word{};
  std::uint8_t length = 0;
  std::vector<std::uint32_t> stab;  // sorted AutSet positions; empty = trivial

  std::span<const element_t> entries() const { return {word.data(), length}; }
  std::size_t stab_size() const { return stab.empty() ? 1 : stab.size(); }
  bool operator==(const NRWRecord&) const = default;
};

// Per-length counts of non-rewritable representative words. result is the
// rewritability length when some length came up empty, or nullopt when the
// search hit its limit with survivors (the failure marker).
struct LengthReport {
  std::map<int, std::uint64_t> counts;  // keyed from length 2
  std::optional<int> result;
  bool operator==(const LengthReport&) const = default;
};

// Snapshot of a run after some completed length: the counts so far plus the
// surviving frontier, tagged with the group fingerprint.
struct CheckpointState {
  std::string fingerprint;
  std::map<int, std::uint64_t> counts;
  int frontier_length = 0;
  std::vector<NRWRecord> frontier;
};

struct ExtendStats {
  std::uint64_t candidates_examined = 0;
  std::uint64_t survivors = 0;
};

struct EnumerationOptions {
  RepChoice rep_choice = RepChoice::min_index;
  RewriteCheckMode check_mode = RewriteCheckMode::prefix_buffer;
  // Production mode appends candidates in place into a reusable scratch word
  // and intersects cached stabilizers incrementally; the off switches exist
  // solely for differential tests.
  bool reuse_scratch_word = true;
  bool cache_stabilizers = true;
  std::uint64_t frontier_cap = 10'000'000;
  std::string checkpoint_path;            // write after each completed length
  const CheckpointState* resume = nullptr;
  std::function<void(int)> on_length_start;
  std::function<void(int, std::uint64_t)> on_length_done;
  std::function<void(int, const std::vector<NRWRecord>&)> on_frontier;
};

namespace detail {

// Extends one record by every viable last entry and hands each non-rewritable
// child to the sink. Candidates are orbit representatives of the record's
// stabilizer when it is non-trivial, otherwise every non-identity element.
template <typename Sink>
void extend_into(const GroupTable& g, const AutSet& auts, const NRWRecord& rec,
                 const PermutationCache& cache, const EnumerationOptions& opt,
                 ExtendStats* stats, Sink&& sink) {
  const int n = rec.length + 1;
  std::array<element_t, max_word_length> scratch = rec.word;

  auto try_candidate = [&](element_t v) {
    if (stats) ++stats->candidates_examined;
    std::vector<element_t> fresh;  // concatenation mode (differential tests)
    std::span<const element_t> w;
    if (opt.reuse_scratch_word) {
      scratch[rec.length] = v;
      w = {scratch.data(), std::size_t(n)};
    } else {
      fresh.assign(rec.entries().begin(), rec.entries().end());
      fresh.push_back(v);
      w = fresh;
    }
    if (is_rewritable(g, w, cache, opt.check_mode)) return;
    if (stats) ++stats->survivors;

    NRWRecord child;
    child.length = std::uint8_t(n);
    std::copy(w.begin(), w.end(), child.word.begin());
    if (opt.cache_stabilizers) {
      if (!rec.stab.empty()) {
        for (std::uint32_t id : rec.stab)
          if (auts.image(id)[v] == v) child.stab.push_back(id);
        if (child.stab.size() <= 1) child.stab.clear();
      }
    } else {
      AutSubgroup s = pointwise_stabilizer(auts, w);
      if (s.size() > 1) child.stab = std::move(s.member_ids);
    }
    sink(std::move(child));
  };

  if (rec.stab.empty()) {
    for (int v = 1; v < g.order; ++v) try_candidate(element_t(v));
  } else {
    AutSubgroup sub{rec.stab};
    for (element_t v : orbit_representatives(auts, sub, g, opt.rep_choice))
      try_candidate(v);
  }
}

struct EngineState {
  std::map<int, std::uint64_t> counts;
  std::vector<NRWRecord> frontier;
  int frontier_length = 0;
  std::optional<int> result;
  bool finished = false;  // result found or limit reached
};

// <length> <entry,entry,...> <stab-position,...|T>
inline void write_record_line(std::ostream& out, const NRWRecord& r) {
  out << int(r.length) << ' ';
  for (int i = 0; i < r.length; ++i) {
    if (i) out << ',';
    out << r.word[i];
  }
  out << ' ';
  if (r.stab.empty()) {
    out << 'T';
  } else {
    for (std::size_t i = 0; i < r.stab.size(); ++i) {
      if (i) out << ',';
      out << r.stab[i];
    }
  }
  out << '\n';
}

}  // namespace detail

// One length-1 record per Aut(G)-orbit of non-identity elements, paired with
// its stabilizer. Length-1 words are never rewritable (S_1 is trivial).
inline std::vector<NRWRecord> seed_records(const GroupTable& g,
                                           const AutSet& auts,
                                           RepChoice choice = RepChoice::min_index) {
  AutSubgroup full = full_subgroup(auts);
  std::vector<NRWRecord> seeds;
  for (element_t rep : orbit_representatives(auts, full, g, choice)) {
    NRWRecord r;
    r.length = 1;
    r.word[0] = rep;
    AutSubgroup s = stabilizer(auts, full, rep);
    if (s.size() > 1) r.stab = std::move(s.member_ids);
    seeds.push_back(std::move(r));
  }
  return seeds;
}

inline std::vector<NRWRecord> extend_record(const GroupTable& g,
                                            const AutSet& auts,
                                            const NRWRecord& rec,
                                            const PermutationCache& cache,
                                            const EnumerationOptions& opt = {},
                                            ExtendStats* stats = nullptr) {
  std::vector<NRWRecord> out;
  detail::extend_into(g, auts, rec, cache, opt, stats,
                      [&out](NRWRecord child) { out.push_back(std::move(child)); });
  return out;
}

inline void write_checkpoint(const std::string& path,
                             const std::string& fingerprint,
                             const std::map<int, std::uint64_t>& counts,
                             int frontier_length,
                             std::span<const NRWRecord> frontier);
inline CheckpointState read_checkpoint(const std::string& path);

namespace detail {

// Drives the per-length loop from the given state until a length comes up
// empty, the limit is reached, or every length up to build_to is constructed.
inline EngineState run_lengths(const GroupTable& g, const AutSet& auts,
                               const PermutationCache& cache, EngineState state,
                               int build_to, int limit,
                               const EnumerationOptions& opt) {
  std::vector<NRWRecord> next;
  while (!state.finished && state.frontier_length < build_to) {
    const int n = state.frontier_length + 1;
    if (opt.on_length_start) opt.on_length_start(n);
    next.clear();
    for (const NRWRecord& rec : state.frontier) {
      extend_into(g, auts, rec, cache, opt, nullptr, [&](NRWRecord child) {
        if (next.size() >= opt.frontier_cap)
          throw resource_limit_error("frontier size cap (" +
                                     std::to_string(opt.frontier_cap) +
                                     ") exceeded at length " +
                                     std::to_string(n));
        next.push_back(std::move(child));
      });
    }
    state.counts[n] = next.size();
    if (opt.on_length_done) opt.on_length_done(n, next.size());
    if (opt.on_frontier) opt.on_frontier(n, next);
    state.frontier.swap(next);
    state.frontier_length = n;
    if (state.frontier.empty()) {
      state.result = n;
      state.finished = true;
    } else if (n == limit) {
      state.finished = true;  // survivors at the limit: fail
    } else if (!opt.checkpoint_path.empty()) {
      write_checkpoint(opt.checkpoint_path, g.fingerprint_hex(), state.counts,
                       state.frontier_length, state.frontier);
    }
  }
  return state;
}

inline EngineState initial_state(const GroupTable& g, const AutSet& auts,
                                 const EnumerationOptions& opt) {
  EngineState state;
  if (opt.resume) {
    if (opt.resume->fingerprint != g.fingerprint_hex())
      throw checkpoint_error(
          "checkpoint fingerprint does not match the current group");
    for (const NRWRecord& r : opt.resume->frontier) {
      for (element_t e : r.entries())
        if (e == 0 || e >= g.order)
          throw checkpoint_error("checkpoint entry index out of range");
      for (std::uint32_t id : r.stab)
        if (id >= auts.size())
          throw checkpoint_error("checkpoint stabilizer position out of range");
    }
    state.counts = opt.resume->counts;
    state.frontier = opt.resume->frontier;
    state.frontier_length = opt.resume->frontier_length;
  } else {
    state.frontier = seed_records(g, auts, opt.rep_choice);
    state.frontier_length = 1;
  }
  return state;
}

}  // namespace detail

// The iterative search: extend orbit representatives of non-rewritable words
// length by length until some length has none (that length is the result) or
// the limit is reached with survivors (failure).
inline LengthReport rewritability_length(const GroupTable& g,
                                         const AutSet& auts,
                                         const PermutationCache& cache,
                                         int limit,
                                         const EnumerationOptions& opt = {}) {
  if (limit < 2) throw std::invalid_argument("limit must be at least 2");
  if (limit > cache.max_length())
    throw std::invalid_argument("limit exceeds the permutation cache bound");
  if (opt.resume && opt.resume->frontier_length >= limit)
    throw std::invalid_argument(
        "resume checkpoint is at or beyond the requested limit");
  detail::EngineState state = detail::run_lengths(
      g, auts, cache, detail::initial_state(g, auts, opt), limit, limit, opt);
  return {std::move(state.counts), state.result};
}

inline LengthReport rewritability_length(const GroupTable& g, int limit) {
  if (limit < 2) throw std::invalid_argument("limit must be at least 2");
  AutSet auts = automorphism_set(g);
  PermutationCache cache(limit);
  return rewritability_length(g, auts, cache, limit, {});
}

// Independent oracle: the exact number of non-rewritable words of the given
// length over ALL tuples of non-identity elements, with no symmetry
// reduction. Desk-scale groups only; (order-1)^length is checked against the
// work cap before any enumeration starts.
inline std::uint64_t brute_force_count(const GroupTable& g, int length,
                                       const PermutationCache& cache,
                                       std::uint64_t work_cap = 10'000'000) {
  if (length < 1) throw std::invalid_argument("length must be positive");
  std::uint64_t tuples = 1;
  for (int i = 0; i < length; ++i) {
    tuples *= std::uint64_t(g.order - 1);
    if (tuples > work_cap)
      throw resource_limit_error("oracle work bound exceeded: (order-1)^" +
                                 std::to_string(length) + " > " +
                                 std::to_string(work_cap));
  }
  if (length == 1) return std::uint64_t(g.order - 1);  // S_1 has no witness

  std::vector<element_t> w(length, 1);
  std::uint64_t count = 0;
  while (true) {
    if (!is_rewritable(g, w, cache)) ++count;
    int pos = length - 1;
    while (pos >= 0 && w[pos] == g.order - 1) w[pos--] = 1;
    if (pos < 0) break;
    ++w[pos];
  }
  return count;
}

// Checkpoint layout: keyword header lines, then one record per line as
//   <length> <entry,entry,...> <stab-position,...|T>
// where T marks the trivial stabilizer.
inline void write_checkpoint(const std::string& path,
                             const std::string& fingerprint,
                             const std::map<int, std::uint64_t>& counts,
                             int frontier_length,
                             std::span<const NRWRecord> frontier) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
    out << "rwlen-checkpoint 1\n";
    out << "group " << fingerprint << "\n";
    for (const auto& [len, cnt] : counts)
      out << "count " << len << ' ' << cnt << "\n";
    out << "frontier " << frontier_length << ' ' << frontier.size() << "\n";
    for (const NRWRecord& r : frontier) detail::write_record_line(out, r);
  }
  std::filesystem::rename(tmp, path);
}

inline void write_checkpoint(const std::string& path,
                             const CheckpointState& state) {
  write_checkpoint(path, state.fingerprint, state.counts,
                   state.frontier_length, state.frontier);
}

namespace detail {

inline std::vector<std::uint64_t> split_numbers(const std::string& field,
                                                const std::string& context) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(field);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw checkpoint_error("malformed checkpoint field: " + context);
    }
  }
  if (out.empty()) throw checkpoint_error("empty checkpoint field: " + context);
  return out;
}

}  // namespace detail

inline CheckpointState read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw checkpoint_error("cannot open checkpoint: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "rwlen-checkpoint 1")
    throw checkpoint_error("not a checkpoint file: " + path);
  CheckpointState state;
  std::size_t expected_records = 0;
  bool have_frontier = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!have_frontier) {
      std::string key;
      ls >> key;
      if (key == "group") {
        ls >> state.fingerprint;
      } else if (key == "count") {
        int len;
        std::uint64_t cnt;
        if (!(ls >> len >> cnt))
          throw checkpoint_error("malformed count line: " + line);
        state.counts[len] = cnt;
      } else if (key == "frontier") {
        if (!(ls >> state.frontier_length >> expected_records))
          throw checkpoint_error("malformed frontier line: " + line);
        state.frontier.reserve(expected_records);
        have_frontier = true;
      } else {
        throw checkpoint_error("unknown checkpoint line: " + line);
      }
      continue;
    }
    int len;
    std::string entries_field, stab_field;
    if (!(ls >> len >> entries_field >> stab_field))
      throw checkpoint_error("malformed record line: " + line);
    if (len != state.frontier_length || len < 1 || len > max_word_length)
      throw checkpoint_error("record length mismatch: " + line);
    NRWRecord r;
    r.length = std::uint8_t(len);
    auto entries = detail::split_numbers(entries_field, line);
    if (int(entries.size()) != len)
      throw checkpoint_error("record entry count mismatch: " + line);
    for (int i = 0; i < len; ++i) {
      if (entries[i] > std::numeric_limits<element_t>::max())
        throw checkpoint_error("entry index out of range: " + line);
      r.word[i] = element_t(entries[i]);
    }
    if (stab_field != "T") {
      for (std::uint64_t id : detail::split_numbers(stab_field, line)) {
        if (id > std::numeric_limits<std::uint32_t>::max())
          throw checkpoint_error("stabilizer position out of range: " + line);
        r.stab.push_back(std::uint32_t(id));
      }
      if (r.stab.size() <= 1) r.stab.clear();
    }
    state.frontier.push_back(std::move(r));
  }
  if (!have_frontier || state.frontier.empty() ||
      state.frontier.size() != expected_records)
    throw checkpoint_error("incomplete checkpoint: " + path);
  if (state.fingerprint.empty())
    throw checkpoint_error("checkpoint missing group fingerprint: " + path);
  return state;
}

}  // namespace rwlen

#endif  // RWLEN_ENUMERATE_HPP_
