#ifndef RWLEN_AUT_HPP_
#define RWLEN_AUT_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rwlen/common.hpp"
#include "rwlen/group.hpp"

namespace rwlen {

// A group automorphism as an explicit index permutation: image[a] = phi(a).
struct Automorphism {
  std::vector<element_t> image;
  bool operator==(const Automorphism&) const = default;
  auto operator<=>(const Automorphism&) const = default;
};

// The fully enumerated automorphism group, members sorted lexicographically
// by image sequence. The identity automorphism always sorts first (any other
// member must move some index upward at its first non-fixed point), so
// member position 0 is the identity. Immutable after construction.
struct AutSet {
  std::vector<Automorphism> members;

  std::size_t size() const { return members.size(); }

  const std::vector<element_t>& image(std::uint32_t id) const {
    return members[id].image;
  }

  std::optional<std::uint32_t> position_of(const Automorphism& a) const {
    auto it = std::lower_bound(members.begin(), members.end(), a);
    if (it == members.end() || !(*it == a)) return std::nullopt;
    return std::uint32_t(it - members.begin());
  }
};

// A subgroup of an AutSet, stored as sorted member positions. Always contains
// position 0 (the identity).
struct AutSubgroup {
  std::vector<std::uint32_t> member_ids;

  std::size_t size() const { return member_ids.size(); }
  bool is_trivial() const { return member_ids.size() <= 1; }
  bool operator==(const AutSubgroup&) const = default;
};

inline AutSubgroup full_subgroup(const AutSet& auts) {
  AutSubgroup s;
  s.member_ids.resize(auts.size());
  for (std::uint32_t i = 0; i < auts.size(); ++i) s.member_ids[i] = i;
  return s;
}

struct AutSearchOptions {
  std::size_t count_cap = 1'000'000;
};

namespace detail {

// Smallest-first greedy generating set read off the table: scan indices
// ascending, keep every element outside the closure so far.
inline std::vector<element_t> greedy_generating_set(const GroupTable& g) {
  std::vector<bool> closed(g.order, false);
  closed[0] = true;
  int closed_count = 1;
  std::vector<element_t> gens;
  std::vector<element_t> queue;
  auto close_over = [&](element_t a) {
    queue.clear();
    if (!closed[a]) {
      closed[a] = true;
      ++closed_count;
      queue.push_back(a);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      element_t x = queue[head];
      for (int b = 0; b < g.order; ++b) {
        if (!closed[b]) continue;
        for (element_t p : {g.product(x, element_t(b)),
                            g.product(element_t(b), x)}) {
          if (!closed[p]) {
            closed[p] = true;
            ++closed_count;
            queue.push_back(p);
          }
        }
      }
    }
  };
  for (int a = 1; a < g.order && closed_count < g.order; ++a) {
    if (closed[a]) continue;
    gens.push_back(element_t(a));
    close_over(element_t(a));
  }
  if (gens.empty()) gens.push_back(0);  // trivial group
  return gens;
}

// Partial map with unit propagation: assigning one image derives images of
// all products of already-mapped elements and fails fast on any
// multiplicative inconsistency or injectivity violation.
struct PartialAut {
  const GroupTable& g;
  std::vector<int> img;     // -1 = unknown
  std::vector<int> pre;     // -1 = no preimage yet
  std::vector<element_t> mapped;  // assignment order, for rollback

  explicit PartialAut(const GroupTable& group)
      : g(group), img(group.order, -1), pre(group.order, -1) {
    assign(0, 0);
  }

  std::size_t mark() const { return mapped.size(); }

  void rollback(std::size_t mark) {
    while (mapped.size() > mark) {
      element_t x = mapped.back();
      mapped.pop_back();
      pre[img[x]] = -1;
      img[x] = -1;
    }
  }

  bool assign(element_t a, element_t fa) {
    std::vector<std::pair<element_t, element_t>> work{{a, fa}};
    while (!work.empty()) {
      auto [x, fx] = work.back();
      work.pop_back();
      if (img[x] != -1) {
        if (img[x] != fx) return false;
        continue;
      }
      if (pre[fx] != -1) return false;
      img[x] = fx;
      pre[fx] = x;
      mapped.push_back(x);
      for (element_t y : mapped) {
        element_t fy = element_t(img[y]);
        work.emplace_back(g.product(x, y), g.product(fx, fy));
        work.emplace_back(g.product(y, x), g.product(fy, fx));
      }
    }
    return true;
  }

  bool complete() const { return mapped.size() == std::size_t(g.order); }
};

}  // namespace detail

// Every automorphism of the group, found by backtracking over images of a
// greedy generating set. Candidate images are restricted to elements of equal
// order; partial maps are extended by closure and rejected on the first
// multiplicative inconsistency. Result is canonically sorted.
inline AutSet automorphism_set(const GroupTable& g,
                               const AutSearchOptions& options = {}) {
  std::vector<element_t> gens = detail::greedy_generating_set(g);
  std::vector<std::vector<element_t>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int a = 0; a < g.order; ++a)
      if (g.element_orders[a] == g.element_orders[gens[i]])
        candidates[i].push_back(element_t(a));

  AutSet out;
  detail::PartialAut map(g);
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) {
      if (!map.complete())
        throw std::logic_error("generating set failed to span the group");
      if (out.members.size() >= options.count_cap)
        throw resource_limit_error(
            "automorphism count exceeds cap (" +
            std::to_string(options.count_cap) + "); unsupported scale");
      Automorphism a;
      a.image.resize(g.order);
      for (int x = 0; x < g.order; ++x) a.image[x] = element_t(map.img[x]);
      out.members.push_back(std::move(a));
      return;
    }
    for (element_t c : candidates[i]) {
      std::size_t m = map.mark();
      if (map.assign(gens[i], c)) self(self, i + 1);
      map.rollback(m);
    }
  };
  search(search, 0);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

// The conjugation maps x -> g^-1 x g, one per group element, deduplicated.
inline AutSet inner_automorphisms(const GroupTable& g) {
  std::vector<Automorphism> maps;
  maps.reserve(g.order);
  for (int c = 0; c < g.order; ++c) {
    Automorphism a;
    a.image.resize(g.order);
    element_t ci = g.inverse[c];
    for (int x = 0; x < g.order; ++x)
      a.image[x] = g.product(g.product(ci, element_t(x)), element_t(c));
    maps.push_back(std::move(a));
  }
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  return AutSet{std::move(maps)};
}

enum class RepChoice { min_index, max_index };

// One representative per orbit of non-identity elements under the subgroup's
// action. A subgroup's orbit of a is exactly {phi(a) : phi in subgroup}, so a
// single pass over the members suffices. Output sorted ascending.
inline std::vector<element_t> orbit_representatives(
    const AutSet& auts, const AutSubgroup& sub, const GroupTable& g,
    RepChoice choice) {
  std::vector<bool> visited(g.order, false);
  std::vector<element_t> reps;
  for (int a = 1; a < g.order; ++a) {
    if (visited[a]) continue;
    element_t rep = element_t(a);
    for (std::uint32_t id : sub.member_ids) {
      element_t b = auts.image(id)[a];
      visited[b] = true;
      if (choice == RepChoice::max_index) rep = std::max(rep, b);
    }
    reps.push_back(rep);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

inline std::vector<element_t> nontrivial_orbit_representatives(
    const AutSet& auts, const AutSubgroup& sub, const GroupTable& g) {
  return orbit_representatives(auts, sub, g, RepChoice::min_index);
}

// The subgroup {phi in sub : phi(fixed) = fixed}, by filtering.
inline AutSubgroup stabilizer(const AutSet& auts, const AutSubgroup& sub,
                              element_t fixed) {
  AutSubgroup out;
  for (std::uint32_t id : sub.member_ids)
    if (auts.image(id)[fixed] == fixed) out.member_ids.push_back(id);
  return out;
}

// Iterated intersection of per-entry stabilizers, stopping the moment the
// running intersection collapses to the identity. entries_visited, when
// given, reports how many word entries the loop actually consumed.
inline AutSubgroup pointwise_stabilizer(const AutSet& auts,
                                        std::span<const element_t> word,
                                        int* entries_visited = nullptr) {
  AutSubgroup run = full_subgroup(auts);
  int visited = 0;
  for (element_t e : word) {
    run = stabilizer(auts, run, e);
    ++visited;
    if (run.size() <= 1) break;
  }
  if (entries_visited) *entries_visited = visited;
  return run;
}

}  // namespace rwlen

#endif  // RWLEN_AUT_HPP_
