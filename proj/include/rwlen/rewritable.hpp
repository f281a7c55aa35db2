#ifndef RWLEN_REWRITABLE_HPP_
#define RWLEN_REWRITABLE_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "rwlen/common.hpp"
#include "rwlen/group.hpp"

namespace rwlen {

// All n!-1 non-identity permutations of {0..n-1} for every length up to
// max_length, materialized once and immutable thereafter. Entries are stored
// flat (n bytes per permutation) in lexicographic order, together with the
// length of the prefix each permutation shares with its predecessor, which
// lets the rewritability check reuse prefix products between neighbours.
class PermutationCache {
 public:
  enum class IterationOrder { lex, reverse_lex };  // reverse only for tests

  explicit PermutationCache(int max_length,
                            IterationOrder order = IterationOrder::lex)
      : max_length_(max_length) {
    if (max_length < 1 || max_length > rwlen::max_word_length)
      throw std::invalid_argument("permutation cache length outside [1, " +
                                  std::to_string(rwlen::max_word_length) +
                                  "]");
    for (int n = 2; n <= max_length; ++n) build(n, order);
  }

  int max_length() const { return max_length_; }

  // n! - 1
  std::size_t count(int n) const {
    check_length(n);
    if (n == 1) return 0;
    return counts_[n];
  }

  const std::uint8_t* perm_data(int n) const {
    check_length(n);
    return perms_[n].data();
  }

  const std::uint8_t* shared_prefix_data(int n) const {
    check_length(n);
    return shared_[n].data();
  }

  std::span<const std::uint8_t> permutation(int n, std::size_t k) const {
    check_length(n);
    return {perms_[n].data() + k * std::size_t(n), std::size_t(n)};
  }

 private:
  void check_length(int n) const {
    if (n < 1 || n > max_length_)
      throw std::invalid_argument("word length " + std::to_string(n) +
                                  " outside supported bound [1, " +
                                  std::to_string(max_length_) + "]");
  }

  void build(int n, IterationOrder order) {
    std::size_t total = 1;
    for (int k = 2; k <= n; ++k) total *= std::size_t(k);
    counts_[n] = total - 1;
    auto& flat = perms_[n];
    flat.reserve(counts_[n] * std::size_t(n));
    std::vector<std::uint8_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::uint8_t(0));
    while (std::next_permutation(idx.begin(), idx.end()))
      flat.insert(flat.end(), idx.begin(), idx.end());
    if (order == IterationOrder::reverse_lex) {
      std::vector<std::uint8_t> rev;
      rev.reserve(flat.size());
      for (std::size_t k = counts_[n]; k-- > 0;)
        rev.insert(rev.end(), flat.begin() + k * n, flat.begin() + (k + 1) * n);
      flat = std::move(rev);
    }
    auto& shared = shared_[n];
    shared.assign(counts_[n], 0);
    for (std::size_t k = 1; k < counts_[n]; ++k) {
      const std::uint8_t* prev = flat.data() + (k - 1) * n;
      const std::uint8_t* cur = flat.data() + k * n;
      std::uint8_t common = 0;
      while (common < n && prev[common] == cur[common]) ++common;
      shared[k] = common;
    }
  }

  int max_length_;
  std::array<std::vector<std::uint8_t>, rwlen::max_word_length + 1> perms_{};
  std::array<std::vector<std::uint8_t>, rwlen::max_word_length + 1> shared_{};
  std::array<std::size_t, rwlen::max_word_length + 1> counts_{};
};

// Read-only view of the cached permutations of one length, in cache order.
struct PermutationView {
  const std::uint8_t* data;
  int n;
  std::size_t size;
  std::span<const std::uint8_t> operator[](std::size_t k) const {
    return {data + k * std::size_t(n), std::size_t(n)};
  }
};

inline PermutationView permutations_of(const PermutationCache& cache, int n) {
  return {cache.perm_data(n), n, cache.count(n)};
}

enum class RewriteCheckMode {
  prefix_buffer,  // reuse shared prefix products between adjacent permutations
  plain,          // recompute every product from scratch (differential tests)
};

// True iff some non-identity permutation of the word's entries has the same
// product as the word itself. Returns on the first witnessing permutation in
// cache order. Uses only stack scratch, so concurrent calls are safe.
inline bool is_rewritable(const GroupTable& g, std::span<const element_t> word,
                          const PermutationCache& cache,
                          RewriteCheckMode mode = RewriteCheckMode::prefix_buffer) {
  const int n = int(word.size());
  if (n < 2 || n > cache.max_length())
    throw std::invalid_argument("word length " + std::to_string(n) +
                                " outside supported bound [2, " +
                                std::to_string(cache.max_length()) + "]");
  const element_t* mult = g.mult.data();
  const std::size_t stride = std::size_t(g.order);
  element_t target = 0;
  for (element_t e : word) target = mult[target * stride + e];

  const std::uint8_t* perm = cache.perm_data(n);
  const std::size_t total = cache.count(n);
  if (mode == RewriteCheckMode::plain) {
    for (std::size_t k = 0; k < total; ++k, perm += n) {
      element_t acc = 0;
      for (int i = 0; i < n; ++i) acc = mult[acc * stride + word[perm[i]]];
      if (acc == target) return true;
    }
    return false;
  }

  const std::uint8_t* shared = cache.shared_prefix_data(n);
  element_t prefix[rwlen::max_word_length + 1];
  prefix[0] = 0;
  for (std::size_t k = 0; k < total; ++k, perm += n) {
    for (int i = shared[k]; i < n; ++i)
      prefix[i + 1] = mult[prefix[i] * stride + word[perm[i]]];
    if (prefix[n] == target) return true;
  }
  return false;
}

}  // namespace rwlen

#endif  // RWLEN_REWRITABLE_HPP_
