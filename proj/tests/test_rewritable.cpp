#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rwlen/aut.hpp"
#include "rwlen/group.hpp"
#include "rwlen/rewritable.hpp"

using namespace rwlen;

namespace {

element_t index_of_label(const GroupTable& g, const std::string& label) {
  auto it = std::find(g.labels.begin(), g.labels.end(), label);
  REQUIRE(it != g.labels.end());
  return element_t(it - g.labels.begin());
}

// every tuple over [0, order) of the given length
template <typename Fn>
void for_all_words(const GroupTable& g, int length, Fn&& fn) {
  std::vector<element_t> w(length, 0);
  while (true) {
    fn(std::span<const element_t>(w));
    int pos = length - 1;
    while (pos >= 0 && w[pos] == g.order - 1) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
}

}  // namespace

TEST_CASE("permutation cache counts and order") {
  PermutationCache cache(8);
  CHECK(cache.count(1) == 0);
  CHECK(cache.count(2) == 1);
  CHECK(cache.count(3) == 5);
  CHECK(cache.count(8) == 40319);

  auto perms = permutations_of(cache, 3);
  REQUIRE(perms.size == 5);
  CHECK(std::vector<std::uint8_t>(perms[0].begin(), perms[0].end()) ==
        std::vector<std::uint8_t>{0, 2, 1});
  CHECK(std::vector<std::uint8_t>(perms[4].begin(), perms[4].end()) ==
        std::vector<std::uint8_t>{2, 1, 0});
  // none is the identity
  for (std::size_t k = 0; k < perms.size; ++k) {
    bool ident = true;
    for (int i = 0; i < 3; ++i) ident = ident && perms[k][i] == i;
    CHECK(!ident);
  }

  CHECK_THROWS_AS(PermutationCache(0), std::invalid_argument);
  CHECK_THROWS_AS(PermutationCache(max_word_length + 1), std::invalid_argument);
  CHECK_THROWS_AS(cache.count(9), std::invalid_argument);
}

TEST_CASE("basic rewritability verdicts") {
  PermutationCache cache(6);

  GroupTable c7 = builtin_group(GroupFamily::cyclic, 7);
  element_t commuting[] = {1, 2};
  CHECK(is_rewritable(c7, commuting, cache));

  GroupTable a5 = builtin_group(GroupFamily::alternating, 5);
  element_t x = index_of_label(a5, "(1,2,3)");
  element_t y = index_of_label(a5, "(3,4,5)");
  element_t pair[] = {x, y};
  CHECK(!is_rewritable(a5, pair, cache));
  CHECK(a5.product(x, y) != a5.product(y, x));

  // words containing the identity are always rewritable
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, a5.order - 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<element_t> w(2 + trial % 4);
    for (auto& e : w) e = element_t(pick(rng));
    w[trial % w.size()] = 0;
    CHECK(is_rewritable(a5, w, cache));
  }

  element_t one[] = {1};
  CHECK_THROWS_AS(is_rewritable(a5, one, cache), std::invalid_argument);
  std::vector<element_t> seven(7, 1);
  CHECK_THROWS_AS(is_rewritable(a5, seven, cache), std::invalid_argument);
}

TEST_CASE("agreement with the definition-level oracle") {
  PermutationCache cache(6);
  PermutationCache reversed(6, PermutationCache::IterationOrder::reverse_lex);

  GroupTable s3 = builtin_group(GroupFamily::symmetric, 3);
  for (int length = 2; length <= 4; ++length) {
    for_all_words(s3, length, [&](std::span<const element_t> w) {
      const bool expected = oracle::naive_is_rewritable(s3, w);
      CHECK(is_rewritable(s3, w, cache) == expected);
      CHECK(is_rewritable(s3, w, cache, RewriteCheckMode::plain) == expected);
      CHECK(is_rewritable(s3, w, reversed) == expected);
    });
  }

  GroupTable a5 = builtin_group(GroupFamily::alternating, 5);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(1, a5.order - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<element_t> w(2 + trial % 4);
    for (auto& e : w) e = element_t(pick(rng));
    const bool expected = oracle::naive_is_rewritable(a5, w);
    CHECK(is_rewritable(a5, w, cache) == expected);
    CHECK(is_rewritable(a5, w, cache, RewriteCheckMode::plain) == expected);
    CHECK(is_rewritable(a5, w, reversed) == expected);
  }
}

TEST_CASE("prefix monotonicity") {
  PermutationCache cache(5);

  GroupTable s3 = builtin_group(GroupFamily::symmetric, 3);
  for (int length = 3; length <= 4; ++length) {
    for_all_words(s3, length, [&](std::span<const element_t> w) {
      if (is_rewritable(s3, w.first(w.size() - 1), cache))
        CHECK(is_rewritable(s3, w, cache));
    });
  }

  GroupTable a5 = builtin_group(GroupFamily::alternating, 5);
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> pick(1, a5.order - 1);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<element_t> w(3 + trial % 3);
    for (auto& e : w) e = element_t(pick(rng));
    if (is_rewritable(a5, std::span<const element_t>(w).first(w.size() - 1),
                      cache))
      CHECK(is_rewritable(a5, w, cache));
  }
}

TEST_CASE("automorphisms preserve rewritability") {
  PermutationCache cache(5);

  GroupTable s3 = builtin_group(GroupFamily::symmetric, 3);
  AutSet s3_auts = automorphism_set(s3);
  for (int length = 2; length <= 3; ++length) {
    for_all_words(s3, length, [&](std::span<const element_t> w) {
      const bool base = is_rewritable(s3, w, cache);
      for (const Automorphism& phi : s3_auts.members) {
        std::vector<element_t> mapped(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) mapped[i] = phi.image[w[i]];
        CHECK(is_rewritable(s3, mapped, cache) == base);
      }
    });
  }

  GroupTable a5 = builtin_group(GroupFamily::alternating, 5);
  AutSet a5_auts = automorphism_set(a5);
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> pick(1, a5.order - 1);
  std::uniform_int_distribution<std::size_t> pick_aut(0, a5_auts.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<element_t> w(2 + trial % 4);
    for (auto& e : w) e = element_t(pick(rng));
    const bool base = is_rewritable(a5, w, cache);
    const Automorphism& phi = a5_auts.members[pick_aut(rng)];
    std::vector<element_t> mapped(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) mapped[i] = phi.image[w[i]];
    CHECK(is_rewritable(a5, mapped, cache) == base);
  }
}
