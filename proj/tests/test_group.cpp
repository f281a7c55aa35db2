#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "rwlen/group.hpp"
#include "rwlen/perm.hpp"

using namespace rwlen;

namespace {

// identity law, inverse law, Latin square, associativity, element orders
void check_group_axioms(const GroupTable& g) {
  REQUIRE(g.order >= 1);
  for (int a = 0; a < g.order; ++a) {
    CHECK(g.product(0, element_t(a)) == a);
    CHECK(g.product(element_t(a), 0) == a);
    CHECK(g.product(element_t(a), g.inverse[a]) == 0);
    CHECK(g.product(g.inverse[a], element_t(a)) == 0);
  }
  for (int a = 0; a < g.order; ++a) {
    std::vector<bool> row(g.order, false), col(g.order, false);
    for (int b = 0; b < g.order; ++b) {
      row[g.product(element_t(a), element_t(b))] = true;
      col[g.product(element_t(b), element_t(a))] = true;
    }
    CHECK(std::count(row.begin(), row.end(), true) == g.order);
    CHECK(std::count(col.begin(), col.end(), true) == g.order);
  }
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      for (int c = 0; c < g.order; ++c)
        REQUIRE(g.product(g.product(element_t(a), element_t(b)), element_t(c)) ==
                g.product(element_t(a), g.product(element_t(b), element_t(c))));
  for (int a = 0; a < g.order; ++a) {
    element_t acc = 0;
    int k = 0;
    do {
      acc = g.product(acc, element_t(a));
      ++k;
    } while (acc != 0);
    CHECK(g.element_orders[a] == k);
  }
}

}  // namespace

TEST_CASE("cycle notation parses and formats") {
  PointPerm p = parse_cycles("(1,2,3)(4,5)");
  CHECK(p == PointPerm{1, 2, 0, 4, 3});
  CHECK(format_cycles(p) == "(1,2,3)(4,5)");
  CHECK(parse_cycles("()") == PointPerm{0});
  CHECK(format_cycles(identity_perm(4)) == "()");
  CHECK(parse_cycles(" ( 2 , 1 ) ") == PointPerm{1, 0});
  CHECK(parse_cycles("(1,2)", 5) == PointPerm{1, 0, 2, 3, 4});

  CHECK_THROWS_AS(parse_cycles("(1,2,1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(3)"), std::invalid_argument);
}

TEST_CASE("point permutation algebra") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    PointPerm p = identity_perm(6), q = identity_perm(6);
    std::shuffle(p.begin(), p.end(), rng);
    std::shuffle(q.begin(), q.end(), rng);
    CHECK(compose(p, inverted(p)) == identity_perm(6));
    CHECK(compose(inverted(p), p) == identity_perm(6));
    // left-to-right application: (p*q)(x) = q(p(x))
    for (int x = 0; x < 6; ++x) CHECK(compose(p, q)[x] == q[p[x]]);
    CHECK(parse_cycles(format_cycles(p), 6) == p);
  }
}

TEST_CASE("closure of two 3-cycles sharing a point is A5") {
  GroupTable g = build_group_from_generators(
      {parse_cycles("(1,2,3)", 5), parse_cycles("(3,4,5)", 5)});
  CHECK(g.order == 60);
  CHECK(g.labels[0] == "()");
}

TEST_CASE("closure edge cases") {
  GroupTable trivial = build_group_from_generators({identity_perm(3)});
  CHECK(trivial.order == 1);
  CHECK(trivial.labels == std::vector<std::string>{"()"});

  GroupTable c2 = build_group_from_generators({parse_cycles("(1,2)")});
  CHECK(c2.order == 2);
  CHECK(c2.element_orders == std::vector<int>{1, 2});

  CHECK_THROWS_AS(build_group_from_generators({}), std::invalid_argument);
  CHECK_THROWS_AS(build_group_from_generators(
                      {parse_cycles("(1,2)"), parse_cycles("(1,2,3)")}),
                  std::invalid_argument);  // mismatched degrees
  CHECK_THROWS_AS(build_group_from_generators({PointPerm{0, 0, 1}}),
                  std::invalid_argument);  // not a bijection

  GroupBuildOptions cap;
  cap.order_cap = 50;
  CHECK_THROWS_AS(builtin_group(GroupFamily::cyclic, 100, cap),
                  resource_limit_error);
}

TEST_CASE("builtin family orders match closed forms") {
  const int alt_orders[] = {1, 1, 3, 12, 60, 360};
  for (int n = 1; n <= 6; ++n)
    CHECK(builtin_group(GroupFamily::alternating, n).order == alt_orders[n - 1]);
  int fact = 1;
  for (int n = 1; n <= 5; ++n) {
    fact *= n;
    CHECK(builtin_group(GroupFamily::symmetric, n).order == fact);
  }
  for (int n = 1; n <= 12; ++n)
    CHECK(builtin_group(GroupFamily::cyclic, n).order == n);
  for (int n = 3; n <= 8; ++n)
    CHECK(builtin_group(GroupFamily::dihedral, n).order == 2 * n);
  CHECK(builtin_group(GroupFamily::quaternion, 8).order == 8);

  CHECK_THROWS_AS(builtin_group(GroupFamily::alternating, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(builtin_group(GroupFamily::dihedral, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(builtin_group(GroupFamily::quaternion, 16),
                  std::invalid_argument);
}

TEST_CASE("cyclic groups are abelian") {
  GroupTable g = builtin_group(GroupFamily::cyclic, 7);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      CHECK(g.product(element_t(a), element_t(b)) ==
            g.product(element_t(b), element_t(a)));
}

TEST_CASE("quaternion group has exactly one involution") {
  GroupTable q8 = builtin_group(GroupFamily::quaternion, 8);
  CHECK(std::count(q8.element_orders.begin(), q8.element_orders.end(), 2) == 1);
  CHECK(std::count(q8.element_orders.begin(), q8.element_orders.end(), 4) == 6);
}

TEST_CASE("group axioms hold on every constructed table") {
  check_group_axioms(builtin_group(GroupFamily::symmetric, 3));
  check_group_axioms(builtin_group(GroupFamily::dihedral, 4));
  check_group_axioms(builtin_group(GroupFamily::quaternion, 8));
  check_group_axioms(builtin_group(GroupFamily::cyclic, 7));
  check_group_axioms(build_group_from_generators(
      {parse_cycles("(1,2)(3,4)"), parse_cycles("(1,3)(2,4)")}));
  check_group_axioms(builtin_group(GroupFamily::alternating, 5));
}

TEST_CASE("closure is deterministic") {
  GroupTable a = builtin_group(GroupFamily::alternating, 5);
  GroupTable b = builtin_group(GroupFamily::alternating, 5);
  CHECK(a.mult == b.mult);
  CHECK(a.labels == b.labels);
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint_hex().size() == 16);
}

TEST_CASE("fingerprints separate different groups") {
  // C6 and S3 share the order; D4 and Q8 share order and nearly everything
  CHECK(builtin_group(GroupFamily::cyclic, 6).fingerprint() !=
        builtin_group(GroupFamily::symmetric, 3).fingerprint());
  CHECK(builtin_group(GroupFamily::dihedral, 4).fingerprint() !=
        builtin_group(GroupFamily::quaternion, 8).fingerprint());
}

TEST_CASE("labels are consistent with the table") {
  GroupTable g = builtin_group(GroupFamily::alternating, 4);
  std::vector<PointPerm> perms;
  for (const auto& label : g.labels) perms.push_back(parse_cycles(label, 4));
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      CHECK(perms[g.product(element_t(a), element_t(b))] ==
            compose(perms[a], perms[b]));
}

TEST_CASE("word products") {
  GroupTable g = builtin_group(GroupFamily::alternating, 5);
  CHECK(word_product(g, {}) == 0);
  for (int a = 0; a < g.order; ++a) {
    element_t w[] = {element_t(a), g.inverse[a]};
    CHECK(word_product(g, w) == 0);
  }
  // a 3-cycle cubed is the identity
  auto it = std::find(g.element_orders.begin(), g.element_orders.end(), 3);
  REQUIRE(it != g.element_orders.end());
  element_t t = element_t(it - g.element_orders.begin());
  element_t w[] = {t, t, t};
  CHECK(word_product(g, w) == 0);

  element_t bad[] = {element_t(g.order)};
  CHECK_THROWS_AS(word_product(g, bad), std::out_of_range);
}

TEST_CASE("generator files") {
  const std::string path = "test_gens.tmp";
  {
    std::ofstream out(path);
    out << "# A5 from two 3-cycles\n";
    out << "\n";
    out << "(1,2,3)\n";
    out << "  (3,4,5)  \n";
  }
  auto gens = read_generator_file(path);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].size() == 5);  // padded to the common degree
  CHECK(build_group_from_generators(gens).order == 60);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "(1,2\n";
  }
  CHECK_THROWS_AS(read_generator_file(path), std::invalid_argument);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "# only comments\n";
  }
  CHECK_THROWS_AS(read_generator_file(path), std::invalid_argument);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_generator_file("does_not_exist.tmp"),
                  std::invalid_argument);
}
