#ifndef RWLEN_GROUP_HPP_
#define RWLEN_GROUP_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rwlen/common.hpp"
#include "rwlen/perm.hpp"

namespace rwlen {

// A fully materialized finite group. Element 0 is the identity; products,
// inverses, labels and element orders are all table lookups. Immutable after
// construction and safe for shared concurrent reads.
struct GroupTable {
  int order = 0;
  std::vector<element_t> mult;       // row-major: mult[a*order + b] = a*b
  std::vector<element_t> inverse;    // inverse[a]*a = a*inverse[a] = 0
  std::vector<std::string> labels;   // disjoint-cycle notation, "()" for 0
  std::vector<int> element_orders;   // least k >= 1 with a^k = 0

  element_t product(element_t a, element_t b) const {
    return mult[std::size_t(a) * order + b];
  }

  // order + sorted element-order multiset + table hash, as one 64-bit FNV-1a
  // digest. Identifies a table across runs: checkpoints carry it so a resume
  // against a different group is rejected.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    mix(std::uint64_t(order));
    std::vector<int> orders = element_orders;
    std::sort(orders.begin(), orders.end());
    for (int k : orders) mix(std::uint64_t(k));
    for (element_t m : mult) mix(m);
    return h;
  }

  std::string fingerprint_hex() const {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fingerprint();
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
    return s;
  }
};

struct GroupBuildOptions {
  // Full table materialization is O(order^2) memory; this artifact targets
  // small groups, so closures beyond the cap are rejected.
  int order_cap = 2000;
};

// Breadth-first closure of the generated group, starting from the identity
// and expanding generators in input order with products taken left to right.
// The enumeration order (and hence the whole table) is deterministic.
inline GroupTable build_group_from_generators(
    const std::vector<PointPerm>& generators,
    const GroupBuildOptions& options = {}) {
  if (generators.empty())
    throw std::invalid_argument("generator sequence must be non-empty");
  const std::size_t degree = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != degree)
      throw std::invalid_argument(
          "generators must act on a common point set");
    if (!is_permutation(g))
      throw std::invalid_argument("generator is not a bijection");
  }

  std::vector<PointPerm> elements;
  std::map<PointPerm, element_t> index_of;
  elements.push_back(identity_perm(int(degree)));
  index_of[elements[0]] = 0;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : generators) {
      PointPerm next = compose(elements[head], g);
      if (index_of.emplace(next, element_t(elements.size())).second) {
        if (int(elements.size()) >= options.order_cap)
          throw resource_limit_error(
              "group too large for table materialization (cap " +
              std::to_string(options.order_cap) + ")");
        elements.push_back(std::move(next));
      }
    }
  }

  GroupTable t;
  t.order = int(elements.size());
  t.mult.resize(std::size_t(t.order) * t.order);
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b)
      t.mult[std::size_t(a) * t.order + b] =
          index_of.at(compose(elements[a], elements[b]));
  t.inverse.resize(t.order);
  for (int a = 0; a < t.order; ++a)
    t.inverse[a] = index_of.at(inverted(elements[a]));
  t.labels.reserve(t.order);
  for (const auto& p : elements) t.labels.push_back(format_cycles(p));
  t.element_orders.resize(t.order);
  for (int a = 0; a < t.order; ++a) {
    int k = 1;
    element_t acc = element_t(a);
    while (acc != 0) {
      acc = t.product(acc, element_t(a));
      ++k;
    }
    t.element_orders[a] = k;
  }
  return t;
}

enum class GroupFamily { alternating, symmetric, cyclic, dihedral, quaternion };

// Canonical generators per family (see the README for the exact lists);
// delegates to build_group_from_generators.
inline GroupTable builtin_group(GroupFamily family, int parameter,
                                const GroupBuildOptions& options = {}) {
  std::vector<PointPerm> gens;
  switch (family) {
    case GroupFamily::alternating: {
      if (parameter < 1)
        throw std::invalid_argument("alternating group needs n >= 1");
      if (parameter <= 2) {
        gens.push_back(identity_perm(std::max(parameter, 1)));
      } else {
        gens.push_back(padded(parse_cycles("(1,2,3)"), parameter));
        if (parameter > 3) {
          // an n-cycle for odd n, an (n-1)-cycle avoiding point 1 for even n,
          // so the second generator is an even permutation either way
          std::string cyc = "(";
          for (int i = (parameter % 2 == 1) ? 1 : 2; i <= parameter; ++i) {
            if (cyc.size() > 1) cyc += ',';
            cyc += std::to_string(i);
          }
          cyc += ')';
          gens.push_back(padded(parse_cycles(cyc), parameter));
        }
      }
      break;
    }
    case GroupFamily::symmetric: {
      if (parameter < 1)
        throw std::invalid_argument("symmetric group needs n >= 1");
      if (parameter == 1) {
        gens.push_back(identity_perm(1));
      } else {
        gens.push_back(padded(parse_cycles("(1,2)"), parameter));
        std::string cyc = "(1";
        for (int i = 2; i <= parameter; ++i) cyc += ',' + std::to_string(i);
        cyc += ')';
        gens.push_back(parse_cycles(cyc));
      }
      break;
    }
    case GroupFamily::cyclic: {
      if (parameter < 1) throw std::invalid_argument("cyclic group needs n >= 1");
      if (parameter == 1) {
        gens.push_back(identity_perm(1));
      } else {
        std::string cyc = "(1";
        for (int i = 2; i <= parameter; ++i) cyc += ',' + std::to_string(i);
        cyc += ')';
        gens.push_back(parse_cycles(cyc));
      }
      break;
    }
    case GroupFamily::dihedral: {
      // parameter = polygon size, group order 2*parameter
      if (parameter < 3)
        throw std::invalid_argument("dihedral group needs polygon size >= 3");
      std::string rot = "(1";
      for (int i = 2; i <= parameter; ++i) rot += ',' + std::to_string(i);
      rot += ')';
      gens.push_back(parse_cycles(rot));
      std::string refl;  // reflection fixing vertex 1: i <-> n+2-i
      for (int i = 2; i <= parameter + 1 - i; ++i) {
        int j = parameter + 2 - i;
        if (i < j) refl += '(' + std::to_string(i) + ',' + std::to_string(j) + ')';
      }
      gens.push_back(padded(parse_cycles(refl), parameter));
      break;
    }
    case GroupFamily::quaternion: {
      if (parameter != 8)
        throw std::invalid_argument("only the quaternion group of order 8 is supported");
      // right-regular representation on {1,-1,i,-i,j,-j,k,-k}
      gens.push_back(parse_cycles("(1,3,2,4)(5,8,6,7)"));
      gens.push_back(parse_cycles("(1,5,2,6)(3,7,4,8)"));
      break;
    }
  }
  return build_group_from_generators(gens, options);
}

// Left-to-right fold of the table product; the empty word is the identity.
inline element_t word_product(const GroupTable& table,
                              std::span<const element_t> word) {
  element_t acc = 0;
  for (element_t e : word) {
    if (e >= table.order)
      throw std::out_of_range("element index out of range");
    acc = table.product(acc, e);
  }
  return acc;
}

}  // namespace rwlen

#endif  // RWLEN_GROUP_HPP_
