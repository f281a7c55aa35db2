#ifndef RWLEN_COMMON_HPP_
#define RWLEN_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rwlen {

// Group elements are indices into a GroupTable; index 0 is always the identity.
using element_t = std::uint16_t;

// Longest supported word; the permutation cache materializes n!-1 permutations
// per length, so this is a hard factorial bound.
inline constexpr int max_word_length = 12;

// A configurable resource cap was exceeded (group order, automorphism count,
// frontier size, oracle work bound).
class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed checkpoint data, or a checkpoint that does not belong to the
// group being searched.
class checkpoint_error : public std::runtime_error {
public:
  explicit checkpoint_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace rwlen

#endif  // RWLEN_COMMON_HPP_
