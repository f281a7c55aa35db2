#ifndef RWLEN_RWLEN_HPP_
#define RWLEN_RWLEN_HPP_

// Umbrella header: group tables, automorphisms, the rewritability check, and
// the sequential and parallel searches for the rewritability length.

#include "rwlen/aut.hpp"
#include "rwlen/common.hpp"
#include "rwlen/enumerate.hpp"
#include "rwlen/group.hpp"
#include "rwlen/parallel.hpp"
#include "rwlen/perm.hpp"
#include "rwlen/rewritable.hpp"

#endif  // RWLEN_RWLEN_HPP_
