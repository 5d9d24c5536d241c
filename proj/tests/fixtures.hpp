#pragma once

#include "cpsep/amalgam.hpp"

namespace fixture {

using cpsep::AmalgamSpec;
using cpsep::Factor;
using cpsep::FiniteGroup;

// H = K = C4 amalgamated over {0,2} by the identity.
inline AmalgamSpec amalg1() {
  const auto c4 = FiniteGroup::cyclic(4);
  return AmalgamSpec::make(c4, c4, {0, 2}, {0, 2}, {{0, 0}, {2, 2}});
}

inline AmalgamSpec free_product(std::size_t m, std::size_t n) {
  return AmalgamSpec::make(FiniteGroup::cyclic(m), FiniteGroup::cyclic(n), {0}, {0}, {{0, 0}});
}

// S3 (as D3, rotations 0,1,2) and C6 amalgamated over the rotation subgroup.
inline AmalgamSpec s3_c6() {
  return AmalgamSpec::make(FiniteGroup::dihedral(3), FiniteGroup::cyclic(6), {0, 1, 2}, {0, 2, 4},
                           {{0, 0}, {1, 2}, {2, 4}});
}

constexpr Factor H = Factor::H;
constexpr Factor K = Factor::K;

}  // namespace fixture
