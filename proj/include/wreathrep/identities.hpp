#pragma once

// Closed-form wreath recursions in the degree-4 representation of G_{2,2}
// (powers of x1 and x2, conjugates of a, products of conjugates, and the
// states of x1), checked against decompose.

#include <cstdint>
#include <string>
#include <vector>

#include "wreathrep/tree.hpp"

namespace wreathrep {

  struct IdentityCase {
    std::string              group;    // powers, conjugates, products, states
    std::string              element;  // element name
    std::vector<std::string> children;
    std::string              perm;     // cycle notation
  };

  // Expected recursions, instantiated for the given exponents.
  std::vector<IdentityCase> g22_identities(std::vector<std::int64_t> const& ns);

  // Requires the theorem4(2, 2) representation (otherwise not applicable).
  ClosedFormReport verify_g22_identities(RepContext const& ctx,
                                         std::vector<std::int64_t> const& ns = {0, 1, 2});

}  // namespace wreathrep
