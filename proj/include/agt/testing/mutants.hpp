#pragma once

// Test-only escape hatch: family specs that break the odd-activity rule.
// Used for negative controls; never reached from the library API.

#include "agt/families.hpp"

namespace agt::testing {

inline FamilySpec unchecked_family_spec(int n, std::vector<bool> active) {
  if (n < 1 || active.size() != static_cast<std::size_t>(n) + 1) throw Error("unchecked spec: bad shape");
  return FamilySpec(n, std::move(active));
}

/// n = 1 with both c and d1 active.
inline FamilySpec even_active_mutant() { return unchecked_family_spec(1, {true, true}); }

}  // namespace agt::testing
