#pragma once

// Exact sweeps of the cross-product and phi/psi contraction identities over
// all basis index tuples, in integer arithmetic.

#include <cstddef>
#include <string>
#include <vector>

#include "nearlyg2/octonion.hpp"

namespace nearlyg2 {

struct IdentityCheck {
  std::string name;
  std::size_t tuples = 0;
  std::size_t failures = 0;
  std::string first_failure;  // 1-based index tuple, empty when passing
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

/// +1 or -1: orientation induced by the 3-form with components `table`
/// (-1 for phi0, i.e. opposite to e_1..e_7).
int induced_orientation(const oct::StructureTable& table);

/// Dense psi_{ijkl} = (*phi)_{ijkl} for the induced orientation.
std::vector<int> psi_table(const oct::StructureTable& table);

/// Runs cp1, malcev, cp2, contractions1, contractions2 and the psi-psi trace.
IdentityReport verify_identities(const oct::StructureTable& table = oct::kPhi0);

}  // namespace nearlyg2
