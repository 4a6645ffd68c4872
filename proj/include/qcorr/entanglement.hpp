#pragma once

#include "qcorr/states.hpp"

namespace qcorr {

// |rho^{T_A}|_1 - 1 (not halved); can be slightly negative from rounding.
double negativity(const BipartiteState& s);
bool is_ppt(const BipartiteState& s);
// Throws NotPure when Tr rho^2 < 1 - 1e-9.
double entanglement_entropy(const BipartiteState& s);

// Boundary polynomial of the xy family; negative exactly on entangled points.
double xy_polynomial(FamilyPointXY p);
bool xy_is_entangled(FamilyPointXY p);

} // namespace qcorr
