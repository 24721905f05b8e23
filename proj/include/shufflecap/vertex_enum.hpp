#pragma once

#include <optional>
#include <vector>

#include "shufflecap/lp.hpp"
#include "shufflecap/polytope.hpp"

namespace shufflecap {

struct VertexEnumOptions {
    int dim_cap = 12;                    // exponential enumeration guard
    uint64_t basis_budget = 20'000'000;  // candidate extensions examined
    LpOptions lp{};
};

// All vertices of a bounded polytope, coordinates in canonical variable
// order, lexicographically sorted. Tight-set enumeration over inequality
// plus orthant facets with rank pruning. Throws UnboundedPolytope /
// DimensionCapExceeded / BudgetExceeded.
std::vector<std::vector<Rational>> vertices(const HPolytope& p, const VertexEnumOptions& opts = {});

struct ContainmentResult {
    bool contained = true;
    std::optional<std::map<VarLabel, Rational>> witness; // an inner vertex outside
};

// True iff every vertex of inner satisfies outer. Both polytopes must share
// one variable set; inner must be bounded.
ContainmentResult region_contains(const HPolytope& outer, const HPolytope& inner,
                                  const VertexEnumOptions& opts = {});

} // namespace shufflecap
