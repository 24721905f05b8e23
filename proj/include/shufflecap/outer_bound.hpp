#pragma once

#include "shufflecap/fme.hpp"
#include "shufflecap/icgraph.hpp"

namespace shufflecap {

struct OuterOptions {
    EnumOptions enumerate{};
    LpOptions lp{};
};

// One inequality per nonempty acyclic subset S of the side-information
// digraph: the rates in S are bounded by the total capacity of the nodes
// holding at least one member of S. Subset-dominance filtering first, then
// LP redundancy removal; result canonical over all message-rate variables.
HPolytope prop1_region(const ShuffleProblem& p, const SideInfoDigraph& g, const OuterOptions& opts = {});
HPolytope prop1_region(const ShuffleProblem& p, const OuterOptions& opts = {});

// Closed form for the uniform-replication family: g = K/(K-r) residue
// groups mod g; each group's rate sum is bounded by the capacity outside
// the group. Equals prop1_region on gen_family instances.
HPolytope family_outer_region(int K, int r, std::vector<Rational> capacities = {});

} // namespace shufflecap
