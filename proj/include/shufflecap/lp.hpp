#pragma once

#include <cstdint>
#include <map>

#include "shufflecap/polytope.hpp"

namespace shufflecap {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value = 0;                   // meaningful when Optimal
    std::map<VarLabel, Rational> point;   // an optimizer / feasible point
};

struct LpOptions {
    uint64_t pivot_limit = 4'000'000; // defensive guard; Bland terminates anyway
};

// max objective . x over { A x <= b, x >= 0 }, exact rational two-phase
// simplex. Dantzig pricing with a permanent switch to Bland's rule once the
// objective stalls, so cycling cannot occur. Objective keys must be poly
// variables; missing keys mean coefficient zero.
LpResult lp_max(const HPolytope& p, const std::map<VarLabel, Rational>& objective,
                const LpOptions& opts = {});

// Phase-1 only: a feasible point of the polytope, or Infeasible.
LpResult lp_any_point(const HPolytope& p, const LpOptions& opts = {});

} // namespace shufflecap
