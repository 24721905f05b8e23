#pragma once

#include <vector>

#include "shufflecap/lp.hpp"
#include "shufflecap/polytope.hpp"

namespace shufflecap {

struct FmeOptions {
    size_t blowup_cap = 20000;       // hard cap on live inequalities
    size_t lp_cleanup_threshold = 96; // LP redundancy removal above this
    LpOptions lp{};
};

// Projects out the victim variables (absent victims are ignored). After each
// single-variable step duplicates, scalar multiples and sign-trivial rows are
// dropped; LP-based redundancy removal runs when the system outgrows the
// threshold. Victim order: fewest positive*negative occurrences first,
// recomputed per step. Throws BlowupBudgetExceeded past the hard cap.
HPolytope fme_eliminate(const HPolytope& p, const std::vector<VarLabel>& victims,
                        const FmeOptions& opts = {});

// Keeps an inequality iff maximizing its left side subject to the other
// retained ones exceeds its rhs (sequential scan over the canonical order,
// so duplicates resolve deterministically). Pre: feasible system.
HPolytope remove_redundant(const HPolytope& p, const LpOptions& opts = {});

} // namespace shufflecap
