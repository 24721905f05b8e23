#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shufflecap/dc_model.hpp"
#include "shufflecap/fme.hpp"

namespace shufflecap {

// Decode set per (wanted message, sender) pair. A pair exists exactly when
// the sender holds the message; the set always contains the message and is
// a subset of the sender's side information, kept sorted.
struct DecodingChoice {
    std::string name;
    std::map<std::pair<MessageId, int>, std::vector<MessageId>> dsets;

    const std::vector<MessageId>& dset(const MessageId& m, int sender) const; // IncompleteChoice
};

enum class StrategyMode { Default, Maximal, Exhaustive };

struct StrategyOptions {
    StrategyMode mode = StrategyMode::Default;
    int set_size_cap = 6;           // exhaustive tier requires every |S_j| <= cap
    uint64_t exhaustive_cap = 4096; // and at most this many choice vectors
};

DecodingChoice default_choice(const ShuffleProblem& p);
DecodingChoice maximal_choice(const ShuffleProblem& p);

// Tiered list: default, then maximal when different, then (exhaustive mode,
// within caps) every valid choice vector not already listed. Oversized
// instances simply truncate the exhaustive tier.
std::vector<DecodingChoice> decoding_strategies(const ShuffleProblem& p, const StrategyOptions& opts = {});

enum class ConstraintTag { Link, Polymatroid, RateSum, CapacityCap };

// Full constraint system over message rates, per-sender partial rates and
// composite rates. Rows stay in construction order, tags run parallel.
struct CompositeSystem {
    HPolytope poly;
    std::vector<ConstraintTag> tags;
    std::vector<VarLabel> rate_vars, partial_vars, gamma_vars;
};

std::vector<LinearInequality> link_constraints(const ShuffleProblem& p);
std::vector<LinearInequality> polymatroid_constraints(const ShuffleProblem& p, const DecodingChoice& choice);
std::vector<LinearInequality> rate_sum_constraints(const ShuffleProblem& p);
CompositeSystem assemble_composite_system(const ShuffleProblem& p, const DecodingChoice& choice);

// Projection of the composite system onto the message rates. Composite
// variables with identical columns are merged before elimination (the
// projection is unchanged), which keeps the FME tractable.
HPolytope composite_region(const ShuffleProblem& p, const DecodingChoice& choice, const FmeOptions& opts = {});

struct InnerRegion {
    std::vector<std::string> choice_names; // parallel to polys
    std::vector<HPolytope> polys;          // achievable region = closure of the union
};

InnerRegion inner_region(const ShuffleProblem& p, const StrategyOptions& strategy = {},
                         const FmeOptions& fme = {});

struct ChoiceFailure {
    std::string choice;
    std::string reason;
};

// Thrown by achievable() when every strategy choice is LP-infeasible.
struct StrategyExhausted : std::runtime_error {
    std::vector<ChoiceFailure> failures;
    explicit StrategyExhausted(const std::string& msg, std::vector<ChoiceFailure> f = {})
        : std::runtime_error(msg), failures(std::move(f))
    {
    }
};

struct Certificate {
    std::string choice;
    std::map<VarLabel, Rational> assignment; // rates, partials and gammas
};

struct AchieveOptions {
    StrategyOptions strategy{};
    LpOptions lp{};
    bool restricted_first = true;     // try a small column set before the full LP
    size_t restricted_cap = 512;      // column budget for the restricted attempt
};

// Exact feasibility of the composite system with the rates pinned to the
// target point. Tries the given choices in order and returns the first
// certifying assignment, verified against the full system by substitution.
Certificate achievable(const ShuffleProblem& p, const std::map<VarLabel, Rational>& target,
                       const std::vector<DecodingChoice>& choices, const AchieveOptions& opts = {});

// Same, over decoding_strategies(p, opts.strategy).
Certificate achievable(const ShuffleProblem& p, const std::map<VarLabel, Rational>& target,
                       const AchieveOptions& opts = {});

} // namespace shufflecap
