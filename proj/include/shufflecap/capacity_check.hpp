#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shufflecap/inner_bound.hpp"
#include "shufflecap/outer_bound.hpp"
#include "shufflecap/vertex_enum.hpp"

namespace shufflecap {

enum class Verdict { Match, Gap, Undecided };

std::string verdict_name(Verdict v);

// Test seams: pretend a vertex is unachievable, or replace the outer region.
struct CheckHooks {
    std::function<bool(const std::map<VarLabel, Rational>&)> veto_vertex;
    std::optional<HPolytope> outer_override;
};

struct CheckOptions {
    StrategyOptions strategy{};
    FmeOptions fme{};
    OuterOptions outer{};
    LpOptions lp{};
    VertexEnumOptions vertexing{};
    size_t fme_gamma_cap = 100; // composite count gating the FME route; above it, facet LPs
    unsigned threads = 1;
    bool record_timings = false;
    CheckHooks hooks{};
};

struct VertexReport {
    std::map<VarLabel, Rational> vertex;
    bool pareto = false;   // maximal among the vertices, certified by its own LP
    bool achieved = false;
    std::optional<Certificate> certificate; // for dominated vertices, adjusted from the dominating one
    std::string detail;    // failure summary when unachieved
};

struct CheckReport {
    Verdict verdict = Verdict::Undecided;
    HPolytope outer;
    std::vector<VertexReport> vertex_reports;
    bool inner_route_fme = false; // containment via projected regions vs facet LPs
    std::vector<std::string> inner_choice_names;
    std::vector<HPolytope> inner_polys; // populated on the FME route
    bool containment_checked = false;
    bool implementation_bug = false; // inner escaped outer: impossible if the code is right
    std::optional<std::map<VarLabel, Rational>> gap_witness;
    std::string gap_side; // "outer" or "inner"
    std::string undecided_reason;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, double>> timings_ms; // only when record_timings
};

// MATCH iff every outer vertex is achievable and the inner region sits inside
// the outer one; budget exhaustion yields UNDECIDED, never an exception.
CheckReport check_capacity(const ShuffleProblem& p, const CheckOptions& opts = {});

struct FamilyRow {
    int K = 0, r = 0, g = 0;
    int mais = 0;
    bool mais_expected = false;          // mais == K - r
    bool outer_matches_family = false;   // prop1 region == closed form
    bool symmetric_point_tight = false;  // R = (g-1)C binds every group row with equality
    CheckReport check;
};

// All valid (K, r) with K <= K_max, in (K, r) order, uniform capacity C.
std::vector<FamilyRow> verify_family(int K_max, const Rational& C = Rational(1),
                                     const CheckOptions& opts = {});

} // namespace shufflecap
