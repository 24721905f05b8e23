#pragma once

#include <json.hpp>

#include "shufflecap/capacity_check.hpp"
#include "shufflecap/shuffle_sim.hpp"

namespace shufflecap {

// Reports embed the library version and the configuration that produced
// them. Rationals are "p/q" strings, never floats; timings (opt-in) are
// whole milliseconds. Identical inputs give byte-identical output.

nlohmann::json point_json(const std::map<VarLabel, Rational>& point);
nlohmann::json certificate_json(const Certificate& cert);

nlohmann::json analyze_report(const DcInstance& inst, const nlohmann::json& config);
nlohmann::json outer_report(const ShuffleProblem& p, const HPolytope& region,
                            const nlohmann::json& config);
nlohmann::json inner_report(const InnerRegion& region, const nlohmann::json& config);
nlohmann::json check_report(const ShuffleProblem& p, const CheckReport& rep,
                            const nlohmann::json& config);
nlohmann::json family_report(const std::vector<FamilyRow>& rows, const nlohmann::json& config);

// full_transcripts adds per-run message/transmission/decoded hex strings;
// verdicts are always present.
nlohmann::json simulate_report(const CodedShuffleScheme& scheme,
                               const std::vector<ShuffleTranscript>& runs, const RateReport& rates,
                               const nlohmann::json& config, bool full_transcripts = false);

// 2-space indent, trailing newline.
std::string render_json(const nlohmann::json& j);

} // namespace shufflecap
