#include "shufflecap/report.hpp"

#include <cmath>

#include "shufflecap/icgraph.hpp"
#include "shufflecap/util.hpp"

namespace shufflecap {

using nlohmann::json;

namespace {

json envelope(const std::string& command, const json& config)
{
    json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    return j;
}

json message_list(const std::vector<MessageId>& msgs)
{
    json out = json::array();
    for (const auto& m : msgs) out.push_back(m.str());
    return out;
}

json timings_json(const std::vector<std::pair<std::string, double>>& timings)
{
    json out = json::array();
    for (const auto& [phase, ms] : timings)
        out.push_back({{"phase", phase}, {"ms", static_cast<int64_t>(std::llround(ms))}});
    return out;
}

json check_body(const CheckReport& rep)
{
    json j;
    j["verdict"] = verdict_name(rep.verdict);
    j["outer"] = polytope_to_json(rep.outer);
    json verts = json::array();
    for (const auto& vr : rep.vertex_reports) {
        json v;
        v["vertex"] = point_json(vr.vertex);
        v["pareto"] = vr.pareto;
        v["achieved"] = vr.achieved;
        v["certificate"] = vr.certificate ? certificate_json(*vr.certificate) : json();
        v["detail"] = vr.detail;
        verts.push_back(std::move(v));
    }
    j["vertices"] = std::move(verts);
    json inner;
    inner["route"] = rep.inner_route_fme ? "projection" : "facet-lp";
    inner["choices"] = rep.inner_choice_names;
    json regions = json::array();
    for (const auto& poly : rep.inner_polys) regions.push_back(polytope_to_json(poly));
    inner["regions"] = std::move(regions);
    j["inner"] = std::move(inner);
    j["containment_checked"] = rep.containment_checked;
    j["implementation_bug"] = rep.implementation_bug;
    j["gap"] = rep.gap_witness
                   ? json{{"side", rep.gap_side}, {"witness", point_json(*rep.gap_witness)}}
                   : json();
    j["undecided_reason"] = rep.undecided_reason;
    j["notes"] = rep.notes;
    if (!rep.timings_ms.empty()) j["timings_ms"] = timings_json(rep.timings_ms);
    return j;
}

} // namespace

json point_json(const std::map<VarLabel, Rational>& point)
{
    json j = json::object();
    for (const auto& [v, val] : point) j[v.str()] = rat_str(val);
    return j;
}

json certificate_json(const Certificate& cert)
{
    json j;
    j["choice"] = cert.choice;
    j["assignment"] = point_json(cert.assignment);
    return j;
}

json analyze_report(const DcInstance& inst, const json& config)
{
    auto p = derive_shuffle_problem(inst);
    auto g = build_digraph(p);
    auto m = mais(g);

    json j = envelope("analyze", config);
    j["K"] = inst.K;
    j["N"] = inst.N;
    j["Q"] = inst.Q;
    j["F"] = inst.F;
    j["r"] = rat_str(computation_load(inst));
    j["eta1"] = eta1(inst);
    j["eta2"] = eta2(inst);
    j["message_bits"] = message_bits(inst);
    j["message_count"] = p.messages.size();
    j["messages"] = message_list(p.messages);
    j["mais"] = {{"size", m.size}, {"witness", message_list(m.witness)}};
    j["notes"] = json::array();
    if (p.messages.empty()) j["notes"].push_back("nothing to shuffle");
    return j;
}

json outer_report(const ShuffleProblem& p, const HPolytope& region, const json& config)
{
    json j = envelope("outer", config);
    j["K"] = p.K;
    j["messages"] = message_list(p.messages);
    j["outer"] = polytope_to_json(region);
    return j;
}

json inner_report(const InnerRegion& region, const json& config)
{
    json j = envelope("inner", config);
    j["choices"] = region.choice_names;
    json regions = json::array();
    for (const auto& poly : region.polys) regions.push_back(polytope_to_json(poly));
    j["regions"] = std::move(regions);
    return j;
}

json check_report(const ShuffleProblem& p, const CheckReport& rep, const json& config)
{
    json j = envelope("check", config);
    j["K"] = p.K;
    j["messages"] = message_list(p.messages);
    j.update(check_body(rep));
    return j;
}

json family_report(const std::vector<FamilyRow>& rows, const json& config)
{
    json j = envelope("family", config);
    json out = json::array();
    for (const auto& row : rows) {
        json r;
        r["K"] = row.K;
        r["r"] = row.r;
        r["g"] = row.g;
        r["mais"] = row.mais;
        r["mais_expected"] = row.mais_expected;
        r["outer_matches_family"] = row.outer_matches_family;
        r["symmetric_point_tight"] = row.symmetric_point_tight;
        r["check"] = check_body(row.check);
        out.push_back(std::move(r));
    }
    j["rows"] = std::move(out);
    return j;
}

json simulate_report(const CodedShuffleScheme& scheme, const std::vector<ShuffleTranscript>& runs,
                     const RateReport& rates, const json& config, bool full_transcripts)
{
    json j = envelope("simulate", config);
    json plan = json::array();
    for (const auto& sends : scheme.plan) {
        json refs = json::array();
        for (const auto& ref : sends) refs.push_back({{"message", ref.message}, {"segment", ref.segment}});
        plan.push_back(std::move(refs));
    }
    j["scheme"] = {{"K", scheme.K}, {"r", scheme.r}, {"g", scheme.g},
                   {"L", scheme.L}, {"plan", std::move(plan)}};
    j["rate"] = {{"capacity", rat_str(rates.capacity)},
                 {"blocklength", rat_str(rates.blocklength)},
                 {"rate", rat_str(rates.rate)},
                 {"outer_feasible", rates.outer_feasible},
                 {"group_rows_tight", rates.group_rows_tight},
                 {"identity_holds", rates.identity_holds}};

    json out = json::array();
    size_t ok = 0;
    for (const auto& t : runs) {
        json r;
        r["seed"] = t.seed;
        r["ok"] = t.all_ok();
        r["verdicts"] = t.verdicts;
        if (full_transcripts) {
            json hex = json::array();
            for (const auto& m : t.messages) hex.push_back(bits_to_hex(m));
            r["messages"] = std::move(hex);
            hex = json::array();
            for (const auto& y : t.transmissions) hex.push_back(bits_to_hex(y));
            r["transmissions"] = std::move(hex);
            hex = json::array();
            for (const auto& d : t.decoded) hex.push_back(bits_to_hex(d));
            r["decoded"] = std::move(hex);
        }
        ok += t.all_ok() ? 1 : 0;
        out.push_back(std::move(r));
    }
    j["runs"] = std::move(out);
    j["seeds_run"] = runs.size();
    j["seeds_ok"] = ok;
    j["all_ok"] = ok == runs.size();
    return j;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

} // namespace shufflecap
