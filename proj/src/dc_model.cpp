#include "shufflecap/dc_model.hpp"

#include <algorithm>
#include <set>

namespace shufflecap {

std::string MessageId::str() const
{
    return "(" + std::to_string(k) + "," + std::to_string(f) + ")";
}

MessageId MessageId::parse(const std::string& s)
{
    if (s.size() < 5 || s.front() != '(' || s.back() != ')')
        throw ParseError("malformed message id: '" + s + "'");
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ParseError("malformed message id: '" + s + "'");
    try {
        size_t used = 0;
        std::string ks = s.substr(1, comma - 1);
        std::string fs = s.substr(comma + 1, s.size() - comma - 2);
        int k = std::stoi(ks, &used);
        if (used != ks.size()) throw std::invalid_argument("k");
        int f = std::stoi(fs, &used);
        if (used != fs.size()) throw std::invalid_argument("f");
        return MessageId{k, f};
    } catch (const std::exception&) {
        throw ParseError("malformed message id: '" + s + "'");
    }
}

nlohmann::json DcInstance::to_json() const
{
    nlohmann::json j;
    j["K"] = K;
    j["N"] = N;
    j["Q"] = Q;
    j["F"] = F;
    j["map_assignment"] = map_assignment;
    j["reduce_assignment"] = reduce_assignment;
    nlohmann::json caps = nlohmann::json::array();
    for (const auto& c : capacities) caps.push_back(rat_str(c));
    j["capacities"] = caps;
    return j;
}

DcInstance DcInstance::from_json(const nlohmann::json& j)
{
    DcInstance inst;
    try {
        inst.K = j.at("K").get<int>();
        inst.N = j.at("N").get<int>();
        inst.Q = j.at("Q").get<int>();
        inst.F = j.at("F").get<int>();
        inst.map_assignment = j.at("map_assignment").get<std::vector<std::vector<int>>>();
        inst.reduce_assignment = j.at("reduce_assignment").get<std::vector<std::vector<int>>>();
        for (const auto& c : j.at("capacities"))
            inst.capacities.push_back(parse_rational(c.get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad instance json: ") + e.what());
    }
    return inst;
}

std::vector<Violation> validate(const DcInstance& inst)
{
    std::vector<Violation> out;
    auto flag = [&](const std::string& code, const std::string& detail) {
        out.push_back({code, detail});
    };

    if (inst.K < 1) flag("bad_shape", "K must be >= 1");
    if (inst.F < 1) flag("bad_shape", "F must be >= 1");
    if (inst.N < 1) flag("bad_shape", "N must be >= 1");
    if (inst.Q < 1) flag("bad_shape", "Q must be >= 1");
    if (static_cast<int>(inst.map_assignment.size()) != inst.K)
        flag("bad_shape", "map_assignment must have K rows");
    if (static_cast<int>(inst.reduce_assignment.size()) != inst.K)
        flag("bad_shape", "reduce_assignment must have K rows");
    if (static_cast<int>(inst.capacities.size()) != inst.K)
        flag("capacity_count", "capacities must have K entries");
    if (!out.empty()) return out; // shape errors make the rest unreliable

    if (inst.F > 0 && inst.N % inst.F != 0)
        flag("file_split", "N must be a multiple of F");
    if (inst.K > 0 && inst.Q % inst.K != 0)
        flag("reduce_split", "Q must be a multiple of K");

    std::vector<int> batch_mapped(inst.F, 0);
    for (int k = 0; k < inst.K; ++k) {
        std::set<int> seen;
        for (int b : inst.map_assignment[k]) {
            if (b < 0 || b >= inst.F) {
                flag("batch_range", "node " + std::to_string(k) + " maps batch " + std::to_string(b));
                continue;
            }
            if (!seen.insert(b).second)
                flag("batch_duplicate", "node " + std::to_string(k) + " maps batch " + std::to_string(b) + " twice");
            else
                ++batch_mapped[b];
        }
    }
    for (int b = 0; b < inst.F; ++b)
        if (batch_mapped[b] == 0)
            flag("unmapped_batch", "batch " + std::to_string(b) + " is mapped by no node");

    int per_node = inst.K > 0 ? inst.Q / inst.K : 0;
    std::vector<int> fn_owner(inst.Q, -1);
    for (int k = 0; k < inst.K; ++k) {
        std::set<int> seen;
        for (int q : inst.reduce_assignment[k]) {
            if (q < 0 || q >= inst.Q) {
                flag("function_range", "node " + std::to_string(k) + " reduces function " + std::to_string(q));
                continue;
            }
            if (!seen.insert(q).second) {
                flag("function_duplicate",
                     "node " + std::to_string(k) + " reduces function " + std::to_string(q) + " twice");
                continue;
            }
            if (fn_owner[q] != -1)
                flag("function_shared", "function " + std::to_string(q) + " reduced by nodes " +
                                            std::to_string(fn_owner[q]) + " and " + std::to_string(k));
            else
                fn_owner[q] = k;
        }
        if (static_cast<int>(seen.size()) != per_node)
            flag("reduce_size", "node " + std::to_string(k) + " reduces " + std::to_string(seen.size()) +
                                    " functions, expected " + std::to_string(per_node));
    }
    for (int q = 0; q < inst.Q; ++q)
        if (fn_owner[q] == -1) flag("function_unassigned", "function " + std::to_string(q) + " reduced by no node");

    for (int k = 0; k < inst.K; ++k)
        if (inst.capacities[k] < 0)
            flag("capacity_negative", "node " + std::to_string(k) + " has negative capacity");

    return out;
}

Rational computation_load(const DcInstance& inst)
{
    long total = 0;
    for (const auto& mk : inst.map_assignment) total += static_cast<long>(mk.size());
    return Rational(total) / Rational(inst.F);
}

int ShuffleProblem::index_of(const MessageId& m) const
{
    auto it = std::lower_bound(messages.begin(), messages.end(), m);
    if (it == messages.end() || *it != m) return -1;
    return static_cast<int>(it - messages.begin());
}

bool ShuffleProblem::in_side_info(int node, const MessageId& m) const
{
    const auto& s = side_info.at(node);
    return std::binary_search(s.begin(), s.end(), m);
}

ShuffleProblem derive_shuffle_problem(const DcInstance& inst)
{
    auto violations = validate(inst);
    if (!violations.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& v : violations) msg += " [" + v.code + "] " + v.detail + ";";
        throw ValidationFailed(msg);
    }

    std::vector<std::set<int>> maps(inst.K);
    for (int k = 0; k < inst.K; ++k)
        maps[k] = std::set<int>(inst.map_assignment[k].begin(), inst.map_assignment[k].end());

    ShuffleProblem p;
    p.K = inst.K;
    p.capacities = inst.capacities;
    p.origin = inst;
    for (int k = 0; k < inst.K; ++k)
        for (int f = 0; f < inst.F; ++f)
            if (!maps[k].count(f)) p.messages.push_back({k, f});

    p.side_info.resize(inst.K);
    for (int k = 0; k < inst.K; ++k)
        for (const auto& m : p.messages)
            if (m.k != k && maps[k].count(m.f)) p.side_info[k].push_back(m);

    for (const auto& m : p.messages) {
        bool held = false;
        for (int j = 0; j < inst.K && !held; ++j) held = (j != m.k && maps[j].count(m.f));
        if (!held)
            throw UndeliverableMessage("message " + m.str() + " is held by no other node");
    }

    long expected = static_cast<long>(inst.F) * inst.K;
    for (const auto& mk : inst.map_assignment) expected -= static_cast<long>(mk.size());
    if (static_cast<long>(p.messages.size()) != expected)
        throw InvariantViolation("message count mismatch in derive_shuffle_problem");

    return p;
}

ShuffleProblem make_shuffle_problem(int K, std::vector<MessageId> messages,
                                    std::vector<std::vector<MessageId>> side_info,
                                    std::vector<Rational> capacities)
{
    if (K < 1 || static_cast<int>(side_info.size()) != K || static_cast<int>(capacities.size()) != K)
        throw ValidationFailed("make_shuffle_problem: shape mismatch");
    std::sort(messages.begin(), messages.end());
    if (std::adjacent_find(messages.begin(), messages.end()) != messages.end())
        throw ValidationFailed("make_shuffle_problem: duplicate message");
    ShuffleProblem p;
    p.K = K;
    p.messages = std::move(messages);
    p.capacities = std::move(capacities);
    p.side_info.resize(K);
    for (int k = 0; k < K; ++k) {
        auto s = side_info[k];
        std::sort(s.begin(), s.end());
        for (const auto& m : s) {
            if (p.index_of(m) < 0)
                throw ValidationFailed("make_shuffle_problem: side info references unknown message " + m.str());
            if (m.k == k)
                throw ValidationFailed("make_shuffle_problem: node " + std::to_string(k) +
                                       " lists its own message " + m.str());
        }
        p.side_info[k] = std::move(s);
    }
    for (const auto& m : p.messages) {
        bool held = false;
        for (int j = 0; j < K && !held; ++j) held = p.in_side_info(j, m);
        if (!held) throw UndeliverableMessage("message " + m.str() + " is held by no node");
    }
    return p;
}

DcInstance gen_family(int K, int r, int eta1, int Q, std::vector<Rational> capacities)
{
    if (K < 2 || r < 1 || r >= K)
        throw DivisibilityError("gen_family requires 1 <= r < K");
    if (K % (K - r) != 0)
        throw DivisibilityError("gen_family requires (K-r) | K, got K=" + std::to_string(K) +
                                " r=" + std::to_string(r));
    if (eta1 < 1) throw DivisibilityError("gen_family requires eta1 >= 1");
    if (Q == 0) Q = K;
    if (Q % K != 0) throw DivisibilityError("gen_family requires K | Q");
    int g = K / (K - r);
    if (capacities.empty()) capacities.assign(K, Rational(1));
    if (static_cast<int>(capacities.size()) != K)
        throw ValidationFailed("gen_family: capacities must have K entries");

    DcInstance inst;
    inst.K = K;
    inst.F = g;
    inst.N = g * eta1;
    inst.Q = Q;
    inst.capacities = std::move(capacities);
    inst.map_assignment.resize(K);
    inst.reduce_assignment.resize(K);
    int per_node = Q / K;
    for (int k = 0; k < K; ++k) {
        for (int b = 0; b < g; ++b)
            if (b != k % g) inst.map_assignment[k].push_back(b);
        for (int q = k * per_node; q < (k + 1) * per_node; ++q)
            inst.reduce_assignment[k].push_back(q);
    }
    return inst;
}

} // namespace shufflecap
