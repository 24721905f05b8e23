#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shufflecap/rational.hpp"

namespace shufflecap {

// Virtual receiver: node k still needs batch f to run its reduce functions.
struct MessageId {
    int k = 0;
    int f = 0;
    auto operator<=>(const MessageId&) const = default;
    std::string str() const; // "(k,f)"
    static MessageId parse(const std::string& s);
};

struct DcInstance {
    int K = 0; // nodes
    int N = 0; // files
    int Q = 0; // reduce functions
    int F = 0; // batches (N/F files each)
    std::vector<std::vector<int>> map_assignment;    // M_k: batches held by node k
    std::vector<std::vector<int>> reduce_assignment; // W_k: functions reduced by node k
    std::vector<Rational> capacities;                // C_j, per-node link coefficients

    nlohmann::json to_json() const;
    static DcInstance from_json(const nlohmann::json& j);
};

struct Violation {
    std::string code;
    std::string detail;
};

// Empty result == valid instance.
std::vector<Violation> validate(const DcInstance& inst);

// r = (sum_k |M_k|) / F, exact.
Rational computation_load(const DcInstance& inst);

// Valid instances only. Nominal message payload: eta1 * eta2 * t_prime bits
// of intermediate values; t_prime scales simulator sizing, never the region.
inline int eta1(const DcInstance& inst) { return inst.N / inst.F; }
inline int eta2(const DcInstance& inst) { return inst.Q / inst.K; }
inline int64_t message_bits(const DcInstance& inst, int t_prime = 1)
{
    return int64_t{1} * eta1(inst) * eta2(inst) * t_prime;
}

struct ShuffleProblem {
    int K = 0;
    std::vector<MessageId> messages;               // sorted by (k, f)
    std::vector<std::vector<MessageId>> side_info; // S_k per node, sorted
    std::vector<Rational> capacities;
    std::optional<DcInstance> origin;

    int index_of(const MessageId& m) const; // -1 when absent
    bool in_side_info(int node, const MessageId& m) const;
};

// Throws ValidationFailed on an invalid instance, UndeliverableMessage when
// some needed message is held by no other node.
ShuffleProblem derive_shuffle_problem(const DcInstance& inst);

// Direct construction for hand-built problems (tests, synthetic digraphs).
// Checks sortedness, (k,f) not in S_k, and deliverability; origin stays empty.
ShuffleProblem make_shuffle_problem(int K, std::vector<MessageId> messages,
                                    std::vector<std::vector<MessageId>> side_info,
                                    std::vector<Rational> capacities);

// Uniform-replication family: g = K/(K-r) batches, node k maps everything
// except batch k mod g, reduce functions split into K equal blocks.
// Q = 0 selects Q = K; empty capacities select all-ones.
DcInstance gen_family(int K, int r, int eta1 = 2, int Q = 0,
                      std::vector<Rational> capacities = {});

} // namespace shufflecap
