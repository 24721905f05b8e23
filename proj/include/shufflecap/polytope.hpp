#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "shufflecap/dc_model.hpp"
#include "shufflecap/rational.hpp"

namespace shufflecap {

enum class VarKind { MessageRate = 0, CompositeRate = 1, PartialRate = 2 };

// Labels: "R(k,f)" message rate, "g{(a,b),(c,d)}|j" composite rate of subset
// J from sender j, "R(k,f)|j" partial rate of a message from one sender.
struct VarLabel {
    VarKind kind = VarKind::MessageRate;
    MessageId msg{};                // MessageRate, PartialRate
    std::vector<MessageId> subset;  // CompositeRate, sorted
    int sender = -1;                // CompositeRate, PartialRate

    auto operator<=>(const VarLabel&) const = default;
    std::string str() const;
    static VarLabel parse(const std::string& s);

    static VarLabel rate(MessageId m) { return {VarKind::MessageRate, m, {}, -1}; }
    static VarLabel composite(std::vector<MessageId> J, int j);
    static VarLabel partial(MessageId m, int j) { return {VarKind::PartialRate, m, {}, j}; }
};

// sum coeffs[v] * v <= rhs
struct LinearInequality {
    std::map<VarLabel, Rational> coeffs;
    Rational rhs = 0;

    // Drops zero coefficients, scales by a positive rational so all entries
    // are coprime integers. Scaling is positive only: the relation is <=.
    void normalize();
    std::string str() const;
    bool operator==(const LinearInequality&) const = default;
};

// H-representation over labeled variables; the nonnegative orthant is part
// of every polytope here (rates and composite rates are nonnegative).
struct HPolytope {
    std::vector<VarLabel> vars; // sorted, unique
    std::vector<LinearInequality> ineqs;
    bool nonneg = true;

    int index_of(const VarLabel& v) const; // -1 when absent
};

// Sorted variables, normalized / deduplicated / sorted inequalities,
// trivially true rows dropped. Two polytopes built from equivalent minimal
// systems canonicalize to identical objects.
HPolytope canonicalized(const HPolytope& p);
bool same_canonical(const HPolytope& a, const HPolytope& b);
std::string canonical_string(const HPolytope& p);

// Substitutes the point; every variable must be assigned (MissingCoordinate).
bool feasible(const HPolytope& p, const std::map<VarLabel, Rational>& point);

nlohmann::json polytope_to_json(const HPolytope& p);
HPolytope polytope_from_json(const nlohmann::json& j);

} // namespace shufflecap
