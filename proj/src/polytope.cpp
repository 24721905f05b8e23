#include "shufflecap/polytope.hpp"

#include <algorithm>

namespace shufflecap {

VarLabel VarLabel::composite(std::vector<MessageId> J, int j)
{
    std::sort(J.begin(), J.end());
    return {VarKind::CompositeRate, MessageId{}, std::move(J), j};
}

std::string VarLabel::str() const
{
    switch (kind) {
    case VarKind::MessageRate:
        return "R" + msg.str();
    case VarKind::PartialRate:
        return "R" + msg.str() + "|" + std::to_string(sender);
    case VarKind::CompositeRate: {
        std::string s = "g{";
        for (size_t i = 0; i < subset.size(); ++i) {
            if (i) s += ",";
            s += subset[i].str();
        }
        return s + "}|" + std::to_string(sender);
    }
    }
    return "?";
}

VarLabel VarLabel::parse(const std::string& s)
{
    auto bad = [&]() { throw ParseError("malformed variable label: '" + s + "'"); };
    if (s.size() >= 2 && s[0] == 'R') {
        auto bar = s.find('|');
        if (bar == std::string::npos) return rate(MessageId::parse(s.substr(1)));
        MessageId m = MessageId::parse(s.substr(1, bar - 1));
        try {
            return partial(m, std::stoi(s.substr(bar + 1)));
        } catch (const std::exception&) {
            bad();
        }
    }
    if (s.size() >= 4 && s[0] == 'g' && s[1] == '{') {
        auto close = s.rfind('}');
        if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '|') bad();
        std::vector<MessageId> J;
        std::string inner = s.substr(2, close - 2);
        size_t pos = 0;
        while (pos < inner.size()) {
            auto end = inner.find(')', pos);
            if (end == std::string::npos) bad();
            J.push_back(MessageId::parse(inner.substr(pos, end - pos + 1)));
            pos = end + 1;
            if (pos < inner.size()) {
                if (inner[pos] != ',') bad();
                ++pos;
            }
        }
        if (J.empty()) bad();
        try {
            return composite(std::move(J), std::stoi(s.substr(close + 2)));
        } catch (const std::exception&) {
            bad();
        }
    }
    bad();
    return {};
}

void LinearInequality::normalize()
{
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = (it->second == 0) ? coeffs.erase(it) : std::next(it);

    BigInt l = 1;
    for (const auto& [v, c] : coeffs) l = lcm(l, denominator(c));
    l = lcm(l, denominator(rhs));
    BigInt g = 0;
    auto fold = [&](const Rational& x) {
        BigInt scaled = numerator(x) * (l / denominator(x));
        g = gcd(g, abs(scaled));
    };
    for (const auto& [v, c] : coeffs) fold(c);
    fold(rhs);
    if (g == 0) { // all-zero row: keep rhs sign only
        rhs = (rhs > 0) ? Rational(1) : (rhs < 0 ? Rational(-1) : Rational(0));
        return;
    }
    Rational scale = Rational(l) / Rational(g);
    for (auto& [v, c] : coeffs) c *= scale;
    rhs *= scale;
}

std::string LinearInequality::str() const
{
    std::string s;
    for (const auto& [v, c] : coeffs) {
        if (s.empty()) {
            if (c == -1)
                s += "-";
            else if (c != 1)
                s += rat_str(c) + " ";
        } else {
            if (c < 0)
                s += " - ";
            else
                s += " + ";
            Rational a = abs(c);
            if (a != 1) s += rat_str(a) + " ";
        }
        s += v.str();
    }
    if (s.empty()) s = "0";
    return s + " <= " + rat_str(rhs);
}

int HPolytope::index_of(const VarLabel& v) const
{
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v) return -1;
    return static_cast<int>(it - vars.begin());
}

namespace {

bool ineq_less(const LinearInequality& a, const LinearInequality& b)
{
    // lexicographic on the sparse coefficient maps, then rhs
    auto ita = a.coeffs.begin();
    auto itb = b.coeffs.begin();
    while (ita != a.coeffs.end() && itb != b.coeffs.end()) {
        if (ita->first != itb->first) return ita->first < itb->first;
        if (ita->second != itb->second) return ita->second < itb->second;
        ++ita;
        ++itb;
    }
    if (ita != a.coeffs.end()) return false;
    if (itb != b.coeffs.end()) return true;
    return a.rhs < b.rhs;
}

} // namespace

HPolytope canonicalized(const HPolytope& p)
{
    HPolytope out;
    out.nonneg = p.nonneg;
    out.vars = p.vars;
    std::sort(out.vars.begin(), out.vars.end());
    out.vars.erase(std::unique(out.vars.begin(), out.vars.end()), out.vars.end());
    for (const auto& iq : p.ineqs) {
        LinearInequality c = iq;
        c.normalize();
        if (c.coeffs.empty() && c.rhs >= 0) continue; // trivially true
        out.ineqs.push_back(std::move(c));
    }
    std::sort(out.ineqs.begin(), out.ineqs.end(), ineq_less);
    out.ineqs.erase(std::unique(out.ineqs.begin(), out.ineqs.end()), out.ineqs.end());
    return out;
}

bool same_canonical(const HPolytope& a, const HPolytope& b)
{
    HPolytope ca = canonicalized(a), cb = canonicalized(b);
    return ca.vars == cb.vars && ca.ineqs == cb.ineqs && ca.nonneg == cb.nonneg;
}

std::string canonical_string(const HPolytope& p)
{
    HPolytope c = canonicalized(p);
    std::string s = "vars:";
    for (const auto& v : c.vars) s += " " + v.str();
    s += "\nnonneg: ";
    s += c.nonneg ? "true" : "false";
    s += "\n";
    for (const auto& iq : c.ineqs) s += iq.str() + "\n";
    return s;
}

bool feasible(const HPolytope& p, const std::map<VarLabel, Rational>& point)
{
    for (const auto& v : p.vars) {
        auto it = point.find(v);
        if (it == point.end())
            throw MissingCoordinate("feasible: point lacks coordinate " + v.str());
        if (p.nonneg && it->second < 0) return false;
    }
    for (const auto& iq : p.ineqs) {
        Rational lhs = 0;
        for (const auto& [v, c] : iq.coeffs) {
            auto it = point.find(v);
            if (it == point.end())
                throw MissingCoordinate("feasible: point lacks coordinate " + v.str());
            lhs += c * it->second;
        }
        if (lhs > iq.rhs) return false;
    }
    return true;
}

nlohmann::json polytope_to_json(const HPolytope& p)
{
    HPolytope c = canonicalized(p);
    nlohmann::json j;
    j["nonneg"] = c.nonneg;
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& v : c.vars) vars.push_back(v.str());
    j["vars"] = vars;
    nlohmann::json ineqs = nlohmann::json::array();
    for (const auto& iq : c.ineqs) {
        nlohmann::json row;
        nlohmann::json coeffs;
        for (const auto& [v, cf] : iq.coeffs) coeffs[v.str()] = rat_str(cf);
        row["coeffs"] = coeffs;
        row["rhs"] = rat_str(iq.rhs);
        ineqs.push_back(row);
    }
    j["ineqs"] = ineqs;
    return j;
}

HPolytope polytope_from_json(const nlohmann::json& j)
{
    HPolytope p;
    try {
        p.nonneg = j.at("nonneg").get<bool>();
        for (const auto& v : j.at("vars")) p.vars.push_back(VarLabel::parse(v.get<std::string>()));
        for (const auto& row : j.at("ineqs")) {
            LinearInequality iq;
            for (const auto& [key, val] : row.at("coeffs").items())
                iq.coeffs[VarLabel::parse(key)] = parse_rational(val.get<std::string>());
            iq.rhs = parse_rational(row.at("rhs").get<std::string>());
            p.ineqs.push_back(std::move(iq));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad polytope json: ") + e.what());
    }
    for (const auto& iq : p.ineqs)
        for (const auto& [v, c] : iq.coeffs)
            if (p.index_of(v) < 0 && std::find(p.vars.begin(), p.vars.end(), v) == p.vars.end())
                throw ParseError("polytope json references unlisted variable " + v.str());
    return p;
}

} // namespace shufflecap
