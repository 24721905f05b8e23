#include "shufflecap/inner_bound.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace shufflecap {

namespace {

std::vector<MessageId> intersect(const std::vector<MessageId>& a, const std::vector<MessageId>& b)
{
    std::vector<MessageId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<MessageId> unite(const std::vector<MessageId>& a, const std::vector<MessageId>& b)
{
    std::vector<MessageId> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<MessageId> subtract(const std::vector<MessageId>& a, const std::vector<MessageId>& b)
{
    std::vector<MessageId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<MessageId> pick(const std::vector<MessageId>& base, uint32_t mask)
{
    std::vector<MessageId> out;
    for (size_t i = 0; i < base.size(); ++i)
        if ((mask >> i) & 1) out.push_back(base[i]);
    return out;
}

// subsets are walked as bitmasks, so very wide side information is out of reach
void subset_guard(size_t n)
{
    if (n > 20) throw BlowupBudgetExceeded("side information set too large for subset enumeration");
}

uint32_t mask_of(const std::vector<MessageId>& base, const std::vector<MessageId>& part)
{
    uint32_t m = 0;
    for (const auto& x : part)
        m |= 1u << (std::lower_bound(base.begin(), base.end(), x) - base.begin());
    return m;
}

template <class F> void for_each_pair(const ShuffleProblem& p, F&& f)
{
    for (const auto& m : p.messages)
        for (int j = 0; j < p.K; ++j)
            if (p.in_side_info(j, m)) f(m, j);
}

} // namespace

const std::vector<MessageId>& DecodingChoice::dset(const MessageId& m, int sender) const
{
    auto it = dsets.find({m, sender});
    if (it == dsets.end())
        throw IncompleteChoice("choice '" + name + "' has no decode set for " + m.str() +
                               " from sender " + std::to_string(sender));
    return it->second;
}

DecodingChoice default_choice(const ShuffleProblem& p)
{
    DecodingChoice c{"default", {}};
    for_each_pair(p, [&](const MessageId& m, int j) {
        c.dsets[{m, j}] = unite({m}, intersect(p.side_info[m.k], p.side_info[j]));
    });
    return c;
}

DecodingChoice maximal_choice(const ShuffleProblem& p)
{
    DecodingChoice c{"maximal", {}};
    for_each_pair(p, [&](const MessageId& m, int j) { c.dsets[{m, j}] = p.side_info[j]; });
    return c;
}

std::vector<DecodingChoice> decoding_strategies(const ShuffleProblem& p, const StrategyOptions& opts)
{
    std::vector<DecodingChoice> out{default_choice(p)};
    if (opts.mode == StrategyMode::Default) return out;

    DecodingChoice maxc = maximal_choice(p);
    if (maxc.dsets != out[0].dsets) out.push_back(std::move(maxc));
    if (opts.mode != StrategyMode::Exhaustive) return out;

    for (int j = 0; j < p.K; ++j)
        if (static_cast<int>(p.side_info[j].size()) > opts.set_size_cap) return out;

    // every decode set containing the wanted message, per pair in ascending
    // bitmask order; the odometer spins the last pair fastest
    std::vector<std::pair<MessageId, int>> keys;
    std::vector<std::vector<std::vector<MessageId>>> cands;
    for_each_pair(p, [&](const MessageId& m, int j) {
        const auto& S = p.side_info[j];
        subset_guard(S.size());
        uint32_t mbit = mask_of(S, {m});
        std::vector<std::vector<MessageId>> list;
        for (uint32_t J = 1; J < (1u << S.size()); ++J)
            if (J & mbit) list.push_back(pick(S, J));
        keys.emplace_back(m, j);
        cands.push_back(std::move(list));
    });

    std::vector<size_t> idx(keys.size(), 0);
    bool done = keys.empty();
    for (uint64_t serial = 0; !done && out.size() < opts.exhaustive_cap; ++serial) {
        DecodingChoice c;
        c.name = "choice-" + std::to_string(serial);
        for (size_t i = 0; i < keys.size(); ++i) c.dsets[keys[i]] = cands[i][idx[i]];
        bool dup = false;
        for (const auto& prev : out)
            if (prev.dsets == c.dsets) { dup = true; break; }
        if (!dup) out.push_back(std::move(c));

        size_t i = keys.size();
        while (i > 0) {
            --i;
            if (++idx[i] < cands[i].size()) break;
            idx[i] = 0;
        }
        if (i == 0 && idx[0] == 0) done = true;
    }
    return out;
}

std::vector<LinearInequality> link_constraints(const ShuffleProblem& p)
{
    std::vector<LinearInequality> rows;
    for (int j = 0; j < p.K; ++j) {
        const auto& S = p.side_info[j];
        if (S.empty()) continue;
        subset_guard(S.size());
        size_t first = rows.size();
        for (int k = 0; k < p.K; ++k) {
            if (k == j) continue;
            uint32_t held = 0; // S_{k,j} inside S_j
            for (size_t i = 0; i < S.size(); ++i)
                if (p.in_side_info(k, S[i])) held |= 1u << i;
            LinearInequality iq;
            for (uint32_t J = 1; J < (1u << S.size()); ++J)
                if (J & ~held) iq.coeffs[VarLabel::composite(pick(S, J), j)] = 1;
            if (iq.coeffs.empty()) continue; // receiver k already holds every composite
            iq.rhs = p.capacities[j];
            bool dup = false;
            for (size_t i = first; i < rows.size() && !dup; ++i) dup = rows[i] == iq;
            if (!dup) rows.push_back(std::move(iq));
        }
    }
    return rows;
}

std::vector<LinearInequality> polymatroid_constraints(const ShuffleProblem& p, const DecodingChoice& choice)
{
    std::vector<LinearInequality> rows;
    for_each_pair(p, [&](const MessageId& m, int j) {
        const auto& S = p.side_info[j];
        const auto& D = choice.dset(m, j);
        if (!std::is_sorted(D.begin(), D.end()) || !std::binary_search(D.begin(), D.end(), m) ||
            !std::includes(S.begin(), S.end(), D.begin(), D.end()))
            throw InputError("decode set for " + m.str() + " from sender " + std::to_string(j) +
                             " must be a sorted subset of the side information containing the message");

        auto Skj = intersect(p.side_info[m.k], p.side_info[j]);
        auto E = unite(D, Skj);
        auto Tbase = subtract(D, Skj);
        subset_guard(E.size());

        std::vector<std::pair<uint32_t, VarLabel>> gammas; // J over E
        for (uint32_t J = 1; J < (1u << E.size()); ++J)
            gammas.emplace_back(J, VarLabel::composite(pick(E, J), j));

        for (uint32_t T = 1; T < (1u << Tbase.size()); ++T) {
            LinearInequality iq;
            for (const auto& t : pick(Tbase, T)) iq.coeffs[VarLabel::partial(t, j)] = 1;
            uint32_t tmask = mask_of(E, pick(Tbase, T));
            for (const auto& [J, v] : gammas)
                if (J & tmask) iq.coeffs[v] = -1;
            rows.push_back(std::move(iq)); // rhs 0
        }
    });
    return rows;
}

std::vector<LinearInequality> rate_sum_constraints(const ShuffleProblem& p)
{
    std::vector<LinearInequality> rows;
    for (const auto& m : p.messages) {
        LinearInequality iq;
        iq.coeffs[VarLabel::rate(m)] = 1;
        for (int j = 0; j < p.K; ++j)
            if (p.in_side_info(j, m)) iq.coeffs[VarLabel::partial(m, j)] = -1;
        rows.push_back(std::move(iq));
    }
    return rows;
}

CompositeSystem assemble_composite_system(const ShuffleProblem& p, const DecodingChoice& choice)
{
    CompositeSystem sys;
    for (const auto& m : p.messages) sys.rate_vars.push_back(VarLabel::rate(m));
    for_each_pair(p, [&](const MessageId& m, int j) { sys.partial_vars.push_back(VarLabel::partial(m, j)); });
    for (int j = 0; j < p.K; ++j) {
        const auto& S = p.side_info[j];
        subset_guard(S.size());
        for (uint32_t J = 1; J < (1u << S.size()); ++J)
            sys.gamma_vars.push_back(VarLabel::composite(pick(S, J), j));
    }
    std::sort(sys.gamma_vars.begin(), sys.gamma_vars.end());

    auto append = [&](std::vector<LinearInequality> v, ConstraintTag tag) {
        for (auto& iq : v) {
            sys.poly.ineqs.push_back(std::move(iq));
            sys.tags.push_back(tag);
        }
    };
    append(link_constraints(p), ConstraintTag::Link);
    append(polymatroid_constraints(p, choice), ConstraintTag::Polymatroid);
    append(rate_sum_constraints(p), ConstraintTag::RateSum);

    auto& vars = sys.poly.vars;
    vars.insert(vars.end(), sys.rate_vars.begin(), sys.rate_vars.end());
    vars.insert(vars.end(), sys.partial_vars.begin(), sys.partial_vars.end());
    vars.insert(vars.end(), sys.gamma_vars.begin(), sys.gamma_vars.end());
    std::sort(vars.begin(), vars.end());
    return sys;
}

// Composite variables sharing a column are interchangeable (their sum can sit
// on any one of them), and zero-column ones constrain nothing: keep a single
// representative per nonzero column. The projection onto the rates survives.
static void merge_gamma_columns(CompositeSystem& sys)
{
    std::map<VarLabel, std::vector<std::pair<size_t, Rational>>> col;
    for (size_t i = 0; i < sys.poly.ineqs.size(); ++i)
        for (const auto& [v, c] : sys.poly.ineqs[i].coeffs)
            if (v.kind == VarKind::CompositeRate) col[v].emplace_back(i, c);

    std::map<std::vector<std::pair<size_t, Rational>>, VarLabel> seen;
    std::set<VarLabel> drop;
    for (const auto& g : sys.gamma_vars) {
        auto it = col.find(g);
        if (it == col.end()) {
            drop.insert(g);
            continue;
        }
        if (!seen.emplace(it->second, g).second) drop.insert(g);
    }
    if (drop.empty()) return;

    auto erase_from = [&](std::vector<VarLabel>& v) {
        v.erase(std::remove_if(v.begin(), v.end(), [&](const VarLabel& x) { return drop.count(x) > 0; }),
                v.end());
    };
    erase_from(sys.gamma_vars);
    erase_from(sys.poly.vars);
    for (auto& iq : sys.poly.ineqs)
        for (auto it = iq.coeffs.begin(); it != iq.coeffs.end();)
            it = drop.count(it->first) ? iq.coeffs.erase(it) : std::next(it);
}

HPolytope composite_region(const ShuffleProblem& p, const DecodingChoice& choice, const FmeOptions& opts)
{
    CompositeSystem sys = assemble_composite_system(p, choice);
    merge_gamma_columns(sys);

    std::vector<VarLabel> victims = sys.partial_vars;
    victims.insert(victims.end(), sys.gamma_vars.begin(), sys.gamma_vars.end());
    HPolytope proj = fme_eliminate(sys.poly, victims, opts);
    if (!proj.ineqs.empty()) proj = remove_redundant(proj, opts.lp);
    return canonicalized(proj);
}

InnerRegion inner_region(const ShuffleProblem& p, const StrategyOptions& strategy, const FmeOptions& fme)
{
    InnerRegion r;
    for (const auto& c : decoding_strategies(p, strategy)) {
        r.choice_names.push_back(c.name);
        r.polys.push_back(composite_region(p, c, fme));
    }
    return r;
}

namespace {

// rates only show up in rate-sum rows; pinning them moves R_m to the rhs
HPolytope pin_rates(const CompositeSystem& sys, const std::map<VarLabel, Rational>& target)
{
    HPolytope q;
    for (const auto& v : sys.poly.vars)
        if (v.kind != VarKind::MessageRate) q.vars.push_back(v);
    for (const auto& row : sys.poly.ineqs) {
        LinearInequality iq;
        iq.rhs = row.rhs;
        for (const auto& [v, c] : row.coeffs) {
            if (v.kind == VarKind::MessageRate)
                iq.rhs -= c * target.at(v);
            else
                iq.coeffs[v] = c;
        }
        q.ineqs.push_back(std::move(iq));
    }
    return q;
}

// columns a certificate plausibly needs: composites J with m ∈ J ⊆ D ∪ S_{k,j}
std::set<VarLabel> restricted_columns(const ShuffleProblem& p, const DecodingChoice& choice)
{
    std::set<VarLabel> cols;
    for_each_pair(p, [&](const MessageId& m, int j) {
        auto E = unite(choice.dset(m, j), intersect(p.side_info[m.k], p.side_info[j]));
        subset_guard(E.size());
        uint32_t mbit = mask_of(E, {m});
        for (uint32_t J = 1; J < (1u << E.size()); ++J)
            if (J & mbit) cols.insert(VarLabel::composite(pick(E, J), j));
    });
    return cols;
}

std::optional<std::map<VarLabel, Rational>> try_system(const HPolytope& q, const LpOptions& lp)
{
    if (q.ineqs.empty()) return std::map<VarLabel, Rational>{};
    LpResult res = lp_any_point(q, lp);
    if (res.status != LpStatus::Optimal) return std::nullopt;
    return res.point;
}

} // namespace

Certificate achievable(const ShuffleProblem& p, const std::map<VarLabel, Rational>& target,
                       const std::vector<DecodingChoice>& choices, const AchieveOptions& opts)
{
    for (const auto& [v, val] : target) {
        if (v.kind != VarKind::MessageRate || p.index_of(v.msg) < 0)
            throw InputError("achievable: target keys must be message rates of the problem");
        if (val < 0) throw InputError("achievable: negative target rate for " + v.msg.str());
    }
    for (const auto& m : p.messages)
        if (!target.count(VarLabel::rate(m)))
            throw InputError("achievable: target does not assign " + m.str());

    std::vector<ChoiceFailure> failures;
    for (const auto& choice : choices) {
        CompositeSystem sys = assemble_composite_system(p, choice);
        HPolytope pinned = pin_rates(sys, target);

        auto finish = [&](const std::map<VarLabel, Rational>& point) {
            Certificate cert{choice.name, target};
            for (const auto& v : pinned.vars) cert.assignment[v] = 0;
            for (const auto& [v, val] : point) cert.assignment[v] = val;
            if (!feasible(sys.poly, cert.assignment))
                throw InvariantViolation("achievable: certificate failed re-substitution");
            return cert;
        };

        if (opts.restricted_first) {
            std::set<VarLabel> cols = restricted_columns(p, choice);
            if (cols.size() <= opts.restricted_cap && cols.size() < sys.gamma_vars.size()) {
                HPolytope small;
                for (const auto& v : pinned.vars)
                    if (v.kind != VarKind::CompositeRate || cols.count(v)) small.vars.push_back(v);
                for (const auto& row : pinned.ineqs) {
                    LinearInequality iq;
                    iq.rhs = row.rhs;
                    for (const auto& [v, c] : row.coeffs)
                        if (v.kind != VarKind::CompositeRate || cols.count(v)) iq.coeffs[v] = c;
                    if (iq.coeffs.empty()) continue; // dropped composites pinned to zero
                    small.ineqs.push_back(std::move(iq));
                }
                if (auto point = try_system(small, opts.lp)) return finish(*point);
            }
        }
        if (auto point = try_system(pinned, opts.lp)) return finish(*point);
        failures.push_back({choice.name, "composite system infeasible at the target"});
    }
    throw StrategyExhausted("no decoding choice achieves the target", std::move(failures));
}

Certificate achievable(const ShuffleProblem& p, const std::map<VarLabel, Rational>& target,
                       const AchieveOptions& opts)
{
    return achievable(p, target, decoding_strategies(p, opts.strategy), opts);
}

} // namespace shufflecap
