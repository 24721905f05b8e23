#include "shufflecap/fme.hpp"

#include <algorithm>
#include <map>

namespace shufflecap {

namespace {

// Dense working row over a fixed variable order.
struct Row {
    std::vector<Rational> a;
    Rational rhs;
};

void normalize_row(Row& r)
{
    BigInt l = 1;
    for (const auto& c : r.a)
        if (c != 0) l = lcm(l, denominator(c));
    l = lcm(l, denominator(r.rhs));
    BigInt g = 0;
    for (const auto& c : r.a)
        if (c != 0) g = gcd(g, abs(numerator(c) * (l / denominator(c))));
    g = gcd(g, abs(numerator(r.rhs) * (l / denominator(r.rhs))));
    if (g == 0) return;
    Rational scale = Rational(l) / Rational(g);
    for (auto& c : r.a)
        if (c != 0) c *= scale;
    r.rhs *= scale;
}

// True when the row holds everywhere on the nonnegative orthant.
bool orthant_trivial(const Row& r)
{
    if (r.rhs < 0) return false;
    for (const auto& c : r.a)
        if (c > 0) return false;
    return true;
}

void cheap_cleanup(std::vector<Row>& rows)
{
    std::map<std::vector<Rational>, Rational> best; // lhs -> least rhs
    for (auto& r : rows) {
        normalize_row(r);
        if (orthant_trivial(r)) continue;
        auto it = best.find(r.a);
        if (it == best.end())
            best.emplace(std::move(r.a), std::move(r.rhs));
        else if (r.rhs < it->second)
            it->second = r.rhs;
    }
    rows.clear();
    for (auto& [a, rhs] : best) rows.push_back({a, rhs});
}

HPolytope rows_to_poly(const std::vector<VarLabel>& vars, const std::vector<Row>& rows)
{
    HPolytope p;
    p.vars = vars;
    for (const auto& r : rows) {
        LinearInequality iq;
        for (size_t j = 0; j < vars.size(); ++j)
            if (r.a[j] != 0) iq.coeffs[vars[j]] = r.a[j];
        iq.rhs = r.rhs;
        p.ineqs.push_back(std::move(iq));
    }
    return p;
}

std::vector<Row> poly_to_rows(const HPolytope& p, const std::vector<VarLabel>& vars)
{
    std::map<VarLabel, size_t> idx;
    for (size_t i = 0; i < vars.size(); ++i) idx[vars[i]] = i;
    std::vector<Row> rows;
    for (const auto& iq : p.ineqs) {
        Row r;
        r.a.assign(vars.size(), Rational(0));
        for (const auto& [v, c] : iq.coeffs) {
            auto it = idx.find(v);
            if (it == idx.end()) throw InputError("fme: inequality references unknown variable " + v.str());
            r.a[it->second] = c;
        }
        r.rhs = iq.rhs;
        rows.push_back(std::move(r));
    }
    return rows;
}

void lp_cleanup(std::vector<Row>& rows, const std::vector<VarLabel>& vars, const LpOptions& lp)
{
    HPolytope p = remove_redundant(rows_to_poly(vars, rows), lp);
    rows = poly_to_rows(p, vars);
}

} // namespace

HPolytope fme_eliminate(const HPolytope& p, const std::vector<VarLabel>& victims, const FmeOptions& opts)
{
    if (!p.nonneg) throw InputError("fme_eliminate expects the nonnegative orthant");

    std::vector<VarLabel> vars = p.vars;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Row> rows = poly_to_rows(p, vars);
    cheap_cleanup(rows);

    std::vector<size_t> pending;
    {
        std::map<VarLabel, size_t> idx;
        for (size_t i = 0; i < vars.size(); ++i) idx[vars[i]] = i;
        for (const auto& v : victims) {
            auto it = idx.find(v);
            if (it != idx.end()) pending.push_back(it->second);
        }
        std::sort(pending.begin(), pending.end());
        pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    }

    size_t since_cleanup_rows = rows.size();
    while (!pending.empty()) {
        // fewest positive*negative occurrences first
        size_t pick = pending.size();
        size_t best_score = 0, best_pos = 0, best_neg = 0;
        for (size_t t = 0; t < pending.size(); ++t) {
            size_t pos = 0, neg = 0;
            for (const auto& r : rows) {
                const Rational& c = r.a[pending[t]];
                if (c > 0)
                    ++pos;
                else if (c < 0)
                    ++neg;
            }
            size_t score = pos * neg;
            if (pick == pending.size() || score < best_score ||
                (score == best_score && pos + neg < best_pos + best_neg)) {
                pick = t;
                best_score = score;
                best_pos = pos;
                best_neg = neg;
            }
        }
        size_t v = pending[pick];
        pending.erase(pending.begin() + pick);

        if (best_pos * (best_neg + 1) > opts.blowup_cap)
            throw BlowupBudgetExceeded("fme: eliminating one variable would create " +
                                       std::to_string(best_pos * (best_neg + 1)) + " inequalities");

        std::vector<Row> pos, neg, keep;
        for (auto& r : rows) {
            const Rational& c = r.a[v];
            if (c > 0)
                pos.push_back(std::move(r));
            else if (c < 0)
                neg.push_back(std::move(r));
            else
                keep.push_back(std::move(r));
        }
        // lower bounds: explicit negative rows plus the orthant facet v >= 0
        for (const auto& pr : pos) {
            Rational alpha = pr.a[v];
            for (const auto& nr : neg) {
                Rational beta = nr.a[v]; // < 0
                Row combo;
                combo.a.resize(vars.size());
                for (size_t j = 0; j < vars.size(); ++j) combo.a[j] = -beta * pr.a[j] + alpha * nr.a[j];
                combo.rhs = -beta * pr.rhs + alpha * nr.rhs;
                combo.a[v] = 0;
                keep.push_back(std::move(combo));
            }
            Row zeroed = pr;
            zeroed.a[v] = 0;
            keep.push_back(std::move(zeroed));
        }
        rows = std::move(keep);
        cheap_cleanup(rows);
        if (rows.size() > opts.lp_cleanup_threshold &&
            (rows.size() * 4 > since_cleanup_rows * 5 || since_cleanup_rows == 0)) {
            lp_cleanup(rows, vars, opts.lp);
            since_cleanup_rows = rows.size();
        }
        if (rows.size() > opts.blowup_cap)
            throw BlowupBudgetExceeded("fme: live system grew past " + std::to_string(opts.blowup_cap) +
                                       " inequalities");
    }

    // project the variable list
    std::vector<bool> victim(vars.size(), false);
    {
        std::map<VarLabel, size_t> idx;
        for (size_t i = 0; i < vars.size(); ++i) idx[vars[i]] = i;
        for (const auto& w : victims) {
            auto it = idx.find(w);
            if (it != idx.end()) victim[it->second] = true;
        }
    }
    for (const auto& r : rows)
        for (size_t j = 0; j < vars.size(); ++j)
            if (victim[j] && r.a[j] != 0) throw InvariantViolation("fme: victim column survived");
    HPolytope out;
    for (size_t j = 0; j < vars.size(); ++j)
        if (!victim[j]) out.vars.push_back(vars[j]);
    for (const auto& r : rows) {
        LinearInequality iq;
        for (size_t j = 0; j < vars.size(); ++j)
            if (!victim[j] && r.a[j] != 0) iq.coeffs[vars[j]] = r.a[j];
        iq.rhs = r.rhs;
        out.ineqs.push_back(std::move(iq));
    }
    return canonicalized(out);
}

HPolytope remove_redundant(const HPolytope& p, const LpOptions& opts)
{
    HPolytope c = canonicalized(p);
    if (lp_any_point(c, opts).status == LpStatus::Infeasible)
        throw InputError("remove_redundant requires a feasible system");
    std::vector<bool> retained(c.ineqs.size(), true);
    for (size_t i = 0; i < c.ineqs.size(); ++i) {
        HPolytope rest;
        rest.vars = c.vars;
        rest.nonneg = c.nonneg;
        for (size_t j = 0; j < c.ineqs.size(); ++j)
            if (retained[j] && j != i) rest.ineqs.push_back(c.ineqs[j]);
        LpResult r = lp_max(rest, c.ineqs[i].coeffs, opts);
        if (r.status == LpStatus::Infeasible)
            throw InvariantViolation("remove_redundant: relaxation of a feasible system went infeasible");
        bool keep = r.status == LpStatus::Unbounded || r.value > c.ineqs[i].rhs;
        retained[i] = keep;
    }
    HPolytope out;
    out.vars = c.vars;
    out.nonneg = c.nonneg;
    for (size_t i = 0; i < c.ineqs.size(); ++i)
        if (retained[i]) out.ineqs.push_back(c.ineqs[i]);
    return out;
}

} // namespace shufflecap
