#include "shufflecap/lp.hpp"

#include <algorithm>

namespace shufflecap {

namespace {

// Dense two-phase tableau over exact rationals. Columns: structural vars,
// then slacks, then (phase 1 only) artificials. Basis columns are kept in
// canonical form; z holds reduced costs plus the objective value at the end.
struct Simplex {
    size_t m, nstruct, ncols;
    std::vector<std::vector<Rational>> D; // m rows, ncols + 1 (rhs last)
    std::vector<Rational> z;              // ncols reduced costs + value
    std::vector<size_t> basis;
    uint64_t pivots = 0, pivot_limit;
    int stall = 0;
    bool bland = false;

    Simplex(const HPolytope& p, uint64_t limit) : pivot_limit(limit)
    {
        m = p.ineqs.size();
        nstruct = p.vars.size();
        ncols = nstruct + m;
        std::map<VarLabel, size_t> idx;
        for (size_t i = 0; i < p.vars.size(); ++i) idx[p.vars[i]] = i;
        D.assign(m, std::vector<Rational>(ncols + 1, Rational(0)));
        basis.resize(m);
        for (size_t i = 0; i < m; ++i) {
            for (const auto& [v, c] : p.ineqs[i].coeffs) {
                auto it = idx.find(v);
                if (it == idx.end())
                    throw InputError("lp: inequality references unknown variable " + v.str());
                D[i][it->second] = c;
            }
            D[i][nstruct + i] = 1;
            D[i][ncols] = p.ineqs[i].rhs;
            basis[i] = nstruct + i;
        }
    }

    void pivot(size_t r, size_t q)
    {
        if (++pivots > pivot_limit) throw BudgetExceeded("lp: pivot limit exhausted");
        Rational inv = D[r][q];
        for (size_t j = 0; j <= ncols; ++j)
            if (D[r][j] != 0) D[r][j] /= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || D[i][q] == 0) continue;
            Rational f = D[i][q];
            for (size_t j = 0; j <= ncols; ++j)
                if (D[r][j] != 0) D[i][j] -= f * D[r][j];
        }
        if (z[q] != 0) {
            Rational f = z[q];
            Rational before = z[ncols];
            for (size_t j = 0; j <= ncols; ++j)
                if (D[r][j] != 0) z[j] -= f * D[r][j];
            if (z[ncols] == before) {
                if (++stall > 50) bland = true;
            } else {
                stall = 0;
            }
        }
        basis[r] = q;
    }

    // Rebuilds the reduced-cost row for the given costs (zero for basics).
    void load_costs(const std::vector<Rational>& cost)
    {
        // Invariant: z[j] = c_j - c_B B^-1 A_j for j < ncols, z[ncols] = -value.
        z.assign(ncols + 1, Rational(0));
        for (size_t j = 0; j < ncols; ++j) z[j] = j < cost.size() ? cost[j] : Rational(0);
        for (size_t i = 0; i < m; ++i) {
            Rational cb = basis[i] < cost.size() ? cost[basis[i]] : Rational(0);
            if (cb == 0) continue;
            for (size_t j = 0; j <= ncols; ++j)
                if (D[i][j] != 0) z[j] -= cb * D[i][j];
        }
        stall = 0;
        bland = false;
    }

    // Returns true when optimal, false when unbounded (entering q reported).
    bool iterate()
    {
        for (;;) {
            size_t q = ncols;
            if (bland) {
                for (size_t j = 0; j < ncols; ++j)
                    if (z[j] > 0) { q = j; break; }
            } else {
                const Rational* best = nullptr;
                for (size_t j = 0; j < ncols; ++j)
                    if (z[j] > 0 && (!best || z[j] > *best)) { best = &z[j]; q = j; }
            }
            if (q == ncols) return true;
            size_t r = m;
            Rational best_ratio;
            for (size_t i = 0; i < m; ++i) {
                if (D[i][q] <= 0) continue;
                Rational ratio = D[i][ncols] / D[i][q];
                if (r == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[r])) {
                    r = i;
                    best_ratio = ratio;
                }
            }
            if (r == m) return false;
            pivot(r, q);
        }
    }
};

} // namespace

static LpResult solve(const HPolytope& p, const std::map<VarLabel, Rational>& objective,
                      const LpOptions& opts, bool phase2)
{
    if (!p.nonneg) throw InputError("lp: polytopes must include the nonnegative orthant");
    for (const auto& [v, c] : objective)
        if (p.index_of(v) < 0 && std::find(p.vars.begin(), p.vars.end(), v) == p.vars.end())
            throw InputError("lp: objective references unknown variable " + v.str());

    Simplex s(p, opts.pivot_limit);

    // Phase 1: rows with negative rhs get their sign flipped plus an
    // artificial basic column; minimize the artificial sum.
    std::vector<size_t> art_rows;
    for (size_t i = 0; i < s.m; ++i)
        if (s.D[i][s.ncols] < 0) art_rows.push_back(i);
    if (!art_rows.empty()) {
        size_t base = s.ncols;
        s.ncols += art_rows.size();
        for (auto& row : s.D) row.insert(row.end() - 1, art_rows.size(), Rational(0));
        for (size_t t = 0; t < art_rows.size(); ++t) {
            size_t i = art_rows[t];
            for (size_t j = 0; j <= s.ncols; ++j)
                if (s.D[i][j] != 0) s.D[i][j] = -s.D[i][j];
            s.D[i][base + t] = 1;
            s.basis[i] = base + t;
        }
        std::vector<Rational> cost1(s.ncols, Rational(0));
        for (size_t t = 0; t < art_rows.size(); ++t) cost1[base + t] = -1;
        s.load_costs(cost1);
        if (!s.iterate()) throw InvariantViolation("lp: phase 1 unbounded");
        if (s.z[s.ncols] > 0) return {LpStatus::Infeasible, 0, {}}; // -value > 0: artificials stuck positive

        // Drive leftover artificials out of the basis, drop dependent rows.
        for (size_t i = 0; i < s.m;) {
            if (s.basis[i] < base) { ++i; continue; }
            size_t q = s.ncols;
            for (size_t j = 0; j < base && q == s.ncols; ++j)
                if (s.D[i][j] != 0) q = j;
            if (q != s.ncols) {
                s.pivot(i, q);
                ++i;
            } else {
                s.D.erase(s.D.begin() + i);
                s.basis.erase(s.basis.begin() + i);
                --s.m;
            }
        }
        for (auto& row : s.D) row.erase(row.begin() + base, row.end() - 1);
        s.ncols = base;
    }

    std::vector<Rational> cost2(s.ncols, Rational(0));
    for (size_t j = 0; j < s.nstruct; ++j) {
        auto it = objective.find(p.vars[j]);
        if (it != objective.end()) cost2[j] = it->second;
    }
    s.load_costs(cost2);
    if (phase2 && !s.iterate()) return {LpStatus::Unbounded, 0, {}};

    LpResult res;
    res.status = LpStatus::Optimal;
    res.value = -s.z[s.ncols];
    std::vector<Rational> x(s.nstruct, Rational(0));
    for (size_t i = 0; i < s.m; ++i)
        if (s.basis[i] < s.nstruct) x[s.basis[i]] = s.D[i][s.ncols];
    for (size_t j = 0; j < s.nstruct; ++j) res.point[p.vars[j]] = x[j];
    if (!phase2) res.value = 0;
    return res;
}

LpResult lp_max(const HPolytope& p, const std::map<VarLabel, Rational>& objective, const LpOptions& opts)
{
    return solve(p, objective, opts, true);
}

LpResult lp_any_point(const HPolytope& p, const LpOptions& opts)
{
    return solve(p, {}, opts, false);
}

} // namespace shufflecap
