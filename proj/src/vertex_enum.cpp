#include "shufflecap/vertex_enum.hpp"

#include <algorithm>
#include <set>

namespace shufflecap {

namespace {

struct DenseRow {
    std::vector<Rational> a;
    Rational rhs;
};

// Solves the n x n system given by the selected rows (must be independent).
std::vector<Rational> solve_square(std::vector<DenseRow> rows)
{
    size_t n = rows.size();
    for (size_t col = 0, row = 0; col < n && row < n; ++col) {
        size_t piv = row;
        while (piv < n && rows[piv].a[col] == 0) ++piv;
        if (piv == n) throw InvariantViolation("vertex solve: singular system");
        std::swap(rows[piv], rows[row]);
        Rational inv = rows[row].a[col];
        for (auto& c : rows[row].a) c /= inv;
        rows[row].rhs /= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || rows[i].a[col] == 0) continue;
            Rational f = rows[i].a[col];
            for (size_t j = 0; j < n; ++j) rows[i].a[j] -= f * rows[row].a[j];
            rows[i].rhs -= f * rows[row].rhs;
        }
        ++row;
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) {
        size_t col = n;
        for (size_t j = 0; j < n; ++j)
            if (rows[i].a[j] != 0) { col = j; break; }
        if (col == n) throw InvariantViolation("vertex solve: singular system");
        x[col] = rows[i].rhs;
    }
    return x;
}

} // namespace

std::vector<std::vector<Rational>> vertices(const HPolytope& poly, const VertexEnumOptions& opts)
{
    HPolytope p = canonicalized(poly);
    if (!p.nonneg) throw InputError("vertices expects the nonnegative orthant");
    size_t n = p.vars.size();
    if (static_cast<int>(n) > opts.dim_cap)
        throw DimensionCapExceeded("vertices: dimension " + std::to_string(n) + " over cap " +
                                   std::to_string(opts.dim_cap));

    // emptiness, then boundedness via the recession cone
    if (lp_any_point(p, opts.lp).status == LpStatus::Infeasible) return {};
    if (n == 0) return {{}};
    {
        HPolytope rec;
        rec.vars = p.vars;
        for (const auto& iq : p.ineqs) {
            LinearInequality h = iq;
            h.rhs = 0;
            rec.ineqs.push_back(std::move(h));
        }
        for (const auto& v : p.vars) {
            LinearInequality box;
            box.coeffs[v] = 1;
            box.rhs = 1;
            rec.ineqs.push_back(std::move(box));
        }
        std::map<VarLabel, Rational> obj;
        for (const auto& v : p.vars) obj[v] = 1;
        LpResult r = lp_max(rec, obj, opts.lp);
        if (r.status != LpStatus::Optimal || r.value > 0)
            throw UnboundedPolytope("vertices: polytope has a nontrivial recession direction");
    }

    // candidate tight rows: inequalities as equalities, then orthant x_i = 0;
    // only the first block carries a <= direction for the feasibility check
    std::vector<DenseRow> facets;
    for (const auto& iq : p.ineqs) {
        DenseRow r;
        r.a.assign(n, Rational(0));
        for (const auto& [v, c] : iq.coeffs) r.a[p.index_of(v)] = c;
        r.rhs = iq.rhs;
        facets.push_back(std::move(r));
    }
    size_t n_ineq = facets.size();
    for (size_t j = 0; j < n; ++j) {
        DenseRow r;
        r.a.assign(n, Rational(0));
        r.a[j] = 1;
        facets.push_back(std::move(r));
    }

    uint64_t examined = 0;
    std::set<std::vector<Rational>> found;
    std::vector<size_t> chosen;
    // echelon of the chosen rows, kept reduced; pivot[i] = leading column
    std::vector<DenseRow> ech;
    std::vector<size_t> pivots;

    auto reduce = [&](DenseRow r) -> std::optional<std::pair<DenseRow, size_t>> {
        for (size_t i = 0; i < ech.size(); ++i) {
            const Rational& f = r.a[pivots[i]];
            if (f == 0) continue;
            Rational factor = f; // ech rows have pivot 1
            for (size_t j = 0; j < n; ++j)
                if (ech[i].a[j] != 0) r.a[j] -= factor * ech[i].a[j];
            r.rhs -= factor * ech[i].rhs;
        }
        size_t piv = n;
        for (size_t j = 0; j < n; ++j)
            if (r.a[j] != 0) { piv = j; break; }
        if (piv == n) return std::nullopt;
        Rational inv = r.a[piv];
        for (auto& c : r.a) c /= inv;
        r.rhs /= inv;
        return std::make_pair(std::move(r), piv);
    };

    auto emit = [&]() {
        std::vector<DenseRow> sys;
        for (size_t idx : chosen) sys.push_back(facets[idx]);
        std::vector<Rational> x = solve_square(std::move(sys));
        for (const auto& c : x)
            if (c < 0) return;
        for (size_t i = 0; i < n_ineq; ++i) {
            Rational lhs = 0;
            for (size_t j = 0; j < n; ++j)
                if (facets[i].a[j] != 0) lhs += facets[i].a[j] * x[j];
            if (lhs > facets[i].rhs) return;
        }
        found.insert(std::move(x));
    };

    auto rec_enum = [&](auto&& self, size_t start) -> void {
        if (chosen.size() == n) {
            emit();
            return;
        }
        if (facets.size() - start < n - chosen.size()) return;
        for (size_t i = start; i < facets.size(); ++i) {
            if (++examined > opts.basis_budget)
                throw BudgetExceeded("vertices: basis budget exhausted");
            auto red = reduce(facets[i]);
            if (!red) continue;
            chosen.push_back(i);
            ech.push_back(std::move(red->first));
            pivots.push_back(red->second);
            self(self, i + 1);
            chosen.pop_back();
            ech.pop_back();
            pivots.pop_back();
        }
    };
    rec_enum(rec_enum, 0);

    return {found.begin(), found.end()};
}

ContainmentResult region_contains(const HPolytope& outer, const HPolytope& inner,
                                  const VertexEnumOptions& opts)
{
    HPolytope co = canonicalized(outer), ci = canonicalized(inner);
    if (co.vars != ci.vars)
        throw InputError("region_contains: polytopes must share one variable set");
    for (const auto& vtx : vertices(ci, opts)) {
        std::map<VarLabel, Rational> point;
        for (size_t j = 0; j < ci.vars.size(); ++j) point[ci.vars[j]] = vtx[j];
        if (!feasible(co, point)) return {false, std::move(point)};
    }
    return {true, std::nullopt};
}

} // namespace shufflecap
