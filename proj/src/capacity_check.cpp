#include "shufflecap/capacity_check.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "shufflecap/icgraph.hpp"
#include "shufflecap/util.hpp"

namespace shufflecap {

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Match: return "MATCH";
    case Verdict::Gap: return "GAP";
    default: return "UNDECIDED";
    }
}

namespace {

struct Stopwatch {
    bool on;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    explicit Stopwatch(bool enabled) : on(enabled) {}
    void lap(CheckReport& rep, const std::string& phase)
    {
        if (!on) return;
        auto t1 = std::chrono::steady_clock::now();
        rep.timings_ms.emplace_back(phase, std::chrono::duration<double, std::milli>(t1 - t0).count());
        t0 = t1;
    }
};

// total composite count without assembling; saturates at the cap sentinel
size_t gamma_count(const ShuffleProblem& p, size_t cap)
{
    size_t total = 0;
    for (int j = 0; j < p.K; ++j) {
        size_t n = p.side_info[j].size();
        if (n > 20) return cap + 1;
        total += (size_t{1} << n) - 1;
        if (total > cap) return cap + 1;
    }
    return total;
}

bool dominates(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

} // namespace

CheckReport check_capacity(const ShuffleProblem& p, const CheckOptions& opts)
{
    CheckReport rep;
    Stopwatch watch(opts.record_timings);

    try {
        rep.outer = opts.hooks.outer_override ? canonicalized(*opts.hooks.outer_override)
                                              : prop1_region(p, opts.outer);
    } catch (const BudgetError& e) {
        rep.undecided_reason = std::string("outer bound: ") + e.what();
        return rep;
    }
    watch.lap(rep, "outer");

    std::vector<std::vector<Rational>> verts;
    try {
        verts = vertices(rep.outer, opts.vertexing);
    } catch (const BudgetError& e) {
        rep.undecided_reason = std::string("outer vertex enumeration: ") + e.what();
        return rep;
    }
    watch.lap(rep, "vertices");

    rep.vertex_reports.resize(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        auto& vr = rep.vertex_reports[i];
        for (size_t c = 0; c < rep.outer.vars.size(); ++c) vr.vertex[rep.outer.vars[c]] = verts[i][c];
        vr.pareto = true;
        for (size_t l = 0; l < verts.size() && vr.pareto; ++l)
            if (l != i && dominates(verts[l], verts[i])) vr.pareto = false;
    }

    std::vector<DecodingChoice> strategies = decoding_strategies(p, opts.strategy);
    if (opts.strategy.mode == StrategyMode::Exhaustive) {
        bool wide = false;
        for (int j = 0; j < p.K; ++j)
            wide = wide || static_cast<int>(p.side_info[j].size()) > opts.strategy.set_size_cap;
        if (wide)
            rep.notes.push_back("exhaustive tier skipped: side information wider than the cap");
        else if (strategies.size() >= opts.strategy.exhaustive_cap)
            rep.notes.push_back("exhaustive tier truncated at the choice cap");
    }

    AchieveOptions aopts;
    aopts.strategy = opts.strategy;
    aopts.lp = opts.lp;

    std::vector<size_t> work;
    for (size_t i = 0; i < verts.size(); ++i) {
        auto& vr = rep.vertex_reports[i];
        if (opts.hooks.veto_vertex && opts.hooks.veto_vertex(vr.vertex)) {
            vr.detail = "vetoed by test hook";
            continue;
        }
        if (vr.pareto) work.push_back(i);
    }

    struct Outcome {
        bool budget = false;
        std::string detail;
        std::exception_ptr fatal;
    };
    std::vector<Outcome> outcomes(verts.size());
    parallel_for(work.size(), opts.threads, [&](size_t w) {
        size_t i = work[w];
        auto& vr = rep.vertex_reports[i];
        auto& out = outcomes[i];
        try {
            vr.certificate = achievable(p, vr.vertex, strategies, aopts);
            vr.achieved = true;
        } catch (const StrategyExhausted& e) {
            out.detail = e.what();
            for (const auto& f : e.failures) out.detail += "; " + f.choice + ": " + f.reason;
        } catch (const BudgetError& e) {
            out.budget = true;
            out.detail = e.what();
        } catch (...) {
            out.fatal = std::current_exception();
        }
    });
    for (const auto& out : outcomes)
        if (out.fatal) std::rethrow_exception(out.fatal);

    bool budget_hit = false;
    std::string budget_what;
    for (size_t i : work) {
        auto& vr = rep.vertex_reports[i];
        if (!vr.achieved) {
            vr.detail = outcomes[i].detail;
            if (outcomes[i].budget && !budget_hit) {
                budget_hit = true;
                budget_what = "vertex achievability: " + outcomes[i].detail;
            }
        }
    }

    // dominated vertices inherit the dominating certificate with rates lowered
    std::map<std::string, CompositeSystem> sys_cache;
    auto system_for = [&](const std::string& name) -> const CompositeSystem& {
        auto it = sys_cache.find(name);
        if (it != sys_cache.end()) return it->second;
        for (const auto& c : strategies)
            if (c.name == name) return sys_cache.emplace(name, assemble_composite_system(p, c)).first->second;
        throw InvariantViolation("check_capacity: certificate names an unknown choice");
    };
    for (size_t i = 0; i < verts.size(); ++i) {
        auto& vr = rep.vertex_reports[i];
        if (vr.pareto || vr.achieved || vr.detail == "vetoed by test hook") continue;
        for (size_t d = 0; d < verts.size(); ++d) {
            if (d == i || !dominates(verts[d], verts[i]) || !rep.vertex_reports[d].achieved) continue;
            Certificate cert = *rep.vertex_reports[d].certificate;
            for (const auto& [v, val] : vr.vertex) cert.assignment[v] = val;
            if (!feasible(system_for(cert.choice).poly, cert.assignment))
                throw InvariantViolation("check_capacity: lowered certificate failed re-substitution");
            vr.certificate = std::move(cert);
            vr.achieved = true;
            vr.detail = "inherited from a dominating vertex";
            break;
        }
        if (!vr.achieved && vr.detail.empty()) vr.detail = "no achieved vertex dominates this one";
    }
    watch.lap(rep, "achieve");

    // containment of the inner region in the outer one
    std::optional<std::map<VarLabel, Rational>> inner_witness;
    bool containment_budget = false;
    std::string containment_what;
    bool fme_route = gamma_count(p, opts.fme_gamma_cap) <= opts.fme_gamma_cap;
    if (fme_route) {
        try {
            InnerRegion ir = inner_region(p, opts.strategy, opts.fme);
            rep.inner_choice_names = ir.choice_names;
            rep.inner_polys = ir.polys;
            rep.inner_route_fme = true;
            for (const auto& poly : ir.polys) {
                auto res = region_contains(rep.outer, poly, opts.vertexing);
                if (!res.contained && !inner_witness) inner_witness = res.witness;
            }
            rep.containment_checked = true;
            if (ir.polys.size() > 1) {
                bool convex_cover = false;
                for (size_t a = 0; a < ir.polys.size() && !convex_cover; ++a) {
                    bool all = true;
                    for (size_t b = 0; b < ir.polys.size() && all; ++b)
                        all = region_contains(ir.polys[a], ir.polys[b], opts.vertexing).contained;
                    convex_cover = all;
                }
                if (!convex_cover)
                    rep.notes.push_back("inner union has no dominating member; reported without convexification");
            }
        } catch (const BudgetError& e) {
            rep.notes.push_back(std::string("projection budget exhausted (") + e.what() +
                                "); containment checked by facet LPs instead");
            fme_route = false;
        }
    }
    if (!fme_route) {
        try {
            for (const auto& choice : strategies) {
                const CompositeSystem& sys = system_for(choice.name);
                for (const auto& row : rep.outer.ineqs) {
                    LpResult res = lp_max(sys.poly, row.coeffs, opts.lp);
                    if (res.status != LpStatus::Optimal)
                        throw InvariantViolation("check_capacity: facet LP on a bounded objective failed");
                    if (res.value > row.rhs && !inner_witness) {
                        std::map<VarLabel, Rational> w;
                        for (const auto& v : rep.outer.vars) w[v] = res.point.at(v);
                        inner_witness = std::move(w);
                    }
                }
            }
            rep.containment_checked = true;
        } catch (const BudgetError& e) {
            containment_budget = true;
            containment_what = std::string("containment: ") + e.what();
        }
    }
    watch.lap(rep, "containment");

    if (inner_witness) {
        rep.verdict = Verdict::Gap;
        rep.gap_side = "inner";
        rep.gap_witness = inner_witness;
        rep.implementation_bug = true;
        rep.notes.push_back("inner region escapes the outer bound: implementation bug");
        return rep;
    }
    // a budget-starved vertex is unresolved, not a witness
    for (int pareto_pass = 1; pareto_pass >= 0; --pareto_pass) {
        for (size_t i = 0; i < rep.vertex_reports.size(); ++i) {
            const auto& vr = rep.vertex_reports[i];
            if (vr.achieved || vr.pareto != static_cast<bool>(pareto_pass)) continue;
            if (outcomes[i].budget) continue;
            bool vetoed = vr.detail == "vetoed by test hook";
            if (!vr.pareto && !vetoed && budget_hit) continue;
            rep.verdict = Verdict::Gap;
            rep.gap_side = "outer";
            rep.gap_witness = vr.vertex;
            return rep;
        }
    }
    if (budget_hit || containment_budget) {
        rep.verdict = Verdict::Undecided;
        rep.undecided_reason = budget_hit ? budget_what : containment_what;
        return rep;
    }
    rep.verdict = Verdict::Match;
    return rep;
}

std::vector<FamilyRow> verify_family(int K_max, const Rational& C, const CheckOptions& opts)
{
    if (K_max < 2) throw InputError("verify_family: K_max must be at least 2");
    if (C < 0) throw InputError("verify_family: negative capacity");

    std::vector<FamilyRow> rows;
    for (int K = 2; K <= K_max; ++K) {
        for (int r = 1; r < K; ++r) {
            if (K % (K - r) != 0) continue;
            FamilyRow row;
            row.K = K;
            row.r = r;
            row.g = K / (K - r);
            std::vector<Rational> caps(K, C);
            auto p = derive_shuffle_problem(gen_family(K, r, 2, 0, caps));
            try {
                row.mais = mais(build_digraph(p), opts.outer.enumerate).size;
                row.mais_expected = row.mais == K - r;
                HPolytope fam = family_outer_region(K, r, caps);
                row.outer_matches_family = same_canonical(prop1_region(p, opts.outer), fam);

                std::map<VarLabel, Rational> sym;
                for (const auto& m : p.messages) sym[VarLabel::rate(m)] = Rational(row.g - 1) * C;
                bool tight = feasible(fam, sym);
                for (const auto& iq : fam.ineqs) {
                    Rational lhs = 0;
                    for (const auto& [v, c] : iq.coeffs) lhs += c * sym.at(v);
                    tight = tight && lhs == iq.rhs;
                }
                row.symmetric_point_tight = tight;
            } catch (const BudgetError& e) {
                row.check.undecided_reason = std::string("family row: ") + e.what();
                rows.push_back(std::move(row));
                continue;
            }
            row.check = check_capacity(p, opts);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace shufflecap
