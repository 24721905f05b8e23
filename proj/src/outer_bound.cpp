#include "shufflecap/outer_bound.hpp"

#include <algorithm>

namespace shufflecap {

HPolytope prop1_region(const ShuffleProblem& p, const SideInfoDigraph& g, const OuterOptions& opts)
{
    if (g.verts != p.messages)
        throw InputError("prop1_region: digraph vertices do not match the problem messages");

    HPolytope region;
    for (const auto& m : p.messages) region.vars.push_back(VarLabel::rate(m));
    if (p.messages.empty()) return region;

    std::vector<uint64_t> holder(p.K, 0); // vertices each node holds
    for (int j = 0; j < p.K; ++j)
        for (const auto& m : p.side_info[j]) holder[j] |= 1ull << g.index_of(m);

    std::vector<uint64_t> subsets = enumerate_acyclic_subsets(g, opts.enumerate);
    std::vector<Rational> rhs(subsets.size(), Rational(0));
    for (size_t i = 0; i < subsets.size(); ++i)
        for (int j = 0; j < p.K; ++j)
            if (holder[j] & subsets[i]) rhs[i] += p.capacities[j];

    // drop S when a strict superset bounds it at least as tightly; subsets
    // arrive in nondecreasing size order, so supersets sit at later indices
    std::vector<bool> keep(subsets.size(), true);
    for (size_t i = 0; i < subsets.size(); ++i)
        for (size_t l = i + 1; l < subsets.size() && keep[i]; ++l)
            if (subsets[l] != subsets[i] && (subsets[l] & subsets[i]) == subsets[i] && rhs[l] <= rhs[i])
                keep[i] = false;

    for (size_t i = 0; i < subsets.size(); ++i) {
        if (!keep[i]) continue;
        LinearInequality iq;
        for (int v = 0; v < g.n(); ++v)
            if ((subsets[i] >> v) & 1) iq.coeffs[VarLabel::rate(g.verts[v])] = 1;
        iq.rhs = rhs[i];
        region.ineqs.push_back(std::move(iq));
    }
    if (!region.ineqs.empty()) region = remove_redundant(region, opts.lp);
    return canonicalized(region);
}

HPolytope prop1_region(const ShuffleProblem& p, const OuterOptions& opts)
{
    return prop1_region(p, build_digraph(p), opts);
}

HPolytope family_outer_region(int K, int r, std::vector<Rational> capacities)
{
    if (K < 2 || r < 1 || r >= K || K % (K - r) != 0)
        throw DivisibilityError("family_outer_region requires 1 <= r < K with (K-r) | K");
    if (capacities.empty()) capacities.assign(K, Rational(1));
    if (static_cast<int>(capacities.size()) != K)
        throw InputError("family_outer_region: capacities must have K entries");
    for (const auto& c : capacities)
        if (c < 0) throw InputError("family_outer_region: negative capacity");

    int g = K / (K - r);
    HPolytope region;
    for (int k = 0; k < K; ++k) region.vars.push_back(VarLabel::rate({k, k % g}));
    for (int c = 0; c < g; ++c) {
        LinearInequality iq;
        for (int k = c; k < K; k += g) iq.coeffs[VarLabel::rate({k, c})] = 1;
        for (int j = 0; j < K; ++j)
            if (j % g != c) iq.rhs += capacities[j];
        region.ineqs.push_back(std::move(iq));
    }
    return canonicalized(region);
}

} // namespace shufflecap
