#include "shufflecap/icgraph.hpp"

#include <algorithm>
#include <bit>

namespace shufflecap {

int SideInfoDigraph::index_of(const MessageId& m) const
{
    auto it = std::lower_bound(verts.begin(), verts.end(), m);
    if (it == verts.end() || *it != m) return -1;
    return static_cast<int>(it - verts.begin());
}

SideInfoDigraph SideInfoDigraph::from_arcs(std::vector<MessageId> verts,
                                           const std::vector<std::pair<MessageId, MessageId>>& arcs)
{
    SideInfoDigraph g;
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw ValidationFailed("from_arcs: duplicate vertex");
    if (verts.size() > 63) throw ValidationFailed("from_arcs: more than 63 vertices");
    g.verts = std::move(verts);
    g.adj.assign(g.verts.size(), 0);
    for (const auto& [a, b] : arcs) {
        int u = g.index_of(a), v = g.index_of(b);
        if (u < 0 || v < 0)
            throw UnknownVertex("from_arcs: arc endpoint not a vertex");
        if (u == v) throw ValidationFailed("from_arcs: self loop");
        g.adj[u] |= 1ull << v;
    }
    return g;
}

std::string SideInfoDigraph::export_text() const
{
    std::string out;
    for (int i = 0; i < n(); ++i) {
        out += std::to_string(verts[i].k) + "," + std::to_string(verts[i].f) + ":";
        for (int j = 0; j < n(); ++j)
            if (has_arc(i, j))
                out += " " + std::to_string(verts[j].k) + "," + std::to_string(verts[j].f);
        out += "\n";
    }
    return out;
}

SideInfoDigraph build_digraph(const ShuffleProblem& p)
{
    if (p.messages.size() > 63)
        throw ValidationFailed("build_digraph: more than 63 messages");
    SideInfoDigraph g;
    g.verts = p.messages;
    g.adj.assign(g.verts.size(), 0);
    for (int u = 0; u < g.n(); ++u)
        for (int v = 0; v < g.n(); ++v)
            if (u != v && p.in_side_info(g.verts[u].k, g.verts[v]))
                g.adj[u] |= 1ull << v;
    return g;
}

bool is_acyclic(const SideInfoDigraph& g, uint64_t subset_mask)
{
    if ((subset_mask & ~g.all_mask()) != 0)
        throw UnknownVertex("is_acyclic: mask references vertices outside the graph");
    uint64_t alive = subset_mask;
    while (alive) {
        // peel vertices with no out-arcs into the still-alive set
        uint64_t peel = 0;
        for (uint64_t m = alive; m;) {
            int i = std::countr_zero(m);
            m &= m - 1;
            if ((g.adj[i] & alive) == 0) peel |= 1ull << i;
        }
        if (peel == 0) return false; // every remaining vertex feeds a cycle
        alive &= ~peel;
    }
    return true;
}

std::vector<uint64_t> enumerate_acyclic_subsets(const SideInfoDigraph& g, const EnumOptions& opts)
{
    uint64_t examined = 0;
    auto check = [&](uint64_t mask) {
        if (opts.budget && ++examined > opts.budget)
            throw BudgetExceeded("enumerate_acyclic_subsets: budget of " + std::to_string(opts.budget) +
                                 " acyclicity tests exhausted");
        return is_acyclic(g, mask);
    };

    std::vector<uint64_t> out;
    // frontier of acyclic sets of the current size, kept in lexicographic
    // order (as sorted index sequences); grown by appending indices past the
    // current maximum, so any cyclic set prunes its whole superset subtree
    std::vector<std::pair<uint64_t, int>> frontier; // (mask, max index)
    for (int i = 0; i < g.n(); ++i) {
        uint64_t m = 1ull << i;
        if (check(m)) frontier.emplace_back(m, i);
    }
    while (!frontier.empty()) {
        for (const auto& [mask, last] : frontier) out.push_back(mask);
        std::vector<std::pair<uint64_t, int>> next;
        for (const auto& [mask, last] : frontier)
            for (int i = last + 1; i < g.n(); ++i) {
                uint64_t m = mask | (1ull << i);
                if (check(m)) next.emplace_back(m, i);
            }
        frontier = std::move(next);
    }
    return out;
}

MaisResult mais(const SideInfoDigraph& g, const EnumOptions& opts)
{
    MaisResult res;
    auto subsets = enumerate_acyclic_subsets(g, opts);
    for (uint64_t mask : subsets) {
        int size = std::popcount(mask);
        if (size > res.size) { // first of each size class is lex-least
            res.size = size;
            res.witness_mask = mask;
        }
    }
    res.witness = mask_to_messages(g, res.witness_mask);
    return res;
}

std::vector<MessageId> mask_to_messages(const SideInfoDigraph& g, uint64_t mask)
{
    std::vector<MessageId> out;
    for (uint64_t m = mask; m;) {
        int i = std::countr_zero(m);
        m &= m - 1;
        out.push_back(g.verts[i]);
    }
    return out;
}

} // namespace shufflecap
