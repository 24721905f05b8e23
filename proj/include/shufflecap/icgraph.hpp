#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shufflecap/dc_model.hpp"

namespace shufflecap {

// Vertex set is the message list; arc u -> v iff the node wanting u already
// holds v. Vertex indices follow the sorted message order, subsets are
// bitmasks over those indices (desk scale, <= 63 vertices).
struct SideInfoDigraph {
    std::vector<MessageId> verts;
    std::vector<uint64_t> adj; // adj[i]: bitmask of out-neighbours of vertex i

    int n() const { return static_cast<int>(verts.size()); }
    uint64_t all_mask() const { return n() == 0 ? 0 : (n() == 64 ? ~0ull : (1ull << n()) - 1); }
    int index_of(const MessageId& m) const;
    bool has_arc(int u, int v) const { return (adj[u] >> v) & 1u; }

    // Hand-built graphs for tests; arcs may be arbitrary (no self loops).
    static SideInfoDigraph from_arcs(std::vector<MessageId> verts,
                                     const std::vector<std::pair<MessageId, MessageId>>& arcs);

    // One line per vertex, "k,f: k1,f1 k2,f2 ...", targets in vertex order.
    std::string export_text() const;
};

SideInfoDigraph build_digraph(const ShuffleProblem& p);

// Acyclicity of the subgraph induced by the masked vertices (Kahn).
bool is_acyclic(const SideInfoDigraph& g, uint64_t subset_mask);
inline bool is_acyclic(const SideInfoDigraph& g) { return is_acyclic(g, g.all_mask()); }

struct EnumOptions {
    uint64_t budget = 0; // acyclicity tests allowed; 0 = unlimited
};

// All nonempty acyclic subsets, in nondecreasing size order, lexicographic
// within a size class. Supersets of cyclic sets are pruned, not examined.
std::vector<uint64_t> enumerate_acyclic_subsets(const SideInfoDigraph& g, const EnumOptions& opts = {});

struct MaisResult {
    int size = 0;
    uint64_t witness_mask = 0;
    std::vector<MessageId> witness; // lexicographically least among maximum-size sets
};

MaisResult mais(const SideInfoDigraph& g, const EnumOptions& opts = {});

std::vector<MessageId> mask_to_messages(const SideInfoDigraph& g, uint64_t mask);

} // namespace shufflecap
