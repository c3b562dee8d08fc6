#pragma once

#include <string>
#include <vector>

#include "arbortile/factor.hpp"
#include "arbortile/graph.hpp"
#include "arbortile/qbuild.hpp"
#include "arbortile/rational.hpp"

namespace arbortile {

// Host plus disjoint candidate clusters, with exact pairwise densities.
struct ClusterSystem {
    Graph host;
    std::vector<VertexSet> clusters;
    std::vector<std::vector<Rat>> density; // symmetric, zero diagonal
};
// Validates disjointness and vertex range; computes the density table.
ClusterSystem make_cluster_system(const Graph& host, std::vector<VertexSet> clusters);

// Maximal subgraph of minimum degree >= d (possibly empty), by peeling.
VertexSet dense_core(const Graph& g, int d);

// Embeds a forest: greedy growth inside the (|V(t)|-1)-core, then full
// backtracking. EmbedFail reports the independence-number context and whether
// the search space or the node budget ran out.
HCopy embed_tree(const Graph& g, const Graph& t, const Caps& caps = {});

struct ChainResult {
    VertexSet chosen;                // in pick order
    std::vector<VertexSet> shrunk;   // common neighborhoods within each target
};
// Picks s pool vertices one at a time, shrinking every target to the
// neighborhood of the pick; each step must keep at least beta/2 of the
// previous target. Backtracks over picks; ChainFail when no chain exists.
ChainResult common_neighborhood_chain(const Graph& g, const VertexSet& pool,
                                      const std::vector<VertexSet>& targets, int s,
                                      const Rat& beta, const Caps& caps = {});

struct EmbedQResult {
    std::vector<VertexSet> images;                 // U_i, sorted, one per cluster
    HCopy map;                                     // gadget vertex -> host vertex
    std::vector<std::string> density_violations;   // checked, reported, not assumed
    std::string path;                              // which branch succeeded per level
};
// Embeds the gadget with U_i inside cluster i: independent clusters via
// neighborhood chains, forest clusters via a greedy forest embedding among
// high-degree vertices (falling back to enumeration), recursing on the shrunk
// clusters; a final exact constrained search runs at small scale. EmbedFail
// reports the deepest level reached.
EmbedQResult embed_q(const ClusterSystem& cs, const QSpec& spec, const Rat& beta,
                     const Caps& caps = {});

} // namespace arbortile
