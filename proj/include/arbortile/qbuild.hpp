#pragma once

#include <string>
#include <vector>

#include "arbortile/factor.hpp"
#include "arbortile/graph.hpp"
#include "arbortile/partition.hpp"

namespace arbortile {

// One tagged pattern-block copy inside a gadget forest. verts are local
// forest vertex ids, parallel to the block's sorted vertex list.
struct BlockCopyLayout {
    int block = 0;
    int copy = 0; // 0 or 1
    std::vector<int> verts;
};

struct QForest {
    Graph forest; // on 2s vertices
    std::vector<BlockCopyLayout> copies;
};

// Recipe for the gadget graph: a independent clusters of size s, b forest
// clusters of size 2s, complete bipartite between clusters.
struct QSpec {
    int a = 0, b = 0, s = 0;
    int f = 0; // = a + 2b
    AcyclicPartition partition;
    std::vector<QForest> forests; // size b
};

struct QGraph {
    Graph graph;
    std::vector<VertexSet> clusters; // a + b clusters, in vertex-numbering order
};

// Chooses s, the block order, and the forest contents for the pattern h.
// ArityError unless a + 2b = f(h); NotInHtilde when the odd-f construction
// needs the balanced-partition family and h is not in it.
QSpec plan_q(const Graph& h, int a, int b);

// Materializes the gadget with deterministic vertex numbering (clusters in
// order; forest vertices in their layout order). ClusterSizeError/NotAForest
// on malformed specs.
QGraph build_q(const QSpec& spec);

// The explicit factor of the gadget: one pattern copy per row of the stacked
// assignment matrix (2·ar rows when f is even, 2 rows when f is odd).
// ConstructionBug on a QSpec inconsistent with h.
TilingCertificate h_factor_in_q(const Graph& h, const QSpec& spec);

// Re-validates the construction end to end: builds the gadget, checks the
// factor edge-by-edge, and cross-checks existence with the exact solver when
// the gadget is small enough. Returns false (with a reason) instead of
// throwing on malformed specs.
bool verify_q(const Graph& h, const QSpec& spec, const Caps& caps = {}, std::string* why = nullptr);

} // namespace arbortile
