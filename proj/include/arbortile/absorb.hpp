#pragma once

#include <optional>
#include <vector>

#include "arbortile/factor.hpp"
#include "arbortile/graph.hpp"
#include "arbortile/rational.hpp"

namespace arbortile {

// Per-block intersection counts of a vertex set against a partition; also
// used for differences of such counts, hence signed coordinates.
struct IndexVector {
    std::vector<long> coords;

    friend bool operator==(const IndexVector& a, const IndexVector& b) = default;
    friend bool operator<(const IndexVector& a, const IndexVector& b) {
        return a.coords < b.coords;
    }
};

// BadInput when a vertex of s lies in no block (or out of range).
IndexVector index_vector(const VertexSet& s, const std::vector<VertexSet>& p);

// s_set of h*t - 1 vertices such that both s_set + u and s_set + v span
// perfect pattern tilings; the bridge between u and v in absorption
// arguments.
struct Connector {
    VertexSet s_set;
    int u = 0, v = 0;
    int t = 1;
};

// found empty + exhausted true: proven absent within the enumerated copies;
// exhausted false: a search cap cut the scan short, absence unproven.
struct ConnectorSearch {
    std::optional<Connector> found;
    bool exhausted = true;
};

// Backtracking over families of t disjoint pattern copies through u (inside
// the graph minus avoid and v), checking the v side with the exact factor
// engine; every returned connector is re-verified from scratch.
ConnectorSearch find_connector(const Graph& g, const Graph& h, int u, int v, int t,
                               const VertexSet& avoid = {}, const Caps& caps = {});

// Both g[a] and g[a + s] must have perfect pattern tilings, |a| = h*t, and a
// must be disjoint from s. BadInput when |s| is not the pattern order.
bool verify_absorber(const Graph& g, const Graph& h, const VertexSet& s, const VertexSet& a, int t,
                     const Caps& caps = {});

// An index vector with strictly more than floor(mu*n) pairwise disjoint
// copies realizing it: deleting any mu*n vertices leaves one intact.
struct RobustVector {
    IndexVector vec;
    std::vector<HCopy> family;
};

// Certified robust vectors, sorted; each family holds exactly
// floor(mu*n) + 1 verified pairwise-disjoint copies.
std::vector<RobustVector> robust_vectors(const Graph& g, const Graph& h,
                                         const std::vector<VertexSet>& p, const Rat& mu,
                                         const Caps& caps = {});

// s - t equals unit_i - unit_j coordinate-wise.
struct Transferral {
    int i = 0, j = 0;
    IndexVector s, t;
};

// First pair (by position) of vectors whose difference is a difference of
// two unit vectors. BadInput on mixed arities.
std::optional<Transferral> transferral(const std::vector<IndexVector>& iset);

// Is target an integer combination of the generators? Exact integer
// echelon reduction, no overflow.
bool lattice_member(const std::vector<IndexVector>& generators, const IndexVector& target);

} // namespace arbortile
