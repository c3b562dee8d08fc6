#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arbortile/graph.hpp"

namespace arbortile {

// Injection from pattern vertices into host vertices; map[p] = host vertex.
struct HCopy {
    std::vector<int> map;
};

struct TilingCertificate {
    bool complete = false; // every host vertex covered
    std::vector<HCopy> copies;
};

// Budget knobs; overridable via the ARBORTILE_CAPS env var ("name=value,...").
struct Caps {
    int independence_cap = 80;
    int arboricity_cap = 14;
    int factor_vertex_cap = 60;
    long copy_cap = 1'000'000;
    long node_budget = 50'000'000;  // backtracking nodes for factor searches
    long embed_node_budget = 1'000'000;
    long connector_cap = 100'000;

    static Caps from_env();
    std::string describe() const;
};

// All vertex permutations preserving adjacency.
std::vector<std::vector<int>> automorphisms(const Graph& h);

struct CopyEnumeration {
    std::vector<HCopy> copies; // canonical representative per image-and-role class
    bool truncated = false;
};
// Every embedding of h into g, deduplicated per (image set, automorphism
// orbit); sorted, deterministic. Stops with truncated=true at cap copies.
CopyEnumeration enumerate_copies(const Graph& g, const Graph& h, long cap = 1'000'000);

struct FactorResult {
    bool exists = false;
    TilingCertificate tiling; // complete witness when exists
};
// Decides whether g has a perfect h-tiling. DivisibilityError when |V(h)|
// does not divide |V(g)|; CapExceeded past caps.factor_vertex_cap or when the
// search budget runs out (never a silent wrong answer).
FactorResult has_factor(const Graph& g, const Graph& h, const Caps& caps = {});

struct MaxTilingResult {
    std::vector<HCopy> copies;
    VertexSet uncovered;
};
// A maximum-cardinality family of vertex-disjoint copies. Exact: branch and
// bound with an exact-rational LP bound at the root.
MaxTilingResult max_tiling(const Graph& g, const Graph& h, const Caps& caps = {});

// Checks injectivity, edge preservation, disjointness, and (optionally) full
// coverage. On failure returns false and explains in why.
bool verify_tiling(const Graph& g, const Graph& h, const std::vector<HCopy>& copies,
                   bool require_complete, std::string* why = nullptr);

// Is there a copy of h whose image is exactly the given vertex set?
bool spans_copy(const Graph& g, const Graph& h, const VertexSet& image, HCopy* out = nullptr);

} // namespace arbortile
