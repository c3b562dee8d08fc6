#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbortile/embed.hpp"
#include "arbortile/factor.hpp"
#include "arbortile/graph.hpp"
#include "arbortile/rational.hpp"

namespace arbortile {

// Cluster-level multigraph with edge multiplicities capped at 2. Degrees
// count a double-edge twice.
struct Multigraph2 {
    int k = 0;
    std::map<std::pair<int, int>, int> mult; // key (i, j) with i < j; value 1 or 2

    int multiplicity(int i, int j) const; // 0 when absent
    void set_mult(int i, int j, int m);   // m in {0, 1, 2}; 0 erases
    int degree(int i) const;
    int min_degree() const; // 0 when k == 0

    // "k" on the first line, then one "i j mult" line per edge.
    std::string to_text() const;
    static Multigraph2 from_text(const std::string& text);
};

// Density margins for the reduced multigraph and the tiling pipeline.
// epsilon is carried for reporting only; it is never re-verified here.
struct Thresholds {
    Rat beta;
    Rat epsilon;
    Rat mu;
    Rat eta;

    void validate() const; // all four must lie in (0, 1)
};

// A clique placement across clusters: every support cluster absorbs one or
// two of the clique's vertices. Two pair-carrying clusters must be joined by
// a double-edge; any other support pair needs at least a single edge.
struct EmbStructure {
    VertexSet support;            // sorted cluster ids
    std::vector<int> mult_assign; // parallel to support; 1 or 2

    int load(int cluster) const; // 0 off the support
    int total_load() const;
    int doubled_count() const;

    friend bool operator==(const EmbStructure& x, const EmbStructure& y) {
        return x.support == y.support && x.mult_assign == y.mult_assign;
    }
    friend bool operator<(const EmbStructure& x, const EmbStructure& y) {
        if (x.support != y.support) return x.support < y.support;
        return x.mult_assign < y.mult_assign;
    }
};

bool structure_ok(const Multigraph2& r, const EmbStructure& s, std::string* why = nullptr);

// Nonnegative weights on structures; the load of a cluster is the weighted
// multiplicity it receives, and must stay <= 1.
struct FractionalTiling {
    std::vector<EmbStructure> structures; // canonical order, no duplicates
    std::vector<Rat> weights;             // parallel

    Rat load(int cluster) const;
    Rat total_load() const; // summed over all clusters
};

bool tiling_ok(const Multigraph2& r, const FractionalTiling& ft, std::string* why = nullptr);

// Double-edge at density >= 1/2 + beta, single at [beta, 1/2 + beta), exact
// comparisons throughout. ClusterSizeError unless all clusters are equal.
Multigraph2 build_reduced(const ClusterSystem& cs, const Thresholds& th);

// Every cluster degree >= 2(1 - 2/f + mu/2)k, exactly.
bool check_degree_bound(const Multigraph2& r, int f, const Rat& mu);

// All placements of an rr-clique into r, deduplicated, in canonical order:
// for each split rr = a + 2b the support has a singles and b pairs.
std::vector<EmbStructure> enumerate_structures(const Multigraph2& r, int rr, long cap = 200000);

struct FracTileResult {
    FractionalTiling tiling;
    Rat value;             // total load at the optimum
    std::vector<Rat> dual; // per cluster; certifies optimality
};
// Maximizes total load subject to per-cluster load <= 1 by exact simplex.
FracTileResult fractional_tiling(const Multigraph2& r, int rr);

// Rewrites a tiling by 4-clique placements into one by 3-clique placements
// with every per-cluster load unchanged: a plain 4-support splits into its
// four triangles at a third of the weight; a 3-support with one pair yields
// the two single+pair edges at a third plus the plain triangle at two
// thirds; a doubled pair yields both of its orientations at two thirds.
// Anything else is UnknownCase.
FractionalTiling convert_4_to_3(const FractionalTiling& omega);

// Rewrites to 2-clique placements: each cluster keeps its load via a
// singleton pair-placement. A singleton carries multiplicity 2, so its
// weight is half the load it preserves.
FractionalTiling convert_4_to_2(const FractionalTiling& omega);

struct DoubleEdgeSearch {
    std::optional<EmbStructure> found;
    // Absent although min degree > (1 - 2/rr)2k (rr >= 4) promises presence;
    // that would contradict a proved bound, so it is surfaced loudly.
    bool alarm = false;
};
// Searches for an (rr+1)-clique placement carrying the given double-edge's
// clusters as pairs. NotDoubleEdge unless the pair has multiplicity 2.
DoubleEdgeSearch structure_containing_double_edge(const Multigraph2& r, int rr,
                                                  std::pair<int, int> pair);

// First rr-clique placement whose support meets at least two blocks.
std::optional<EmbStructure> crossing_structure(const Multigraph2& r, int rr,
                                               const std::vector<VertexSet>& blocks);

// First rr-clique placement with at most one support cluster outside q_v.
std::optional<EmbStructure> vertex_structure(const Multigraph2& r, int rr, const VertexSet& q_v);

struct StructureAccount {
    EmbStructure structure;
    Rat weight; // after the (1 - eta) rescale
    Rat quota;  // weight * cluster size
    int a = 0, b = 0;
    int planned = 0;   // gadget copies the quota allows
    int extracted = 0; // gadget copies actually embedded
    int vertices = 0;  // host vertices they cover
};

struct PipelineResult {
    Multigraph2 reduced;
    Rat lp_value;
    TilingCertificate certificate; // pattern copies in host numbering
    int covered = 0;
    Rat coverage;
    std::vector<StructureAccount> accounts;
    std::vector<std::string> diagnostics; // every stage shortfall, in order
};

// End to end: reduced multigraph, fractional tiling by f(h)-clique
// placements (lexicographically preferring fewer pair-placements among
// optima), weights rescaled by (1 - eta) into per-cluster vertex quotas,
// greedy vertex-disjoint gadget extraction against those quotas, each gadget
// converted to pattern copies. Shortfalls degrade the result and are
// reported in diagnostics; the certificate always verifies.
PipelineResult almost_tiling_pipeline(const Graph& g, const ClusterSystem& cs, const Graph& h,
                                      const Thresholds& th, const Caps& caps = {});

} // namespace arbortile
