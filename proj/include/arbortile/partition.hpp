#pragma once

#include <optional>

#include "arbortile/graph.hpp"
#include "arbortile/rational.hpp"

namespace arbortile {

// Partition of the pattern's vertices into blocks, each inducing a forest.
// Blocks are kept in canonical order (sorted by smallest element).
using AcyclicPartition = std::vector<VertexSet>;

struct ArboricityResult {
    int value = 0;
    AcyclicPartition witness;
};
// Minimum number of forest-inducing blocks. Exact search; cap guards blowup.
ArboricityResult vertex_arboricity(const Graph& h, int cap = 14);

// Every partition into exactly ar(h) forest-inducing blocks, deduplicated up
// to block order.
std::vector<AcyclicPartition> optimal_acyclic_partitions(const Graph& h, int cap = 14);

struct SigmaCritical {
    int ar = 0;
    int sigma = 0; // smallest block size over all optimal partitions
    Rat ar_cr;     // (ar-1)*n / (n - sigma), exact
    bool forest_convention = false; // ar == 1: ar_cr defined as 1, flagged
};
SigmaCritical sigma_and_critical(const Graph& h, int cap = 14);

struct HtildeResult {
    bool member = false;
    AcyclicPartition witness; // when member: block 0 independent, every other
                              // block exactly twice its size
};
HtildeResult in_htilde(const Graph& h, int cap = 14);

// 2*ar - 1 for members of the balanced family above, else 2*ar.
int f_value(const Graph& h, int cap = 14);

struct HcfReport {
    int ar = 0;
    std::optional<long> hcf1; // gcd of block-size differences; nullopt = infinite (empty set)
    long hcf2 = 0;            // gcd of component orders
    bool hcf_is_one = false;
    std::vector<long> diff_set; // sorted positive consecutive differences, all optimal partitions
};
HcfReport hcf_report(const Graph& h, int cap = 14);

// Proper 2-coloring of a forest; smallest vertex of each component on side 0.
// Edgeless input lands everything on side 0. NotAForest otherwise.
std::pair<VertexSet, VertexSet> forest_bipartition(const Graph& t);

// max{(1 - 2/f + mu) n, (1/2 + mu) n} as an exact rational.
Rat degree_threshold(const Graph& h, long n, const Rat& mu, int cap = 14);
Rat degree_threshold_from_f(int f, long n, const Rat& mu);

struct InvariantReport {
    int n = 0, m = 0;
    int ar = 0, sigma = 0, f = 0;
    Rat ar_cr;
    bool forest_convention = false;
    bool in_htilde = false;
    std::optional<long> hcf1;
    long hcf2 = 0;
    bool hcf_is_one = false;
};
InvariantReport invariant_report(const Graph& h, int cap = 14);

} // namespace arbortile
