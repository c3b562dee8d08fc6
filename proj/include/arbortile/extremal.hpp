#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbortile/factor.hpp"
#include "arbortile/graph.hpp"
#include "arbortile/rational.hpp"

namespace arbortile {

// Random graph with girth > g_min and certified independence number at most
// alpha_frac * n: sparse binomial start, one deleted vertex per short cycle,
// lowest-degree trim back to exactly n, retried over derived seeds. The
// independence check is exact for n <= 80 and a certified upper bound above.
// GenFail reports the best attempt. Same seed, same graph.
Graph gen_high_girth_low_alpha(int n, int g_min, const Rat& alpha_frac, std::uint64_t seed);

enum class ExtremalFamily { G0, TwoPart, MultiPart, SpaceBarrier };

const char* family_name(ExtremalFamily f);

struct ExtremalInstance {
    Graph graph;
    std::vector<VertexSet> blocks;
    ExtremalFamily family = ExtremalFamily::G0;
    int h = 0;   // pattern order
    int ell = 0; // pattern arboricity
    int sigma = 0;
    int p = 0; // G0: first clique's order
    std::optional<long> hcf1;
    long hcf2 = 0;
    Rat alpha_frac; // generator families; zero for G0
    std::uint64_t seed = 0;
};

// Two disjoint cliques of orders p and n-p, p picked from {floor(n/2),
// floor(n/2)+1} to dodge divisibility by the component-order gcd.
// NotApplicable when that gcd is 1.
ExtremalInstance construct_g0(int n, const Graph& h);

// Blocks of floor(n/2)+1 and ceil(n/2)-1, complete bipartite between,
// high-girth low-independence interiors. Needs arboricity 2, component
// gcd 1 and block-difference gcd >= 3.
ExtremalInstance construct_two_part(int n, const Graph& h, std::uint64_t seed,
                                    const Rat& alpha_frac = rat(1, 3));

// ell = ar(h) >= 3 near-equal blocks, the first one vertex larger than the
// second; needs block-difference gcd != 1.
ExtremalInstance construct_multi_part(int n, const Graph& h, std::uint64_t seed,
                                      const Rat& alpha_frac = rat(1, 4));

// First block of sigma*n/h - 1 vertices (BadN unless integral), the rest
// near (h-sigma)n/((ell-1)h) with the second one larger.
ExtremalInstance construct_space_barrier(int n, const Graph& h, std::uint64_t seed,
                                         const Rat& alpha_frac = rat(1, 4));

enum class CertificateKind { DivisibilityMod2, DifferenceMod1, SizeCounting };

const char* certificate_kind_name(CertificateKind k);

struct NoFactorCertificate {
    CertificateKind kind = CertificateKind::DivisibilityMod2;
    long modulus = 0; // divisibility families; 0 when the gcd is infinite
    long bound = 0;   // size-counting: max disjoint copies, below n/h
    std::vector<std::string> premises; // each re-checked against the graph
    bool solver_checked = false;       // exact solver agreed (n <= 60)
};

// Re-derives the family's no-factor argument from the actual graph;
// PremiseViolated names the first failing check. Small instances are
// cross-checked with the exact solver, which must agree.
NoFactorCertificate certify_no_factor(const ExtremalInstance& inst, const Graph& h,
                                      const Caps& caps = {});

struct ClaimCheck {
    std::string claim;
    bool pass = false;
    std::string detail;
};

struct ClaimsReport {
    std::vector<ClaimCheck> checks;
    bool all_pass = true;
};

// Recomputes the advertised minimum-degree bound, the independence bound
// (exact where block structure or size allows, certified interval above),
// and the family's structural shape. Failures are reported, never thrown.
ClaimsReport verify_claims(const ExtremalInstance& inst, const Graph& h, const Rat& alpha_frac);

} // namespace arbortile
