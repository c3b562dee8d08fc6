#include "arbortile/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

namespace arbortile {

namespace {

// Can block ∪ {v} still induce a forest? Blocks are small; recheck directly.
bool block_stays_forest(const Graph& h, const VertexSet& block, int v) {
    VertexSet s = block;
    s.push_back(v);
    std::sort(s.begin(), s.end());
    return is_forest(h, s);
}

// Assign vertices 0..n-1 to at most r blocks, restricted-growth style (vertex
// may open block k only if blocks 0..k-1 are open). Calls sink on every
// complete assignment using exactly r nonempty blocks; returns false from sink
// to stop early.
template <typename Sink>
bool enumerate_partitions(const Graph& h, int r, Sink&& sink) {
    std::vector<VertexSet> blocks;
    std::vector<int> assign(h.n, -1);

    // feasible only if every vertex can go somewhere; recursion with pruning
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == h.n) {
            if (static_cast<int>(blocks.size()) != r) return true; // not exactly r: skip, continue
            return sink(blocks);
        }
        // exactly-r needs enough vertices left to open the remaining blocks
        int remaining = h.n - v;
        int need_open = r - static_cast<int>(blocks.size());
        if (remaining < need_open) return true;
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (!block_stays_forest(h, blocks[b], v)) continue;
            blocks[b].push_back(v);
            assign[v] = static_cast<int>(b);
            if (!rec(v + 1)) return false;
            blocks[b].pop_back();
        }
        if (static_cast<int>(blocks.size()) < r) {
            blocks.push_back({v});
            assign[v] = static_cast<int>(blocks.size()) - 1;
            if (!rec(v + 1)) return false;
            blocks.pop_back();
        }
        assign[v] = -1;
        return true;
    };
    return rec(0);
}

void check_cap(const Graph& h, int cap, const char* what) {
    if (h.n > cap)
        throw CapExceeded(std::string(what) + ": |V|=" + std::to_string(h.n) + " exceeds cap " + std::to_string(cap));
    if (h.n == 0) throw EmptyGraph(std::string(what) + " of empty pattern");
}

} // namespace

ArboricityResult vertex_arboricity(const Graph& h, int cap) {
    check_cap(h, cap, "vertex_arboricity");
    for (int r = 1; r <= h.n; ++r) {
        ArboricityResult res;
        bool found = false;
        enumerate_partitions(h, r, [&](const std::vector<VertexSet>& blocks) {
            res.value = r;
            res.witness = blocks;
            found = true;
            return false; // first witness suffices
        });
        if (found) return res;
    }
    throw ConstructionBug("no acyclic partition found; singleton blocks always work");
}

std::vector<AcyclicPartition> optimal_acyclic_partitions(const Graph& h, int cap) {
    check_cap(h, cap, "optimal_acyclic_partitions");
    int r = vertex_arboricity(h, cap).value;
    std::vector<AcyclicPartition> out;
    const size_t hard_limit = 1u << 21;
    enumerate_partitions(h, r, [&](const std::vector<VertexSet>& blocks) {
        out.push_back(blocks);
        if (out.size() > hard_limit)
            throw CapExceeded("optimal_acyclic_partitions: more than " + std::to_string(hard_limit) + " partitions");
        return true;
    });
    return out;
}

SigmaCritical sigma_and_critical(const Graph& h, int cap) {
    auto parts = optimal_acyclic_partitions(h, cap);
    SigmaCritical sc;
    sc.ar = static_cast<int>(parts.front().size());
    sc.sigma = h.n;
    for (const auto& p : parts)
        for (const auto& b : p) sc.sigma = std::min(sc.sigma, static_cast<int>(b.size()));
    if (sc.ar == 1) {
        // forests have no meaningful critical value; pinned to 1 and flagged
        sc.forest_convention = true;
        sc.ar_cr = 1;
        return sc;
    }
    sc.ar_cr = Rat(static_cast<long>(sc.ar - 1) * h.n, h.n - sc.sigma);
    sc.ar_cr.canonicalize();
    return sc;
}

HtildeResult in_htilde(const Graph& h, int cap) {
    auto parts = optimal_acyclic_partitions(h, cap);
    int r = static_cast<int>(parts.front().size());
    HtildeResult res;
    for (const auto& p : parts) {
        for (size_t i = 0; i < p.size(); ++i) {
            if (!is_independent(h, p[i])) continue;
            size_t t = p[i].size();
            bool ok = true;
            for (size_t j = 0; j < p.size(); ++j)
                if (j != i && p[j].size() != 2 * t) ok = false;
            if (!ok) continue;
            res.member = true;
            res.witness.clear();
            res.witness.push_back(p[i]);
            for (size_t j = 0; j < p.size(); ++j)
                if (j != i) res.witness.push_back(p[j]);
            return res;
        }
    }
    (void)r;
    return res;
}

int f_value(const Graph& h, int cap) {
    int ar = vertex_arboricity(h, cap).value;
    return in_htilde(h, cap).member ? 2 * ar - 1 : 2 * ar;
}

HcfReport hcf_report(const Graph& h, int cap) {
    auto parts = optimal_acyclic_partitions(h, cap);
    HcfReport rep;
    rep.ar = static_cast<int>(parts.front().size());

    std::vector<long> diffs;
    for (const auto& p : parts) {
        std::vector<long> sizes;
        for (const auto& b : p) sizes.push_back(static_cast<long>(b.size()));
        std::sort(sizes.begin(), sizes.end());
        for (size_t i = 0; i + 1 < sizes.size(); ++i)
            if (sizes[i + 1] - sizes[i] > 0) diffs.push_back(sizes[i + 1] - sizes[i]);
    }
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    rep.diff_set = diffs;
    if (!diffs.empty()) {
        long g = 0;
        for (long d : diffs) g = std::gcd(g, d);
        rep.hcf1 = g;
    }

    long g2 = 0;
    for (const auto& comp : components(h)) g2 = std::gcd(g2, static_cast<long>(comp.size()));
    rep.hcf2 = g2;

    if (rep.ar == 1) {
        rep.hcf_is_one = (rep.hcf2 == 1);
    } else if (rep.ar == 2) {
        rep.hcf_is_one = (rep.hcf2 == 1) && rep.hcf1.has_value() && *rep.hcf1 <= 2;
    } else {
        rep.hcf_is_one = rep.hcf1.has_value() && *rep.hcf1 == 1;
    }
    return rep;
}

std::pair<VertexSet, VertexSet> forest_bipartition(const Graph& t) {
    if (!is_forest(t)) throw NotAForest("forest_bipartition needs an acyclic input");
    std::vector<int> side(t.n, -1);
    for (int root = 0; root < t.n; ++root) {
        if (side[root] != -1) continue;
        side[root] = 0; // smallest vertex of the component anchors side 0
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = t.adj[u].next(0); v >= 0; v = t.adj[u].next(v + 1))
                if (side[v] == -1) {
                    side[v] = 1 - side[u];
                    q.push(v);
                }
        }
    }
    std::pair<VertexSet, VertexSet> out;
    for (int v = 0; v < t.n; ++v) (side[v] == 0 ? out.first : out.second).push_back(v);
    return out;
}

Rat degree_threshold_from_f(int f, long n, const Rat& mu) {
    Rat a = (Rat(1) - Rat(2, f) + mu) * n;
    Rat b = (Rat(1, 2) + mu) * n;
    a.canonicalize();
    b.canonicalize();
    return std::max(a, b);
}

Rat degree_threshold(const Graph& h, long n, const Rat& mu, int cap) {
    return degree_threshold_from_f(f_value(h, cap), n, mu);
}

InvariantReport invariant_report(const Graph& h, int cap) {
    InvariantReport rep;
    rep.n = h.n;
    rep.m = h.edge_count();
    auto sc = sigma_and_critical(h, cap);
    rep.ar = sc.ar;
    rep.sigma = sc.sigma;
    rep.ar_cr = sc.ar_cr;
    rep.forest_convention = sc.forest_convention;
    auto ht = in_htilde(h, cap);
    rep.in_htilde = ht.member;
    rep.f = ht.member ? 2 * sc.ar - 1 : 2 * sc.ar;
    auto hc = hcf_report(h, cap);
    rep.hcf1 = hc.hcf1;
    rep.hcf2 = hc.hcf2;
    rep.hcf_is_one = hc.hcf_is_one;
    return rep;
}

} // namespace arbortile
