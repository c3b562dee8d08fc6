#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbortile/errors.hpp"

namespace arbortile {

// A vertex subset, kept sorted and duplicate-free.
using VertexSet = std::vector<int>;

// Dynamic bitset sized to a host graph; vertex masks and adjacency rows.
class Bits {
public:
    Bits() : n_(0) {}
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    void set(int i) { w_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    Bits& operator&=(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bits& subtract(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

    bool operator==(const Bits& o) const { return w_ == o.w_; }

    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool intersects(const Bits& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    bool contains(const Bits& o) const { // o subset of this
        for (size_t k = 0; k < w_.size(); ++k)
            if (o.w_[k] & ~w_[k]) return false;
        return true;
    }

    // smallest set bit >= from, or -1
    int next(int from = 0) const {
        if (from >= n_) return -1;
        int k = from >> 6;
        std::uint64_t w = w_[k] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (k << 6) + __builtin_ctzll(w);
            if (++k >= static_cast<int>(w_.size())) return -1;
            w = w_[k];
        }
    }

    VertexSet to_set() const {
        VertexSet s;
        for (int i = next(0); i >= 0; i = next(i + 1)) s.push_back(i);
        return s;
    }

    int intersect_count(const Bits& o) const {
        int c = 0;
        for (size_t k = 0; k < w_.size(); ++k) c += __builtin_popcountll(w_[k] & o.w_[k]);
        return c;
    }

    std::uint64_t word0() const { return w_.empty() ? 0 : w_[0]; }

private:
    int n_;
    std::vector<std::uint64_t> w_;
};

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // u < v, sorted lexicographically
    std::vector<Bits> adj;

    Graph() = default;

    static Graph from_edges(int n, std::vector<std::pair<int, int>> es);
    static Graph empty_graph(int n) { return from_edges(n, {}); }
    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int n);
    static Graph complete_multipartite(const std::vector<int>& sizes);
    static Graph star(int leaves); // K_{1,leaves}
    static Graph petersen();
    static Graph disjoint_union(const Graph& a, const Graph& b);

    bool has_edge(int u, int v) const { return u != v && adj[u].test(v); }
    int degree(int v) const { return adj[v].count(); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    Bits full_mask() const {
        Bits b(n);
        for (int i = 0; i < n; ++i) b.set(i);
        return b;
    }
    Bits mask_of(const VertexSet& s) const {
        Bits b(n);
        for (int v : s) b.set(v);
        return b;
    }
};

// induced subgraph on s (sorted); vertex i of the result is s[i]
Graph induced_subgraph(const Graph& g, const VertexSet& s);

int min_degree(const Graph& g); // EmptyGraph if n == 0

struct IndependenceResult {
    int value = 0;
    VertexSet witness;
};
// Exact maximum independent set (branch and bound, greedy clique-cover bound).
// CapExceeded if n > cap; callers above the cap use independence_bounds.
IndependenceResult independence_number(const Graph& g, int cap = 80);

struct IndependenceBounds {
    int lower = 0;
    int upper = 0;
    VertexSet witness; // certifies the lower bound
};
IndependenceBounds independence_bounds(const Graph& g);

// Shortest cycle length; nullopt when acyclic.
std::optional<int> girth(const Graph& g);

bool is_forest(const Graph& g, const VertexSet& s);
bool is_forest(const Graph& g);
bool is_independent(const Graph& g, const VertexSet& s);

std::vector<VertexSet> components(const Graph& g);
bool is_connected(const Graph& g);

enum class GraphFormat { EdgeList, Graph6 };

Graph parse_graph(const std::string& text, GraphFormat fmt);
std::string emit_graph(const Graph& g, GraphFormat fmt);
GraphFormat parse_format_name(const std::string& name); // "edge-list" | "graph6"

} // namespace arbortile
