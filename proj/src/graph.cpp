#include "arbortile/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace arbortile {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> es) {
    if (n < 0) throw BadInput("negative vertex count");
    Graph g;
    g.n = n;
    for (auto& [u, v] : es) {
        if (u == v) throw BadInput("self loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw BadInput("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u > v) std::swap(u, v);
    }
    std::sort(es.begin(), es.end());
    auto dup = std::adjacent_find(es.begin(), es.end());
    if (dup != es.end())
        throw BadInput("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));
    g.edges = std::move(es);
    g.adj.assign(n, Bits(n));
    for (auto [u, v] : g.edges) {
        g.adj[u].set(v);
        g.adj[v].set(u);
    }
    return g;
}

Graph Graph::complete(int n) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return from_edges(n, std::move(es));
}

Graph Graph::cycle(int n) {
    if (n < 3) throw BadInput("cycle needs >= 3 vertices");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return from_edges(n, std::move(es));
}

Graph Graph::path(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return from_edges(n, std::move(es));
}

Graph Graph::complete_multipartite(const std::vector<int>& sizes) {
    int n = 0;
    for (int s : sizes) {
        if (s <= 0) throw BadInput("multipartite class size must be positive");
        n += s;
    }
    std::vector<int> cls;
    for (size_t c = 0; c < sizes.size(); ++c)
        for (int i = 0; i < sizes[c]; ++i) cls.push_back(static_cast<int>(c));
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (cls[u] != cls[v]) es.emplace_back(u, v);
    return from_edges(n, std::move(es));
}

Graph Graph::star(int leaves) {
    std::vector<std::pair<int, int>> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return from_edges(leaves + 1, std::move(es));
}

Graph Graph::petersen() {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 5; ++i) {
        es.emplace_back(i, (i + 1) % 5);         // outer cycle
        es.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
        es.emplace_back(i, 5 + i);               // spokes
    }
    return from_edges(10, std::move(es));
}

Graph Graph::disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> es = a.edges;
    for (auto [u, v] : b.edges) es.emplace_back(u + a.n, v + a.n);
    return from_edges(a.n + b.n, std::move(es));
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    std::vector<int> idx(g.n, -1);
    for (size_t i = 0; i < s.size(); ++i) {
        int v = s[i];
        if (v < 0 || v >= g.n) throw BadInput("vertex out of range in subset");
        if (idx[v] != -1) throw BadInput("duplicate vertex in subset");
        idx[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : g.edges)
        if (idx[u] >= 0 && idx[v] >= 0) es.emplace_back(idx[u], idx[v]);
    return Graph::from_edges(static_cast<int>(s.size()), std::move(es));
}

int min_degree(const Graph& g) {
    if (g.n == 0) throw EmptyGraph("min_degree of empty graph");
    int d = g.n;
    for (int v = 0; v < g.n; ++v) d = std::min(d, g.degree(v));
    return d;
}

namespace {

// Greedy clique cover of g[pool]: upper bound on the independence number.
int clique_cover_bound(const Graph& g, const Bits& pool) {
    Bits left = pool;
    int cliques = 0;
    for (int v = left.next(0); v >= 0; v = left.next(0)) {
        // grow a clique starting at the smallest remaining vertex
        Bits cand = left & g.adj[v];
        left.reset(v);
        int u = v;
        while (true) {
            int w = cand.next(0);
            if (w < 0) break;
            // pick the candidate with most neighbors among remaining candidates
            int best = -1, bestdeg = -1;
            for (int x = cand.next(0); x >= 0; x = cand.next(x + 1)) {
                int d = cand.intersect_count(g.adj[x]);
                if (d > bestdeg) {
                    bestdeg = d;
                    best = x;
                }
            }
            u = best;
            left.reset(u);
            cand &= g.adj[u];
        }
        ++cliques;
    }
    return cliques;
}

// Greedy independent set: min-degree-first within pool.
VertexSet greedy_independent(const Graph& g, Bits pool) {
    VertexSet out;
    while (pool.any()) {
        int best = -1, bestdeg = g.n + 1;
        for (int v = pool.next(0); v >= 0; v = pool.next(v + 1)) {
            int d = pool.intersect_count(g.adj[v]);
            if (d < bestdeg) {
                bestdeg = d;
                best = v;
            }
        }
        out.push_back(best);
        pool.reset(best);
        pool.subtract(g.adj[best]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct MisSearch {
    const Graph& g;
    int best = 0;
    Bits best_set;
    Bits cur;

    explicit MisSearch(const Graph& gg) : g(gg), best_set(gg.n), cur(gg.n) {}

    void run(Bits pool, int cur_count) {
        if (!pool.any()) {
            if (cur_count > best) {
                best = cur_count;
                best_set = cur;
            }
            return;
        }
        if (cur_count + clique_cover_bound(g, pool) <= best) return;
        // branch on a max-degree vertex in the pool
        int bv = -1, bd = -1;
        for (int v = pool.next(0); v >= 0; v = pool.next(v + 1)) {
            int d = pool.intersect_count(g.adj[v]);
            if (d > bd) {
                bd = d;
                bv = v;
            }
        }
        // include bv
        Bits inc = pool;
        inc.reset(bv);
        inc.subtract(g.adj[bv]);
        cur.set(bv);
        run(inc, cur_count + 1);
        cur.reset(bv);
        // exclude bv
        Bits exc = pool;
        exc.reset(bv);
        run(exc, cur_count);
    }
};

} // namespace

IndependenceResult independence_number(const Graph& g, int cap) {
    if (g.n > cap)
        throw CapExceeded("independence_number: n=" + std::to_string(g.n) + " exceeds cap " +
                          std::to_string(cap) + "; use independence_bounds");
    IndependenceResult res;
    for (const auto& comp : components(g)) {
        Graph h = induced_subgraph(g, comp);
        MisSearch s(h);
        VertexSet seed = greedy_independent(h, h.full_mask());
        s.best = static_cast<int>(seed.size());
        s.best_set = h.mask_of(seed);
        s.run(h.full_mask(), 0);
        res.value += s.best;
        for (int i : s.best_set.to_set()) res.witness.push_back(comp[i]);
    }
    std::sort(res.witness.begin(), res.witness.end());
    return res;
}

IndependenceBounds independence_bounds(const Graph& g) {
    IndependenceBounds b;
    for (const auto& comp : components(g)) {
        Graph h = induced_subgraph(g, comp);
        VertexSet greedy = greedy_independent(h, h.full_mask());
        b.lower += static_cast<int>(greedy.size());
        b.upper += clique_cover_bound(h, h.full_mask());
        for (int i : greedy) b.witness.push_back(comp[i]);
    }
    std::sort(b.witness.begin(), b.witness.end());
    return b;
}

std::optional<int> girth(const Graph& g) {
    int best = -1;
    std::vector<int> depth(g.n), parent(g.n);
    for (int root = 0; root < g.n; ++root) {
        std::fill(depth.begin(), depth.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::queue<int> q;
        depth[root] = 0;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (best > 0 && 2 * depth[u] >= best) continue; // deeper layers cannot improve
            for (int v = g.adj[u].next(0); v >= 0; v = g.adj[u].next(v + 1)) {
                if (depth[v] == -1) {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    q.push(v);
                } else if (v != parent[u] && u != parent[v]) {
                    int len = depth[u] + depth[v] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

bool is_forest(const Graph& g, const VertexSet& s) {
    std::vector<int> idx(g.n, -1);
    for (size_t i = 0; i < s.size(); ++i) idx[s[i]] = static_cast<int>(i);
    std::vector<int> uf(s.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto [u, v] : g.edges) {
        if (idx[u] < 0 || idx[v] < 0) continue;
        int a = find(idx[u]), b = find(idx[v]);
        if (a == b) return false;
        uf[a] = b;
    }
    return true;
}

bool is_forest(const Graph& g) {
    VertexSet all(g.n);
    std::iota(all.begin(), all.end(), 0);
    return is_forest(g, all);
}

bool is_independent(const Graph& g, const VertexSet& s) {
    Bits m = g.mask_of(s);
    for (int v : s)
        if (m.intersects(g.adj[v])) return false;
    return true;
}

std::vector<VertexSet> components(const Graph& g) {
    std::vector<VertexSet> out;
    std::vector<char> seen(g.n, 0);
    for (int root = 0; root < g.n; ++root) {
        if (seen[root]) continue;
        VertexSet comp;
        std::queue<int> q;
        q.push(root);
        seen[root] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int v = g.adj[u].next(0); v >= 0; v = g.adj[u].next(v + 1))
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

// ---- formats ----

namespace {

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long n = -1;
    std::vector<std::pair<int, int>> es;
    while (std::getline(in, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        if (n < 0) {
            std::string tok;
            if (!(ls >> tok)) continue; // blank before header
            try {
                size_t pos = 0;
                n = std::stol(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument("");
            } catch (...) {
                throw ParseError("line " + std::to_string(lineno) + ": expected vertex count, got '" + tok + "'");
            }
            std::string extra;
            if (ls >> extra)
                throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "' after vertex count");
            if (n < 0) throw ParseError("line " + std::to_string(lineno) + ": negative vertex count");
            continue;
        }
        long u, v;
        if (!(ls >> u)) continue; // blank line
        if (!(ls >> v)) throw ParseError("line " + std::to_string(lineno) + ": edge needs two endpoints");
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("line " + std::to_string(lineno) + ": endpoint out of range [0," + std::to_string(n - 1) + "]");
        if (u == v) throw ParseError("line " + std::to_string(lineno) + ": self loop");
        es.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (n < 0) throw ParseError("empty input: missing vertex count line");
    try {
        return Graph::from_edges(static_cast<int>(n), std::move(es));
    } catch (const BadInput& e) {
        throw ParseError(e.what());
    }
}

std::string emit_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n << "\n";
    for (auto [u, v] : g.edges) out << u << " " << v << "\n";
    return out.str();
}

Graph parse_graph6(const std::string& text) {
    // strip trailing whitespace/newline
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    if (!s.empty() && s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
    if (s.empty()) throw ParseError("empty graph6 input");
    size_t pos = 0;
    auto need = [&](size_t k) {
        if (pos + k > s.size()) throw ParseError("graph6: truncated at byte " + std::to_string(pos));
    };
    auto val = [&](size_t i) {
        unsigned char c = s[i];
        if (c < 63 || c > 126)
            throw ParseError("graph6: invalid byte " + std::to_string(int(c)) + " at position " + std::to_string(i));
        return static_cast<int>(c - 63);
    };
    long n;
    if (s[pos] == '~') {
        ++pos;
        if (pos < s.size() && s[pos] == '~') throw ParseError("graph6: vertex counts above 258047 unsupported");
        need(3);
        n = (long(val(pos)) << 12) | (long(val(pos + 1)) << 6) | long(val(pos + 2));
        pos += 3;
    } else {
        need(1);
        n = val(pos);
        ++pos;
    }
    long bits = n * (n - 1) / 2;
    long bytes = (bits + 5) / 6;
    need(static_cast<size_t>(bytes));
    if (pos + static_cast<size_t>(bytes) != s.size())
        throw ParseError("graph6: length mismatch (expected " + std::to_string(pos + bytes) + " bytes, got " +
                         std::to_string(s.size()) + ")");
    std::vector<std::pair<int, int>> es;
    long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            int b = val(pos + bit / 6);
            if ((b >> (5 - bit % 6)) & 1) es.emplace_back(i, j);
        }
    return Graph::from_edges(static_cast<int>(n), std::move(es));
}

std::string emit_graph6(const Graph& g) {
    std::string out;
    long n = g.n;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    } else {
        throw BadInput("graph6: vertex counts above 258047 unsupported");
    }
    long bits = n * (n - 1) / 2;
    std::vector<int> group((bits + 5) / 6, 0);
    long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if (g.has_edge(i, j)) group[bit / 6] |= 1 << (5 - bit % 6);
    for (int b : group) out.push_back(static_cast<char>(b + 63));
    return out;
}

} // namespace

Graph parse_graph(const std::string& text, GraphFormat fmt) {
    return fmt == GraphFormat::EdgeList ? parse_edge_list(text) : parse_graph6(text);
}

std::string emit_graph(const Graph& g, GraphFormat fmt) {
    return fmt == GraphFormat::EdgeList ? emit_edge_list(g) : emit_graph6(g);
}

GraphFormat parse_format_name(const std::string& name) {
    if (name == "edge-list" || name == "edgelist" || name == "el") return GraphFormat::EdgeList;
    if (name == "graph6" || name == "g6") return GraphFormat::Graph6;
    throw BadInput("unknown graph format '" + name + "'");
}

} // namespace arbortile
