#include "arbortile/embed.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace arbortile {

namespace {

enum class RunStatus { Exhausted, Stopped, OutOfBudget };

struct PatternOrder {
    std::vector<int> seq;
    std::vector<std::vector<int>> back;
};

PatternOrder make_order(const Graph& h) {
    PatternOrder po;
    std::vector<char> placed(h.n, 0);
    while (static_cast<int>(po.seq.size()) < h.n) {
        int best = -1, bestc = -1;
        for (int v = 0; v < h.n; ++v) {
            if (placed[v]) continue;
            int c = 0;
            for (int u : po.seq)
                if (h.has_edge(u, v)) ++c;
            if (c > bestc || (c == bestc && (best < 0 || h.degree(v) > h.degree(best)))) {
                bestc = c;
                best = v;
            }
        }
        po.seq.push_back(best);
        placed[best] = 1;
    }
    po.back.resize(h.n);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < i; ++j)
            if (h.has_edge(po.seq[i], po.seq[j])) po.back[i].push_back(j);
    return po;
}

// Backtracking embedding with a per-pattern-vertex domain.
RunStatus for_each_constrained(const Graph& g, const Graph& pat, const std::vector<Bits>& domains,
                               long& budget,
                               const std::function<bool(const std::vector<int>&)>& cb) {
    PatternOrder po = make_order(pat);
    std::vector<int> map(pat.n, -1);
    Bits used(g.n);
    std::function<RunStatus(int)> rec = [&](int pos) -> RunStatus {
        if (pos == pat.n) return cb(map) ? RunStatus::Exhausted : RunStatus::Stopped;
        int pv = po.seq[pos];
        Bits cand = domains[pv];
        for (int j : po.back[pos]) cand &= g.adj[map[po.seq[j]]];
        cand.subtract(used);
        for (int v = cand.next(0); v >= 0; v = cand.next(v + 1)) {
            if (--budget < 0) return RunStatus::OutOfBudget;
            map[pv] = v;
            used.set(v);
            RunStatus st = rec(pos + 1);
            used.reset(v);
            map[pv] = -1;
            if (st != RunStatus::Exhausted) return st;
        }
        return RunStatus::Exhausted;
    };
    return rec(0);
}

Bits set_to_bits(int n, const VertexSet& s) {
    Bits b(n);
    for (int v : s) b.set(v);
    return b;
}

// Chains of s distinct pool vertices whose every step keeps each target at
// least beta/2 of its previous size. cb(chosen, shrunk targets).
RunStatus for_each_chain(const Graph& g, const VertexSet& pool, const std::vector<Bits>& targets,
                         int s, const Rat& beta, long& budget,
                         const std::function<bool(const std::vector<int>&, const std::vector<Bits>&)>& cb) {
    std::vector<int> chosen;
    std::vector<Bits> cur = targets;
    std::function<RunStatus()> rec = [&]() -> RunStatus {
        if (static_cast<int>(chosen.size()) == s) {
            return cb(chosen, cur) ? RunStatus::Exhausted : RunStatus::Stopped;
        }
        for (int v : pool) {
            if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
            if (--budget < 0) return RunStatus::OutOfBudget;
            std::vector<Bits> next;
            next.reserve(cur.size());
            bool ok = true;
            for (const Bits& t : cur) {
                Bits nt = t & g.adj[v];
                // exact check: |nt| >= (beta/2) |t|
                if (Rat(2 * static_cast<long>(nt.count())) < beta * Rat(static_cast<long>(t.count()))) {
                    ok = false;
                    break;
                }
                next.push_back(std::move(nt));
            }
            if (!ok) continue;
            chosen.push_back(v);
            std::swap(cur, next);
            RunStatus st = rec();
            std::swap(cur, next);
            chosen.pop_back();
            if (st != RunStatus::Exhausted) return st;
        }
        return RunStatus::Exhausted;
    };
    return rec();
}

} // namespace

ClusterSystem make_cluster_system(const Graph& host, std::vector<VertexSet> clusters) {
    ClusterSystem cs;
    std::vector<char> seen(host.n, 0);
    for (auto& cl : clusters) {
        std::sort(cl.begin(), cl.end());
        for (int v : cl) {
            if (v < 0 || v >= host.n) throw BadInput("cluster vertex out of range");
            if (seen[v]) throw BadInput("clusters are not disjoint at vertex " + std::to_string(v));
            seen[v] = 1;
        }
        if (cl.empty()) throw BadInput("empty cluster");
    }
    cs.host = host;
    cs.clusters = std::move(clusters);
    size_t k = cs.clusters.size();
    cs.density.assign(k, std::vector<Rat>(k, Rat(0)));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            long e = 0;
            Bits bj = set_to_bits(host.n, cs.clusters[j]);
            for (int u : cs.clusters[i]) e += host.adj[u].intersect_count(bj);
            Rat d = rat(e, static_cast<long>(cs.clusters[i].size()) *
                               static_cast<long>(cs.clusters[j].size()));
            cs.density[i][j] = cs.density[j][i] = d;
        }
    return cs;
}

VertexSet dense_core(const Graph& g, int d) {
    std::vector<int> deg(g.n);
    std::vector<char> alive(g.n, 1);
    std::deque<int> kill;
    for (int v = 0; v < g.n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] < d) {
            kill.push_back(v);
            alive[v] = 0;
        }
    }
    while (!kill.empty()) {
        int v = kill.front();
        kill.pop_front();
        for (int u = g.adj[v].next(0); u >= 0; u = g.adj[v].next(u + 1))
            if (alive[u] && --deg[u] < d) {
                alive[u] = 0;
                kill.push_back(u);
            }
    }
    VertexSet out;
    for (int v = 0; v < g.n; ++v)
        if (alive[v]) out.push_back(v);
    return out;
}

HCopy embed_tree(const Graph& g, const Graph& t, const Caps& caps) {
    if (t.n == 0) throw EmptyGraph("embed_tree: empty pattern");
    if (!is_forest(t)) throw NotAForest("embed_tree: pattern has a cycle");
    if (t.n > g.n) throw EmbedFail("embed_tree: pattern larger than host");

    auto verify = [&](const std::vector<int>& map) {
        for (auto [u, v] : t.edges)
            if (!g.has_edge(map[u], map[v])) throw ConstructionBug("embed_tree: bad edge");
    };

    VertexSet core = dense_core(g, t.n - 1);
    if (static_cast<int>(core.size()) >= t.n) {
        // greedy growth: BFS per component, children into unused core
        // neighbors of the parent image, highest core degree first
        Bits coreb = set_to_bits(g.n, core);
        auto core_deg = [&](int v) { return g.adj[v].intersect_count(coreb); };
        std::vector<int> map(t.n, -1);
        Bits used(g.n);
        bool ok = true;
        for (const auto& comp : components(t)) {
            int root = comp[0];
            for (int v : comp)
                if (t.degree(v) > t.degree(root)) root = v;
            // root image: unused core vertex of max core degree
            int rim = -1;
            for (int v : core)
                if (!used.test(v) && (rim < 0 || core_deg(v) > core_deg(rim))) rim = v;
            if (rim < 0) {
                ok = false;
                break;
            }
            map[root] = rim;
            used.set(rim);
            std::deque<int> bfs{root};
            while (ok && !bfs.empty()) {
                int u = bfs.front();
                bfs.pop_front();
                for (int w = 0; w < t.n && ok; ++w) {
                    if (!t.has_edge(u, w) || map[w] >= 0) continue;
                    Bits cand = g.adj[map[u]] & coreb;
                    cand.subtract(used);
                    int pick = -1;
                    for (int v = cand.next(0); v >= 0; v = cand.next(v + 1))
                        if (pick < 0 || core_deg(v) > core_deg(pick)) pick = v;
                    if (pick < 0) {
                        ok = false;
                        break;
                    }
                    map[w] = pick;
                    used.set(pick);
                    bfs.push_back(w);
                }
            }
            if (!ok) break;
        }
        if (ok) {
            verify(map);
            return {map};
        }
    }

    std::vector<Bits> domains(t.n, g.full_mask());
    long budget = caps.embed_node_budget;
    HCopy out;
    bool found = false;
    RunStatus st = for_each_constrained(g, t, domains, budget, [&](const std::vector<int>& map) {
        out.map = map;
        found = true;
        return false;
    });
    if (found) {
        verify(out.map);
        return out;
    }
    std::ostringstream why;
    why << "embed_tree: no embedding of a " << t.n << "-vertex forest; ";
    if (st == RunStatus::OutOfBudget)
        why << "node budget exhausted";
    else
        why << "search space exhausted";
    if (g.n <= caps.independence_cap) {
        auto ir = independence_number(g, caps.independence_cap);
        why << "; independence bound: alpha*k = " << ir.value * t.n << " vs n = " << g.n;
    }
    throw EmbedFail(why.str());
}

ChainResult common_neighborhood_chain(const Graph& g, const VertexSet& pool,
                                      const std::vector<VertexSet>& targets, int s,
                                      const Rat& beta, const Caps& caps) {
    if (s < 1) throw BadInput("common_neighborhood_chain: s must be positive");
    std::vector<Bits> tb;
    for (const auto& t : targets) tb.push_back(set_to_bits(g.n, t));
    long budget = caps.embed_node_budget;
    ChainResult res;
    bool found = false;
    RunStatus st = for_each_chain(g, pool, tb, s, beta, budget,
                                  [&](const std::vector<int>& chosen, const std::vector<Bits>& cur) {
        res.chosen = chosen;
        for (const Bits& b : cur) res.shrunk.push_back(b.to_set());
        found = true;
        return false;
    });
    if (found) return res;
    throw ChainFail(std::string("common_neighborhood_chain: no chain of length ") +
                    std::to_string(s) + (st == RunStatus::OutOfBudget ? " within node budget"
                                                                      : "; search space exhausted"));
}

EmbedQResult embed_q(const ClusterSystem& cs, const QSpec& spec, const Rat& beta,
                     const Caps& caps) {
    const int a = spec.a, b = spec.b, s = spec.s;
    const int k = a + b;
    if (static_cast<int>(cs.clusters.size()) != k)
        throw BadInput("embed_q: expected " + std::to_string(k) + " clusters, got " +
                       std::to_string(cs.clusters.size()));
    if (static_cast<int>(spec.forests.size()) != b) throw BadInput("embed_q: forest list mismatch");
    const Graph& g = cs.host;

    EmbedQResult res;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            Rat need = (i >= a && j >= a) ? rat(1, 2) + beta : beta;
            if (cs.density[i][j] < need) {
                std::ostringstream os;
                os << "d(V" << i + 1 << ",V" << j + 1 << ") = " << rat_str(cs.density[i][j])
                   << " below " << rat_str(need);
                res.density_violations.push_back(os.str());
            }
        }

    long budget = caps.embed_node_budget;
    int deepest = 0;
    std::vector<std::vector<int>> placements(k); // per cluster, in placement order
    std::vector<std::string> path(k);
    bool out_of_budget = false;

    // done = clusters already embedded; cur = candidate sets for the rest
    std::function<bool(const std::vector<Bits>&, int)> rec = [&](const std::vector<Bits>& cur,
                                                                 int done) -> bool {
        deepest = std::max(deepest, done);
        if (done == k) return true;
        if (budget < 0) {
            out_of_budget = true;
            return false;
        }
        std::vector<Bits> rest(cur.begin() + 1, cur.end());
        if (done < a) {
            VertexSet pool = cur[0].to_set();
            bool ok = false;
            RunStatus st = for_each_chain(g, pool, rest, s, beta, budget,
                                          [&](const std::vector<int>& chosen,
                                              const std::vector<Bits>& shrunk) {
                if (rec(shrunk, done + 1)) {
                    placements[done] = chosen;
                    path[done] = "chain";
                    ok = true;
                    return false;
                }
                return true;
            });
            if (st == RunStatus::OutOfBudget) out_of_budget = true;
            return ok;
        }
        const Graph& forest = spec.forests[done - a].forest;
        // keep only vertices with majority-degree into every remaining cluster
        Bits pool = cur[0];
        if (!rest.empty()) {
            Rat need = rat(1, 2) + beta / 2;
            for (int v = cur[0].next(0); v >= 0; v = cur[0].next(v + 1))
                for (const Bits& t : rest)
                    if (Rat(static_cast<long>(g.adj[v].intersect_count(t))) <
                        need * Rat(static_cast<long>(t.count()))) {
                        pool.reset(v);
                        break;
                    }
        }
        auto try_image = [&](const std::vector<int>& fmap, const char* how) -> bool {
            std::vector<Bits> shr;
            shr.reserve(rest.size());
            for (const Bits& t : rest) {
                Bits nt = t;
                for (int hv : fmap) nt &= g.adj[hv];
                if (!nt.any()) return false;
                shr.push_back(std::move(nt));
            }
            if (rec(shr, done + 1)) {
                placements[done] = fmap;
                path[done] = how;
                return true;
            }
            return false;
        };
        // greedy pass first, then exhaustive enumeration
        VertexSet pool_set = pool.to_set();
        if (static_cast<int>(pool_set.size()) >= forest.n) {
            try {
                HCopy greedy = embed_tree(induced_subgraph(g, pool_set), forest, caps);
                std::vector<int> fmap(forest.n);
                for (int p = 0; p < forest.n; ++p) fmap[p] = pool_set[greedy.map[p]];
                if (try_image(fmap, "forest-greedy")) return true;
            } catch (const EmbedFail&) {
            }
        }
        std::vector<Bits> domains(forest.n, pool);
        bool ok = false;
        RunStatus st = for_each_constrained(g, forest, domains, budget,
                                            [&](const std::vector<int>& fmap) {
            if (try_image(fmap, "forest-enum")) {
                ok = true;
                return false;
            }
            return true;
        });
        if (st == RunStatus::OutOfBudget) out_of_budget = true;
        return ok;
    };

    std::vector<Bits> start;
    for (const auto& cl : cs.clusters) start.push_back(set_to_bits(g.n, cl));
    bool ok = rec(start, 0);

    if (!ok && g.n <= 60) {
        // exact fallback: constrained search of the whole gadget at once
        QGraph qg = build_q(spec);
        std::vector<Bits> domains(qg.graph.n);
        for (int c = 0; c < k; ++c)
            for (int qv : qg.clusters[c]) domains[qv] = start[c];
        long fb = caps.embed_node_budget;
        std::vector<int> whole;
        RunStatus st = for_each_constrained(g, qg.graph, domains, fb,
                                            [&](const std::vector<int>& map) {
            whole = map;
            return false;
        });
        if (!whole.empty()) {
            for (int c = 0; c < k; ++c) {
                placements[c].clear();
                for (int qv : qg.clusters[c]) placements[c].push_back(whole[qv]);
                path[c] = "fallback";
            }
            ok = true;
        } else if (st == RunStatus::OutOfBudget) {
            out_of_budget = true;
        }
    }

    if (!ok) {
        std::ostringstream why;
        why << "embed_q: failed at level " << deepest << " of " << k << "; "
            << (out_of_budget ? "node budget exhausted" : "search space exhausted");
        for (const auto& v : res.density_violations) why << "; " << v;
        throw EmbedFail(why.str());
    }

    // assemble the gadget injection in build_q numbering and re-verify
    QGraph qg = build_q(spec);
    res.map.map.assign(qg.graph.n, -1);
    for (int c = 0; c < k; ++c) {
        if (static_cast<int>(placements[c].size()) != static_cast<int>(qg.clusters[c].size()))
            throw ConstructionBug("embed_q: placement size mismatch");
        for (size_t p = 0; p < placements[c].size(); ++p)
            res.map.map[qg.clusters[c][p]] = placements[c][p];
        VertexSet img = placements[c];
        std::sort(img.begin(), img.end());
        res.images.push_back(std::move(img));
        if (!res.path.empty()) res.path += ",";
        res.path += path[c];
    }
    std::vector<char> used(g.n, 0);
    for (int c = 0; c < k; ++c) {
        Bits cluster = start[c];
        for (int hv : placements[c]) {
            if (!cluster.test(hv) || used[hv])
                throw ConstructionBug("embed_q: image escapes its cluster or repeats");
            used[hv] = 1;
        }
    }
    for (auto [u, v] : qg.graph.edges)
        if (!g.has_edge(res.map.map[u], res.map.map[v]))
            throw ConstructionBug("embed_q: gadget edge missing in host");
    return res;
}

} // namespace arbortile
