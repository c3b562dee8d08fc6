#include "arbortile/factor.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "arbortile/simplex.hpp"

namespace arbortile {

Caps Caps::from_env() {
    Caps c;
    const char* raw = std::getenv("ARBORTILE_CAPS");
    if (!raw) return c;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw BadInput("ARBORTILE_CAPS entry missing '=': " + item);
        std::string key = item.substr(0, eq);
        long val = std::stol(item.substr(eq + 1));
        if (key == "independence_cap") c.independence_cap = static_cast<int>(val);
        else if (key == "arboricity_cap") c.arboricity_cap = static_cast<int>(val);
        else if (key == "factor_vertex_cap") c.factor_vertex_cap = static_cast<int>(val);
        else if (key == "copy_cap") c.copy_cap = val;
        else if (key == "node_budget") c.node_budget = val;
        else if (key == "embed_node_budget") c.embed_node_budget = val;
        else if (key == "connector_cap") c.connector_cap = val;
        else throw BadInput("ARBORTILE_CAPS unknown key: " + key);
    }
    return c;
}

std::string Caps::describe() const {
    std::ostringstream os;
    os << "independence_cap=" << independence_cap << ",arboricity_cap=" << arboricity_cap
       << ",factor_vertex_cap=" << factor_vertex_cap << ",copy_cap=" << copy_cap
       << ",node_budget=" << node_budget << ",embed_node_budget=" << embed_node_budget
       << ",connector_cap=" << connector_cap;
    return os.str();
}

std::vector<std::vector<int>> automorphisms(const Graph& h) {
    std::vector<std::vector<int>> out;
    std::vector<int> perm(h.n, -1);
    std::vector<char> used(h.n, 0);
    const size_t cap = 200'000;
    std::function<void(int)> rec = [&](int v) {
        if (v == h.n) {
            out.push_back(perm);
            if (out.size() > cap) throw CapExceeded("automorphism group larger than 200000");
            return;
        }
        for (int img = 0; img < h.n; ++img) {
            if (used[img] || h.degree(img) != h.degree(v)) continue;
            bool ok = true;
            for (int w = 0; w < v && ok; ++w)
                if (h.has_edge(v, w) != h.has_edge(img, perm[w])) ok = false;
            if (!ok) continue;
            perm[v] = img;
            used[img] = 1;
            rec(v + 1);
            used[img] = 0;
        }
        perm[v] = -1;
    };
    rec(0);
    return out;
}

namespace {

// Placement order: start at a root (or the max-degree vertex), then always
// take the unplaced vertex with the most placed neighbors.
struct PatternOrder {
    std::vector<int> seq;
    std::vector<std::vector<int>> back; // earlier positions adjacent in h
};

PatternOrder make_order(const Graph& h, int root) {
    PatternOrder po;
    std::vector<char> placed(h.n, 0);
    if (root < 0) {
        root = 0;
        for (int v = 1; v < h.n; ++v)
            if (h.degree(v) > h.degree(root)) root = v;
    }
    po.seq.push_back(root);
    placed[root] = 1;
    while (static_cast<int>(po.seq.size()) < h.n) {
        int best = -1, bestc = -1;
        for (int v = 0; v < h.n; ++v) {
            if (placed[v]) continue;
            int c = 0;
            for (int u : po.seq)
                if (h.has_edge(u, v)) ++c;
            if (c > bestc || (c == bestc && h.degree(v) > h.degree(best))) {
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

enum class RunStatus { Exhausted, Stopped, OutOfBudget };

// Backtracking embedding enumeration. cb gets map[pattern vertex] = host
// vertex and returns false to stop the search.
RunStatus run_embeddings(const Graph& g, const Graph& h, const PatternOrder& po,
                         const Bits& allowed, int force_host, long& budget,
                         const std::function<bool(const std::vector<int>&)>& cb) {
    std::vector<int> map(h.n, -1);
    Bits used(g.n);
    std::function<RunStatus(int)> rec = [&](int pos) -> RunStatus {
        if (pos == h.n) return cb(map) ? RunStatus::Exhausted : RunStatus::Stopped;
        int pv = po.seq[pos];
        Bits cand = allowed;
        if (pos == 0 && force_host >= 0) {
            cand = Bits(g.n);
            if (allowed.test(force_host)) cand.set(force_host);
        }
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

std::vector<int> canonical_map(const std::vector<int>& map,
                               const std::vector<std::vector<int>>& auts) {
    std::vector<int> best = map, tmp(map.size());
    for (const auto& sigma : auts) {
        for (size_t i = 0; i < map.size(); ++i) tmp[i] = map[sigma[i]];
        if (tmp < best) best = tmp;
    }
    return best;
}

std::uint64_t mask_of_map(const std::vector<int>& map) {
    std::uint64_t m = 0;
    for (int v : map) m |= 1ULL << v;
    return m;
}

// Distinct images (as 64-bit masks) with one witness embedding each.
struct ImageTable {
    std::vector<std::uint64_t> imgs;
    std::vector<std::vector<int>> witness;
    bool complete = false; // collection exhausted the search space
};

ImageTable collect_images(const Graph& g, const Graph& h, const Bits& allowed, long image_cap,
                          long node_budget) {
    ImageTable t;
    std::unordered_map<std::uint64_t, size_t> seen;
    PatternOrder po = make_order(h, -1);
    long budget = node_budget;
    RunStatus st = run_embeddings(g, h, po, allowed, -1, budget, [&](const std::vector<int>& map) {
        std::uint64_t m = mask_of_map(map);
        if (seen.emplace(m, t.imgs.size()).second) {
            t.imgs.push_back(m);
            t.witness.push_back(map);
            if (static_cast<long>(t.imgs.size()) > image_cap) return false;
        }
        return true;
    });
    t.complete = (st == RunStatus::Exhausted);
    if (t.complete) {
        // deterministic order for the downstream searches
        std::vector<size_t> idx(t.imgs.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](size_t a, size_t b) { return t.imgs[a] < t.imgs[b]; });
        ImageTable s;
        s.complete = true;
        for (size_t i : idx) {
            s.imgs.push_back(t.imgs[i]);
            s.witness.push_back(t.witness[i]);
        }
        return s;
    }
    return t;
}

// LP packing bound over collected images: max #copies.  Sound upper bound for
// any integral tiling; certified by the dual.
Rat packing_lp_bound(int n, const ImageTable& t) {
    LpProblem p;
    p.rows = n;
    p.rhs.assign(n, Rat(1));
    p.cols.reserve(t.imgs.size());
    for (auto m : t.imgs) {
        std::vector<std::pair<int, Rat>> col;
        for (int v = 0; v < n; ++v)
            if ((m >> v) & 1) col.emplace_back(v, Rat(1));
        p.cols.push_back(std::move(col));
    }
    p.objectives.assign(1, std::vector<Rat>(t.imgs.size(), Rat(1)));
    LpSolution sol = solve_lp(p);
    std::string why;
    if (!lp_check_certificate(p, sol, &why)) throw ConstructionBug("packing LP certificate: " + why);
    return sol.level_values[0];
}

constexpr long kLpColumnLimit = 20'000;

// Exact cover over a complete image table; branch on the vertex in fewest
// remaining images, memoize failed residual sets.
struct CoverSearch {
    const ImageTable& t;
    int n, h;
    long budget;
    std::vector<std::vector<int>> by_vertex;
    std::unordered_set<std::uint64_t> failed;
    std::vector<int> chosen;

    CoverSearch(const ImageTable& tt, int nn, int hh, long b) : t(tt), n(nn), h(hh), budget(b) {
        by_vertex.resize(n);
        for (size_t i = 0; i < t.imgs.size(); ++i)
            for (int v = 0; v < n; ++v)
                if ((t.imgs[i] >> v) & 1) by_vertex[v].push_back(static_cast<int>(i));
    }

    bool solve(std::uint64_t mask) {
        if (mask == 0) return true;
        if (failed.count(mask)) return false;
        if (--budget < 0) throw CapExceeded("has_factor: search budget exhausted");
        int bestv = -1;
        long bestc = -1;
        for (int v = 0; v < n; ++v) {
            if (!((mask >> v) & 1)) continue;
            long c = 0;
            for (int i : by_vertex[v])
                if ((t.imgs[i] & ~mask) == 0) ++c;
            if (bestc < 0 || c < bestc) {
                bestc = c;
                bestv = v;
                if (c == 0) break;
            }
        }
        if (bestc == 0) {
            failed.insert(mask);
            return false;
        }
        for (int i : by_vertex[bestv]) {
            if ((t.imgs[i] & ~mask) != 0) continue;
            chosen.push_back(i);
            if (solve(mask & ~t.imgs[i])) return true;
            chosen.pop_back();
        }
        failed.insert(mask);
        return false;
    }
};

std::vector<int> orbit_reps(const Graph& h) {
    auto auts = automorphisms(h);
    std::vector<int> parent(h.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& s : auts)
        for (int v = 0; v < h.n; ++v) {
            int a = find(v), b = find(s[v]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<int> out;
    for (int v = 0; v < h.n; ++v)
        if (find(v) == v) out.push_back(v);
    return out;
}

// Lazy branching for hosts whose copy space is too large to collect: cover the
// smallest uncovered vertex, enumerating copies through it on demand.
struct LazyCover {
    const Graph& g;
    const Graph& h;
    long budget;
    std::vector<int> reps;
    std::vector<PatternOrder> orders;
    std::unordered_set<std::uint64_t> failed;
    std::vector<std::vector<int>> chosen;

    LazyCover(const Graph& gg, const Graph& hh, long b) : g(gg), h(hh), budget(b) {
        reps = orbit_reps(h);
        for (int p : reps) orders.push_back(make_order(h, p));
    }

    bool solve(std::uint64_t mask) {
        if (mask == 0) return true;
        if (failed.count(mask)) return false;
        int v = __builtin_ctzll(mask);
        Bits allowed(g.n);
        for (int i = 0; i < g.n; ++i)
            if ((mask >> i) & 1) allowed.set(i);
        std::unordered_set<std::uint64_t> tried;
        bool found = false;
        for (size_t k = 0; k < reps.size() && !found; ++k) {
            RunStatus st = run_embeddings(g, h, orders[k], allowed, v, budget,
                                          [&](const std::vector<int>& map) {
                std::uint64_t im = mask_of_map(map);
                if (!tried.insert(im).second) return true;
                chosen.push_back(map);
                if (solve(mask & ~im)) {
                    found = true;
                    return false;
                }
                chosen.pop_back();
                return true;
            });
            if (st == RunStatus::OutOfBudget)
                throw CapExceeded("has_factor: search budget exhausted (lazy tier)");
        }
        if (!found) failed.insert(mask);
        return found;
    }
};

FactorResult solve_component(const Graph& g, const Graph& h, const Caps& caps) {
    FactorResult res;
    std::uint64_t full = (g.n == 64) ? ~0ULL : ((1ULL << g.n) - 1);

    ImageTable t = collect_images(g, h, g.full_mask(), caps.copy_cap, caps.node_budget / 4);
    if (t.complete) {
        if (t.imgs.empty()) return res;
        if (static_cast<long>(t.imgs.size()) <= kLpColumnLimit) {
            // LP presolve: fractional packing below n/h rules a perfect tiling out
            Rat bound = packing_lp_bound(g.n, t);
            if (bound < Rat(g.n, h.n)) return res; // verified negative
        }
        CoverSearch cs(t, g.n, h.n, caps.node_budget);
        if (cs.solve(full)) {
            res.exists = true;
            res.tiling.complete = true;
            for (int i : cs.chosen) res.tiling.copies.push_back({t.witness[i]});
        }
        return res;
    }
    LazyCover lc(g, h, caps.node_budget);
    if (lc.solve(full)) {
        res.exists = true;
        res.tiling.complete = true;
        for (const auto& m : lc.chosen) res.tiling.copies.push_back({m});
    }
    return res;
}

// Is size expressible as a nonnegative combination of the component orders?
bool knapsack_ok(int size, const std::vector<int>& orders) {
    std::vector<char> ok(size + 1, 0);
    ok[0] = 1;
    for (int s = 1; s <= size; ++s)
        for (int o : orders)
            if (o <= s && ok[s - o]) {
                ok[s] = 1;
                break;
            }
    return ok[size];
}

} // namespace

CopyEnumeration enumerate_copies(const Graph& g, const Graph& h, long cap) {
    if (h.n == 0) throw BadInput("empty pattern");
    CopyEnumeration out;
    if (h.n > g.n) return out;
    auto auts = automorphisms(h);
    std::set<std::vector<int>> canon;
    PatternOrder po = make_order(h, -1);
    long budget = std::numeric_limits<long>::max();
    RunStatus st = run_embeddings(g, h, po, g.full_mask(), -1, budget,
                                  [&](const std::vector<int>& map) {
        canon.insert(canonical_map(map, auts));
        return static_cast<long>(canon.size()) < cap;
    });
    out.truncated = (st == RunStatus::Stopped);
    for (const auto& m : canon) out.copies.push_back({m});
    return out;
}

bool spans_copy(const Graph& g, const Graph& h, const VertexSet& image, HCopy* out) {
    if (static_cast<int>(image.size()) != h.n) return false;
    Bits allowed(g.n);
    for (int v : image) {
        if (v < 0 || v >= g.n) throw BadInput("spans_copy: vertex out of range");
        allowed.set(v);
    }
    if (allowed.count() != h.n) throw BadInput("spans_copy: duplicate vertices");
    PatternOrder po = make_order(h, -1);
    long budget = std::numeric_limits<long>::max();
    bool found = false;
    run_embeddings(g, h, po, allowed, -1, budget, [&](const std::vector<int>& map) {
        if (out) out->map = map;
        found = true;
        return false;
    });
    return found;
}

FactorResult has_factor(const Graph& g, const Graph& h, const Caps& caps) {
    if (h.n == 0) throw BadInput("empty pattern");
    if (g.n > caps.factor_vertex_cap)
        throw CapExceeded("has_factor: host has " + std::to_string(g.n) + " vertices, cap " +
                          std::to_string(caps.factor_vertex_cap));
    if (g.n % h.n != 0)
        throw DivisibilityError("pattern order " + std::to_string(h.n) +
                                " does not divide host order " + std::to_string(g.n));
    FactorResult res;
    if (g.n == 0) {
        res.exists = true;
        res.tiling.complete = true;
        return res;
    }

    auto hcomps = components(h);
    std::vector<int> orders;
    for (const auto& c : hcomps) orders.push_back(static_cast<int>(c.size()));
    auto gcomps = components(g);
    for (const auto& comp : gcomps)
        if (!knapsack_ok(static_cast<int>(comp.size()), orders)) return res;

    if (hcomps.size() == 1) {
        // a copy of a connected pattern lives inside one host component
        res.exists = true;
        res.tiling.complete = true;
        for (const auto& comp : gcomps) {
            Graph sub = induced_subgraph(g, comp);
            FactorResult part = solve_component(sub, h, caps);
            if (!part.exists) {
                res = FactorResult{};
                return res;
            }
            for (auto cp : part.tiling.copies) {
                for (int& v : cp.map) v = comp[v];
                res.tiling.copies.push_back(std::move(cp));
            }
        }
        return res;
    }
    return solve_component(g, h, caps);
}

MaxTilingResult max_tiling(const Graph& g, const Graph& h, const Caps& caps) {
    if (h.n == 0) throw BadInput("empty pattern");
    if (g.n > caps.factor_vertex_cap)
        throw CapExceeded("max_tiling: host has " + std::to_string(g.n) + " vertices, cap " +
                          std::to_string(caps.factor_vertex_cap));
    MaxTilingResult out;
    if (g.n == 0) return out;

    ImageTable t = collect_images(g, h, g.full_mask(), caps.copy_cap, caps.node_budget);
    if (!t.complete) throw CapExceeded("max_tiling: copy space exceeds collection budget");

    std::uint64_t full = (g.n == 64) ? ~0ULL : ((1ULL << g.n) - 1);
    long ub_root = static_cast<long>(g.n) / h.n;
    if (static_cast<long>(t.imgs.size()) <= kLpColumnLimit && !t.imgs.empty()) {
        Rat lp = packing_lp_bound(g.n, t);
        // floor of the exact LP value
        Int fl = lp.get_num() / lp.get_den();
        ub_root = std::min(ub_root, fl.get_si());
    }

    std::vector<std::vector<int>> by_vertex(g.n);
    for (size_t i = 0; i < t.imgs.size(); ++i)
        for (int v = 0; v < g.n; ++v)
            if ((t.imgs[i] >> v) & 1) by_vertex[v].push_back(static_cast<int>(i));

    // greedy start
    std::vector<int> best;
    {
        std::uint64_t mask = full;
        for (size_t i = 0; i < t.imgs.size(); ++i)
            if ((t.imgs[i] & ~mask) == 0) {
                best.push_back(static_cast<int>(i));
                mask &= ~t.imgs[i];
            }
    }

    std::vector<int> cur;
    long budget = caps.node_budget;
    bool done = static_cast<long>(best.size()) >= ub_root;
    std::function<void(std::uint64_t)> bb = [&](std::uint64_t mask) {
        if (done) return;
        if (--budget < 0) throw CapExceeded("max_tiling: search budget exhausted");
        if (cur.size() > best.size()) {
            best = cur;
            if (static_cast<long>(best.size()) >= ub_root) {
                done = true;
                return;
            }
        }
        // coverable-vertex bound
        std::uint64_t coverable = 0;
        for (size_t i = 0; i < t.imgs.size(); ++i)
            if ((t.imgs[i] & ~mask) == 0) coverable |= t.imgs[i];
        if (static_cast<long>(cur.size()) + __builtin_popcountll(coverable) / h.n <=
            static_cast<long>(best.size()))
            return;
        // branch vertex: fewest remaining images, ties smallest id
        int bestv = -1;
        long bestc = -1;
        for (int v = 0; v < g.n; ++v) {
            if (!((coverable >> v) & 1)) continue;
            long c = 0;
            for (int i : by_vertex[v])
                if ((t.imgs[i] & ~mask) == 0) ++c;
            if (bestc < 0 || c < bestc) {
                bestc = c;
                bestv = v;
            }
        }
        if (bestv < 0) return;
        for (int i : by_vertex[bestv]) {
            if ((t.imgs[i] & ~mask) != 0) continue;
            cur.push_back(i);
            bb(mask & ~t.imgs[i]);
            cur.pop_back();
            if (done) return;
        }
        bb(mask & ~(1ULL << bestv)); // leave bestv uncovered
    };
    bb(full);

    std::uint64_t covered = 0;
    for (int i : best) {
        out.copies.push_back({t.witness[i]});
        covered |= t.imgs[i];
    }
    for (int v = 0; v < g.n; ++v)
        if (!((covered >> v) & 1)) out.uncovered.push_back(v);
    return out;
}

bool verify_tiling(const Graph& g, const Graph& h, const std::vector<HCopy>& copies,
                   bool require_complete, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::vector<char> covered(g.n, 0);
    for (size_t c = 0; c < copies.size(); ++c) {
        const auto& map = copies[c].map;
        if (static_cast<int>(map.size()) != h.n)
            return fail("copy " + std::to_string(c) + ": wrong arity");
        for (int v : map) {
            if (v < 0 || v >= g.n) return fail("copy " + std::to_string(c) + ": vertex out of range");
            if (covered[v]) return fail("copy " + std::to_string(c) + ": overlaps at vertex " + std::to_string(v));
        }
        for (int v : map) covered[v] = 1;
        for (auto [u, v] : h.edges)
            if (!g.has_edge(map[u], map[v]))
                return fail("copy " + std::to_string(c) + ": missing edge " + std::to_string(map[u]) +
                            "-" + std::to_string(map[v]));
    }
    if (require_complete)
        for (int v = 0; v < g.n; ++v)
            if (!covered[v]) return fail("vertex " + std::to_string(v) + " uncovered");
    return true;
}

} // namespace arbortile
