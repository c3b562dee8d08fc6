#include "arbortile/reduced.hpp"

#include <algorithm>
#include <sstream>

#include "arbortile/partition.hpp"
#include "arbortile/qbuild.hpp"
#include "arbortile/simplex.hpp"

namespace arbortile {

namespace {

std::pair<int, int> ordered(int i, int j) { return {std::min(i, j), std::max(i, j)}; }

std::string describe(const EmbStructure& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.support.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.support[i]) + ":" + std::to_string(s.mult_assign[i]);
    }
    return out + "}";
}

EmbStructure make_structure(std::vector<std::pair<int, int>> cm) {
    std::sort(cm.begin(), cm.end());
    EmbStructure s;
    for (auto& [c, m] : cm) {
        s.support.push_back(c);
        s.mult_assign.push_back(m);
    }
    return s;
}

} // namespace

int Multigraph2::multiplicity(int i, int j) const {
    if (i == j) return 0;
    auto it = mult.find(ordered(i, j));
    return it == mult.end() ? 0 : it->second;
}

void Multigraph2::set_mult(int i, int j, int m) {
    if (i == j) throw BadInput("multigraph: self-pair " + std::to_string(i));
    if (i < 0 || j < 0 || i >= k || j >= k)
        throw BadInput("multigraph: pair out of range");
    if (m < 0 || m > 2) throw BadInput("multigraph: multiplicity " + std::to_string(m));
    if (m == 0)
        mult.erase(ordered(i, j));
    else
        mult[ordered(i, j)] = m;
}

int Multigraph2::degree(int i) const {
    int d = 0;
    for (const auto& [pr, m] : mult)
        if (pr.first == i || pr.second == i) d += m;
    return d;
}

int Multigraph2::min_degree() const {
    int d = 0;
    for (int i = 0; i < k; ++i) d = (i == 0) ? degree(i) : std::min(d, degree(i));
    return d;
}

std::string Multigraph2::to_text() const {
    std::string out = std::to_string(k) + "\n";
    for (const auto& [pr, m] : mult)
        out += std::to_string(pr.first) + " " + std::to_string(pr.second) + " " +
               std::to_string(m) + "\n";
    return out;
}

Multigraph2 Multigraph2::from_text(const std::string& text) {
    std::istringstream in(text);
    Multigraph2 r;
    if (!(in >> r.k) || r.k < 0) throw ParseError("multigraph: bad cluster count");
    int i, j, m;
    while (in >> i >> j >> m) {
        if (i == j) throw ParseError("multigraph: self-pair " + std::to_string(i));
        if (i < 0 || j < 0 || i >= r.k || j >= r.k)
            throw ParseError("multigraph: pair out of range");
        if (m < 0 || m > 2) throw ParseError("multigraph: multiplicity " + std::to_string(m));
        if (r.mult.count(ordered(i, j)))
            throw ParseError("multigraph: duplicate pair " + std::to_string(i) + " " +
                             std::to_string(j));
        if (m > 0) r.mult[ordered(i, j)] = m;
    }
    if (!in.eof()) throw ParseError("multigraph: trailing garbage");
    return r;
}

void Thresholds::validate() const {
    for (const auto& [name, v] : {std::pair<const char*, const Rat*>{"beta", &beta},
                                  {"epsilon", &epsilon},
                                  {"mu", &mu},
                                  {"eta", &eta}})
        if (*v <= 0 || *v >= 1)
            throw BadInput(std::string("thresholds: ") + name + " = " + rat_str(*v) +
                           " outside (0, 1)");
}

int EmbStructure::load(int cluster) const {
    auto it = std::lower_bound(support.begin(), support.end(), cluster);
    if (it == support.end() || *it != cluster) return 0;
    return mult_assign[it - support.begin()];
}

int EmbStructure::total_load() const {
    int t = 0;
    for (int m : mult_assign) t += m;
    return t;
}

int EmbStructure::doubled_count() const {
    int d = 0;
    for (int m : mult_assign) d += (m == 2);
    return d;
}

bool structure_ok(const Multigraph2& r, const EmbStructure& s, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (s.support.size() != s.mult_assign.size()) return fail("support/mult length mismatch");
    if (s.support.empty()) return fail("empty support");
    for (size_t i = 0; i < s.support.size(); ++i) {
        int c = s.support[i];
        if (c < 0 || c >= r.k) return fail("cluster " + std::to_string(c) + " out of range");
        if (i && s.support[i - 1] >= c) return fail("support not sorted");
        if (s.mult_assign[i] != 1 && s.mult_assign[i] != 2)
            return fail("multiplicity " + std::to_string(s.mult_assign[i]));
    }
    for (size_t i = 0; i < s.support.size(); ++i)
        for (size_t j = i + 1; j < s.support.size(); ++j) {
            int m = r.multiplicity(s.support[i], s.support[j]);
            bool both = s.mult_assign[i] == 2 && s.mult_assign[j] == 2;
            if (m < 1)
                return fail("clusters " + std::to_string(s.support[i]) + "," +
                            std::to_string(s.support[j]) + " not joined");
            if (both && m < 2)
                return fail("pair clusters " + std::to_string(s.support[i]) + "," +
                            std::to_string(s.support[j]) + " lack a double-edge");
        }
    return true;
}

Rat FractionalTiling::load(int cluster) const {
    Rat l = 0;
    for (size_t i = 0; i < structures.size(); ++i)
        l += weights[i] * structures[i].load(cluster);
    return l;
}

Rat FractionalTiling::total_load() const {
    Rat t = 0;
    for (size_t i = 0; i < structures.size(); ++i) t += weights[i] * structures[i].total_load();
    return t;
}

bool tiling_ok(const Multigraph2& r, const FractionalTiling& ft, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (ft.structures.size() != ft.weights.size()) return fail("structure/weight length mismatch");
    for (size_t i = 0; i < ft.structures.size(); ++i) {
        if (ft.weights[i] < 0) return fail("negative weight on " + describe(ft.structures[i]));
        std::string inner;
        if (!structure_ok(r, ft.structures[i], &inner))
            return fail(describe(ft.structures[i]) + ": " + inner);
    }
    for (int v = 0; v < r.k; ++v)
        if (ft.load(v) > 1)
            return fail("cluster " + std::to_string(v) + " overloaded at " + rat_str(ft.load(v)));
    return true;
}

Multigraph2 build_reduced(const ClusterSystem& cs, const Thresholds& th) {
    th.validate();
    const int k = static_cast<int>(cs.clusters.size());
    for (int i = 1; i < k; ++i)
        if (cs.clusters[i].size() != cs.clusters[0].size())
            throw ClusterSizeError("build_reduced: cluster " + std::to_string(i) + " has " +
                                   std::to_string(cs.clusters[i].size()) + " vertices, cluster 0 has " +
                                   std::to_string(cs.clusters[0].size()));
    Multigraph2 r;
    r.k = k;
    const Rat half_plus = Rat(1, 2) + th.beta;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const Rat& d = cs.density[i][j];
            if (d >= half_plus)
                r.set_mult(i, j, 2);
            else if (d >= th.beta)
                r.set_mult(i, j, 1);
        }
    return r;
}

bool check_degree_bound(const Multigraph2& r, int f, const Rat& mu) {
    if (f <= 0) throw BadInput("check_degree_bound: f = " + std::to_string(f));
    const Rat bound = 2 * (Rat(1) - rat(2, f) + mu / 2) * r.k;
    for (int i = 0; i < r.k; ++i)
        if (Rat(r.degree(i)) < bound) return false;
    return true;
}

std::vector<EmbStructure> enumerate_structures(const Multigraph2& r, int rr, long cap) {
    if (rr < 2) throw BadInput("enumerate_structures: rr = " + std::to_string(rr));
    std::vector<EmbStructure> out;
    auto emit = [&](const VertexSet& clique, const std::vector<int>& doubles) {
        if (static_cast<long>(out.size()) >= cap)
            throw CapExceeded("enumerate_structures: more than " + std::to_string(cap) +
                              " structures");
        EmbStructure s;
        s.support = clique;
        s.mult_assign.assign(clique.size(), 1);
        for (int c : doubles) {
            auto it = std::lower_bound(clique.begin(), clique.end(), c);
            s.mult_assign[it - clique.begin()] = 2;
        }
        out.push_back(std::move(s));
    };

    for (int b = 0; 2 * b <= rr; ++b) {
        const int a = rr - 2 * b;
        const int t = a + b;
        if (t == 0 || t > r.k) continue;

        // choose b pairwise double-joined members of the clique
        std::vector<int> doubles;
        auto pick_doubles = [&](auto&& self, const VertexSet& clique, size_t from) -> void {
            if (static_cast<int>(doubles.size()) == b) {
                emit(clique, doubles);
                return;
            }
            for (size_t i = from; i < clique.size(); ++i) {
                bool ok = true;
                for (int d : doubles)
                    if (r.multiplicity(d, clique[i]) < 2) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                doubles.push_back(clique[i]);
                self(self, clique, i + 1);
                doubles.pop_back();
            }
        };

        // grow supports as cliques of the at-least-one-edge graph
        VertexSet clique;
        auto grow = [&](auto&& self, int from) -> void {
            if (static_cast<int>(clique.size()) == t) {
                pick_doubles(pick_doubles, clique, 0);
                return;
            }
            for (int v = from; v < r.k; ++v) {
                bool ok = true;
                for (int u : clique)
                    if (r.multiplicity(u, v) < 1) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                clique.push_back(v);
                self(self, v + 1);
                clique.pop_back();
            }
        };
        grow(grow, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// max total load; optionally, among optima, min total weight on structures
// with pair placements (they are the hard ones to realize downstream).
LpSolution solve_structure_lp(int k, const std::vector<EmbStructure>& structs,
                              bool prefer_fewer_pairs) {
    LpProblem p;
    p.rows = k;
    p.rhs.assign(k, Rat(1));
    p.objectives.emplace_back();
    if (prefer_fewer_pairs) p.objectives.emplace_back();
    for (const EmbStructure& s : structs) {
        std::vector<std::pair<int, Rat>> col;
        for (size_t i = 0; i < s.support.size(); ++i)
            col.emplace_back(s.support[i], Rat(s.mult_assign[i]));
        p.cols.push_back(std::move(col));
        p.objectives[0].push_back(Rat(s.total_load()));
        if (prefer_fewer_pairs) p.objectives[1].push_back(Rat(-s.doubled_count()));
    }
    LpSolution sol = solve_lp(p);
    std::string why;
    if (!lp_check_certificate(p, sol, &why))
        throw ConstructionBug("structure LP certificate rejected: " + why);
    return sol;
}

FractionalTiling positive_part(const std::vector<EmbStructure>& structs,
                               const std::vector<Rat>& x) {
    FractionalTiling ft;
    for (size_t i = 0; i < structs.size(); ++i)
        if (x[i] > 0) {
            ft.structures.push_back(structs[i]);
            ft.weights.push_back(x[i]);
        }
    return ft;
}

} // namespace

FracTileResult fractional_tiling(const Multigraph2& r, int rr) {
    FracTileResult res;
    std::vector<EmbStructure> structs = enumerate_structures(r, rr);
    if (structs.empty()) {
        res.value = 0;
        res.dual.assign(r.k, Rat(0));
        return res;
    }
    LpSolution sol = solve_structure_lp(r.k, structs, false);
    res.tiling = positive_part(structs, sol.x);
    res.value = sol.level_values[0];
    res.dual = sol.dual;
    std::string why;
    if (!tiling_ok(r, res.tiling, &why))
        throw ConstructionBug("fractional_tiling: " + why);
    return res;
}

FractionalTiling convert_4_to_3(const FractionalTiling& omega) {
    std::map<EmbStructure, Rat> acc;
    auto add = [&](EmbStructure s, const Rat& w) { acc[std::move(s)] += w; };
    for (size_t i = 0; i < omega.structures.size(); ++i) {
        const EmbStructure& s = omega.structures[i];
        const Rat& w = omega.weights[i];
        if (w < 0) throw BadInput("convert_4_to_3: negative weight");
        if (w == 0) continue;
        if (s.total_load() != 4)
            throw UnknownCase("convert_4_to_3: " + describe(s) + " has load " +
                              std::to_string(s.total_load()));
        const int doubled = s.doubled_count();
        if (s.support.size() == 4 && doubled == 0) {
            for (int drop = 0; drop < 4; ++drop) {
                std::vector<std::pair<int, int>> cm;
                for (int j = 0; j < 4; ++j)
                    if (j != drop) cm.emplace_back(s.support[j], 1);
                add(make_structure(cm), w / 3);
            }
        } else if (s.support.size() == 3 && doubled == 1) {
            int pair_cluster = -1;
            std::vector<int> singles;
            for (size_t j = 0; j < 3; ++j) {
                if (s.mult_assign[j] == 2)
                    pair_cluster = s.support[j];
                else
                    singles.push_back(s.support[j]);
            }
            add(make_structure({{singles[0], 1}, {pair_cluster, 2}}), w / 3);
            add(make_structure({{singles[1], 1}, {pair_cluster, 2}}), w / 3);
            add(make_structure({{singles[0], 1}, {singles[1], 1}, {pair_cluster, 1}}), 2 * w / 3);
        } else if (s.support.size() == 2 && doubled == 2) {
            add(make_structure({{s.support[0], 1}, {s.support[1], 2}}), 2 * w / 3);
            add(make_structure({{s.support[0], 2}, {s.support[1], 1}}), 2 * w / 3);
        } else {
            throw UnknownCase("convert_4_to_3: " + describe(s));
        }
    }
    FractionalTiling out;
    for (auto& [s, w] : acc) {
        out.structures.push_back(s);
        out.weights.push_back(w);
    }
    return out;
}

FractionalTiling convert_4_to_2(const FractionalTiling& omega) {
    std::map<int, Rat> loads;
    for (size_t i = 0; i < omega.structures.size(); ++i) {
        const EmbStructure& s = omega.structures[i];
        if (omega.weights[i] < 0) throw BadInput("convert_4_to_2: negative weight");
        for (size_t j = 0; j < s.support.size(); ++j)
            loads[s.support[j]] += omega.weights[i] * s.mult_assign[j];
    }
    FractionalTiling out;
    for (auto& [c, l] : loads) {
        if (l == 0) continue;
        out.structures.push_back(make_structure({{c, 2}}));
        out.weights.push_back(l / 2);
    }
    return out;
}

DoubleEdgeSearch structure_containing_double_edge(const Multigraph2& r, int rr,
                                                  std::pair<int, int> pair) {
    if (r.multiplicity(pair.first, pair.second) != 2)
        throw NotDoubleEdge("clusters " + std::to_string(pair.first) + "," +
                            std::to_string(pair.second));
    DoubleEdgeSearch res;
    for (const EmbStructure& s : enumerate_structures(r, rr + 1))
        if (s.load(pair.first) == 2 && s.load(pair.second) == 2) {
            res.found = s;
            return res;
        }
    if (rr >= 4) {
        const Rat promise = (Rat(1) - rat(2, rr)) * 2 * r.k;
        res.alarm = Rat(r.min_degree()) > promise;
    }
    return res;
}

std::optional<EmbStructure> crossing_structure(const Multigraph2& r, int rr,
                                               const std::vector<VertexSet>& blocks) {
    if (blocks.size() < 2) throw BadInput("crossing_structure: need at least two blocks");
    std::vector<int> block_of(r.k, -1);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int c : blocks[b]) {
            if (c < 0 || c >= r.k || block_of[c] != -1)
                throw BadInput("crossing_structure: blocks do not partition the clusters");
            block_of[c] = static_cast<int>(b);
        }
    for (int c = 0; c < r.k; ++c)
        if (block_of[c] == -1)
            throw BadInput("crossing_structure: blocks do not partition the clusters");
    for (const EmbStructure& s : enumerate_structures(r, rr))
        for (size_t i = 1; i < s.support.size(); ++i)
            if (block_of[s.support[i]] != block_of[s.support[0]]) return s;
    return std::nullopt;
}

std::optional<EmbStructure> vertex_structure(const Multigraph2& r, int rr, const VertexSet& q_v) {
    for (const EmbStructure& s : enumerate_structures(r, rr)) {
        int outside = 0;
        for (int c : s.support)
            if (!std::binary_search(q_v.begin(), q_v.end(), c)) ++outside;
        if (outside <= 1) return s;
    }
    return std::nullopt;
}

PipelineResult almost_tiling_pipeline(const Graph& g, const ClusterSystem& cs, const Graph& h,
                                      const Thresholds& th, const Caps& caps) {
    th.validate();
    if (g.n == 0) throw BadInput("almost_tiling_pipeline: empty host");
    if (cs.host.n != g.n || cs.host.edges != g.edges)
        throw BadInput("almost_tiling_pipeline: cluster system built on a different host");
    const int f = f_value(h);

    PipelineResult out;
    out.reduced = build_reduced(cs, th);
    out.lp_value = 0;
    const int m = static_cast<int>(cs.clusters[0].size());

    auto finalize = [&]() -> PipelineResult& {
        out.covered = static_cast<int>(out.certificate.copies.size()) * h.n;
        out.coverage = rat(out.covered) / g.n;
        out.certificate.complete = out.covered == g.n;
        std::string why;
        if (!verify_tiling(g, h, out.certificate.copies, out.certificate.complete, &why))
            throw ConstructionBug("almost_tiling_pipeline: " + why);
        return out;
    };

    std::vector<EmbStructure> structs;
    LpSolution sol;
    try {
        structs = enumerate_structures(out.reduced, f);
        if (!structs.empty()) sol = solve_structure_lp(out.reduced.k, structs, true);
    } catch (const Error& e) {
        out.diagnostics.push_back(std::string("structure stage: ") + e.what());
        return finalize();
    }
    if (structs.empty()) {
        out.diagnostics.push_back("no " + std::to_string(f) +
                                  "-clique placements in the reduced multigraph");
        return finalize();
    }
    out.lp_value = sol.level_values[0];

    std::vector<char> used(g.n, 0);
    auto remaining = [&](int cluster) {
        VertexSet pool;
        for (int v : cs.clusters[cluster])
            if (!used[v]) pool.push_back(v);
        return pool;
    };

    for (size_t ci = 0; ci < structs.size(); ++ci) {
        if (sol.x[ci] == 0) continue;
        const EmbStructure& st = structs[ci];
        StructureAccount acct;
        acct.structure = st;
        acct.b = st.doubled_count();
        acct.a = st.total_load() - 2 * acct.b;
        acct.weight = (1 - th.eta) * sol.x[ci];
        acct.quota = acct.weight * m;

        QSpec qs;
        TilingCertificate gadget_factor;
        try {
            qs = plan_q(h, acct.a, acct.b);
            gadget_factor = h_factor_in_q(h, qs);
        } catch (const Error& e) {
            out.diagnostics.push_back("structure " + describe(st) + ": " + e.what());
            out.accounts.push_back(std::move(acct));
            continue;
        }
        const Rat per = acct.quota / qs.s;
        acct.planned = static_cast<int>(mpz_class(per.get_num() / per.get_den()).get_si());

        std::vector<int> order; // gadget clusters: singles first, then pairs
        for (size_t i = 0; i < st.support.size(); ++i)
            if (st.mult_assign[i] == 1) order.push_back(st.support[i]);
        for (size_t i = 0; i < st.support.size(); ++i)
            if (st.mult_assign[i] == 2) order.push_back(st.support[i]);

        for (int t = 0; t < acct.planned; ++t) {
            std::vector<VertexSet> pools;
            bool starved = false;
            for (size_t i = 0; i < order.size(); ++i) {
                VertexSet pool = remaining(order[i]);
                const int need = (i < static_cast<size_t>(acct.a) ? qs.s : 2 * qs.s);
                if (static_cast<int>(pool.size()) < need) starved = true;
                pools.push_back(std::move(pool));
            }
            if (starved) {
                out.diagnostics.push_back("structure " + describe(st) + ": cluster pool exhausted after " +
                                          std::to_string(acct.extracted) + " of " +
                                          std::to_string(acct.planned) + " copies");
                break;
            }
            try {
                ClusterSystem sub = make_cluster_system(g, pools);
                EmbedQResult emb = embed_q(sub, qs, th.beta, caps);
                for (const HCopy& cp : gadget_factor.copies) {
                    HCopy host_copy;
                    host_copy.map.resize(h.n);
                    for (int i = 0; i < h.n; ++i) host_copy.map[i] = emb.map.map[cp.map[i]];
                    out.certificate.copies.push_back(std::move(host_copy));
                }
                for (int v : emb.map.map) used[v] = 1;
                acct.extracted += 1;
                acct.vertices += static_cast<int>(emb.map.map.size());
            } catch (const Error& e) {
                out.diagnostics.push_back("structure " + describe(st) + ", copy " +
                                          std::to_string(t) + ": " + e.what());
                break;
            }
        }
        out.accounts.push_back(std::move(acct));
    }
    return finalize();
}

} // namespace arbortile
