#include "arbortile/absorb.hpp"

#include <algorithm>
#include <map>

namespace arbortile {

IndexVector index_vector(const VertexSet& s, const std::vector<VertexSet>& p) {
    int n = 0;
    for (const auto& b : p)
        for (int v : b) n = std::max(n, v + 1);
    std::vector<int> owner(n, -1);
    for (size_t i = 0; i < p.size(); ++i)
        for (int v : p[i]) {
            if (owner[v] >= 0) throw BadInput("index_vector: blocks overlap at vertex " + std::to_string(v));
            owner[v] = static_cast<int>(i);
        }

    IndexVector iv;
    iv.coords.assign(p.size(), 0);
    for (int v : s) {
        if (v < 0 || v >= n || owner[v] < 0)
            throw BadInput("index_vector: vertex " + std::to_string(v) + " lies in no block");
        ++iv.coords[owner[v]];
    }
    return iv;
}

namespace {

VertexSet sorted_unique(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool copies_disjoint(const std::vector<HCopy>& copies) {
    VertexSet all;
    for (const auto& c : copies) all.insert(all.end(), c.map.begin(), c.map.end());
    std::sort(all.begin(), all.end());
    return std::adjacent_find(all.begin(), all.end()) == all.end();
}

} // namespace

ConnectorSearch find_connector(const Graph& g, const Graph& h, int u, int v, int t,
                               const VertexSet& avoid, const Caps& caps) {
    if (h.n < 1) throw BadInput("find_connector: empty pattern");
    if (u == v) throw BadInput("find_connector: endpoints coincide");
    if (u < 0 || u >= g.n || v < 0 || v >= g.n) throw BadInput("find_connector: endpoint out of range");
    if (t < 1) throw BadInput("find_connector: t must be positive");
    VertexSet av = sorted_unique(avoid);
    if (std::binary_search(av.begin(), av.end(), u) || std::binary_search(av.begin(), av.end(), v))
        throw BadInput("find_connector: endpoints may not be avoided");

    ConnectorSearch out;

    // u's side lives in g - avoid - v
    VertexSet keep;
    for (int w = 0; w < g.n; ++w)
        if (w != v && !std::binary_search(av.begin(), av.end(), w)) keep.push_back(w);
    Graph sub = induced_subgraph(g, keep);
    const VertexSet& label = keep; // local -> original vertex names
    int lu = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), u) - keep.begin());

    CopyEnumeration ce = enumerate_copies(sub, h, caps.copy_cap);
    if (ce.truncated) out.exhausted = false;
    std::vector<size_t> through_u;
    for (size_t i = 0; i < ce.copies.size(); ++i)
        if (std::find(ce.copies[i].map.begin(), ce.copies[i].map.end(), lu) !=
            ce.copies[i].map.end())
            through_u.push_back(i);

    long candidates = 0;
    Bits used(sub.n);
    std::vector<size_t> family;

    // check one completed family: S = union of the copies minus u
    auto try_family = [&]() -> bool {
        if (++candidates > caps.connector_cap) return false;
        VertexSet s_orig;
        for (size_t ci : family)
            for (int w : ce.copies[ci].map)
                if (w != lu) s_orig.push_back(label[w]);
        std::sort(s_orig.begin(), s_orig.end());

        VertexSet v_side = s_orig;
        v_side.insert(std::lower_bound(v_side.begin(), v_side.end(), v), v);
        try {
            if (!has_factor(induced_subgraph(g, v_side), h, caps).exists) return false;
        } catch (const CapExceeded&) {
            out.exhausted = false;
            return false;
        }

        // paranoid re-verification of both sides before returning
        VertexSet u_side = s_orig;
        u_side.insert(std::lower_bound(u_side.begin(), u_side.end(), u), u);
        if (static_cast<int>(s_orig.size()) != h.n * t - 1 ||
            !has_factor(induced_subgraph(g, u_side), h, caps).exists ||
            !has_factor(induced_subgraph(g, v_side), h, caps).exists)
            throw ConstructionBug("find_connector: candidate failed re-verification");

        Connector c;
        c.s_set = std::move(s_orig); // excludes u by construction, v by universe
        c.u = u;
        c.v = v;
        c.t = t;
        out.found = std::move(c);
        return true;
    };

    // the u-copy first, then disjoint copies with increasing indices
    auto extend = [&](auto&& self, size_t from, int picked) -> bool {
        if (picked == t) return try_family();
        if (candidates > caps.connector_cap) return false;
        for (size_t i = from; i < ce.copies.size(); ++i) {
            const HCopy& c = ce.copies[i];
            bool clash = false;
            for (int w : c.map)
                if (used.test(w) || w == lu) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            for (int w : c.map) used.set(w);
            family.push_back(i);
            bool done = self(self, i + 1, picked + 1);
            family.pop_back();
            for (int w : c.map) used.reset(w);
            if (done) return true;
            if (candidates > caps.connector_cap) return false;
        }
        return false;
    };

    for (size_t ui : through_u) {
        const HCopy& c0 = ce.copies[ui];
        for (int w : c0.map) used.set(w);
        family.push_back(ui);
        bool done = extend(extend, 0, 1);
        family.pop_back();
        for (int w : c0.map) used.reset(w);
        if (done) return out;
        if (candidates > caps.connector_cap) {
            out.exhausted = false;
            return out;
        }
    }
    return out;
}

bool verify_absorber(const Graph& g, const Graph& h, const VertexSet& s, const VertexSet& a, int t,
                     const Caps& caps) {
    if (h.n < 1) throw BadInput("verify_absorber: empty pattern");
    if (t < 0) throw BadInput("verify_absorber: negative t");
    VertexSet ss = sorted_unique(s);
    if (static_cast<int>(ss.size()) != h.n || ss.size() != s.size())
        throw BadInput("verify_absorber: marked set must hold exactly the pattern order");
    for (int w : ss)
        if (w < 0 || w >= g.n) throw BadInput("verify_absorber: marked vertex out of range");

    VertexSet aa = sorted_unique(a);
    if (aa.size() != a.size() || static_cast<int>(aa.size()) != h.n * t) return false;
    for (int w : aa)
        if (w < 0 || w >= g.n) return false;
    VertexSet inter;
    std::set_intersection(aa.begin(), aa.end(), ss.begin(), ss.end(), std::back_inserter(inter));
    if (!inter.empty()) return false;

    if (t > 0 && !has_factor(induced_subgraph(g, aa), h, caps).exists) return false;
    VertexSet both = aa;
    both.insert(both.end(), ss.begin(), ss.end());
    std::sort(both.begin(), both.end());
    return has_factor(induced_subgraph(g, both), h, caps).exists;
}

std::vector<RobustVector> robust_vectors(const Graph& g, const Graph& h,
                                         const std::vector<VertexSet>& p, const Rat& mu,
                                         const Caps& caps) {
    if (h.n < 1) throw BadInput("robust_vectors: empty pattern");
    if (mu < 0 || mu >= 1) throw BadInput("robust_vectors: mu outside [0, 1)");
    {
        std::vector<char> seen(g.n, 0);
        int total = 0;
        for (const auto& b : p)
            for (int w : b) {
                if (w < 0 || w >= g.n || seen[w])
                    throw BadInput("robust_vectors: blocks do not partition the host");
                seen[w] = 1;
                ++total;
            }
        if (total != g.n) throw BadInput("robust_vectors: blocks do not partition the host");
    }

    // floor(mu * n) + 1 disjoint copies certify the vector
    Rat scaled = mu * g.n;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    long need = fl.get_si() + 1;
    std::vector<RobustVector> out;
    if (need * h.n > g.n) return out; // counting rules every vector out

    CopyEnumeration ce = enumerate_copies(g, h, caps.copy_cap);
    std::map<IndexVector, std::vector<size_t>> groups;
    for (size_t i = 0; i < ce.copies.size(); ++i) {
        VertexSet img(ce.copies[i].map.begin(), ce.copies[i].map.end());
        std::sort(img.begin(), img.end());
        groups[index_vector(img, p)].push_back(i);
    }

    for (auto& [vec, idxs] : groups) {
        if (static_cast<long>(idxs.size()) < need) continue;
        Bits used(g.n);
        std::vector<size_t> picked;
        long nodes = 0;
        // backtracking set packing: find `need` pairwise disjoint copies
        auto dfs = [&](auto&& self, size_t from) -> bool {
            if (static_cast<long>(picked.size()) == need) return true;
            if (++nodes > caps.node_budget) return false;
            for (size_t k = from; k < idxs.size(); ++k) {
                if (static_cast<long>(picked.size() + (idxs.size() - k)) < need) return false;
                const HCopy& c = ce.copies[idxs[k]];
                bool clash = false;
                for (int w : c.map)
                    if (used.test(w)) {
                        clash = true;
                        break;
                    }
                if (clash) continue;
                for (int w : c.map) used.set(w);
                picked.push_back(idxs[k]);
                if (self(self, k + 1)) return true;
                picked.pop_back();
                for (int w : c.map) used.reset(w);
            }
            return false;
        };
        if (!dfs(dfs, 0)) continue;

        RobustVector rv;
        rv.vec = vec;
        for (size_t k : picked) rv.family.push_back(ce.copies[k]);
        if (!copies_disjoint(rv.family))
            throw ConstructionBug("robust_vectors: family is not disjoint");
        std::string why;
        if (!verify_tiling(g, h, rv.family, false, &why))
            throw ConstructionBug("robust_vectors: family failed re-verification: " + why);
        out.push_back(std::move(rv));
    }
    return out;
}

std::optional<Transferral> transferral(const std::vector<IndexVector>& iset) {
    for (size_t i = 1; i < iset.size(); ++i)
        if (iset[i].coords.size() != iset[0].coords.size())
            throw BadInput("transferral: mixed arities");

    for (size_t a = 0; a + 1 < iset.size(); ++a)
        for (size_t b = a + 1; b < iset.size(); ++b) {
            int plus = -1, minus = -1;
            bool clean = true;
            for (size_t k = 0; k < iset[a].coords.size() && clean; ++k) {
                long d = iset[a].coords[k] - iset[b].coords[k];
                if (d == 0) continue;
                if (d == 1 && plus < 0) plus = static_cast<int>(k);
                else if (d == -1 && minus < 0) minus = static_cast<int>(k);
                else clean = false;
            }
            if (clean && plus >= 0 && minus >= 0) {
                Transferral tr;
                tr.i = plus;
                tr.j = minus;
                tr.s = iset[a];
                tr.t = iset[b];
                return tr;
            }
        }
    return std::nullopt;
}

bool lattice_member(const std::vector<IndexVector>& generators, const IndexVector& target) {
    const size_t r = target.coords.size();
    for (const auto& gv : generators)
        if (gv.coords.size() != r) throw BadInput("lattice_member: mixed arities");

    std::vector<std::vector<Int>> m;
    for (const auto& gv : generators) {
        std::vector<Int> row(r);
        for (size_t k = 0; k < r; ++k) row[k] = gv.coords[k];
        m.push_back(std::move(row));
    }

    // integer echelon form by gcd elimination; record the pivot columns
    std::vector<std::pair<size_t, size_t>> pivots; // (row, col)
    size_t row = 0;
    for (size_t col = 0; col < r && row < m.size(); ++col) {
        while (true) {
            size_t best = m.size();
            int nonzero = 0;
            for (size_t i = row; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                ++nonzero;
                if (best == m.size() ||
                    mpz_cmpabs(m[i][col].get_mpz_t(), m[best][col].get_mpz_t()) < 0)
                    best = i;
            }
            if (nonzero == 0) break;
            std::swap(m[row], m[best]);
            if (nonzero == 1) {
                if (m[row][col] < 0)
                    for (auto& x : m[row]) x = -x;
                pivots.emplace_back(row, col);
                ++row;
                break;
            }
            for (size_t i = row + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                Int q = m[i][col] / m[row][col]; // truncated: remainders shrink
                for (size_t k = col; k < r; ++k) m[i][k] -= q * m[row][k];
            }
        }
    }

    std::vector<Int> tg(r);
    for (size_t k = 0; k < r; ++k) tg[k] = target.coords[k];
    for (auto [pr, pc] : pivots) {
        if (tg[pc] % m[pr][pc] != 0) return false;
        Int q = tg[pc] / m[pr][pc];
        for (size_t k = 0; k < r; ++k) tg[k] -= q * m[pr][k];
    }
    for (const Int& x : tg)
        if (x != 0) return false;
    return true;
}

} // namespace arbortile
