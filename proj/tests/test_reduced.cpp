#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "arbortile/reduced.hpp"
#include "arbortile/rng.hpp"

using namespace arbortile;

namespace {

// Brute-force reference: every multiplicity vector in {0,1,2}^k summing to
// rr, checked against the placement rules directly.
std::vector<EmbStructure> oracle_structures(const Multigraph2& r, int rr) {
    std::vector<EmbStructure> out;
    std::vector<int> m(r.k, 0);
    auto rec = [&](auto&& self, int v, int left) -> void {
        if (v == r.k) {
            if (left != 0) return;
            EmbStructure s;
            for (int c = 0; c < r.k; ++c)
                if (m[c]) {
                    s.support.push_back(c);
                    s.mult_assign.push_back(m[c]);
                }
            if (s.support.empty()) return;
            for (size_t i = 0; i < s.support.size(); ++i)
                for (size_t j = i + 1; j < s.support.size(); ++j) {
                    int mu = r.multiplicity(s.support[i], s.support[j]);
                    if (mu < 1) return;
                    if (s.mult_assign[i] == 2 && s.mult_assign[j] == 2 && mu < 2) return;
                }
            out.push_back(s);
            return;
        }
        for (int t = 0; t <= 2 && t <= left; ++t) {
            m[v] = t;
            self(self, v + 1, left - t);
        }
        m[v] = 0;
    };
    rec(rec, 0, rr);
    std::sort(out.begin(), out.end());
    return out;
}

// Largest set of structures usable at weight 1 simultaneously (so per-cluster
// loads stay <= 1); a lower-bound witness for the LP optimum.
int oracle_max_packing(const Multigraph2& r, const std::vector<EmbStructure>& structs) {
    int best = 0;
    std::vector<int> load(r.k, 0);
    auto rec = [&](auto&& self, size_t idx, int count) -> void {
        best = std::max(best, count);
        for (size_t i = idx; i < structs.size(); ++i) {
            const EmbStructure& s = structs[i];
            bool fits = true;
            for (size_t j = 0; j < s.support.size(); ++j)
                if (load[s.support[j]] + s.mult_assign[j] > 1) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            for (size_t j = 0; j < s.support.size(); ++j) load[s.support[j]] += s.mult_assign[j];
            self(self, i + 1, count + 1);
            for (size_t j = 0; j < s.support.size(); ++j) load[s.support[j]] -= s.mult_assign[j];
        }
    };
    rec(rec, 0, 0);
    return best;
}

Multigraph2 doubled_complete(int k) {
    Multigraph2 r;
    r.k = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) r.set_mult(i, j, 2);
    return r;
}

Multigraph2 random_multigraph(int k, Rng& rng) {
    Multigraph2 r;
    r.k = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int roll = rng.next_int(0, 3); // {none, single, double, double}
            r.set_mult(i, j, roll <= 1 ? roll : 2);
        }
    return r;
}

EmbStructure structure_of(std::vector<std::pair<int, int>> cm) {
    std::sort(cm.begin(), cm.end());
    EmbStructure s;
    for (auto& [c, m] : cm) {
        s.support.push_back(c);
        s.mult_assign.push_back(m);
    }
    return s;
}

VertexSet range_set(int lo, int hi) { // [lo, hi)
    VertexSet s(hi - lo);
    std::iota(s.begin(), s.end(), lo);
    return s;
}

Thresholds mild_thresholds() {
    return Thresholds{rat(1, 4), rat(1, 100), rat(1, 10), rat(1, 10)};
}

} // namespace

TEST_CASE("multigraph basics and text round trip") {
    Multigraph2 r;
    r.k = 4;
    r.set_mult(0, 1, 2);
    r.set_mult(2, 1, 1); // normalized to (1,2)
    CHECK(r.multiplicity(1, 0) == 2);
    CHECK(r.multiplicity(1, 2) == 1);
    CHECK(r.multiplicity(0, 3) == 0);
    CHECK(r.degree(1) == 3);
    CHECK(r.degree(3) == 0);
    CHECK(r.min_degree() == 0);
    r.set_mult(0, 1, 0);
    CHECK(r.multiplicity(0, 1) == 0);

    Multigraph2 s = doubled_complete(3);
    s.set_mult(0, 2, 1);
    Multigraph2 back = Multigraph2::from_text(s.to_text());
    CHECK(back.k == 3);
    CHECK(back.mult == s.mult);

    CHECK_THROWS_AS(Multigraph2::from_text("x"), ParseError);
    CHECK_THROWS_AS(Multigraph2::from_text("2\n0 0 1\n"), ParseError);
    CHECK_THROWS_AS(Multigraph2::from_text("2\n0 2 1\n"), ParseError);
    CHECK_THROWS_AS(Multigraph2::from_text("2\n0 1 3\n"), ParseError);
    CHECK_THROWS_AS(Multigraph2::from_text("2\n0 1 1\n1 0 2\n"), ParseError);
    CHECK_THROWS_AS(Multigraph2::from_text("2\n0 1 1 oops"), ParseError);
    CHECK_THROWS_AS(r.set_mult(0, 0, 1), BadInput);
    CHECK_THROWS_AS(r.set_mult(0, 9, 1), BadInput);
}

TEST_CASE("build_reduced thresholds and boundaries") {
    // two clusters of two; all four cross edges present
    Graph full = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    ClusterSystem cs = make_cluster_system(full, {{0, 1}, {2, 3}});
    Thresholds th = mild_thresholds();
    Multigraph2 r = build_reduced(cs, th);
    CHECK(r.k == 2);
    CHECK(r.multiplicity(0, 1) == 2);

    // density exactly beta = 1/4: one cross edge out of four -> single
    Graph quarter = Graph::from_edges(4, {{0, 2}});
    r = build_reduced(make_cluster_system(quarter, {{0, 1}, {2, 3}}), th);
    CHECK(r.multiplicity(0, 1) == 1);

    // just below beta -> no edge (3/16 < 1/4)
    Graph sparse = Graph::from_edges(8, {{0, 4}, {1, 5}, {2, 6}});
    r = build_reduced(make_cluster_system(sparse, {range_set(0, 4), range_set(4, 8)}), th);
    CHECK(r.multiplicity(0, 1) == 0);

    // within-cluster edges are invisible to the reduced multigraph
    Graph inner = Graph::from_edges(4, {{0, 1}, {2, 3}});
    r = build_reduced(make_cluster_system(inner, {{0, 1}, {2, 3}}), th);
    CHECK(r.mult.empty());

    CHECK_THROWS_AS(build_reduced(make_cluster_system(full, {{0}, {1, 2}}), th),
                    ClusterSizeError);
    Thresholds bad = th;
    bad.beta = rat(0);
    CHECK_THROWS_AS(build_reduced(cs, bad), BadInput);
    bad.beta = rat(5, 4);
    CHECK_THROWS_AS(build_reduced(cs, bad), BadInput);
}

TEST_CASE("degree bound arithmetic") {
    CHECK(check_degree_bound(doubled_complete(5), 4, rat(1, 10)));
    Multigraph2 empty10;
    empty10.k = 10;
    CHECK_FALSE(check_degree_bound(empty10, 4, rat(1, 10)));

    // doubled five-cycle: degrees 4, bound 2(1/2 + 1/40)*5 = 21/4
    Multigraph2 c5;
    c5.k = 5;
    for (int i = 0; i < 5; ++i) c5.set_mult(i, (i + 1) % 5, 2);
    CHECK(c5.degree(0) == 4);
    CHECK_FALSE(check_degree_bound(c5, 4, rat(1, 20)));
    CHECK_THROWS_AS(check_degree_bound(c5, 0, rat(1, 20)), BadInput);
}

TEST_CASE("structure enumeration pins") {
    Multigraph2 pair;
    pair.k = 2;
    pair.set_mult(0, 1, 2);

    auto rr3 = enumerate_structures(pair, 3);
    REQUIRE(rr3.size() == 2);
    CHECK(rr3[0] == structure_of({{0, 1}, {1, 2}}));
    CHECK(rr3[1] == structure_of({{0, 2}, {1, 1}}));

    auto rr2 = enumerate_structures(pair, 2);
    REQUIRE(rr2.size() == 3);
    CHECK(rr2[0] == structure_of({{0, 2}}));
    CHECK(rr2[1] == structure_of({{0, 1}, {1, 1}}));
    CHECK(rr2[2] == structure_of({{1, 2}}));

    auto rr4 = enumerate_structures(pair, 4);
    REQUIRE(rr4.size() == 1);
    CHECK(rr4[0] == structure_of({{0, 2}, {1, 2}}));

    Multigraph2 single;
    single.k = 2;
    single.set_mult(0, 1, 1);
    CHECK(enumerate_structures(single, 4).empty());
    CHECK(enumerate_structures(single, 2).size() == 3); // the edge plus two singletons

    CHECK_THROWS_AS(enumerate_structures(pair, 1), BadInput);
    CHECK_THROWS_AS(enumerate_structures(doubled_complete(6), 4, 5), CapExceeded);
}

TEST_CASE("structure enumeration matches brute force") {
    Rng rng(2026);
    int nonempty = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Multigraph2 r = random_multigraph(rng.next_int(2, 6), rng);
        int rr = rng.next_int(2, 5);
        auto fast = enumerate_structures(r, rr);
        auto slow = oracle_structures(r, rr);
        REQUIRE(fast == slow);
        for (const EmbStructure& s : fast) {
            CHECK(structure_ok(r, s));
            CHECK(s.total_load() == rr);
        }
        if (!fast.empty()) ++nonempty;
    }
    CHECK(nonempty > 20);

    std::string why;
    Multigraph2 pair;
    pair.k = 2;
    pair.set_mult(0, 1, 1);
    CHECK_FALSE(structure_ok(pair, structure_of({{0, 2}, {1, 2}}), &why));
    CHECK(why.find("double-edge") != std::string::npos);
    CHECK_FALSE(structure_ok(pair, structure_of({{0, 1}, {5, 1}}), &why));
}

TEST_CASE("fractional tiling pins") {
    Multigraph2 pair;
    pair.k = 2;
    pair.set_mult(0, 1, 2);
    FracTileResult res = fractional_tiling(pair, 3);
    CHECK(res.value == rat(2));
    REQUIRE(res.tiling.structures.size() == 2);
    CHECK(res.tiling.weights[0] == rat(1, 3));
    CHECK(res.tiling.weights[1] == rat(1, 3));
    CHECK(res.tiling.load(0) == rat(1));
    CHECK(res.tiling.load(1) == rat(1));
    CHECK(res.tiling.total_load() == res.value);
    REQUIRE(res.dual.size() == 2);
    CHECK(res.dual[0] == rat(1));
    CHECK(res.dual[1] == rat(1));
    CHECK(tiling_ok(pair, res.tiling));

    FracTileResult again = fractional_tiling(pair, 3);
    CHECK(again.tiling.weights == res.tiling.weights);
    CHECK(again.dual == res.dual);

    Multigraph2 isolated;
    isolated.k = 1;
    FracTileResult none = fractional_tiling(isolated, 3);
    CHECK(none.value == rat(0));
    CHECK(none.tiling.structures.empty());

    FracTileResult tri = fractional_tiling(doubled_complete(3), 3);
    CHECK(tri.value == rat(3));
    for (int v = 0; v < 3; ++v) CHECK(tri.tiling.load(v) == rat(1));
    CHECK(tiling_ok(doubled_complete(3), tri.tiling));
}

TEST_CASE("lp value dominates integral packings") {
    Rng rng(515);
    int witnessed = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Multigraph2 r = random_multigraph(rng.next_int(2, 6), rng);
        int rr = rng.next_int(2, 4);
        auto structs = enumerate_structures(r, rr);
        FracTileResult res = fractional_tiling(r, rr);
        int packing = oracle_max_packing(r, structs);
        CHECK(res.value >= rat(packing) * rr);
        CHECK(res.value <= rat(r.k)); // loads <= 1 cap the total
        if (packing >= 1) ++witnessed;
        std::string why;
        CHECK(tiling_ok(r, res.tiling, &why));
    }
    CHECK(witnessed > 10);
}

TEST_CASE("conversion pins") {
    FractionalTiling k4;
    k4.structures = {structure_of({{0, 1}, {1, 1}, {2, 1}, {3, 1}})};
    k4.weights = {rat(1, 4)};
    FractionalTiling t3 = convert_4_to_3(k4);
    REQUIRE(t3.structures.size() == 4);
    for (const Rat& w : t3.weights) CHECK(w == rat(1, 12));
    for (int v = 0; v < 4; ++v) CHECK(t3.load(v) == rat(1, 4));
    for (const EmbStructure& s : t3.structures) CHECK(s.total_load() == 3);

    FractionalTiling dp;
    dp.structures = {structure_of({{0, 2}, {1, 2}})};
    dp.weights = {rat(1, 2)};
    t3 = convert_4_to_3(dp);
    REQUIRE(t3.structures.size() == 2);
    CHECK(t3.structures[0] == structure_of({{0, 1}, {1, 2}}));
    CHECK(t3.structures[1] == structure_of({{0, 2}, {1, 1}}));
    CHECK(t3.weights[0] == rat(1, 3));
    CHECK(t3.weights[1] == rat(1, 3));
    CHECK(t3.load(0) == rat(1));
    CHECK(t3.load(1) == rat(1));

    FractionalTiling mixed;
    mixed.structures = {structure_of({{0, 1}, {1, 1}, {2, 2}})};
    mixed.weights = {rat(3, 10)};
    t3 = convert_4_to_3(mixed);
    REQUIRE(t3.structures.size() == 3);
    CHECK(t3.load(0) == rat(3, 10));
    CHECK(t3.load(1) == rat(3, 10));
    CHECK(t3.load(2) == rat(6, 10));
    // the plain triangle carries twice the weight of each mixed edge
    CHECK(t3.load(0) + t3.load(1) + t3.load(2) == mixed.total_load());

    FractionalTiling zero;
    CHECK(convert_4_to_3(zero).structures.empty());
    CHECK(convert_4_to_2(zero).structures.empty());

    FractionalTiling bad;
    bad.structures = {structure_of({{0, 1}, {1, 2}})};
    bad.weights = {rat(1, 2)};
    CHECK_THROWS_AS(convert_4_to_3(bad), UnknownCase);

    FractionalTiling full;
    full.structures = {structure_of({{0, 2}, {1, 2}}), structure_of({{2, 2}, {3, 2}})};
    full.weights = {rat(1, 2), rat(1, 2)};
    FractionalTiling t2 = convert_4_to_2(full);
    REQUIRE(t2.structures.size() == 4);
    for (int v = 0; v < 4; ++v) {
        CHECK(t2.structures[v] == structure_of({{v, 2}}));
        CHECK(t2.weights[v] == rat(1, 2));
        CHECK(t2.load(v) == rat(1));
    }
}

TEST_CASE("conversions preserve loads on random tilings") {
    Rng rng(8844);
    int converted = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Multigraph2 r = random_multigraph(rng.next_int(3, 6), rng);
        auto structs = enumerate_structures(r, 4);
        if (structs.empty()) continue;
        FractionalTiling omega;
        for (const EmbStructure& s : structs) {
            Rat w = rat(rng.next_int(0, 4), 4);
            if (w == 0) continue;
            omega.structures.push_back(s);
            omega.weights.push_back(w);
        }
        Rat top = rat(1);
        for (int v = 0; v < r.k; ++v) top = std::max(top, omega.load(v));
        for (Rat& w : omega.weights) w /= top;
        REQUIRE(tiling_ok(r, omega));

        FractionalTiling t3 = convert_4_to_3(omega);
        FractionalTiling t2 = convert_4_to_2(omega);
        for (int v = 0; v < r.k; ++v) {
            CHECK(t3.load(v) == omega.load(v));
            CHECK(t2.load(v) == omega.load(v));
        }
        CHECK(t3.total_load() == omega.total_load());
        CHECK(t2.total_load() == omega.total_load());
        std::string why;
        CHECK(tiling_ok(r, t3, &why));
        CHECK(tiling_ok(r, t2, &why));
        for (const EmbStructure& s : t3.structures) CHECK(s.total_load() == 3);
        for (const EmbStructure& s : t2.structures) CHECK(s.total_load() == 2);
        if (!omega.structures.empty()) ++converted;
    }
    CHECK(converted > 40);
}

TEST_CASE("double edge containment search") {
    DoubleEdgeSearch hit = structure_containing_double_edge(doubled_complete(5), 4, {1, 3});
    REQUIRE(hit.found.has_value());
    CHECK(hit.found->total_load() == 5);
    CHECK(hit.found->load(1) == 2);
    CHECK(hit.found->load(3) == 2);
    CHECK(structure_ok(doubled_complete(5), *hit.found));
    CHECK_FALSE(hit.alarm);

    Multigraph2 pairs;
    pairs.k = 4;
    pairs.set_mult(0, 1, 2);
    pairs.set_mult(2, 3, 2);
    DoubleEdgeSearch miss = structure_containing_double_edge(pairs, 4, {0, 1});
    CHECK_FALSE(miss.found.has_value());
    CHECK_FALSE(miss.alarm); // min degree 2 is within the proved bound of 4

    Multigraph2 single;
    single.k = 2;
    single.set_mult(0, 1, 1);
    CHECK_THROWS_AS(structure_containing_double_edge(single, 4, {0, 1}), NotDoubleEdge);
}

TEST_CASE("crossing structures") {
    auto found = crossing_structure(doubled_complete(4), 3, {{0, 1}, {2, 3}});
    REQUIRE(found.has_value());
    bool low = false, high = false;
    for (int c : found->support) (c <= 1 ? low : high) = true;
    CHECK(low);
    CHECK(high);

    Multigraph2 split;
    split.k = 4;
    split.set_mult(0, 1, 2);
    split.set_mult(2, 3, 2);
    CHECK_FALSE(crossing_structure(split, 3, {{0, 1}, {2, 3}}).has_value());

    split.set_mult(1, 2, 1);
    auto cross = crossing_structure(split, 2, {{0, 1}, {2, 3}});
    REQUIRE(cross.has_value());
    CHECK(*cross == structure_of({{1, 1}, {2, 1}}));

    CHECK_THROWS_AS(crossing_structure(split, 2, {{0, 1, 2, 3}}), BadInput);
    CHECK_THROWS_AS(crossing_structure(split, 2, {{0, 1}, {1, 2, 3}}), BadInput);
    CHECK_THROWS_AS(crossing_structure(split, 2, {{0, 1}, {2}}), BadInput);
}

TEST_CASE("vertex structures") {
    Multigraph2 tri = doubled_complete(3);
    auto any = vertex_structure(tri, 3, {0, 1, 2});
    REQUIRE(any.has_value());
    CHECK(*any == enumerate_structures(tri, 3).front());

    auto near = vertex_structure(tri, 3, {0, 1});
    REQUIRE(near.has_value());
    int outside = 0;
    for (int c : near->support) outside += (c == 2);
    CHECK(outside <= 1);

    CHECK_FALSE(vertex_structure(doubled_complete(5), 4, {}).has_value());
}

TEST_CASE("pipeline covers a blown-up doubled triangle") {
    Graph g = Graph::complete_multipartite({30, 30, 30});
    Graph h = Graph::complete(3);
    ClusterSystem cs =
        make_cluster_system(g, {range_set(0, 30), range_set(30, 60), range_set(60, 90)});
    PipelineResult res = almost_tiling_pipeline(g, cs, h, mild_thresholds());

    CHECK(res.reduced.multiplicity(0, 1) == 2);
    CHECK(res.reduced.multiplicity(0, 2) == 2);
    CHECK(res.reduced.multiplicity(1, 2) == 2);
    CHECK(res.lp_value == rat(3));

    REQUIRE(res.accounts.size() == 1);
    const StructureAccount& acct = res.accounts[0];
    CHECK(acct.structure == structure_of({{0, 1}, {1, 1}, {2, 1}}));
    CHECK(acct.a == 3);
    CHECK(acct.b == 0);
    CHECK(acct.weight == rat(9, 10));
    CHECK(acct.quota == rat(27));
    CHECK(acct.planned == 13);
    CHECK(acct.extracted == 13);
    CHECK(acct.vertices == 78);

    CHECK(res.covered == 78);
    CHECK(res.coverage == rat(78, 90));
    CHECK(res.coverage >= rat(4, 5));
    CHECK(res.certificate.copies.size() == 26);
    CHECK_FALSE(res.certificate.complete);
    CHECK(res.diagnostics.empty());
    std::string why;
    CHECK(verify_tiling(g, h, res.certificate.copies, false, &why));

    PipelineResult rerun = almost_tiling_pipeline(g, cs, h, mild_thresholds());
    REQUIRE(rerun.certificate.copies.size() == res.certificate.copies.size());
    for (size_t i = 0; i < res.certificate.copies.size(); ++i)
        CHECK(rerun.certificate.copies[i].map == res.certificate.copies[i].map);
}

TEST_CASE("pipeline leaves an isolated cluster uncovered") {
    Graph g = Graph::disjoint_union(Graph::complete_multipartite({30, 30, 30}),
                                    Graph::empty_graph(30));
    Graph h = Graph::complete(3);
    ClusterSystem cs = make_cluster_system(g, {range_set(0, 30), range_set(30, 60),
                                               range_set(60, 90), range_set(90, 120)});
    PipelineResult res = almost_tiling_pipeline(g, cs, h, mild_thresholds());
    CHECK(res.reduced.degree(3) == 0);
    CHECK(res.covered == 78);
    CHECK(res.coverage == rat(78, 120));
    for (const HCopy& cp : res.certificate.copies)
        for (int v : cp.map) CHECK(v < 90);
}

TEST_CASE("pipeline degrades to nothing without structures") {
    // cross density 3/8 lands in the single-edge band; a lone single edge
    // supports no 4-clique placement
    Graph g = Graph::from_edges(8, {{0, 4}, {0, 5}, {1, 5}, {1, 6}, {2, 6}, {3, 7}});
    Graph h = Graph::complete(4);
    ClusterSystem cs = make_cluster_system(g, {range_set(0, 4), range_set(4, 8)});
    Thresholds th = mild_thresholds();
    CHECK(build_reduced(cs, th).multiplicity(0, 1) == 1);

    PipelineResult res = almost_tiling_pipeline(g, cs, h, th);
    CHECK(res.lp_value == rat(0));
    CHECK(res.covered == 0);
    CHECK(res.coverage == rat(0));
    CHECK(res.certificate.copies.empty());
    REQUIRE(res.diagnostics.size() == 1);
    CHECK(res.diagnostics[0].find("no 4-clique placements") != std::string::npos);

    CHECK_THROWS_AS(almost_tiling_pipeline(Graph::complete(4), cs, h, th), BadInput);
}
