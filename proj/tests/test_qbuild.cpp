#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "arbortile/qbuild.hpp"

using namespace arbortile;

namespace {

std::vector<std::pair<std::string, Graph>> menagerie() {
    return {
        {"K3", Graph::complete(3)},
        {"K4", Graph::complete(4)},
        {"K5", Graph::complete(5)},
        {"C4", Graph::cycle(4)},
        {"C6", Graph::cycle(6)},
        {"K33", Graph::complete_multipartite({3, 3})},
        {"star3", Graph::star(3)},
        {"K334", Graph::complete_multipartite({3, 3, 4})},
    };
}

} // namespace

TEST_CASE("plan_q pins the cluster size and forest shapes") {
    Graph k3 = Graph::complete(3);
    QSpec odd = plan_q(k3, 1, 1);
    CHECK(odd.s == 2);
    CHECK(odd.f == 3);
    REQUIRE(odd.forests.size() == 1);
    const Graph& f1 = odd.forests[0].forest;
    CHECK(f1.n == 4);
    CHECK(f1.edge_count() == 2); // two disjoint edges
    CHECK(is_forest(f1));
    for (const auto& comp : components(f1)) CHECK(comp.size() == 2);

    QSpec even = plan_q(Graph::complete(4), 0, 2);
    CHECK(even.s == 4);
    REQUIRE(even.forests.size() == 2);
    CHECK(even.forests[0].forest.n == 8);
    CHECK(even.forests[0].forest.edge_count() == 4);
    CHECK(even.forests[0].forest.edges == even.forests[1].forest.edges);

    QSpec bare = plan_q(k3, 3, 0);
    CHECK(bare.s == 2);
    CHECK(bare.forests.empty());

    CHECK_THROWS_AS(plan_q(k3, 2, 1), ArityError);
    CHECK_THROWS_AS(plan_q(k3, 0, 1), ArityError);
    CHECK_THROWS_AS(plan_q(Graph::complete(4), 1, 1), ArityError);

    QSpec again = plan_q(k3, 1, 1);
    CHECK(again.s == odd.s);
    CHECK(again.forests[0].forest.edges == odd.forests[0].forest.edges);
}

TEST_CASE("build_q materializes the gadget deterministically") {
    QGraph tri = build_q(plan_q(Graph::complete(3), 3, 0));
    CHECK(tri.graph.edges == Graph::complete_multipartite({2, 2, 2}).edges);
    CHECK(tri.clusters.size() == 3);

    QGraph mixed = build_q(plan_q(Graph::complete(3), 1, 1));
    CHECK(mixed.graph.n == 6);
    CHECK(mixed.graph.edge_count() == 10); // 2*4 across + 2 forest edges
    CHECK(mixed.clusters[0].size() == 2);
    CHECK(mixed.clusters[1].size() == 4);
    for (int u : mixed.clusters[0])
        for (int v : mixed.clusters[1]) CHECK(mixed.graph.has_edge(u, v));

    QSpec dot;
    dot.a = 1;
    dot.b = 0;
    dot.s = 1;
    dot.f = 1;
    QGraph single = build_q(dot);
    CHECK(single.graph.n == 1);
    CHECK(single.graph.edge_count() == 0);

    QSpec broken = plan_q(Graph::complete(3), 1, 1);
    broken.forests[0].forest = Graph::cycle(4);
    CHECK_THROWS_AS(build_q(broken), NotAForest);
    broken.forests.clear();
    CHECK_THROWS_AS(build_q(broken), ClusterSizeError);
}

TEST_CASE("gadget factor has the expected copy count and verifies") {
    for (const auto& [name, h] : menagerie()) {
        CAPTURE(name);
        int f = f_value(h);
        int r = (f + 1) / 2;
        for (int b = 0; 2 * b <= f; ++b) {
            int a = f - 2 * b;
            CAPTURE(a);
            CAPTURE(b);
            QSpec spec = plan_q(h, a, b);
            QGraph qg = build_q(spec);
            CHECK(qg.graph.n == spec.s * a + 2 * spec.s * b);
            TilingCertificate cert = h_factor_in_q(h, spec);
            size_t expected = (f % 2 == 0) ? 2 * static_cast<size_t>(r) : 2;
            CHECK(cert.copies.size() == expected);
            std::string why;
            CHECK_MESSAGE(verify_q(h, spec, Caps{}, &why), name << " (" << a << "," << b << "): " << why);
        }
    }
}

TEST_CASE("verify_q rejects corrupted specs instead of throwing") {
    QSpec spec = plan_q(Graph::complete(3), 1, 1);
    spec.forests[0].forest = Graph::cycle(4);
    std::string why;
    CHECK_FALSE(verify_q(Graph::complete(3), spec, Caps{}, &why));
    CHECK(why.find("NotAForest") != std::string::npos);

    QSpec swapped = plan_q(Graph::complete(3), 1, 1);
    CHECK_FALSE(verify_q(Graph::cycle(4), swapped, Caps{}, &why));
}
