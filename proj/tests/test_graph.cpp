#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "gcm/graph.hpp"

using namespace gcm;

namespace {

// test-only oracle: brute-force permutation isomorphism, fine up to ~8 vertices
bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return false;
    std::vector<int> perm(a.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : a.edges())
            if (!b.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

K3Tree star_tree(int leaves) {  // all-triangle star, empty edge labels
    K3Tree t;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    t.tree = Graph(leaves + 1, std::move(edges));
    t.vertex_labels.assign(leaves + 1, {0, 1, 2});
    for (int i = 1; i <= leaves; ++i) t.edge_labels[{0, i}] = {};
    return t;
}

}  // namespace

TEST_CASE("constructors and canonical form") {
    Graph k3 = complete_graph(3);
    CHECK(k3.vertex_count() == 3);
    CHECK(k3.edge_count() == 3);
    CHECK(Graph(3, {{2, 1}, {0, 2}, {1, 0}}) == k3);  // orientation/order-insensitive
    CHECK(paw_graph().vertex_count() == 4);
    CHECK(paw_graph().edge_count() == 4);
    CHECK(wheel5_graph().vertex_count() == 6);
    CHECK(wheel5_graph().edge_count() == 10);
    CHECK(cycle_graph(5).edge_count() == 5);
    CHECK(path_graph(4).edge_count() == 3);
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), domain_error);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), domain_error);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), domain_error);
}

TEST_CASE("json round trip") {
    Graph g = disjoint_union({paw_graph(), complete_graph(2)});
    CHECK(Graph::from_json(g.to_json()) == g);
    CHECK(g.to_json().find("\"vertices\"") != std::string::npos);
}

TEST_CASE("components relabel and preserve structure") {
    Graph g = disjoint_union({complete_graph(3), path_graph(2), cycle_graph(4)});
    auto comps = components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == complete_graph(3));
    CHECK(comps[1] == path_graph(2));
    CHECK(comps[2] == cycle_graph(4));
    CHECK(components(Graph(3, {})).size() == 3);
}

TEST_CASE("chromatic number") {
    CHECK(chromatic_number(complete_graph(4)) == 4);
    CHECK(chromatic_number(cycle_graph(5)) == 3);
    CHECK(chromatic_number(cycle_graph(6)) == 2);
    CHECK(chromatic_number(paw_graph()) == 3);
    CHECK(chromatic_number(wheel5_graph()) == 4);
    CHECK(chromatic_number(Graph(5, {})) == 1);
    CHECK_THROWS_AS(chromatic_number(complete_graph(13)), domain_error);
}

TEST_CASE("k3 tree realization") {
    SUBCASE("star tree gives disjoint triangles") {
        for (int k = 1; k <= 2; ++k) {
            Graph h = realize_k3_tree(star_tree(k));
            std::vector<Graph> parts(k + 1, complete_graph(3));
            CHECK(isomorphic(h, disjoint_union(parts)));
        }
    }
    SUBCASE("edge gluing gives the diamond") {
        K3Tree t;
        t.tree = Graph(2, {{0, 1}});
        t.vertex_labels = {{0, 1, 2}, {0, 1, 2}};
        t.edge_labels[{0, 1}] = {0, 1};
        Graph h = realize_k3_tree(t);
        CHECK(h.vertex_count() == 4);
        CHECK(h.edge_count() == 5);
    }
    SUBCASE("vertex gluing gives the bowtie") {
        K3Tree t;
        t.tree = Graph(2, {{0, 1}});
        t.vertex_labels = {{0, 1, 2}, {0, 1, 2}};
        t.edge_labels[{0, 1}] = {0};
        Graph h = realize_k3_tree(t);
        CHECK(h.vertex_count() == 5);
        CHECK(h.edge_count() == 6);
    }
}

TEST_CASE("k3 tree validation") {
    K3Tree t;
    t.tree = Graph(2, {{0, 1}});
    t.vertex_labels = {{0, 1, 2}, {0, 1}};
    t.edge_labels[{0, 1}] = {0, 1};  // equals the intersection: not proper
    CHECK_THROWS_AS(t.validate(), domain_error);
    t.edge_labels[{0, 1}] = {2};  // outside the intersection
    CHECK_THROWS_AS(t.validate(), domain_error);
    t.edge_labels[{0, 1}] = {0};
    CHECK_NOTHROW(t.validate());

    K3Tree cyclic;
    cyclic.tree = Graph(3, {{0, 1}, {1, 2}});
    cyclic.vertex_labels = {{0, 1, 2}, {0, 1, 2}};  // wrong size
    CHECK_THROWS_AS(cyclic.validate(), domain_error);
}

TEST_CASE("k3 tree json round trip") {
    K3Tree t;
    t.tree = Graph(2, {{0, 1}});
    t.vertex_labels = {{0, 1, 2}, {0, 1, 2}};
    t.edge_labels[{0, 1}] = {1};
    K3Tree back = K3Tree::from_json(t.to_json());
    CHECK(back.tree == t.tree);
    CHECK(back.vertex_labels == t.vertex_labels);
    CHECK(back.edge_labels == t.edge_labels);
}

TEST_CASE("correlation records") {
    K3Tree bowtie;
    bowtie.tree = Graph(2, {{0, 1}});
    bowtie.vertex_labels = {{0, 1, 2}, {0, 1, 2}};
    bowtie.edge_labels[{0, 1}] = {0};
    CorrelationRecord rec = k3_tree_correlation(bowtie);
    CHECK(rec.base_graph == complete_graph(3));
    CHECK(rec.power == 2);
    CHECK(rec.edge_exponent == 0);
    CHECK(rec.subject.edge_count() == 6);

    // triangle with two pendant edges: one triangle piece, two K2 pieces
    K3Tree pend;
    pend.tree = Graph(3, {{0, 1}, {0, 2}});
    pend.vertex_labels = {{0, 1, 2}, {0, 1}, {1, 2}};
    pend.edge_labels[{0, 1}] = {0};
    pend.edge_labels[{0, 2}] = {2};
    CorrelationRecord rec2 = k3_tree_correlation(pend);
    CHECK(rec2.power == 1);
    CHECK(rec2.edge_exponent == 2);  // v2 - e2 = 2
    CHECK(rec2.subject.vertex_count() == 5);
    CHECK(rec2.subject.edge_count() == 5);
}
