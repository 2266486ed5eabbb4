#include <catch2/catch_amalgamated.hpp>

#include "cyclic/graph.hpp"
#include "helpers.hpp"

using namespace cyclic;

TEST_CASE("validate accepts the reference graphs") {
    CHECK(is_valid(graph{{1, 2, 2, 1, 1, 2}}));
    CHECK(is_valid(graph{{2, 2, 2, 2, 2, 2}}));
    CHECK(is_valid(graph{{3, 3, 3, 3, 3, 3, 3, 3, 3}}));
    CHECK(is_valid(graph{{4, 3, 3, 3, 3, 3, 3, 4, 4}}));
    CHECK(is_valid(graph{{0, 0, 0, 0, 0}}));
}

TEST_CASE("validate reports cyclicity violations with the offending index") {
    auto v = validate(graph{{2, 0, 0, 0}});
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().kind == violation_kind::cyclicity);
    CHECK(v.front().index == 0);
}

TEST_CASE("validate reports reach range and antiparallel violations") {
    auto range = validate(graph{{4, 0, 0, 0}});
    REQUIRE_FALSE(range.empty());
    CHECK(range.front().kind == violation_kind::reach_range);

    // 0->1 and 1->0 together are antiparallel on two vertices
    auto anti = validate(graph{{1, 1}});
    REQUIRE_FALSE(anti.empty());
    CHECK(anti.front().kind == violation_kind::antiparallel);
}

TEST_CASE("degenerate sizes are trivially cyclic") {
    CHECK(is_valid(graph{{0}}));
    CHECK(is_valid(graph{{1, 0}}));
    CHECK_FALSE(is_valid(graph{{1, 1}}));
}

TEST_CASE("apply_step grows reach by one") {
    graph g(6);
    graph h = apply_step(g, add_edge{0});
    CHECK(h.reach == std::vector<vertex_t>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("apply_step rejects a cyclicity-breaking edge") {
    graph g{{1, 0, 0, 0}};
    CHECK_THROWS_AS(apply_step(g, add_edge{0}), invalid_step);
}

TEST_CASE("round-robin rounds stay valid at every prefix") {
    graph g(9);
    int applied = 0;
    for (int round = 0; round < 3; ++round) {
        for (vertex_t v = 0; v < 9; ++v) {
            g = apply_step(g, add_edge{v});
            ++applied;
            CAPTURE(applied);
            REQUIRE(is_valid(g));
        }
    }
    CHECK(applied == 27);
    CHECK(g.reach == std::vector<vertex_t>(9, 3));
}

TEST_CASE("degree and cone detection") {
    graph triangle{{1, 1, 1}};
    CHECK(degree(triangle, 0) == 2);
    CHECK(degree(triangle, 1) == 2);
    REQUIRE(is_cone(triangle).has_value());
    CHECK(*is_cone(triangle) == 0);

    graph fig3{{1, 2, 2, 1, 1, 2}};
    CHECK_FALSE(is_cone(fig3).has_value());

    graph edgeless(4);
    for (vertex_t v = 0; v < 4; ++v) CHECK(degree(edgeless, v) == 0);
    CHECK_FALSE(is_cone(edgeless).has_value());
}

TEST_CASE("all_degrees matches the per-vertex scan") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = testutil::random_graph(seed, 4 + seed % 8, 20);
        auto deg = all_degrees(g);
        for (vertex_t v = 0; v < g.size(); ++v) {
            CAPTURE(seed, v);
            REQUIRE(deg[static_cast<std::size_t>(v)] == degree(g, v));
        }
    }
}

TEST_CASE("edge list round-trips through graph_from_edges") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto g = testutil::random_graph(seed, 3 + seed % 9, 25);
        CAPTURE(seed, g.reach);
        REQUIRE(graph_from_edges(g.size(), edge_list(g)).reach == g.reach);
    }
}

TEST_CASE("undirected neighborhoods are cyclic intervals") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = testutil::random_graph(seed ^ 0xabc, 5 + seed % 6, 18);
        const vertex_t n = g.size();
        for (vertex_t v = 0; v < n; ++v) {
            std::vector<char> nb(static_cast<std::size_t>(n), 0);
            nb[static_cast<std::size_t>(v)] = 1;
            for (vertex_t u = 0; u < n; ++u)
                if (u != v && (g.has_edge(u, v) || g.has_edge(v, u)))
                    nb[static_cast<std::size_t>(u)] = 1;
            int blocks = 0;
            for (vertex_t i = 0; i < n; ++i)
                if (nb[static_cast<std::size_t>(i)] &&
                    !nb[static_cast<std::size_t>((i + 1) % n)])
                    ++blocks;
            CAPTURE(seed, v, g.reach);
            REQUIRE(blocks <= 1);
        }
    }
}

TEST_CASE("random filtrations validate at every prefix") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto f = testutil::random_filtration(seed, 4, 9, 30);
        CAPTURE(seed, f.steps.size());
        REQUIRE_FALSE(validate_filtration(f).has_value());
    }
}

TEST_CASE("apply_step never shrinks reach or vertex count") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto f = testutil::random_filtration(seed ^ 0x55, 3, 10, 30);
        graph g = f.initial;
        for (const auto& s : f.steps) {
            graph h = apply_step(g, s);
            REQUIRE(h.size() >= g.size());
            if (h.size() == g.size())
                for (vertex_t v = 0; v < g.size(); ++v)
                    REQUIRE(h.reach[static_cast<std::size_t>(v)] >=
                            g.reach[static_cast<std::size_t>(v)]);
            g = h;
        }
    }
}

TEST_CASE("add_vertex inserts at the requested slot") {
    // 4-cycle; inserting between 0 and 1 forces 0 to attach to the new vertex
    graph c4{{1, 1, 1, 1}};
    add_vertex av;
    av.position = 1;
    av.out_reach = 1;
    av.in_sources = {0};
    graph h = apply_step(c4, av);
    // vertex 0 keeps its old edge to the shifted vertex, so its reach grows
    CHECK(h.reach == std::vector<vertex_t>{2, 1, 1, 1, 1});

    // without the forced in_source the step must be rejected
    add_vertex bad = av;
    bad.in_sources.clear();
    CHECK_THROWS_AS(apply_step(c4, bad), invalid_step);
}

TEST_CASE("add_vertex position n appends without relabeling") {
    graph g{{1, 1, 0}};
    add_vertex av;
    av.position = 3;
    av.out_reach = 1;
    av.in_sources = {2};
    graph h = apply_step(g, av);
    CHECK(h.reach == std::vector<vertex_t>{1, 1, 1, 1});
}
