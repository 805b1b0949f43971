#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "trails/graph.hpp"
#include "trails/search.hpp"

using namespace trails;

TEST_CASE("perfect matching counts") {
    CHECK(perfect_matchings(generate("petersen", {})).size() == 6);
    CHECK(perfect_matchings(generate("k4", {})).size() == 3);
    CHECK(perfect_matchings(generate("k33", {})).size() == 6);
    CHECK(perfect_matchings(generate("cube", {})).size() == 9);
    CHECK(perfect_matchings(generate("theta", {})).size() == 3);
    // a loop cannot cover its vertex
    CHECK(perfect_matchings(generate("dumbbell", {})).size() == 1);
}

TEST_CASE("matchings are perfect and sorted, limit respected") {
    CubicMultigraph g = generate("petersen", {});
    auto all = perfect_matchings(g);
    for (const auto& m : all) {
        CHECK(m.size() == 5);
        CHECK(std::is_sorted(m.begin(), m.end()));
        std::set<int> covered;
        for (int e : m) {
            covered.insert(g.endpoint(e, 0));
            covered.insert(g.endpoint(e, 1));
        }
        CHECK(covered.size() == 10);
    }
    CHECK(perfect_matchings(g, 2).size() == 2);
}

TEST_CASE("3-edge-coloring exists exactly when expected") {
    for (const char* name : {"theta", "k4", "k33", "cube", "prism"}) {
        std::vector<int> params;
        if (std::string(name) == "prism") params = {3};
        CubicMultigraph g = generate(name, params);
        auto c = proper_3_edge_coloring(g);
        REQUIRE(c.has_value());
        CHECK(is_proper_coloring(g, *c));
    }
    CHECK_FALSE(proper_3_edge_coloring(generate("petersen", {})).has_value());
    CHECK_FALSE(proper_3_edge_coloring(generate("flower_snark", {5})).has_value());
    CHECK_FALSE(proper_3_edge_coloring(generate("dumbbell", {})).has_value());
}

TEST_CASE("hamiltonian search") {
    auto cube_cycle = hamiltonian_cycle(generate("cube", {}));
    REQUIRE(cube_cycle.has_value());
    CHECK(cube_cycle->vertices.size() == 8);
    CHECK(cube_cycle->edges.size() == 8);

    CHECK_FALSE(hamiltonian_cycle(generate("petersen", {})).has_value());
    CHECK(hamiltonian_path(generate("petersen", {})).has_value());
    CHECK(hamiltonian_cycle(generate("k4", {})).has_value());
    // a bridge does not forbid a hamiltonian path, only a cycle
    CHECK(hamiltonian_path(generate("bridged6", {})).has_value());
    CHECK_FALSE(hamiltonian_cycle(generate("bridged6", {})).has_value());
}

TEST_CASE("hamiltonian walks are valid") {
    CubicMultigraph g = generate("prism", {4});
    auto p = hamiltonian_path(g);
    REQUIRE(p.has_value());
    std::set<int> verts(p->vertices.begin(), p->vertices.end());
    CHECK(verts.size() == 8);
    for (size_t i = 0; i < p->edges.size(); ++i) {
        int e = p->edges[i];
        int u = p->vertices[i], v = p->vertices[i + 1];
        CHECK(((g.endpoint(e, 0) == u && g.endpoint(e, 1) == v) ||
               (g.endpoint(e, 0) == v && g.endpoint(e, 1) == u)));
    }
}

TEST_CASE("complement 2-factor covers the other vertices") {
    CubicMultigraph g = generate("petersen", {});
    for (const auto& m : perfect_matchings(g)) {
        TwoFactor f = complement_two_factor(g, m);
        int total = 0;
        for (const auto& cycle : f.cycles) total += static_cast<int>(cycle.size());
        CHECK(total == 10);
        // the petersen 2-factors are two 5-cycles
        CHECK(f.cycles.size() == 2);
        CHECK(f.cycles[0].size() == 5);
    }
}

TEST_CASE("colored 2-factor uses exactly two color classes") {
    CubicMultigraph g = generate("k33", {});
    auto c = proper_3_edge_coloring(g);
    REQUIRE(c.has_value());
    TwoFactor f = colored_two_factor(g, *c, 0, 1);
    int total = 0;
    for (const auto& cycle : f.cycles) {
        total += static_cast<int>(cycle.size());
        for (Dart d : cycle) {
            int color = c->color[dart_edge(d)];
            CHECK((color == 0 || color == 1));
        }
    }
    CHECK(total == 6);
}

TEST_CASE("orientation walks each cycle once, reversal flips it") {
    CubicMultigraph g = generate("cube", {});
    auto m = perfect_matchings(g, 1).front();
    TwoFactor f = complement_two_factor(g, m);
    Orientation o = orient(g, f);
    Orientation r = reversed(g, f, o);
    for (const auto& cycle : f.cycles) {
        for (Dart d : cycle) {
            int u = g.dart_vertex(d);
            CHECK(o.out[u] == d);
            CHECK(g.dart_vertex(r.out[u]) == u);
            CHECK(g.dart_target(r.out[u]) != g.dart_target(o.out[u]));
        }
    }
    // following o from any vertex returns after the cycle length
    int start = g.dart_vertex(f.cycles[0][0]);
    int cur = start, steps = 0;
    do {
        cur = g.dart_target(o.out[cur]);
        ++steps;
    } while (cur != start);
    CHECK(steps == static_cast<int>(f.cycles[0].size()));
}

TEST_CASE("strong matching meets every cycle and is induced") {
    CubicMultigraph g = generate("petersen", {});
    auto m = perfect_matchings(g, 1).front();
    TwoFactor f = complement_two_factor(g, m);
    auto strong = strong_matching_meeting_2factor(g, f);
    REQUIRE(strong.has_value());
    CHECK(strong->size() == f.cycles.size());
    // induced: no edge of g joins endpoints of two picked edges
    std::set<int> picked_vertices;
    for (int e : *strong) {
        picked_vertices.insert(g.endpoint(e, 0));
        picked_vertices.insert(g.endpoint(e, 1));
    }
    std::set<int> strong_set(strong->begin(), strong->end());
    for (int e = 0; e < g.m(); ++e) {
        if (strong_set.count(e)) continue;
        bool joins_picked = picked_vertices.count(g.endpoint(e, 0)) > 0 &&
                            picked_vertices.count(g.endpoint(e, 1)) > 0;
        CHECK_FALSE(joins_picked);
    }
}

TEST_CASE("strong matching absence is certified") {
    // theta: the 2-factor left by any perfect matching is a 2-cycle on
    // both vertices; any edge meeting it is adjacent to itself across
    // the parallel pair, so no induced matching hits it... but a single
    // parallel edge IS an induced matching unless its partner counts as
    // adjacent.  With both vertices covered, the remaining parallel edge
    // joins two covered vertices, so no valid pick exists only for
    // multi-cycle cases; here one cycle, single pick always works.
    CubicMultigraph theta = generate("theta", {});
    auto m = perfect_matchings(theta, 1).front();
    TwoFactor f = complement_two_factor(theta, m);
    CHECK(f.cycles.size() == 1);
    CHECK_FALSE(strong_matching_meeting_2factor(theta, f).has_value());
}
