#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "trails/constructions.hpp"
#include "trails/graph.hpp"
#include "trails/search.hpp"

using namespace trails;

namespace {

void check_triple(const CubicMultigraph& g, const CompatibleTriple& t) {
    for (int i = 0; i < 3; ++i) {
        CHECK(is_normal(g, t.member(i)));
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            CHECK(are_compatible(g, t.member(i), t.member(j)).compatible);
        }
    }
    EdgeInternality in = analyze_triple(g, t);
    CHECK(in.violations.empty());
    CHECK(in.has_singly_internal);
    for (int e = 0; e < g.m(); ++e) {
        CHECK((in.count[e] == 1 || in.count[e] == 2));
        if (in.count[e] == 2) CHECK(in.singleton_member[e] >= 0);
    }
}

bool has_odd_partition(const CubicMultigraph& g) {
    bool found = false;
    EnumerateOptions opts;
    opts.filter = PartitionFilter::Odd;
    enumerate_normal_partitions(g, opts, [&](const Marking&, const TrailPartition&) {
        found = true;
        return false;
    });
    return found;
}

bool has_compatible_short_pair(const CubicMultigraph& g) {
    EnumerateOptions opts;
    opts.filter = PartitionFilter::MaxLength;
    opts.max_length = 3;
    auto all = enumerate_markings(g, opts);
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = i; j < all.size(); ++j) {
            if (markings_compatible(g, all[i], all[j]).compatible) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("perfect path partition extension") {
    CubicMultigraph g = generate("cube", {});
    // two vertex-disjoint paths covering the cube: 0-1-2-3 and 4-5-6-7
    auto paths = paths_from_vertices(g, {{0, 1, 2, 3}, {4, 5, 6, 7}});
    TrailPartition t = partition_from_perfect_path_partition(g, paths);
    CHECK(is_normal(g, t));
    CHECK(t.size() == 4);
}

TEST_CASE("perfect path partition rejects bad input") {
    CubicMultigraph g = generate("cube", {});
    CHECK_THROWS_AS(partition_from_perfect_path_partition(
                        g, paths_from_vertices(g, {{0, 1, 2, 3}})),
                    PreconditionError);
    CHECK_THROWS_AS(partition_from_perfect_path_partition(
                        g, paths_from_vertices(g, {{0, 1, 2, 3}, {3, 7, 6, 5}})),
                    PreconditionError);
    CHECK_THROWS_AS(paths_from_vertices(g, {{0, 2}}), PreconditionError);
}

TEST_CASE("hamiltonian path partition and its inverse") {
    for (const char* name : {"k4", "cube", "petersen"}) {
        CubicMultigraph g = generate(name, {});
        auto p = hamiltonian_path(g);
        REQUIRE(p.has_value());
        TrailPartition t = partition_from_hamiltonian_path(g, *p);
        CHECK(is_normal(g, t));
        int long_trails = 0;
        for (const Trail& trail : t.trails()) {
            if (trail.length() == g.n() + 1) {
                ++long_trails;
            } else {
                CHECK(trail.length() == 1);
            }
        }
        CHECK(long_trails == 1);
        VertexWalk back = extract_hamiltonian_path(g, t);
        CHECK(back.vertices.size() == static_cast<size_t>(g.n()));
        std::set<int> verts(back.vertices.begin(), back.vertices.end());
        CHECK(verts.size() == static_cast<size_t>(g.n()));
    }
}

TEST_CASE("prescribed length partitions on hamiltonian graphs") {
    for (const char* name : {"k4", "cube"}) {
        CubicMultigraph g = generate(name, {});
        auto cycle = hamiltonian_cycle(g);
        REQUIRE(cycle.has_value());
        // all admissible multisets: n/2 values, each >= 1 and != 2,
        // summing to 3n/2
        int k = g.n() / 2, total = 3 * g.n() / 2;
        std::vector<std::vector<int>> multisets;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int remaining, int slots, int minimum) -> void {
            if (slots == 0) {
                if (remaining == 0) multisets.push_back(cur);
                return;
            }
            for (int len = minimum; len <= remaining - (slots - 1); ++len) {
                if (len == 2) continue;
                cur.push_back(len);
                self(self, remaining - len, slots - 1, len);
                cur.pop_back();
            }
        };
        rec(rec, total, k, 1);
        CHECK(!multisets.empty());
        for (const auto& lengths : multisets) {
            TrailPartition t = partition_with_lengths(g, *cycle, lengths);
            CHECK(is_normal(g, t));
            std::vector<int> got;
            for (const Trail& trail : t.trails()) got.push_back(trail.length());
            std::sort(got.begin(), got.end());
            CHECK(got == lengths);
        }
    }
}

TEST_CASE("prescribed lengths reject inadmissible input") {
    CubicMultigraph g = generate("k4", {});
    auto cycle = hamiltonian_cycle(g);
    REQUIRE(cycle.has_value());
    CHECK_THROWS_AS(partition_with_lengths(g, *cycle, {2, 4}), PreconditionError);
    CHECK_THROWS_AS(partition_with_lengths(g, *cycle, {3, 3, 3}), PreconditionError);
    CHECK_THROWS_AS(partition_with_lengths(g, *cycle, {1, 4}), PreconditionError);
}

TEST_CASE("odd partition from matching has all trails of length 3") {
    for (const char* name : {"theta", "k4", "k33", "cube", "petersen", "prism", "bridged6"}) {
        std::vector<int> params;
        if (std::string(name) == "prism") params = {3};
        CubicMultigraph g = generate(name, params);
        for (const auto& m : perfect_matchings(g)) {
            TrailPartition t = odd_partition_from_matching(g, m);
            CHECK(is_normal(g, t));
            CHECK(is_odd(t));
            for (const Trail& trail : t.trails()) CHECK(trail.length() == 3);
            // roundtrip: the odd edges give back the same matching
            std::vector<int> back = matching_from_odd_partition(g, t);
            CHECK(back == m);
        }
    }
}

TEST_CASE("compatible pair from matching") {
    for (const char* name : {"k4", "k33", "cube", "petersen"}) {
        CubicMultigraph g = generate(name, {});
        for (const auto& m : perfect_matchings(g)) {
            auto [a, b] = compatible_pair_from_matching(g, m);
            CHECK(is_normal(g, a));
            CHECK(is_normal(g, b));
            CHECK(partition_length(a) <= 3);
            CHECK(partition_length(b) <= 3);
            CHECK(are_compatible(g, a, b).compatible);
        }
    }
}

TEST_CASE("three-way equivalence across the corpus") {
    for (const char* name : {"theta", "k4", "k33", "cube", "petersen", "prism", "bridged6"}) {
        std::vector<int> params;
        if (std::string(name) == "prism") params = {3};
        CubicMultigraph g = generate(name, params);
        bool matching = !perfect_matchings(g, 1).empty();
        CHECK(matching == has_odd_partition(g));
        CHECK(matching == has_compatible_short_pair(g));
    }
}

TEST_CASE("three compatible partitions on small named multigraphs") {
    for (const char* name : {"theta", "k4", "k33", "cube", "prism"}) {
        std::vector<int> params;
        if (std::string(name) == "prism") params = {3};
        CubicMultigraph g = generate(name, params);
        check_triple(g, three_compatible(g));
    }
}

TEST_CASE("three compatible partitions on random loopless multigraphs") {
    RandomGraphOptions opts;
    opts.allow_loops = false;
    int built = 0;
    for (std::uint64_t seed = 0; built < 25; ++seed) {
        for (int n : {4, 6, 8}) {
            CubicMultigraph g = random_cubic(n, seed * 3 + n, opts);
            check_triple(g, three_compatible(g));
            ++built;
        }
    }
}

TEST_CASE("three compatible rejects loops") {
    CHECK_THROWS_AS(three_compatible(generate("dumbbell", {})), PreconditionError);
    CHECK_THROWS_AS(three_compatible(generate("looped4", {})), PreconditionError);
}

TEST_CASE("triple absence certified on loop graphs") {
    CHECK_FALSE(search_compatible_triple(generate("dumbbell", {})).has_value());
    CHECK_FALSE(search_compatible_triple(generate("looped4", {})).has_value());
}

TEST_CASE("bipartite triples are odd with all trails of length 3") {
    for (const char* name : {"k33", "cube"}) {
        CubicMultigraph g = generate(name, {});
        auto c = proper_3_edge_coloring(g);
        REQUIRE(c.has_value());
        CompatibleTriple t = three_compatible_bipartite(g, *c);
        check_triple(g, t);
        for (int i = 0; i < 3; ++i) {
            CHECK(is_odd(t.member(i)));
            CHECK(partition_length(t.member(i)) == 3);
        }
        // every edge internal in exactly one member
        EdgeInternality in = analyze_triple(g, t);
        for (int e = 0; e < g.m(); ++e) CHECK(in.count[e] == 1);
    }
}

TEST_CASE("bipartite triples on random bipartite graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CubicMultigraph g = random_bipartite_cubic(8 + 2 * (seed % 4), seed);
        auto c = proper_3_edge_coloring(g);
        REQUIRE(c.has_value());
        CompatibleTriple t = three_compatible_bipartite(g, *c);
        check_triple(g, t);
        EdgeInternality in = analyze_triple(g, t);
        for (int e = 0; e < g.m(); ++e) CHECK(in.count[e] == 1);
    }
}

TEST_CASE("bipartite construction rejects non-bipartite graphs") {
    CubicMultigraph g = generate("k4", {});
    auto c = proper_3_edge_coloring(g);
    REQUIRE(c.has_value());
    CHECK_THROWS_AS(three_compatible_bipartite(g, *c), PreconditionError);
}

TEST_CASE("no all-length-3 triple on k4") {
    TripleSearchOptions opts;
    opts.filter = PartitionFilter::MaxLength;
    opts.max_length = 3;
    CHECK_FALSE(search_compatible_triple(generate("k4", {}), opts).has_value());
}

TEST_CASE("colored triples have the promised shapes") {
    for (const char* name : {"k4", "k33", "cube", "prism"}) {
        std::vector<int> params;
        if (std::string(name) == "prism") params = {3};
        CubicMultigraph g = generate(name, params);
        auto c = proper_3_edge_coloring(g);
        REQUIRE(c.has_value());
        CompatibleTriple t = three_compatible_colored(g, *c);
        check_triple(g, t);
        CHECK(is_odd(t.member(0)));
        CHECK(partition_length(t.member(1)) == 3);
        CHECK(partition_length(t.member(2)) <= 4);
    }
}

TEST_CASE("colored triples on random colorable graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CubicMultigraph g = random_colorable_cubic(8 + 2 * (seed % 4), seed);
        auto c = proper_3_edge_coloring(g);
        REQUIRE(c.has_value());
        CompatibleTriple t = three_compatible_colored(g, *c);
        check_triple(g, t);
        CHECK(is_odd(t.member(0)));
        CHECK(partition_length(t.member(1)) == 3);
        CHECK(partition_length(t.member(2)) <= 4);
    }
}

TEST_CASE("colored construction validates the coloring") {
    CubicMultigraph g = generate("k4", {});
    EdgeColoring bad;
    bad.color.assign(g.m(), 0);
    CHECK_THROWS_AS(three_compatible_colored(g, bad), PreconditionError);
}

TEST_CASE("triangle expansions lift the theta triple") {
    CubicMultigraph g = generate("theta", {});
    CompatibleTriple t = three_compatible(g);
    check_triple(g, t);
    for (int round = 0; round < 3; ++round) {
        for (int i = 0; i < 3; ++i) CHECK(is_odd(t.member(i)));
        auto [bigger, lifted] = triangle_expand(g, round % g.n(), t);
        CHECK(bigger.n() == g.n() + 2);
        check_triple(bigger, lifted);
        g = bigger;
        t = lifted;
    }
    for (int i = 0; i < 3; ++i) CHECK(is_odd(t.member(i)));
}

TEST_CASE("petersen odd triple and empty matching intersection") {
    CubicMultigraph g = generate("petersen", {});
    TripleSearchOptions opts;
    opts.filter = PartitionFilter::Odd;
    auto t = search_compatible_triple(g, opts);
    REQUIRE(t.has_value());
    check_triple(g, *t);
    for (int i = 0; i < 3; ++i) CHECK(is_odd(t->member(i)));
    auto matchings = fan_raspaud_from_triple(g, *t);
    std::set<int> common(matchings[0].begin(), matchings[0].end());
    for (int i = 1; i < 3; ++i) {
        std::set<int> next;
        for (int e : matchings[i]) {
            if (common.count(e)) next.insert(e);
        }
        common = next;
    }
    CHECK(common.empty());
    // each extracted set is a perfect matching
    for (const auto& m : matchings) {
        CHECK(m.size() == 5);
        std::set<int> covered;
        for (int e : m) {
            covered.insert(g.endpoint(e, 0));
            covered.insert(g.endpoint(e, 1));
        }
        CHECK(covered.size() == 10);
    }
}

TEST_CASE("bridged6 admits no compatible odd triple") {
    TripleSearchOptions opts;
    opts.filter = PartitionFilter::Odd;
    CHECK_FALSE(search_compatible_triple(generate("bridged6", {}), opts).has_value());
}

TEST_CASE("search guard") {
    TripleSearchOptions opts;
    opts.guard_n = 4;
    CHECK_THROWS_AS(search_compatible_triple(generate("petersen", {}), opts), GuardError);
}
