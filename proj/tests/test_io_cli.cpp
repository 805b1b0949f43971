#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "trails/cli.hpp"
#include "trails/io.hpp"
#include "trails/switching.hpp"

using namespace trails;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = dispatch(args, in, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("partition document round trip") {
    CubicMultigraph g = generate("petersen", {});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        TrailPartition t = random_normal_partition(g, seed);
        std::string doc = emit_partition(g, t);
        TrailPartition back = parse_partition(g, doc);
        CHECK(emit_partition(g, back) == doc);
        CHECK(to_marking(g, back) == to_marking(g, t));
    }
}

TEST_CASE("partition document with loops") {
    CubicMultigraph g = generate("dumbbell", {});
    TrailPartition t = greedy_normalize(g, greedy_partition(g)).partition;
    std::string doc = emit_partition(g, t);
    CHECK(emit_partition(g, parse_partition(g, doc)) == doc);
}

TEST_CASE("partition parser rejects malformed documents") {
    CubicMultigraph g = generate("k4", {});
    CHECK_THROWS_AS(parse_partition(g, "0 (9) 1\n"), ParseError);
    CHECK_THROWS_AS(parse_partition(g, "0 (0) 2\n"), ParseError);
    CHECK_THROWS_AS(parse_partition(g, "0 (0)\n"), ParseError);
    CHECK_THROWS_AS(parse_partition(g, "0 0 1\n"), ParseError);
    // edge 5 joins 2 and 3, not 0
    CHECK_THROWS_AS(parse_partition(g, "0 (5) 2\n"), ParseError);
}

TEST_CASE("marking document round trip") {
    CubicMultigraph g = generate("k33", {});
    for (const Marking& f : enumerate_markings(g)) {
        std::string doc = emit_marking(g, f);
        CHECK(parse_marking(g, doc) == f);
        CHECK(emit_marking(g, parse_marking(g, doc)) == doc);
    }
}

TEST_CASE("marking parser rejects malformed documents") {
    CubicMultigraph g = generate("theta", {});
    CHECK_THROWS_AS(parse_marking(g, "0: 0 0\n"), ParseError);             // vertex 1 missing
    CHECK_THROWS_AS(parse_marking(g, "0: 0 0\n0: 1 0\n"), ParseError);     // duplicate
    CHECK_THROWS_AS(parse_marking(g, "0: 0 1\n1: 1 1\n"), ParseError);     // dart not at 0
    CHECK_THROWS_AS(parse_marking(g, "0 0 0\n1: 1 1\n"), ParseError);      // missing colon
}

TEST_CASE("trace document round trip") {
    CubicMultigraph g = generate("k4", {});
    TrailPartition a = random_normal_partition(g, 1);
    TrailPartition b = random_normal_partition(g, 2);
    auto trace = switching_sequence(g, a, b);
    std::string doc = emit_trace(trace);
    CHECK(parse_trace(doc) == trace);
    CHECK(emit_trace(parse_trace(doc)) == doc);
}

TEST_CASE("path collection round trip") {
    PathCollection p{{{0, 1, 2}, {3}, {4, 0}}};
    std::string doc = emit_path_collection(p);
    CHECK(doc == "0 1 2\n3\n4 0\n");
    CHECK(parse_path_collection(doc).paths == p.paths);
}

TEST_CASE("triple document round trip") {
    CubicMultigraph g = generate("k4", {});
    CompatibleTriple t = three_compatible(g);
    std::string doc = emit_triple(g, t);
    CompatibleTriple back = parse_triple(g, doc);
    CHECK(emit_triple(g, back) == doc);
    CHECK_THROWS_AS(parse_triple(g, emit_marking(g, to_marking(g, t.t1))), ParseError);
}

TEST_CASE("internality table") {
    CubicMultigraph g = generate("k33", {});
    auto c = proper_3_edge_coloring(g);
    REQUIRE(c.has_value());
    EdgeInternality in = analyze_triple(g, three_compatible_bipartite(g, *c));
    std::string table = emit_internality(in);
    std::istringstream rows(table);
    std::string line;
    int count = 0;
    while (std::getline(rows, line)) ++count;
    CHECK(count == g.m());
}

TEST_CASE("dot output contains end-bar annotations") {
    CubicMultigraph g = generate("theta", {});
    TrailPartition t = greedy_normalize(g, greedy_partition(g)).partition;
    std::string plain = emit_dot(g);
    CHECK(plain.find("graph trails") == 0);
    CHECK(plain.find("⊢") == std::string::npos);
    std::string marked = emit_dot(g, &t);
    CHECK(marked.find("⊢") != std::string::npos);
}

TEST_CASE("cli gen and check") {
    auto gen = run_cli({"gen", "petersen"});
    CHECK(gen.code == kExitOk);
    CHECK(gen.out.substr(0, 5) == "10 15");
    auto check = run_cli({"check"}, gen.out);
    CHECK(check.code == kExitOk);
    CHECK(check.out.find("girth 5") != std::string::npos);
    auto bad = run_cli({"gen", "nonesuch"});
    CHECK(bad.code == kExitUsage);
}

TEST_CASE("cli usage errors") {
    CHECK(run_cli({}).code == kExitUsage);
    CHECK(run_cli({"frobnicate"}).code == kExitUsage);
    CHECK(run_cli({"enumerate"}, "garbage").code == kExitUsage);
    CHECK(run_cli({"--help"}).code == kExitOk);
}

TEST_CASE("cli enumerate count matches the oracle") {
    auto theta = run_cli({"enumerate", "--count"}, run_cli({"gen", "theta"}).out);
    CHECK(theta.code == kExitOk);
    CHECK(theta.out == "6\n");
    auto odd = run_cli({"enumerate", "--odd", "--count"}, run_cli({"gen", "k4"}).out);
    CHECK(odd.out == "42\n");
}

TEST_CASE("cli guard flag") {
    auto guarded = run_cli({"enumerate", "--count", "--guard-n", "4"},
                           run_cli({"gen", "petersen"}).out);
    CHECK(guarded.code == kExitUsage);
}

TEST_CASE("cli normalize emits a composite partition document") {
    auto r = run_cli({"normalize", "--random", "--seed", "3"}, run_cli({"gen", "cube"}).out);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("== graph ==") != std::string::npos);
    CHECK(r.out.find("== partition ==") != std::string::npos);
    CHECK(r.err.find("steps:") != std::string::npos);
    // seeded rerun is byte identical
    auto again = run_cli({"normalize", "--random", "--seed", "3"}, run_cli({"gen", "cube"}).out);
    CHECK(again.out == r.out);
}

TEST_CASE("cli construct and verify pipeline") {
    std::string graph = run_cli({"gen", "petersen"}).out;
    auto built = run_cli({"construct", "--matching"}, graph);
    CHECK(built.code == kExitOk);
    auto verified = run_cli({"verify", "--odd", "--length", "3"}, built.out);
    CHECK(verified.code == kExitOk);
    auto too_short = run_cli({"verify", "--length", "1"}, built.out);
    CHECK(too_short.code == kExitAbsent);
}

TEST_CASE("cli triple pipeline with verification") {
    std::string graph = run_cli({"gen", "k33"}).out;
    auto triple = run_cli({"triple", "--bipartite"}, graph);
    CHECK(triple.code == kExitOk);
    auto verified = run_cli({"verify", "--compatible", "--odd", "--length", "3"}, triple.out);
    CHECK(verified.code == kExitOk);
}

TEST_CASE("cli triple search absence") {
    auto r = run_cli({"triple", "--search"}, run_cli({"gen", "dumbbell"}).out);
    CHECK(r.code == kExitAbsent);
    CHECK(r.err.find("certified absence") != std::string::npos);
}

TEST_CASE("cli triple rejects snarks in colored mode") {
    auto r = run_cli({"triple", "--colored"}, run_cli({"gen", "petersen"}).out);
    CHECK(r.code == kExitAbsent);
}

TEST_CASE("cli switch-path and trace verification") {
    std::string graph = run_cli({"gen", "k4"}).out;
    std::string a = run_cli({"construct", "--matching"}, graph).out;
    std::string b = run_cli({"construct", "--ham-path"}, graph).out;
    // extract partition documents from the composites
    auto section = [](const std::string& text, const std::string& name) {
        auto start = text.find("== " + name + " ==\n");
        REQUIRE(start != std::string::npos);
        start += name.size() + 7;
        auto end = text.find("== ", start);
        return text.substr(start, end == std::string::npos ? end : end - start);
    };
    std::string pa = section(a, "partition");
    std::string pb = section(b, "partition");
    // write to temp files
    std::string fa = "/tmp/trails_test_a.txt", fb = "/tmp/trails_test_b.txt";
    {
        std::ofstream(fa) << pa;
        std::ofstream(fb) << pb;
    }
    auto traced = run_cli({"switch-path", "--from", fa, "--to", fb}, graph);
    CHECK(traced.code == kExitOk);
    auto verified = run_cli({"verify"}, traced.out);
    CHECK(verified.code == kExitOk);
}

TEST_CASE("cli expand-triangle and fan-raspaud") {
    std::string graph = run_cli({"gen", "theta"}).out;
    auto triple = run_cli({"triple", "--general"}, graph);
    CHECK(triple.code == kExitOk);
    auto expanded = run_cli({"expand-triangle", "--vertex", "0"}, triple.out);
    CHECK(expanded.code == kExitOk);
    CHECK(run_cli({"verify", "--compatible"}, expanded.out).code == kExitOk);

    std::string pet = run_cli({"gen", "petersen"}).out;
    auto odd_triple = run_cli({"triple", "--search", "--odd"}, pet);
    CHECK(odd_triple.code == kExitOk);
    auto fr = run_cli({"fan-raspaud"}, odd_triple.out);
    CHECK(fr.code == kExitOk);
    std::istringstream lines(fr.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("cli cppdc") {
    auto built = run_cli({"cppdc", "--gen", "theta", "--params", "2", "2", "3"});
    CHECK(built.code == kExitOk);
    std::string fa = "/tmp/trails_test_paths.txt";
    std::ofstream(fa) << built.out;
    auto verified = run_cli({"cppdc", "--gen", "theta", "--params", "2", "2", "3",
                             "--verify", fa});
    CHECK(verified.code == kExitOk);
    auto absent = run_cli({"cppdc", "--find"}, "4 4\n0 1\n1 2\n2 0\n0 3\n");
    CHECK(absent.code == kExitAbsent);
}

TEST_CASE("cli dot") {
    std::string graph = run_cli({"gen", "theta"}).out;
    auto plain = run_cli({"dot"}, graph);
    CHECK(plain.code == kExitOk);
    CHECK(plain.out.find("graph trails") != std::string::npos);
    auto composite = run_cli({"construct", "--matching"}, graph);
    auto marked = run_cli({"dot"}, composite.out);
    CHECK(marked.code == kExitOk);
    CHECK(marked.out.find("⊢") != std::string::npos);
}

TEST_CASE("cli json format carries the documents") {
    auto r = run_cli({"--format", "json", "enumerate", "--count"},
                     run_cli({"gen", "theta"}).out);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"outcome\": \"ok\"") != std::string::npos);
    CHECK(r.out.find("\"partitions\": 6") != std::string::npos);
    CHECK(r.out.find("wall_ms") == std::string::npos);
    auto timed = run_cli({"--format", "json", "--timing", "enumerate", "--count"},
                         run_cli({"gen", "theta"}).out);
    CHECK(timed.out.find("wall_ms") != std::string::npos);
}

TEST_CASE("cli emitted graphs re-parse to equal values") {
    for (const char* name : {"theta", "dumbbell", "k4", "petersen", "bridged6", "looped4"}) {
        std::string doc = run_cli({"gen", name}).out;
        CHECK(emit_edge_list(parse_edge_list(doc)) == doc);
    }
}
