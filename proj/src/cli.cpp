#include "trails/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "trails/constructions.hpp"
#include "trails/io.hpp"
#include "trails/ppdc.hpp"
#include "trails/search.hpp"
#include "trails/switching.hpp"

namespace trails {

namespace {

using nlohmann::json;

std::string slurp(std::istream& in) {
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") return slurp(in);
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "'");
    return slurp(file);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Composite documents: sections introduced by "== name ==" lines.  A
// document without headers is a single unnamed payload.
struct Doc {
    bool composite = false;
    std::vector<std::pair<std::string, std::string>> sections;
    std::string raw;

    const std::string* find(const std::string& name) const {
        for (const auto& [key, body] : sections) {
            if (key == name) return &body;
        }
        return nullptr;
    }
    const std::string& need(const std::string& name) const {
        const std::string* body = find(name);
        if (!body) throw ParseError("missing '" + name + "' section");
        return *body;
    }
};

Doc split_sections(const std::string& text) {
    Doc doc;
    doc.raw = text;
    std::istringstream in(text);
    std::string line;
    std::string current;
    std::string body;
    while (std::getline(in, line)) {
        if (line.rfind("== ", 0) == 0 && line.size() > 6 &&
            line.compare(line.size() - 3, 3, " ==") == 0) {
            if (doc.composite) doc.sections.emplace_back(current, body);
            doc.composite = true;
            current = line.substr(3, line.size() - 6);
            body.clear();
        } else if (doc.composite) {
            body += line + "\n";
        }
    }
    if (doc.composite) doc.sections.emplace_back(current, body);
    return doc;
}

CubicMultigraph graph_of(const Doc& doc) {
    const std::string& text = doc.composite ? doc.need("graph") : doc.raw;
    try {
        return parse_edge_list(text);
    } catch (const ParseError&) {
        // fall through to graph6 for single-line input
        std::istringstream in(text);
        std::string line, extra;
        while (std::getline(in, line) && line.empty()) {
        }
        if (!line.empty() && !(in >> extra)) return parse_graph6(line);
        throw;
    }
}

GeneralGraph parse_general(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1, m = -1;
    std::vector<std::array<int, 2>> edges;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        int a, b;
        if (!(row >> a >> b)) {
            if (row.rdbuf()->in_avail() == 0 && line.find_first_not_of(" \t\r") ==
                                                    std::string::npos) {
                continue;
            }
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("bad line: '" + line + "'");
        }
        if (n < 0) {
            n = a;
            m = b;
        } else {
            edges.push_back({a, b});
        }
    }
    if (n < 0) throw ParseError("empty graph document");
    if (static_cast<int>(edges.size()) != m) throw ParseError("edge count mismatch");
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
            throw ParseError("bad edge endpoint");
        }
    }
    return GeneralGraph(n, std::move(edges));
}

struct Run {
    std::vector<std::string> command;
    std::string format = "text";
    bool timing = false;
    bool composite = false;
    std::vector<std::pair<std::string, std::string>> docs;
    std::vector<std::string> notes;
    std::map<std::string, long long> counters;
    std::vector<std::string> digests;

    void doc(const std::string& name, const std::string& body) { docs.emplace_back(name, body); }
};

int finish(Run& run, int code, std::ostream& out, std::ostream& err, double wall_ms) {
    if (run.format == "json") {
        json j;
        j["command"] = run.command;
        j["input_digests"] = run.digests;
        j["outcome"] = code == kExitOk ? "ok"
                       : code == kExitAbsent ? "absent"
                       : code == kExitFalsified ? "falsified"
                                                : "usage";
        j["notes"] = run.notes;
        j["counters"] = run.counters;
        json docs = json::object();
        for (const auto& [name, body] : run.docs) docs[name] = body;
        j["documents"] = docs;
        if (run.timing) j["wall_ms"] = wall_ms;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& [name, body] : run.docs) {
            if (run.composite) out << "== " << name << " ==\n";
            out << body;
        }
        for (const std::string& note : run.notes) err << note << "\n";
        if (run.timing) err << "wall_ms: " << wall_ms << "\n";
    }
    return code;
}

std::vector<int> parse_length_list(const std::string& text) {
    std::string spaced = text;
    for (char& c : spaced) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(spaced);
    std::vector<int> out;
    int v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw ParseError("bad length list '" + text + "'");
    return out;
}

EnumerateOptions filter_options(bool odd, int max_length, int guard_n) {
    EnumerateOptions opts;
    if (odd && max_length > 0) throw ParseError("choose at most one of --odd / --max-length");
    if (odd) opts.filter = PartitionFilter::Odd;
    if (max_length > 0) {
        opts.filter = PartitionFilter::MaxLength;
        opts.max_length = max_length;
    }
    opts.guard_n = guard_n;
    return opts;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err) {
    Run run;
    run.command = args;

    CLI::App app{"normal trail partitions of cubic multigraphs"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    int guard_n = 14;
    app.add_option("--seed", seed, "random seed");
    app.add_option("--guard-n", guard_n, "size guard for exhaustive enumeration");
    app.add_option("--format", run.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timing", run.timing, "report wall time");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a named or random graph");
    std::string gen_name;
    std::vector<int> gen_params;
    bool gen_no_loops = false, gen_no_parallel = false;
    gen->add_option("name", gen_name)->required();
    gen->add_option("params", gen_params);
    gen->add_flag("--no-loops", gen_no_loops);
    gen->add_flag("--no-parallel", gen_no_parallel);

    // commands reading a graph (or composite) from a positional source
    std::string input = "-";
    for (const char* name : {"check", "normalize", "enumerate", "construct", "triple",
                             "switch-path", "verify", "expand-triangle", "fan-raspaud", "dot"}) {
        app.add_subcommand(name)->add_option("input", input, "input document or -");
    }
    auto* check = app.get_subcommand("check");
    check->description("structural report of a graph");

    auto* normalize = app.get_subcommand("normalize");
    normalize->description("normalize a trail partition");
    std::string normalize_partition;
    bool normalize_random = false;
    normalize->add_option("--partition", normalize_partition, "initial partition document");
    normalize->add_flag("--random", normalize_random, "start from a seeded random partition");

    auto* enumerate = app.get_subcommand("enumerate");
    enumerate->description("enumerate normal partitions");
    bool enum_odd = false, enum_count = false;
    int enum_max_length = 0;
    enumerate->add_flag("--odd", enum_odd);
    enumerate->add_option("--max-length", enum_max_length);
    enumerate->add_flag("--count", enum_count);

    auto* construct = app.get_subcommand("construct");
    construct->description("build a normal partition by a named method");
    bool c_matching = false, c_ham_path = false;
    std::string c_lengths, c_ppp, c_transversal;
    construct->add_flag("--matching", c_matching);
    construct->add_flag("--ham-path", c_ham_path);
    construct->add_option("--ham-lengths", c_lengths);
    construct->add_option("--ppp", c_ppp, "path collection document");
    construct->add_option("--transversal", c_transversal, "marking document");

    auto* triple = app.get_subcommand("triple");
    triple->description("three pairwise compatible normal partitions");
    bool t_general = false, t_colored = false, t_bipartite = false, t_search = false;
    bool t_odd = false;
    int t_max_length = 0;
    triple->add_flag("--general", t_general);
    triple->add_flag("--colored", t_colored);
    triple->add_flag("--bipartite", t_bipartite);
    triple->add_flag("--search", t_search);
    triple->add_flag("--odd", t_odd);
    triple->add_option("--max-length", t_max_length);

    auto* switch_path = app.get_subcommand("switch-path");
    switch_path->description("switching trace between two normal partitions");
    std::string sp_from, sp_to;
    bool sp_odd_only = false;
    switch_path->add_option("--from", sp_from)->required();
    switch_path->add_option("--to", sp_to)->required();
    switch_path->add_flag("--odd-only", sp_odd_only);

    auto* verify = app.get_subcommand("verify");
    verify->description("verify partitions, triples, or traces");
    bool v_normal = false, v_odd = false, v_compatible = false;
    int v_length = 0;
    verify->add_flag("--normal", v_normal);
    verify->add_flag("--odd", v_odd);
    verify->add_flag("--compatible", v_compatible);
    verify->add_option("--length", v_length, "maximum trail length");

    auto* expand = app.get_subcommand("expand-triangle");
    expand->description("replace a vertex by a triangle, lifting a triple");
    int expand_vertex = 0;
    expand->add_option("--vertex", expand_vertex)->required();

    auto* fan = app.get_subcommand("fan-raspaud");
    fan->description("three perfect matchings with empty intersection from an odd triple");

    auto* dot = app.get_subcommand("dot");
    dot->description("DOT drawing, marked trail ends annotated");
    std::string dot_partition;
    dot->add_option("--partition", dot_partition, "partition document to annotate");

    auto* cppdc = app.add_subcommand("cppdc", "compatible path double covers");
    std::string cppdc_input = "-";
    std::string cppdc_gen;
    std::vector<int> cppdc_params;
    std::string cppdc_verify;
    bool cppdc_find = false, cppdc_find_ppdc = false;
    cppdc->add_option("input", cppdc_input, "graph document or -");
    cppdc->add_option("--gen", cppdc_gen, "corpus graph: cycle | theta | shared");
    cppdc->add_option("--params", cppdc_params);
    cppdc->add_option("--verify", cppdc_verify, "path collection document to verify");
    cppdc->add_flag("--find", cppdc_find, "exhaustive search");
    cppdc->add_flag("--ppdc", cppdc_find_ppdc, "search without the end-edge condition");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto started = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         started)
            .count();
    };
    auto done = [&](int code) { return finish(run, code, out, err, wall()); };

    auto load = [&](const std::string& path) {
        std::string text = read_source(path, in);
        run.digests.push_back(hex64(fnv1a(text)));
        return text;
    };

    try {
        if (app.got_subcommand(gen)) {
            RandomGraphOptions opts;
            opts.allow_loops = !gen_no_loops;
            opts.allow_parallel = !gen_no_parallel;
            run.doc("graph", emit_edge_list(generate(gen_name, gen_params, seed, opts)));
            return done(kExitOk);
        }

        if (app.got_subcommand(cppdc)) {
            GeneralGraph g;
            if (!cppdc_gen.empty()) {
                if (cppdc_gen == "cycle" && cppdc_params.size() == 1) {
                    g = cycle_graph(cppdc_params[0]);
                } else if (cppdc_gen == "theta" && cppdc_params.size() == 3) {
                    g = theta_graph(cppdc_params[0], cppdc_params[1], cppdc_params[2]);
                } else if (cppdc_gen == "shared" && cppdc_params.size() == 2) {
                    g = shared_vertex_cycles(cppdc_params[0], cppdc_params[1]);
                } else {
                    throw ParseError("unknown corpus graph '" + cppdc_gen + "'");
                }
            } else {
                g = parse_general(load(cppdc_input));
            }
            if (!cppdc_verify.empty()) {
                PathCollection p = parse_path_collection(load(cppdc_verify));
                VerifyResult r = cppdc_find_ppdc ? verify_ppdc(g, p) : verify_cppdc(g, p);
                run.notes.push_back(r.ok ? "ok" : "FAIL: " + r.witness);
                return done(r.ok ? kExitOk : kExitAbsent);
            }
            if (cppdc_find || cppdc_find_ppdc) {
                auto found = cppdc_find_ppdc ? find_ppdc(g, guard_n) : find_cppdc(g, guard_n);
                if (!found) {
                    run.notes.push_back("certified absence");
                    return done(kExitAbsent);
                }
                run.doc("paths", emit_path_collection(*found));
                return done(kExitOk);
            }
            PathCollection p = cppdc_minimal_2ec(g);
            VerifyResult r = verify_cppdc(g, p);
            if (!r.ok) throw FalsificationError("constructed cover invalid: " + r.witness);
            run.doc("paths", emit_path_collection(p));
            return done(kExitOk);
        }

        Doc doc = split_sections(load(input));
        CubicMultigraph g = graph_of(doc);

        if (app.got_subcommand(check)) {
            StructureReport r = structure_report(g);
            auto gr = girth(g);
            std::ostringstream body;
            body << "n " << g.n() << "\n"
                 << "m " << g.m() << "\n"
                 << "loops " << (r.has_loop ? "yes" : "no") << "\n"
                 << "parallel " << (r.has_parallel ? "yes" : "no") << "\n"
                 << "connected " << (r.is_connected ? "yes" : "no") << "\n"
                 << "bipartite " << (r.is_bipartite ? "yes" : "no") << "\n"
                 << "two-edge-connected " << (r.is_2_edge_connected ? "yes" : "no") << "\n";
            body << "bridges";
            if (r.bridges.empty()) body << " none";
            for (int e : r.bridges) body << " " << e;
            body << "\n";
            body << "girth " << (gr ? std::to_string(*gr) : "none") << "\n";
            run.doc("report", body.str());
            return done(kExitOk);
        }

        if (app.got_subcommand(normalize)) {
            TrailPartition start;
            if (!normalize_partition.empty()) {
                start = parse_partition(g, load(normalize_partition));
            } else if (normalize_random) {
                start = random_trail_partition(g, seed);
            } else {
                start = greedy_partition(g);
            }
            NormalizeResult r = greedy_normalize(g, start);
            run.composite = true;
            run.doc("graph", emit_edge_list(g));
            run.doc("partition", emit_partition(g, r.partition));
            run.counters["steps"] = r.steps;
            run.notes.push_back("steps: " + std::to_string(r.steps));
            return done(kExitOk);
        }

        if (app.got_subcommand(enumerate)) {
            EnumerateOptions opts = filter_options(enum_odd, enum_max_length, guard_n);
            long long count = 0;
            std::ostringstream body;
            enumerate_normal_partitions(g, opts, [&](const Marking&, const TrailPartition& t) {
                ++count;
                if (!enum_count) {
                    if (count > 1) body << "\n";
                    body << emit_partition(g, t);
                }
                return true;
            });
            run.counters["partitions"] = count;
            if (enum_count) {
                run.doc("count", std::to_string(count) + "\n");
            } else {
                run.doc("partitions", body.str());
            }
            return done(kExitOk);
        }

        if (app.got_subcommand(construct)) {
            int picked = int(c_matching) + int(c_ham_path) + int(!c_lengths.empty()) +
                         int(!c_ppp.empty()) + int(!c_transversal.empty());
            if (picked != 1) throw ParseError("choose exactly one construction method");
            TrailPartition t;
            if (c_matching) {
                auto ms = perfect_matchings(g, 1);
                if (ms.empty()) {
                    run.notes.push_back("no perfect matching");
                    return done(kExitAbsent);
                }
                t = odd_partition_from_matching(g, ms.front());
            } else if (c_ham_path) {
                auto p = hamiltonian_path(g);
                if (!p) {
                    run.notes.push_back("no hamiltonian path");
                    return done(kExitAbsent);
                }
                t = partition_from_hamiltonian_path(g, *p);
            } else if (!c_lengths.empty()) {
                auto cyc = hamiltonian_cycle(g);
                if (!cyc) {
                    run.notes.push_back("no hamiltonian cycle");
                    return done(kExitAbsent);
                }
                t = partition_with_lengths(g, *cyc, parse_length_list(c_lengths));
            } else if (!c_ppp.empty()) {
                PathCollection p = parse_path_collection(load(c_ppp));
                t = partition_from_perfect_path_partition(g, paths_from_vertices(g, p.paths));
            } else {
                Marking f = parse_marking(g, load(c_transversal));
                MarkingValidity v = check_marking(g, f);
                if (!v.valid) {
                    std::ostringstream msg;
                    msg << "invalid marking, cycle witness:";
                    for (int e : v.cycle_witness) msg << " " << e;
                    run.notes.push_back(msg.str());
                    return done(kExitAbsent);
                }
                t = from_marking(g, f);
            }
            run.composite = true;
            run.doc("graph", emit_edge_list(g));
            run.doc("partition", emit_partition(g, t));
            return done(kExitOk);
        }

        if (app.got_subcommand(triple)) {
            int picked = int(t_general) + int(t_colored) + int(t_bipartite) + int(t_search);
            if (picked != 1) throw ParseError("choose exactly one triple mode");
            std::optional<CompatibleTriple> result;
            if (t_search) {
                TripleSearchOptions opts;
                EnumerateOptions f = filter_options(t_odd, t_max_length, guard_n);
                opts.filter = f.filter;
                opts.max_length = f.max_length;
                opts.guard_n = guard_n;
                result = search_compatible_triple(g, opts);
                if (!result) {
                    run.notes.push_back("certified absence");
                    return done(kExitAbsent);
                }
            } else if (t_general) {
                result = three_compatible(g);
            } else {
                auto col = proper_3_edge_coloring(g);
                if (!col) {
                    run.notes.push_back("not 3-edge-colorable");
                    return done(kExitAbsent);
                }
                result = t_colored ? three_compatible_colored(g, *col)
                                   : three_compatible_bipartite(g, *col);
            }
            run.composite = true;
            run.doc("graph", emit_edge_list(g));
            run.doc("triple", emit_triple(g, *result));
            run.doc("internality", emit_internality(analyze_triple(g, *result)));
            return done(kExitOk);
        }

        if (app.got_subcommand(switch_path)) {
            TrailPartition a = parse_partition(g, load(sp_from));
            TrailPartition b = parse_partition(g, load(sp_to));
            auto trace = switching_sequence(g, a, b, sp_odd_only);
            run.composite = true;
            run.doc("graph", emit_edge_list(g));
            run.doc("partition-a", emit_partition(g, a));
            run.doc("partition-b", emit_partition(g, b));
            run.doc("trace", emit_trace(trace));
            run.counters["moves"] = static_cast<long long>(trace.size());
            return done(kExitOk);
        }

        if (app.got_subcommand(verify)) {
            auto fail = [&](const std::string& why) {
                run.notes.push_back("FAIL: " + why);
                return done(kExitAbsent);
            };
            auto check_one = [&](const TrailPartition& t,
                                 const std::string& label) -> std::string {
                if (!is_normal(g, t)) return label + " is not normal";
                if (v_odd && !is_odd(t)) return label + " is not odd";
                if (v_length > 0 && partition_length(t) > v_length) {
                    return label + " exceeds length " + std::to_string(v_length);
                }
                return "";
            };
            if (const std::string* body = doc.find("triple")) {
                CompatibleTriple t = parse_triple(g, *body);
                for (int i = 0; i < 3; ++i) {
                    std::string why = check_one(t.member(i), "member " + std::to_string(i + 1));
                    if (!why.empty()) return fail(why);
                }
                if (v_compatible) {
                    for (int i = 0; i < 3; ++i) {
                        for (int j = i + 1; j < 3; ++j) {
                            auto c = are_compatible(g, t.member(i), t.member(j));
                            if (!c.compatible) {
                                return fail("members " + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + " agree at vertex " +
                                            std::to_string(c.witness_vertex));
                            }
                        }
                    }
                }
                EdgeInternality internal = analyze_triple(g, t);
                if (!internal.violations.empty()) {
                    throw FalsificationError("internality violation at edge " +
                                             std::to_string(internal.violations.front()));
                }
                run.notes.push_back("ok");
                return done(kExitOk);
            }
            if (const std::string* body = doc.find("trace")) {
                TrailPartition a = parse_partition(g, doc.need("partition-a"));
                TrailPartition b = parse_partition(g, doc.need("partition-b"));
                auto [fa, fb] = replay_trace(g, a, b, parse_trace(*body));
                if (!(to_marking(g, fa) == to_marking(g, fb))) {
                    return fail("trace does not join the two partitions");
                }
                run.notes.push_back("ok");
                return done(kExitOk);
            }
            if (const std::string* body = doc.find("partition")) {
                TrailPartition t = parse_partition(g, *body);
                std::string why = check_one(t, "partition");
                if (!why.empty()) return fail(why);
                run.notes.push_back("ok");
                return done(kExitOk);
            }
            throw ParseError("nothing to verify: no triple, trace, or partition section");
        }

        if (app.got_subcommand(expand)) {
            CompatibleTriple t = parse_triple(g, doc.need("triple"));
            auto [bigger, lifted] = triangle_expand(g, expand_vertex, t);
            run.composite = true;
            run.doc("graph", emit_edge_list(bigger));
            run.doc("triple", emit_triple(bigger, lifted));
            return done(kExitOk);
        }

        if (app.got_subcommand(fan)) {
            CompatibleTriple t = parse_triple(g, doc.need("triple"));
            auto matchings = fan_raspaud_from_triple(g, t);
            std::ostringstream body;
            for (const auto& matching : matchings) {
                for (size_t i = 0; i < matching.size(); ++i) {
                    body << (i ? " " : "") << matching[i];
                }
                body << "\n";
            }
            run.doc("matchings", body.str());
            return done(kExitOk);
        }

        if (app.got_subcommand(dot)) {
            std::optional<TrailPartition> t;
            if (!dot_partition.empty()) {
                t = parse_partition(g, load(dot_partition));
            } else if (const std::string* body = doc.find("partition")) {
                t = parse_partition(g, *body);
            }
            run.doc("dot", emit_dot(g, t ? &*t : nullptr));
            return done(kExitOk);
        }

        throw ParseError("no subcommand");
    } catch (const FalsificationError& e) {
        run.notes.push_back(std::string("FALSIFIED: ") + e.what());
        return done(kExitFalsified);
    } catch (const GuardError& e) {
        run.notes.push_back(std::string("guard: ") + e.what());
        return done(kExitUsage);
    } catch (const ParseError& e) {
        run.notes.push_back(std::string("input error: ") + e.what());
        return done(kExitUsage);
    } catch (const PreconditionError& e) {
        run.notes.push_back(std::string("precondition: ") + e.what());
        return done(kExitUsage);
    } catch (const Error& e) {
        run.notes.push_back(e.what());
        return done(kExitAbsent);
    }
}

}  // namespace trails
