#include "trails/io.hpp"

#include <sstream>

namespace trails {

namespace {

std::vector<std::string> nonblank_lines(const std::string& text, bool keep_blank = false) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (blank && !keep_blank) continue;
        lines.push_back(line);
    }
    return lines;
}

int parse_int(const std::string& tok, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw ParseError("");
        return v;
    } catch (...) {
        throw ParseError(std::string("bad ") + what + ": '" + tok + "'");
    }
}

}  // namespace

std::string emit_partition(const CubicMultigraph& g, const TrailPartition& t) {
    std::ostringstream out;
    for (const Trail& trail : t.trails()) {
        auto verts = trail.vertices(g);
        out << verts[0];
        for (int i = 0; i < trail.length(); ++i) {
            out << " (" << dart_edge(trail.darts()[i]) << ") " << verts[i + 1];
        }
        out << "\n";
    }
    return out.str();
}

TrailPartition parse_partition(const CubicMultigraph& g, const std::string& text) {
    std::vector<Trail> trails;
    for (const std::string& line : nonblank_lines(text)) {
        std::istringstream in(line);
        std::string tok;
        if (!(in >> tok)) throw ParseError("empty trail line");
        int prev = parse_int(tok, "vertex");
        std::vector<Dart> darts;
        while (in >> tok) {
            if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')') {
                throw ParseError("expected edge token, got '" + tok + "'");
            }
            int e = parse_int(tok.substr(1, tok.size() - 2), "edge id");
            if (e < 0 || e >= g.m()) throw ParseError("edge id out of range");
            std::string vtok;
            if (!(in >> vtok)) throw ParseError("trail line ends with an edge");
            int next = parse_int(vtok, "vertex");
            if (g.endpoint(e, 0) != prev && g.endpoint(e, 1) != prev) {
                throw ParseError("edge " + std::to_string(e) + " not incident to vertex " +
                                 std::to_string(prev));
            }
            Dart d = g.dart_at(prev, e);
            if (g.dart_target(d) != next) {
                throw ParseError("edge " + std::to_string(e) + " does not reach vertex " +
                                 std::to_string(next));
            }
            darts.push_back(d);
            prev = next;
        }
        trails.emplace_back(g, std::move(darts));
    }
    return TrailPartition(g, std::move(trails));
}

std::string emit_marking(const CubicMultigraph& g, const Marking& f) {
    std::ostringstream out;
    for (int v = 0; v < g.n(); ++v) {
        Dart d = f.mark[v];
        out << v << ": " << dart_edge(d) << " " << dart_side(d) << "\n";
    }
    return out.str();
}

Marking parse_marking(const CubicMultigraph& g, const std::string& text) {
    Marking f;
    f.mark.assign(g.n(), -1);
    for (const std::string& line : nonblank_lines(text)) {
        std::istringstream in(line);
        std::string vtok, etok, stok;
        if (!(in >> vtok >> etok >> stok) || (in >> std::ws, !in.eof())) {
            throw ParseError("marking line must be 'v: edge_id side'");
        }
        if (vtok.empty() || vtok.back() != ':') throw ParseError("missing ':' after vertex");
        int v = parse_int(vtok.substr(0, vtok.size() - 1), "vertex");
        int e = parse_int(etok, "edge id");
        int side = parse_int(stok, "side");
        if (v < 0 || v >= g.n()) throw ParseError("vertex out of range");
        if (e < 0 || e >= g.m() || (side != 0 && side != 1)) {
            throw ParseError("bad mark at vertex " + std::to_string(v));
        }
        Dart d = make_dart(e, side);
        if (g.dart_vertex(d) != v) {
            throw ParseError("mark dart not at vertex " + std::to_string(v));
        }
        if (f.mark[v] >= 0) throw ParseError("vertex " + std::to_string(v) + " marked twice");
        f.mark[v] = canonical_dart(g, d);
    }
    for (int v = 0; v < g.n(); ++v) {
        if (f.mark[v] < 0) throw ParseError("vertex " + std::to_string(v) + " unmarked");
    }
    return f;
}

std::string emit_trace(const std::vector<SwitchMove>& trace) {
    std::ostringstream out;
    for (const SwitchMove& m : trace) {
        out << m.side << " " << m.vertex << " " << m.new_mark << "\n";
    }
    return out.str();
}

std::vector<SwitchMove> parse_trace(const std::string& text) {
    std::vector<SwitchMove> trace;
    for (const std::string& line : nonblank_lines(text)) {
        std::istringstream in(line);
        std::string a, b, c;
        if (!(in >> a >> b >> c) || (in >> std::ws, !in.eof())) {
            throw ParseError("trace line must be 'side vertex variant'");
        }
        SwitchMove m;
        m.side = parse_int(a, "side");
        m.vertex = parse_int(b, "vertex");
        m.new_mark = parse_int(c, "variant");
        if (m.side != 0 && m.side != 1) throw ParseError("side must be 0 or 1");
        trace.push_back(m);
    }
    return trace;
}

std::string emit_path_collection(const PathCollection& p) {
    std::ostringstream out;
    for (const auto& path : p.paths) {
        for (size_t i = 0; i < path.size(); ++i) out << (i ? " " : "") << path[i];
        out << "\n";
    }
    return out.str();
}

PathCollection parse_path_collection(const std::string& text) {
    PathCollection p;
    for (const std::string& line : nonblank_lines(text)) {
        std::istringstream in(line);
        std::vector<int> path;
        std::string tok;
        while (in >> tok) path.push_back(parse_int(tok, "vertex"));
        p.paths.push_back(std::move(path));
    }
    return p;
}

std::string emit_triple(const CubicMultigraph& g, const CompatibleTriple& t) {
    std::ostringstream out;
    for (int i = 0; i < 3; ++i) {
        if (i) out << "\n";
        out << emit_marking(g, to_marking(g, t.member(i)));
    }
    return out.str();
}

CompatibleTriple parse_triple(const CubicMultigraph& g, const std::string& text) {
    std::vector<std::string> blocks(1);
    for (const std::string& line : nonblank_lines(text, true)) {
        if (line.find_first_not_of(" \t") == std::string::npos) {
            if (!blocks.back().empty()) blocks.emplace_back();
        } else {
            blocks.back() += line + "\n";
        }
    }
    if (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
    if (blocks.size() != 3) {
        throw ParseError("triple document needs three marking blocks, got " +
                         std::to_string(blocks.size()));
    }
    CompatibleTriple t;
    t.t1 = from_marking(g, parse_marking(g, blocks[0]));
    t.t2 = from_marking(g, parse_marking(g, blocks[1]));
    t.t3 = from_marking(g, parse_marking(g, blocks[2]));
    return t;
}

std::string emit_internality(const EdgeInternality& in) {
    std::ostringstream out;
    for (size_t e = 0; e < in.count.size(); ++e) {
        out << e << " " << in.count[e];
        if (in.singleton_member[e] >= 0) out << " " << in.singleton_member[e];
        out << "\n";
    }
    return out.str();
}

std::string emit_dot(const CubicMultigraph& g, const TrailPartition* t) {
    std::vector<Dart> mark;
    if (t) mark = to_marking(g, *t).mark;
    std::ostringstream out;
    out << "graph trails {\n";
    for (int v = 0; v < g.n(); ++v) out << "  " << v << ";\n";
    for (int e = 0; e < g.m(); ++e) {
        int u = g.endpoint(e, 0), v = g.endpoint(e, 1);
        out << "  " << u << " -- " << v << " [label=\"" << e << "\"";
        if (t) {
            // tail = side 0, head = side 1
            bool tail = mark[u] >= 0 && dart_edge(mark[u]) == e && dart_side(mark[u]) == 0;
            bool head = mark[v] >= 0 && dart_edge(mark[v]) == e &&
                        (dart_side(mark[v]) == 1 || g.is_loop(e));
            if (tail) out << ", taillabel=\"⊢\"";
            if (head) out << ", headlabel=\"⊢\"";
        }
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace trails
