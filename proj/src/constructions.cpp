#include "trails/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace trails {

namespace {

// ---------------------------------------------------------------------------
// Reduction bookkeeping: a smaller graph obtained by deleting vertices
// and splicing in replacement edges, with enough mapping data to lift a
// marking of the reduced graph back to the original.

struct ReducedGraph {
    CubicMultigraph graph;
    std::vector<int> vmap;  // local vertex -> global vertex
    // Per local edge: a kept global edge id, or -1 with per-side
    // replacement edges (the global edge the trail continues into when
    // it crosses the spliced edge from that side).
    struct EdgeOrigin {
        int global_edge = -1;
        std::array<int, 2> repl{-1, -1};
    };
    std::vector<EdgeOrigin> emap;
};

struct SpliceEdge {
    int gu, gv;      // global endpoints of the new edge
    int repl_u, repl_v;  // global edges substituted at gu / gv when lifting
};

ReducedGraph reduce(const CubicMultigraph& g, const std::vector<int>& removed,
                    const std::vector<SpliceEdge>& splices,
                    const std::vector<char>* keep_vertex = nullptr) {
    std::vector<char> keep(g.n(), 1);
    if (keep_vertex) keep = *keep_vertex;
    for (int v : removed) keep[v] = 0;
    ReducedGraph red;
    std::vector<int> local(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        if (keep[v]) {
            local[v] = static_cast<int>(red.vmap.size());
            red.vmap.push_back(v);
        }
    }
    std::vector<std::array<int, 2>> edges;
    for (int e = 0; e < g.m(); ++e) {
        int a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        if (!keep[a] || !keep[b]) continue;
        edges.push_back({local[a], local[b]});
        red.emap.push_back({e, {-1, -1}});
    }
    for (const SpliceEdge& s : splices) {
        edges.push_back({local[s.gu], local[s.gv]});
        red.emap.push_back({-1, {s.repl_u, s.repl_v}});
    }
    red.graph = CubicMultigraph(static_cast<int>(red.vmap.size()), std::move(edges));
    return red;
}

// Lifts a marking of the reduced graph; marks of the given free global
// vertices are left at -1 for the expansion search to fill.
Marking lift_marking(const CubicMultigraph& g, const ReducedGraph& red, const Marking& f) {
    Marking out;
    out.mark.assign(g.n(), -1);
    for (size_t lv = 0; lv < red.vmap.size(); ++lv) {
        int x = red.vmap[lv];
        Dart d = f.mark[lv];
        const auto& origin = red.emap[dart_edge(d)];
        if (origin.global_edge >= 0) {
            out.mark[x] = canonical_dart(g, make_dart(origin.global_edge, dart_side(d)));
        } else {
            out.mark[x] = g.dart_at(x, origin.repl[dart_side(d)]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Expansion search: complete partial member markings at a few free
// vertices so that each member is valid, satisfies its shape, and the
// three members stay pairwise compatible.

using ShapeCheck = std::function<bool(const TrailPartition&)>;

struct MemberOption {
    Marking marking;
    TrailPartition partition;
};

CompatibleTriple expand_search(const CubicMultigraph& g, const std::array<Marking, 3>& base,
                               const std::vector<int>& frees,
                               const std::array<ShapeCheck, 3>& shapes, const char* context) {
    std::array<std::vector<MemberOption>, 3> options;
    for (int i = 0; i < 3; ++i) {
        Marking f = base[i];
        std::function<void(size_t)> rec = [&](size_t pos) {
            if (pos == frees.size()) {
                if (!check_marking(g, f).valid) return;
                TrailPartition p = from_marking(g, f);
                if (shapes[i] && !shapes[i](p)) return;
                options[i].push_back({f, p});
                return;
            }
            for (Dart d : g.edge_darts_at(frees[pos])) {
                f.mark[frees[pos]] = d;
                rec(pos + 1);
            }
        };
        rec(0);
    }
    for (const auto& a : options[0]) {
        for (const auto& b : options[1]) {
            if (!markings_compatible(g, a.marking, b.marking).compatible) continue;
            for (const auto& c : options[2]) {
                if (!markings_compatible(g, a.marking, c.marking).compatible) continue;
                if (!markings_compatible(g, b.marking, c.marking).compatible) continue;
                return {a.partition, b.partition, c.partition};
            }
        }
    }
    throw FalsificationError(std::string("expansion search exhausted: ") + context);
}

std::array<Marking, 3> lift_triple(const CubicMultigraph& g, const ReducedGraph& red,
                                   const CompatibleTriple& t, const std::vector<int>& frees) {
    std::array<Marking, 3> base;
    for (int i = 0; i < 3; ++i) {
        base[i] = lift_marking(g, red, to_marking(red.graph, t.member(i)));
        for (int v : frees) base[i].mark[v] = -1;
    }
    return base;
}

std::vector<std::vector<int>> vertex_components(const CubicMultigraph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members;
        std::queue<int> q;
        q.push(s);
        comp[s] = static_cast<int>(out.size());
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            members.push_back(v);
            for (Dart d : g.darts_at(v)) {
                int w = g.dart_target(d);
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    q.push(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

// The three Euler-trail rotations of a two-vertex triple-edge graph.
CompatibleTriple theta_triple(const CubicMultigraph& g) {
    int u = g.endpoint(0, 0), v = g.endpoint(0, 1);
    auto make = [&](int first, int last) {
        Marking f;
        f.mark.assign(2, -1);
        f.mark[u] = g.dart_at(u, first);
        f.mark[v] = g.dart_at(v, last);
        return from_marking(g, f);
    };
    return {make(0, 2), make(1, 0), make(2, 1)};
}

// Finds a parallel pair u < v with third edges leading outside the
// pair; fills e1 < e2 (the pair) and the third edge of each vertex.
bool find_parallel_pair(const CubicMultigraph& g, int& u, int& v, int& e1, int& e2, int& eu,
                        int& ev, bool require_distinct_outside) {
    for (int a = 0; a < g.m(); ++a) {
        for (int b = a + 1; b < g.m(); ++b) {
            int a0 = g.endpoint(a, 0), a1 = g.endpoint(a, 1);
            if (a0 == a1) continue;
            if (!((g.endpoint(b, 0) == a0 && g.endpoint(b, 1) == a1) ||
                  (g.endpoint(b, 0) == a1 && g.endpoint(b, 1) == a0))) {
                continue;
            }
            u = std::min(a0, a1);
            v = std::max(a0, a1);
            int third_u = -1, third_v = -1;
            for (Dart d : g.edge_darts_at(u)) {
                if (dart_edge(d) != a && dart_edge(d) != b) third_u = dart_edge(d);
            }
            for (Dart d : g.edge_darts_at(v)) {
                if (dart_edge(d) != a && dart_edge(d) != b) third_v = dart_edge(d);
            }
            if (third_u < 0 || third_v < 0) continue;  // triple edge
            int nu = g.endpoint(third_u, 0) == u ? g.endpoint(third_u, 1) : g.endpoint(third_u, 0);
            int nv = g.endpoint(third_v, 0) == v ? g.endpoint(third_v, 1) : g.endpoint(third_v, 0);
            if (nu == v || nv == u || nu == u || nv == v) continue;
            if (require_distinct_outside && nu == nv) continue;
            e1 = a;
            e2 = b;
            eu = third_u;
            ev = third_v;
            return true;
        }
    }
    return false;
}

std::vector<int> neighbors_of(const CubicMultigraph& g, int v) {
    std::vector<int> out;
    for (Dart d : g.darts_at(v)) out.push_back(g.dart_target(d));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CompatibleTriple three_compatible_any(const CubicMultigraph& g);

// Reduction step: delete u and v, splice, recurse, then search
// marks at u and v.  The reduced graph may be disconnected.
CompatibleTriple reduce_and_expand(const CubicMultigraph& g, int u, int v,
                                   const std::vector<SpliceEdge>& splices,
                                   const char* context) {
    ReducedGraph red = reduce(g, {u, v}, splices);
    CompatibleTriple inner = three_compatible_any(red.graph);
    auto base = lift_triple(g, red, inner, {u, v});
    return expand_search(g, base, {u, v}, {nullptr, nullptr, nullptr}, context);
}

CompatibleTriple three_compatible_connected(const CubicMultigraph& g) {
    if (g.n() == 2) return theta_triple(g);

    int u, v, e1, e2, eu, ev;
    if (find_parallel_pair(g, u, v, e1, e2, eu, ev, true)) {
        int nu = g.endpoint(eu, 0) == u ? g.endpoint(eu, 1) : g.endpoint(eu, 0);
        int nv = g.endpoint(ev, 0) == v ? g.endpoint(ev, 1) : g.endpoint(ev, 0);
        return reduce_and_expand(g, u, v, {{nu, nv, eu, ev}}, "parallel pair reduction");
    }
    for (int e = 0; e < g.m(); ++e) {
        int a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        if (a == b) continue;
        if (neighbors_of(g, a).size() != 3 || neighbors_of(g, b).size() != 3) continue;
        // Other edges at each endpoint; all four neighbors are distinct
        // from a and b, so both splices are loop-free.
        std::array<int, 2> ea, eb;
        int ia = 0, ib = 0;
        for (Dart d : g.edge_darts_at(a)) {
            if (dart_edge(d) != e) ea[ia++] = dart_edge(d);
        }
        for (Dart d : g.edge_darts_at(b)) {
            if (dart_edge(d) != e) eb[ib++] = dart_edge(d);
        }
        auto other = [&](int edge, int self) {
            return g.endpoint(edge, 0) == self ? g.endpoint(edge, 1) : g.endpoint(edge, 0);
        };
        return reduce_and_expand(
            g, a, b,
            {{other(ea[0], a), other(ea[1], a), ea[0], ea[1]},
             {other(eb[0], b), other(eb[1], b), eb[0], eb[1]}},
            "simple neighborhood reduction");
    }
    if (g.n() > 10) {
        throw GuardError("no reduction applies and n = " + std::to_string(g.n()) +
                         " exceeds the exhaustive fallback guard");
    }
    auto found = search_compatible_triple(g, {});
    if (!found) throw FalsificationError("no compatible triple on a loopless cubic graph");
    return *found;
}

// Merges per-component triples by lifting their markings.
CompatibleTriple componentwise(
    const CubicMultigraph& g,
    const std::function<CompatibleTriple(const CubicMultigraph&, const ReducedGraph&)>& solve) {
    auto comps = vertex_components(g);
    std::array<Marking, 3> merged;
    for (auto& f : merged) f.mark.assign(g.n(), -1);
    for (const auto& members : comps) {
        std::vector<char> keep(g.n(), 0);
        for (int v : members) keep[v] = 1;
        ReducedGraph red = reduce(g, {}, {}, &keep);
        CompatibleTriple t = solve(red.graph, red);
        for (int i = 0; i < 3; ++i) {
            Marking lifted = lift_marking(g, red, to_marking(red.graph, t.member(i)));
            for (int x : members) merged[i].mark[x] = lifted.mark[x];
        }
    }
    return {from_marking(g, merged[0]), from_marking(g, merged[1]), from_marking(g, merged[2])};
}

CompatibleTriple three_compatible_any(const CubicMultigraph& g) {
    return componentwise(g, [](const CubicMultigraph& comp, const ReducedGraph&) {
        return three_compatible_connected(comp);
    });
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<VertexWalk> paths_from_vertices(const CubicMultigraph& g,
                                            const std::vector<std::vector<int>>& paths) {
    std::vector<VertexWalk> out;
    for (const auto& seq : paths) {
        VertexWalk w;
        w.vertices = seq;
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            int best = -1;
            for (Dart d : g.edge_darts_at(seq[i])) {
                if (!g.is_loop(dart_edge(d)) && g.dart_target(d) == seq[i + 1]) {
                    best = best < 0 ? dart_edge(d) : std::min(best, dart_edge(d));
                }
            }
            if (best < 0) {
                throw PreconditionError("no edge between consecutive path vertices " +
                                        std::to_string(seq[i]) + " and " +
                                        std::to_string(seq[i + 1]));
            }
            w.edges.push_back(best);
        }
        out.push_back(std::move(w));
    }
    return out;
}

TrailPartition partition_from_perfect_path_partition(const CubicMultigraph& g,
                                                     const std::vector<VertexWalk>& paths) {
    std::vector<char> on_path_edge(g.m(), 0);
    std::vector<char> covered(g.n(), 0);
    for (const auto& p : paths) {
        if (p.edges.empty()) throw PreconditionError("paths must have length at least 1");
        if (p.edges.size() + 1 != p.vertices.size()) {
            throw PreconditionError("path edge count does not match its vertices");
        }
        for (size_t i = 0; i < p.vertices.size(); ++i) {
            int x = p.vertices[i];
            if (covered[x]) throw PreconditionError("paths are not vertex-disjoint");
            covered[x] = 1;
            if (i < p.edges.size()) {
                int e = p.edges[i];
                std::array<int, 2> want{x, p.vertices[i + 1]};
                if (!((g.endpoint(e, 0) == want[0] && g.endpoint(e, 1) == want[1]) ||
                      (g.endpoint(e, 0) == want[1] && g.endpoint(e, 1) == want[0])) ||
                    g.is_loop(e)) {
                    throw PreconditionError("path edge " + std::to_string(e) +
                                            " does not join its vertices");
                }
                if (on_path_edge[e]) throw PreconditionError("paths reuse an edge");
                on_path_edge[e] = 1;
            }
        }
    }
    for (int x = 0; x < g.n(); ++x) {
        if (!covered[x]) {
            throw PreconditionError("paths do not cover vertex " + std::to_string(x));
        }
    }

    // Orient every leftover component (paths and cycles of max degree
    // 2); out[v] is the dart leaving v along the traversal.
    std::vector<Dart> out_dart(g.n(), -1);
    {
        std::vector<std::vector<Dart>> leftover(g.n());
        for (int e = 0; e < g.m(); ++e) {
            if (on_path_edge[e]) continue;
            leftover[g.endpoint(e, 0)].push_back(make_dart(e, 0));
            if (!g.is_loop(e)) leftover[g.endpoint(e, 1)].push_back(make_dart(e, 1));
        }
        std::vector<char> edge_seen(g.m(), 0);
        auto walk_from = [&](int start) {
            int cur = start;
            for (;;) {
                Dart next = -1;
                for (Dart d : leftover[cur]) {
                    if (!edge_seen[dart_edge(d)]) { next = d; break; }
                }
                if (next < 0) break;
                edge_seen[dart_edge(next)] = 1;
                if (out_dart[cur] < 0) out_dart[cur] = next;
                cur = g.dart_target(next);
            }
        };
        // Path components first (from their degree-1 ends), then cycles.
        for (int x = 0; x < g.n(); ++x) {
            bool unseen = false;
            for (Dart d : leftover[x]) {
                if (!edge_seen[dart_edge(d)]) unseen = true;
            }
            if (unseen && leftover[x].size() == 1) walk_from(x);
        }
        for (int x = 0; x < g.n(); ++x) {
            for (Dart d : leftover[x]) {
                if (!edge_seen[dart_edge(d)]) walk_from(x);
            }
        }
    }

    std::vector<Trail> trails;
    std::vector<char> used(g.m(), 0);
    for (const auto& p : paths) {
        std::vector<Dart> darts;
        int s = p.vertices.front(), t = p.vertices.back();
        if (out_dart[s] < 0 || out_dart[t] < 0) {
            throw Error("internal: path end without an outgoing leftover edge");
        }
        darts.push_back(dart_opposite(out_dart[s]));
        for (size_t i = 0; i < p.edges.size(); ++i) {
            int e = p.edges[i];
            int side = g.endpoint(e, 0) == p.vertices[i] ? 0 : 1;
            // For an edge with equal endpoints this cannot happen (loops
            // were rejected above).
            darts.push_back(make_dart(e, side));
        }
        darts.push_back(out_dart[t]);
        for (Dart d : darts) used[dart_edge(d)] = 1;
        trails.emplace_back(g, std::move(darts));
    }
    for (int e = 0; e < g.m(); ++e) {
        if (!used[e]) trails.emplace_back(g, std::vector<Dart>{make_dart(e, 0)});
    }
    return TrailPartition(g, std::move(trails));
}

TrailPartition partition_from_hamiltonian_path(const CubicMultigraph& g, const VertexWalk& p) {
    if (static_cast<int>(p.vertices.size()) != g.n() ||
        p.edges.size() + 1 != p.vertices.size()) {
        throw PreconditionError("not a hamiltonian path");
    }
    std::vector<char> seen(g.n(), 0);
    for (int x : p.vertices) {
        if (x < 0 || x >= g.n() || seen[x]) throw PreconditionError("not a hamiltonian path");
        seen[x] = 1;
    }
    std::vector<char> on_path(g.m(), 0);
    for (int e : p.edges) on_path[e] = 1;
    int s = p.vertices.front(), t = p.vertices.back();

    std::vector<Dart> path_darts;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        int e = p.edges[i];
        path_darts.push_back(make_dart(e, g.endpoint(e, 0) == p.vertices[i] ? 0 : 1));
    }
    auto front_ext = [&](int e) {
        Dart at_s = g.dart_at(s, e);
        return g.is_loop(e) ? at_s : dart_opposite(at_s);
    };
    for (Dart ds : g.edge_darts_at(s)) {
        int ea = dart_edge(ds);
        if (on_path[ea]) continue;
        for (Dart dt : g.edge_darts_at(t)) {
            int eb = dart_edge(dt);
            if (on_path[eb] || eb == ea) continue;
            std::vector<Dart> darts;
            darts.push_back(front_ext(ea));
            darts.insert(darts.end(), path_darts.begin(), path_darts.end());
            darts.push_back(g.dart_at(t, eb));
            std::vector<Trail> trails;
            trails.emplace_back(g, darts);
            std::vector<char> used(g.m(), 0);
            for (Dart d : darts) used[dart_edge(d)] = 1;
            for (int e = 0; e < g.m(); ++e) {
                if (!used[e]) trails.emplace_back(g, std::vector<Dart>{make_dart(e, 0)});
            }
            TrailPartition result(g, std::move(trails));
            if (is_normal(g, result)) return result;
        }
    }
    throw PreconditionError("no pair of distinct end extensions yields a normal partition");
}

VertexWalk extract_hamiltonian_path(const CubicMultigraph& g, const TrailPartition& t) {
    for (const Trail& tr : t.trails()) {
        if (tr.length() != g.n() + 1) continue;
        auto vs = tr.vertices(g);
        VertexWalk w;
        w.vertices.assign(vs.begin() + 1, vs.end() - 1);
        std::vector<char> seen(g.n(), 0);
        for (int x : w.vertices) {
            if (seen[x]) throw Error("internal: longest trail interior repeats a vertex");
            seen[x] = 1;
        }
        const auto& darts = tr.darts();
        for (size_t i = 1; i + 1 < darts.size(); ++i) w.edges.push_back(dart_edge(darts[i]));
        return w;
    }
    throw PreconditionError("partition has no trail of length n+1");
}

TrailPartition partition_with_lengths(const CubicMultigraph& g, const VertexWalk& cycle,
                                      std::vector<int> lengths) {
    if (static_cast<int>(cycle.vertices.size()) != g.n() || cycle.edges.size() != cycle.vertices.size()) {
        throw PreconditionError("not a hamiltonian cycle");
    }
    if (static_cast<int>(lengths.size()) != g.n() / 2) {
        throw PreconditionError("need exactly n/2 lengths");
    }
    int total = std::accumulate(lengths.begin(), lengths.end(), 0);
    if (total != g.m()) throw PreconditionError("lengths must sum to 3n/2");
    for (int l : lengths) {
        if (l < 1 || l == 2) throw PreconditionError("every length must be >= 1 and != 2");
    }
    std::vector<int> longs;
    for (int l : lengths) {
        if (l >= 3) longs.push_back(l);
    }
    // Lay one path of length l-2 per long trail consecutively around
    // the cycle, skipping one cycle edge between paths.
    std::vector<VertexWalk> paths;
    int pos = 0;
    for (int l : longs) {
        int lambda = l - 2;
        VertexWalk p;
        for (int i = 0; i <= lambda; ++i) {
            p.vertices.push_back(cycle.vertices[(pos + i) % g.n()]);
            if (i < lambda) p.edges.push_back(cycle.edges[(pos + i) % g.n()]);
        }
        paths.push_back(std::move(p));
        pos += lambda + 1;
    }
    return partition_from_perfect_path_partition(g, paths);
}

TrailPartition odd_partition_from_matching(const CubicMultigraph& g,
                                           const std::vector<int>& matching,
                                           const Orientation& o) {
    std::vector<char> covered(g.n(), 0);
    for (int e : matching) {
        if (g.is_loop(e)) throw PreconditionError("a matching contains no loop");
        for (int side : {0, 1}) {
            int x = g.endpoint(e, side);
            if (covered[x]) throw PreconditionError("matching is not perfect");
            covered[x] = 1;
        }
    }
    for (int x = 0; x < g.n(); ++x) {
        if (!covered[x]) throw PreconditionError("matching is not perfect");
    }
    std::vector<Trail> trails;
    for (int e : matching) {
        int a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        if (o.out[a] < 0 || o.out[b] < 0) {
            throw PreconditionError("orientation does not cover the complement 2-factor");
        }
        trails.emplace_back(
            g, std::vector<Dart>{dart_opposite(o.out[a]), make_dart(e, 0), o.out[b]});
    }
    return TrailPartition(g, std::move(trails));
}

TrailPartition odd_partition_from_matching(const CubicMultigraph& g,
                                           const std::vector<int>& matching) {
    TwoFactor f = complement_two_factor(g, matching);
    return odd_partition_from_matching(g, matching, orient(g, f));
}

std::pair<TrailPartition, TrailPartition> compatible_pair_from_matching(
    const CubicMultigraph& g, const std::vector<int>& matching) {
    TwoFactor f = complement_two_factor(g, matching);
    Orientation o = orient(g, f);
    return {odd_partition_from_matching(g, matching, o),
            odd_partition_from_matching(g, matching, reversed(g, f, o))};
}

std::vector<int> matching_from_odd_partition(const CubicMultigraph& g, const TrailPartition& t) {
    if (!is_normal(g, t)) throw PreconditionError("partition is not normal");
    if (!is_odd(t)) throw PreconditionError("partition is not odd");
    std::vector<int> matched;
    std::vector<int> cover(g.n(), 0);
    for (const Trail& tr : t.trails()) {
        const auto& darts = tr.darts();
        // Edge at 1-based position i is odd when both deletion
        // subtrails (lengths i-1 and k-i) are odd, i.e. i is even.
        for (size_t i = 1; i < darts.size(); i += 2) {
            int e = dart_edge(darts[i]);
            matched.push_back(e);
            ++cover[g.endpoint(e, 0)];
            ++cover[g.endpoint(e, 1)];
        }
    }
    for (int x = 0; x < g.n(); ++x) {
        if (cover[x] != 1) {
            throw FalsificationError("odd edges do not form a perfect matching at vertex " +
                                     std::to_string(x));
        }
    }
    std::sort(matched.begin(), matched.end());
    return matched;
}

CompatibleTriple three_compatible(const CubicMultigraph& g) {
    for (int e = 0; e < g.m(); ++e) {
        if (g.is_loop(e)) {
            throw PreconditionError("graph has a loop (edge " + std::to_string(e) + ")");
        }
    }
    return three_compatible_any(g);
}

namespace {

CompatibleTriple colored_connected(const CubicMultigraph& g, const EdgeColoring& c) {
    if (g.n() == 2) return theta_triple(g);

    int u, v, e1, e2, eu, ev;
    if (find_parallel_pair(g, u, v, e1, e2, eu, ev, false)) {
        int x = g.endpoint(eu, 0) == u ? g.endpoint(eu, 1) : g.endpoint(eu, 0);
        int y = g.endpoint(ev, 0) == v ? g.endpoint(ev, 1) : g.endpoint(ev, 0);
        // A proper coloring forces the two outside edges to share a
        // color, hence distinct outside neighbors.
        if (x == y) throw Error("internal: parallel pair with a common outside neighbor");
        ReducedGraph red = reduce(g, {u, v}, {{x, y, eu, ev}});
        EdgeColoring inner;
        inner.color.resize(red.graph.m());
        for (int e = 0; e < red.graph.m(); ++e) {
            inner.color[e] =
                red.emap[e].global_edge >= 0 ? c.color[red.emap[e].global_edge] : c.color[eu];
        }
        CompatibleTriple sub = colored_connected(red.graph, inner);
        auto base = lift_triple(g, red, sub, {u, v});
        std::array<ShapeCheck, 3> shapes = {
            [](const TrailPartition& p) { return is_odd(p); },
            [](const TrailPartition& p) { return partition_length(p) == 3; },
            [](const TrailPartition& p) { return partition_length(p) <= 4; }};
        return expand_search(g, base, {u, v}, shapes, "colored parallel pair reduction");
    }

    // Simple graph: cut the (alpha, beta) 2-factor at a strong matching.
    TwoFactor factor = colored_two_factor(g, c, 0, 1);
    auto strong = strong_matching_meeting_2factor(g, factor);
    if (!strong) {
        throw Error("no induced matching meets every cycle of the 2-factor");
    }
    std::vector<int> gamma;
    for (int e = 0; e < g.m(); ++e) {
        if (c.color[e] == 2) gamma.push_back(e);
    }
    std::vector<char> is_strong(g.m(), 0);
    for (int e : *strong) is_strong[e] = 1;

    // Orient each cycle so that the chosen edge goes u_i -> v_i; the
    // stored cycle direction already does this once we read u_i/v_i off
    // the dart of the chosen edge.
    Orientation o = orient(g, factor);
    Orientation r = reversed(g, factor, o);
    std::vector<int> gamma_edge(g.n(), -1);
    for (int e : gamma) {
        gamma_edge[g.endpoint(e, 0)] = e;
        gamma_edge[g.endpoint(e, 1)] = e;
    }

    struct Cut {
        int ui, vi;
    };
    std::vector<Cut> cuts;
    for (const auto& cyc : factor.cycles) {
        for (Dart d : cyc) {
            if (is_strong[dart_edge(d)]) {
                cuts.push_back({g.dart_vertex(d), g.dart_target(d)});
            }
        }
    }

    // First member: each cycle plus the matching edge at u_i, traversed
    // against the orientation so it ends with v_i u_i; leftover
    // matching edges are length-1 trails.
    std::vector<Trail> first;
    std::vector<char> used(g.m(), 0);
    for (const Cut& cut : cuts) {
        int xe = gamma_edge[cut.ui];
        std::vector<Dart> darts{dart_opposite(g.dart_at(cut.ui, xe))};
        int cur = cut.ui;
        do {
            Dart d = r.out[cur];
            darts.push_back(d);
            cur = g.dart_target(d);
        } while (cur != cut.ui);
        for (Dart d : darts) used[dart_edge(d)] = 1;
        first.emplace_back(g, std::move(darts));
    }
    for (int e : gamma) {
        if (!used[e]) first.emplace_back(g, std::vector<Dart>{make_dart(e, 0)});
    }
    TrailPartition t1(g, std::move(first));

    TrailPartition t2 = odd_partition_from_matching(g, gamma, o);

    // Third member: reverse-orientation trails, with the edge between
    // u_i and its predecessor moved from u_i's matching trail to v_i's.
    TrailPartition t3base = odd_partition_from_matching(g, gamma, r);
    std::vector<std::vector<Dart>> t3trails;
    std::map<int, int> trail_of_gamma;
    for (const Trail& tr : t3base.trails()) {
        trail_of_gamma[dart_edge(tr.darts()[1])] = static_cast<int>(t3trails.size());
        t3trails.push_back(tr.darts());
    }
    for (const Cut& cut : cuts) {
        int pu_dart = r.out[cut.ui];  // u_i -> p(u_i)
        auto& shorten = t3trails[trail_of_gamma[gamma_edge[cut.ui]]];
        if (shorten.front() == dart_opposite(pu_dart)) {
            shorten.erase(shorten.begin());
        } else if (shorten.back() == pu_dart) {
            shorten.pop_back();
        } else {
            throw Error("internal: predecessor edge not at a trail end");
        }
        auto& extend = t3trails[trail_of_gamma[gamma_edge[cut.vi]]];
        if (g.dart_vertex(extend.front()) == cut.ui) {
            extend.insert(extend.begin(), dart_opposite(pu_dart));
        } else if (g.dart_target(extend.back()) == cut.ui) {
            extend.push_back(pu_dart);
        } else {
            throw Error("internal: extension trail does not end at u_i");
        }
    }
    std::vector<Trail> third;
    for (auto& darts : t3trails) third.emplace_back(g, std::move(darts));
    return {t1, t2, TrailPartition(g, std::move(third))};
}

}  // namespace

CompatibleTriple three_compatible_colored(const CubicMultigraph& g, const EdgeColoring& c) {
    if (!is_proper_coloring(g, c)) throw PreconditionError("coloring is not proper");
    return componentwise(g, [&](const CubicMultigraph& comp, const ReducedGraph& red) {
        EdgeColoring sub;
        sub.color.resize(comp.m());
        for (int e = 0; e < comp.m(); ++e) sub.color[e] = c.color[red.emap[e].global_edge];
        return colored_connected(comp, sub);
    });
}

CompatibleTriple three_compatible_bipartite(const CubicMultigraph& g, const EdgeColoring& c) {
    if (!is_proper_coloring(g, c)) throw PreconditionError("coloring is not proper");
    StructureReport report = structure_report(g);
    if (!report.is_bipartite) throw PreconditionError("graph is not bipartite");
    const std::vector<int>& cls = report.bipartition;

    // One member per color rotation (c1, c2, c3): a trail per c2 edge,
    // entered through the c1 edge at its class-0 endpoint and left
    // through the c3 edge at its class-1 endpoint.
    auto member = [&](int c1, int c2, int c3) {
        std::vector<Trail> trails;
        for (int e = 0; e < g.m(); ++e) {
            if (c.color[e] != c2) continue;
            int w = cls[g.endpoint(e, 0)] == 0 ? g.endpoint(e, 0) : g.endpoint(e, 1);
            int b = g.endpoint(e, 0) == w ? g.endpoint(e, 1) : g.endpoint(e, 0);
            Dart in = -1, out = -1;
            for (Dart d : g.darts_at(w)) {
                if (c.color[dart_edge(d)] == c1) in = dart_opposite(d);
            }
            for (Dart d : g.darts_at(b)) {
                if (c.color[dart_edge(d)] == c3) out = d;
            }
            trails.emplace_back(g, std::vector<Dart>{in, g.dart_at(w, e), out});
        }
        return TrailPartition(g, std::move(trails));
    };
    return {member(0, 1, 2), member(1, 2, 0), member(2, 0, 1)};
}

EdgeInternality analyze_triple(const CubicMultigraph& g, const CompatibleTriple& triple) {
    std::array<Marking, 3> marks;
    for (int i = 0; i < 3; ++i) marks[i] = to_marking(g, triple.member(i));
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (!markings_compatible(g, marks[i], marks[j]).compatible) {
                throw PreconditionError("partitions are not pairwise compatible");
            }
        }
    }
    EdgeInternality rep;
    rep.count.assign(g.m(), 0);
    rep.singleton_member.assign(g.m(), -1);
    std::array<std::vector<char>, 3> singleton;
    for (int i = 0; i < 3; ++i) {
        singleton[i].assign(g.m(), 0);
        for (const Trail& tr : triple.member(i).trails()) {
            const auto& darts = tr.darts();
            if (darts.size() == 1) singleton[i][dart_edge(darts[0])] = 1;
            for (size_t p = 1; p + 1 < darts.size(); ++p) ++rep.count[dart_edge(darts[p])];
        }
    }
    for (int e = 0; e < g.m(); ++e) {
        if (rep.count[e] == 1) {
            rep.has_singly_internal = true;
        } else if (rep.count[e] == 2) {
            for (int i = 0; i < 3; ++i) {
                if (singleton[i][e]) rep.singleton_member[e] = i;
            }
            if (rep.singleton_member[e] < 0) rep.violations.push_back(e);
        } else {
            rep.violations.push_back(e);
        }
    }
    if (!rep.has_singly_internal && g.m() > 0) rep.violations.push_back(-1);
    return rep;
}

std::pair<CubicMultigraph, CompatibleTriple> triangle_expand(const CubicMultigraph& g, int v,
                                                             const CompatibleTriple& triple) {
    for (int i = 0; i < 3; ++i) {
        if (!is_odd(triple.member(i))) {
            throw PreconditionError("triangle expansion needs odd partitions");
        }
    }
    if (v < 0 || v >= g.n()) throw PreconditionError("vertex out of range");
    // Spread the three darts at v over the triangle corners v, n, n+1.
    std::array<int, 3> corner{v, g.n(), g.n() + 1};
    auto edges = g.edges();
    const auto& at_v = g.darts_at(v);
    for (int i = 0; i < 3; ++i) {
        edges[dart_edge(at_v[i])][dart_side(at_v[i])] = corner[i];
    }
    edges.push_back({corner[0], corner[1]});
    edges.push_back({corner[1], corner[2]});
    edges.push_back({corner[0], corner[2]});
    CubicMultigraph expanded(g.n() + 2, std::move(edges));

    std::array<Marking, 3> base;
    for (int i = 0; i < 3; ++i) {
        Marking f = to_marking(g, triple.member(i));
        base[i].mark.assign(expanded.n(), -1);
        for (int x = 0; x < g.n(); ++x) {
            if (x != v) base[i].mark[x] = f.mark[x];
        }
    }
    std::array<ShapeCheck, 3> shapes;
    shapes.fill([](const TrailPartition& p) { return is_odd(p); });
    CompatibleTriple lifted =
        expand_search(expanded, base, {corner[0], corner[1], corner[2]}, shapes,
                      "triangle expansion");
    return {expanded, lifted};
}

std::array<std::vector<int>, 3> fan_raspaud_from_triple(const CubicMultigraph& g,
                                                        const CompatibleTriple& triple) {
    std::array<std::vector<int>, 3> matchings;
    for (int i = 0; i < 3; ++i) matchings[i] = matching_from_odd_partition(g, triple.member(i));
    for (int e : matchings[0]) {
        bool in1 = std::binary_search(matchings[1].begin(), matchings[1].end(), e);
        bool in2 = std::binary_search(matchings[2].begin(), matchings[2].end(), e);
        if (in1 && in2) {
            throw FalsificationError("edge " + std::to_string(e) +
                                     " lies in all three matchings");
        }
    }
    return matchings;
}

std::optional<CompatibleTriple> search_compatible_triple(const CubicMultigraph& g,
                                                         const TripleSearchOptions& opts) {
    EnumerateOptions eopts;
    eopts.filter = opts.filter;
    eopts.max_length = opts.max_length;
    eopts.guard_n = opts.guard_n;
    std::vector<Marking> all = enumerate_markings(g, eopts);
    size_t n = all.size();
    // Packed compatibility rows so pair intersections are word-wide.
    size_t words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(words, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (markings_compatible(g, all[i], all[j]).compatible) {
                rows[i][j / 64] |= std::uint64_t(1) << (j % 64);
                rows[j][i / 64] |= std::uint64_t(1) << (i % 64);
            }
        }
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (!(rows[i][j / 64] >> (j % 64) & 1)) continue;
            for (size_t w = j / 64; w < words; ++w) {
                std::uint64_t both = rows[i][w] & rows[j][w];
                if (w == j / 64) both &= ~((std::uint64_t(2) << (j % 64)) - 1);
                if (both) {
                    size_t k = w * 64 + static_cast<size_t>(std::countr_zero(both));
                    return CompatibleTriple{from_marking(g, all[i]), from_marking(g, all[j]),
                                            from_marking(g, all[k])};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace trails
