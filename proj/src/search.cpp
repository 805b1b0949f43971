#include "trails/search.hpp"

#include <algorithm>
#include <functional>

namespace trails {

bool is_proper_coloring(const CubicMultigraph& g, const EdgeColoring& c) {
    if (static_cast<int>(c.color.size()) != g.m()) return false;
    for (int e = 0; e < g.m(); ++e) {
        if (c.color[e] < 0 || c.color[e] > 2) return false;
    }
    for (int v = 0; v < g.n(); ++v) {
        int seen = 0;
        for (Dart d : g.darts_at(v)) {
            int bit = 1 << c.color[dart_edge(d)];
            if (seen & bit) return false;
            seen |= bit;
        }
    }
    return true;
}

std::vector<std::vector<int>> perfect_matchings(const CubicMultigraph& g,
                                                std::optional<int> limit) {
    std::vector<std::vector<int>> out;
    std::vector<char> covered(g.n(), 0);
    std::vector<int> chosen;
    std::function<void()> rec = [&]() {
        if (limit && static_cast<int>(out.size()) >= *limit) return;
        int v = -1;
        for (int w = 0; w < g.n(); ++w) {
            if (!covered[w]) { v = w; break; }
        }
        if (v < 0) {
            out.push_back(chosen);
            return;
        }
        for (Dart d : g.edge_darts_at(v)) {
            int e = dart_edge(d);
            if (g.is_loop(e)) continue;
            int u = g.dart_target(d);
            if (covered[u]) continue;
            covered[v] = covered[u] = 1;
            chosen.push_back(e);
            rec();
            chosen.pop_back();
            covered[v] = covered[u] = 0;
        }
    };
    rec();
    for (auto& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<EdgeColoring> proper_3_edge_coloring(const CubicMultigraph& g) {
    for (int e = 0; e < g.m(); ++e) {
        if (g.is_loop(e)) return std::nullopt;
    }
    EdgeColoring c;
    c.color.assign(g.m(), -1);
    std::vector<int> used(g.n(), 0);  // bitmask of colors at each vertex
    std::function<bool(int)> rec = [&](int e) -> bool {
        if (e == g.m()) return true;
        int a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        for (int col = 0; col < 3; ++col) {
            int bit = 1 << col;
            if ((used[a] | used[b]) & bit) continue;
            c.color[e] = col;
            used[a] |= bit;
            used[b] |= bit;
            if (rec(e + 1)) return true;
            used[a] &= ~bit;
            used[b] &= ~bit;
            c.color[e] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return c;
}

namespace {

std::optional<VertexWalk> hamiltonian_search(const CubicMultigraph& g, bool cycle) {
    if (g.n() == 0) return std::nullopt;
    VertexWalk walk;
    std::vector<char> visited(g.n(), 0);
    walk.vertices.push_back(0);
    visited[0] = 1;
    std::function<bool()> rec = [&]() -> bool {
        int v = walk.vertices.back();
        if (static_cast<int>(walk.vertices.size()) == g.n()) {
            if (!cycle) return true;
            for (Dart d : g.edge_darts_at(v)) {
                if (!g.is_loop(dart_edge(d)) && g.dart_target(d) == 0) {
                    walk.edges.push_back(dart_edge(d));
                    return true;
                }
            }
            return false;
        }
        for (Dart d : g.edge_darts_at(v)) {
            int e = dart_edge(d);
            if (g.is_loop(e)) continue;
            int u = g.dart_target(d);
            if (visited[u]) continue;
            visited[u] = 1;
            walk.vertices.push_back(u);
            walk.edges.push_back(e);
            if (rec()) return true;
            walk.edges.pop_back();
            walk.vertices.pop_back();
            visited[u] = 0;
        }
        return false;
    };
    if (cycle) {
        if (rec()) return walk;
        return std::nullopt;
    }
    // Paths need not start at vertex 0; try every start.
    for (int s = 0; s < g.n(); ++s) {
        walk.vertices = {s};
        walk.edges.clear();
        std::fill(visited.begin(), visited.end(), 0);
        visited[s] = 1;
        if (rec()) return walk;
    }
    return std::nullopt;
}

TwoFactor darts_to_cycles(const CubicMultigraph& g, const std::vector<char>& in_factor) {
    TwoFactor f;
    std::vector<char> edge_used(g.m(), 0);
    for (int s = 0; s < g.n(); ++s) {
        bool start_here = false;
        for (Dart d : g.darts_at(s)) {
            if (in_factor[dart_edge(d)] && !edge_used[dart_edge(d)]) { start_here = true; break; }
        }
        if (!start_here) continue;
        std::vector<Dart> cyc;
        int cur = s;
        for (;;) {
            Dart next = -1;
            for (Dart d : g.edge_darts_at(cur)) {
                if (in_factor[dart_edge(d)] && !edge_used[dart_edge(d)]) { next = d; break; }
            }
            if (next < 0) break;
            edge_used[dart_edge(next)] = 1;
            cyc.push_back(next);
            cur = g.dart_target(next);
        }
        f.cycles.push_back(std::move(cyc));
    }
    return f;
}

}  // namespace

std::optional<VertexWalk> hamiltonian_path(const CubicMultigraph& g) {
    return hamiltonian_search(g, false);
}

std::optional<VertexWalk> hamiltonian_cycle(const CubicMultigraph& g) {
    return hamiltonian_search(g, true);
}

TwoFactor complement_two_factor(const CubicMultigraph& g, const std::vector<int>& matching) {
    std::vector<char> in_factor(g.m(), 1);
    for (int e : matching) in_factor[e] = 0;
    return darts_to_cycles(g, in_factor);
}

TwoFactor colored_two_factor(const CubicMultigraph& g, const EdgeColoring& c, int c1, int c2) {
    std::vector<char> in_factor(g.m(), 0);
    for (int e = 0; e < g.m(); ++e) {
        if (c.color[e] == c1 || c.color[e] == c2) in_factor[e] = 1;
    }
    return darts_to_cycles(g, in_factor);
}

Orientation orient(const CubicMultigraph& g, const TwoFactor& f) {
    Orientation o;
    o.out.assign(g.n(), -1);
    for (const auto& cyc : f.cycles) {
        for (Dart d : cyc) o.out[g.dart_vertex(d)] = d;
    }
    return o;
}

Orientation reversed(const CubicMultigraph& g, const TwoFactor& f, const Orientation& o) {
    Orientation r;
    r.out.assign(g.n(), -1);
    for (const auto& cyc : f.cycles) {
        for (Dart d : cyc) {
            // The reverse cycle leaves the target of d along d's opposite.
            r.out[g.dart_target(d)] = dart_opposite(d);
        }
    }
    (void)o;
    return r;
}

std::optional<std::vector<int>> strong_matching_meeting_2factor(const CubicMultigraph& g,
                                                                const TwoFactor& f) {
    std::vector<char> picked_vertex(g.n(), 0);
    std::vector<int> chosen;
    // No edge of G may join two chosen-edge endpoints unless chosen.
    auto conflicts = [&](int e) {
        int u = g.endpoint(e, 0), v = g.endpoint(e, 1);
        if (u == v) return true;
        if (picked_vertex[u] || picked_vertex[v]) return true;
        for (int x : {u, v}) {
            for (Dart d : g.edge_darts_at(x)) {
                if (dart_edge(d) == e) continue;
                if (picked_vertex[g.dart_target(d)]) return true;
                // A parallel partner of e would join e's endpoints without
                // belonging to the matching.
                if (x == u && g.dart_target(d) == v) return true;
            }
        }
        return false;
    };
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == f.cycles.size()) return true;
        for (Dart d : f.cycles[i]) {
            int e = dart_edge(d);
            if (conflicts(e)) continue;
            int u = g.endpoint(e, 0), v = g.endpoint(e, 1);
            picked_vertex[u] = picked_vertex[v] = 1;
            chosen.push_back(e);
            if (rec(i + 1)) return true;
            chosen.pop_back();
            picked_vertex[u] = picked_vertex[v] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace trails
