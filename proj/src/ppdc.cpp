#include "trails/ppdc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace trails {

namespace {

int edge_between(const GeneralGraph& g, int u, int v) {
    for (int e = 0; e < g.m(); ++e) {
        int a = g.edges()[e][0], b = g.edges()[e][1];
        if ((a == u && b == v) || (a == v && b == u)) return e;
    }
    return -1;
}

// Checks the path property and resolves the edge sequence.
bool resolve_path(const GeneralGraph& g, const std::vector<int>& path, std::vector<int>& edges,
                  std::string& why) {
    edges.clear();
    if (path.empty()) {
        why = "empty vertex sequence";
        return false;
    }
    std::set<int> seen;
    for (int v : path) {
        if (v < 0 || v >= g.n()) {
            why = "vertex out of range";
            return false;
        }
        if (!seen.insert(v).second) {
            why = "repeated vertex " + std::to_string(v);
            return false;
        }
    }
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        int e = edge_between(g, path[i], path[i + 1]);
        if (e < 0) {
            why = "no edge between " + std::to_string(path[i]) + " and " +
                  std::to_string(path[i + 1]);
            return false;
        }
        edges.push_back(e);
    }
    return true;
}

VerifyResult verify_cover(const GeneralGraph& g, const PathCollection& p, bool compatible) {
    std::vector<int> edge_count(g.m(), 0);
    std::vector<int> end_count(g.n(), 0);
    std::vector<std::vector<int>> end_edges(g.n());
    for (const auto& path : p.paths) {
        std::vector<int> edges;
        std::string why;
        if (!resolve_path(g, path, edges, why)) return {false, "not a path: " + why};
        if (edges.empty()) {
            if (compatible) {
                return {false, "length-0 path at vertex " + std::to_string(path[0]) +
                                   " has no end edge"};
            }
            end_count[path[0]] += 2;
            continue;
        }
        for (int e : edges) ++edge_count[e];
        ++end_count[path.front()];
        ++end_count[path.back()];
        end_edges[path.front()].push_back(edges.front());
        end_edges[path.back()].push_back(edges.back());
    }
    for (int e = 0; e < g.m(); ++e) {
        if (edge_count[e] != 2) {
            return {false, "edge " + std::to_string(e) + " covered " +
                               std::to_string(edge_count[e]) + " times"};
        }
    }
    for (int v = 0; v < g.n(); ++v) {
        if (end_count[v] != 2) {
            return {false, "vertex " + std::to_string(v) + " is a path end " +
                               std::to_string(end_count[v]) + " times"};
        }
        if (compatible && end_edges[v].size() == 2 && end_edges[v][0] == end_edges[v][1]) {
            return {false, "vertex " + std::to_string(v) + " ends twice with edge " +
                               std::to_string(end_edges[v][0])};
        }
    }
    return {true, ""};
}

GeneralGraph delete_edge(const GeneralGraph& g, int e) {
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < g.m(); ++i) {
        if (i != e) edges.push_back(g.edges()[i]);
    }
    return GeneralGraph(g.n(), std::move(edges));
}

struct Sub {
    GeneralGraph graph;
    std::vector<int> vmap;  // local -> parent
};

Sub subgraph(const GeneralGraph& g, const std::vector<char>& keep,
             std::optional<int> drop_edge = std::nullopt) {
    Sub sub;
    std::vector<int> local(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        if (keep[v]) {
            local[v] = static_cast<int>(sub.vmap.size());
            sub.vmap.push_back(v);
        }
    }
    std::vector<std::array<int, 2>> edges;
    for (int e = 0; e < g.m(); ++e) {
        if (drop_edge && e == *drop_edge) continue;
        int a = g.edges()[e][0], b = g.edges()[e][1];
        if (keep[a] && keep[b]) edges.push_back({local[a], local[b]});
    }
    sub.graph = GeneralGraph(static_cast<int>(sub.vmap.size()), std::move(edges));
    return sub;
}

std::vector<std::vector<int>> components_of(const GeneralGraph& g) {
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
            for (int w : g.adjacency()[v]) {
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    q.push(w);
                }
            }
        }
        out.push_back(std::move(members));
    }
    return out;
}

std::vector<std::vector<int>> relabel(const std::vector<std::vector<int>>& paths,
                                      const std::vector<int>& vmap) {
    std::vector<std::vector<int>> out;
    for (const auto& p : paths) {
        std::vector<int> q;
        for (int v : p) q.push_back(vmap[v]);
        out.push_back(std::move(q));
    }
    return out;
}

// Orients path so that it ends at v; the path must end there.
std::vector<int> ending_at(std::vector<int> path, int v) {
    if (path.front() == v) std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::vector<int>> cppdc_rec(const GeneralGraph& g);

// Case 1: the two neighbors of the degree-2 vertex are adjacent, the
// graph splits at that triangle into two sides.
std::vector<std::vector<int>> cppdc_case1(const GeneralGraph& g, int v, int v1, int v2) {
    std::vector<char> keep(g.n(), 1);
    keep[v] = 0;
    Sub sub = subgraph(g, keep, edge_between(g, v1, v2));
    auto comps = components_of(sub.graph);
    if (comps.size() != 2) {
        throw FalsificationError("triangle split did not give two components");
    }
    std::vector<std::vector<int>> merged;
    std::array<std::vector<int>, 2> absorbed;  // Q_i ending at v_i, global ids
    for (const auto& members : comps) {
        std::vector<char> ckeep(sub.graph.n(), 0);
        for (int x : members) ckeep[x] = 1;
        Sub comp = subgraph(sub.graph, ckeep);
        auto local_paths = cppdc_rec(comp.graph);
        auto paths = relabel(relabel(local_paths, comp.vmap), sub.vmap);
        int side = -1;
        for (int x : members) {
            if (sub.vmap[x] == v1) side = 0;
            if (sub.vmap[x] == v2) side = 1;
        }
        int target = side == 0 ? v1 : v2;
        bool taken = false;
        for (auto& p : paths) {
            if (!taken && (p.front() == target || p.back() == target)) {
                absorbed[side] = ending_at(p, target);
                taken = true;
            } else {
                merged.push_back(p);
            }
        }
        if (!taken) throw FalsificationError("no path ends at the split vertex");
    }
    auto t1 = absorbed[0];
    t1.push_back(v2);
    t1.push_back(v);
    auto t2 = absorbed[1];
    t2.push_back(v1);
    t2.push_back(v);
    merged.push_back(std::move(t1));
    merged.push_back(std::move(t2));
    merged.push_back({v1, v, v2});
    // Trivial paths only arise from single-vertex sides, where they are
    // fully replaced by the extended paths.
    std::erase_if(merged, [](const std::vector<int>& p) { return p.size() == 1; });
    return merged;
}

std::vector<std::vector<int>> cppdc_rec(const GeneralGraph& g) {
    if (g.n() == 1) return {{0}, {0}};
    if (g.n() == 3) return {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    int v = -1;
    for (int x = 0; x < g.n(); ++x) {
        if (g.degree(x) == 2) { v = x; break; }
    }
    if (v < 0) {
        throw FalsificationError("minimal 2-edge-connected graph without a degree-2 vertex");
    }
    int v1 = g.adjacency()[v][0], v2 = g.adjacency()[v][1];
    if (v1 > v2) std::swap(v1, v2);

    if (edge_between(g, v1, v2) >= 0) return cppdc_case1(g, v, v1, v2);

    std::vector<char> keep(g.n(), 1);
    keep[v] = 0;
    Sub minus = subgraph(g, keep);
    if (is_minimal_2ec(minus.graph)) {
        // Case 3: recurse on G - v and reroute one end path per neighbor
        // through v.
        auto paths = relabel(cppdc_rec(minus.graph), minus.vmap);
        int q1 = -1, q2 = -1;
        for (size_t i = 0; i < paths.size(); ++i) {
            if (paths[i].front() == v1 || paths[i].back() == v1) {
                if (q1 < 0) q1 = static_cast<int>(i);
            }
        }
        for (size_t i = 0; i < paths.size(); ++i) {
            if (static_cast<int>(i) == q1) continue;
            if (paths[i].front() == v2 || paths[i].back() == v2) {
                q2 = static_cast<int>(i);
                break;
            }
        }
        if (q1 < 0 || q2 < 0) throw FalsificationError("missing end paths at the neighbors");
        std::vector<std::vector<int>> out;
        for (size_t i = 0; i < paths.size(); ++i) {
            if (static_cast<int>(i) != q1 && static_cast<int>(i) != q2) out.push_back(paths[i]);
        }
        auto t1 = ending_at(paths[q1], v1);
        t1.push_back(v);
        auto t2 = ending_at(paths[q2], v2);
        t2.push_back(v);
        out.push_back(std::move(t1));
        out.push_back(std::move(t2));
        out.push_back({v1, v, v2});
        return out;
    }

    // Case 2: G - v is not minimal; G - v + v1v2 must be, or the
    // minimality argument for G fails.
    std::vector<std::array<int, 2>> edges;
    std::vector<int> vmap;
    {
        Sub base = subgraph(g, keep);
        edges = base.graph.edges();
        vmap = base.vmap;
        std::vector<int> local(g.n(), -1);
        for (size_t i = 0; i < vmap.size(); ++i) local[vmap[i]] = static_cast<int>(i);
        edges.push_back({local[v1], local[v2]});
    }
    GeneralGraph spliced(static_cast<int>(vmap.size()), edges);
    if (!is_minimal_2ec(spliced)) {
        throw FalsificationError("spliced graph is not minimal 2-edge-connected");
    }
    auto paths = relabel(cppdc_rec(spliced), vmap);
    auto uses_edge = [&](const std::vector<int>& p) {
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            if ((p[i] == v1 && p[i + 1] == v2) || (p[i] == v2 && p[i + 1] == v1)) {
                return static_cast<int>(i);
            }
        }
        return -1;
    };
    int a = -1, b = -1;
    for (size_t i = 0; i < paths.size(); ++i) {
        if (uses_edge(paths[i]) >= 0) {
            if (a < 0) {
                a = static_cast<int>(i);
            } else {
                b = static_cast<int>(i);
                break;
            }
        }
    }
    if (a < 0 || b < 0) throw FalsificationError("spliced edge not doubly covered");
    std::vector<std::vector<int>> out;
    for (size_t i = 0; i < paths.size(); ++i) {
        if (static_cast<int>(i) != a && static_cast<int>(i) != b) out.push_back(paths[i]);
    }
    // Split the first path at the spliced edge, attaching v to each half.
    {
        const auto& p = paths[a];
        int pos = uses_edge(p);
        std::vector<int> left(p.begin(), p.begin() + pos + 1);
        std::vector<int> right(p.begin() + pos + 1, p.end());
        if (left.back() != v1) std::swap(left, right), std::reverse(left.begin(), left.end()),
            std::reverse(right.begin(), right.end());
        left = ending_at(left, v1);
        left.push_back(v);
        right = ending_at(right, v2);
        right.push_back(v);
        out.push_back(std::move(left));
        out.push_back(std::move(right));
    }
    // Insert v into the second path.
    {
        auto p = paths[b];
        int pos = uses_edge(p);
        p.insert(p.begin() + pos + 1, v);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

VerifyResult verify_ppdc(const GeneralGraph& g, const PathCollection& p) {
    return verify_cover(g, p, false);
}

VerifyResult verify_cppdc(const GeneralGraph& g, const PathCollection& p) {
    return verify_cover(g, p, true);
}

bool is_2_edge_connected(const GeneralGraph& g) {
    if (g.n() == 1) return true;
    // connectivity
    std::vector<char> seen(g.n(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.adjacency()[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    if (reached != g.n()) return false;
    // bridge search by low-link
    std::vector<int> disc(g.n(), -1), low(g.n(), 0);
    int timer = 0;
    bool bridge = false;
    std::function<void(int, int)> dfs = [&](int v, int via_edge) {
        disc[v] = low[v] = timer++;
        for (int e = 0; e < g.m(); ++e) {
            int a = g.edges()[e][0], b = g.edges()[e][1];
            if (a != v && b != v) continue;
            if (e == via_edge) continue;
            int w = a == v ? b : a;
            if (disc[w] < 0) {
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) bridge = true;
            } else {
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    dfs(0, -1);
    return !bridge;
}

bool is_minimal_2ec(const GeneralGraph& g) {
    if (!is_2_edge_connected(g)) return false;
    for (int e = 0; e < g.m(); ++e) {
        if (is_2_edge_connected(delete_edge(g, e))) return false;
    }
    return true;
}

PathCollection cppdc_minimal_2ec(const GeneralGraph& g) {
    if (g.n() < 3) throw PreconditionError("need at least 3 vertices");
    if (!is_minimal_2ec(g)) {
        throw PreconditionError("graph is not minimal 2-edge-connected");
    }
    if (g.n() == 3 && g.m() != 3) throw PreconditionError("unexpected 3-vertex graph");
    return {cppdc_rec(g)};
}

namespace {

// All simple paths (including length 0), each stored once, in a
// deterministic order.
std::vector<std::vector<int>> all_paths(const GeneralGraph& g) {
    std::vector<std::vector<int>> out;
    for (int v = 0; v < g.n(); ++v) out.push_back({v});
    std::vector<int> cur;
    std::vector<char> used(g.n(), 0);
    std::function<void()> extend = [&]() {
        if (cur.size() >= 2 && cur.front() < cur.back()) out.push_back(cur);
        int v = cur.back();
        for (int w : g.adjacency()[v]) {
            if (used[w]) continue;
            used[w] = 1;
            cur.push_back(w);
            extend();
            cur.pop_back();
            used[w] = 0;
        }
    };
    for (int s = 0; s < g.n(); ++s) {
        cur = {s};
        std::fill(used.begin(), used.end(), 0);
        used[s] = 1;
        extend();
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<PathCollection> find_cover(const GeneralGraph& g, int guard_n, bool compatible) {
    if (g.n() > guard_n) {
        throw GuardError("cover search guard exceeded: n = " + std::to_string(g.n()));
    }
    auto paths = all_paths(g);
    struct Info {
        std::vector<int> edges;
        int u, v;  // end vertices (equal for trivial paths)
    };
    std::vector<Info> info;
    for (const auto& p : paths) {
        Info in;
        std::string why;
        resolve_path(g, p, in.edges, why);
        in.u = p.front();
        in.v = p.back();
        info.push_back(std::move(in));
    }
    std::vector<int> edge_need(g.m(), 2);
    std::vector<int> end_need(g.n(), 2);
    std::vector<std::vector<int>> used_end_edges(g.n());
    std::vector<int> chosen;

    auto fits = [&](size_t i) {
        const Info& in = info[i];
        if (in.edges.empty()) {
            if (compatible) return false;
            return end_need[in.u] == 2;
        }
        if (end_need[in.u] < 1 || end_need[in.v] < 1) return false;
        if (in.u == in.v && end_need[in.u] < 2) return false;
        for (int e : in.edges) {
            if (edge_need[e] == 0) return false;
        }
        if (compatible) {
            for (int used : used_end_edges[in.u]) {
                if (used == in.edges.front()) return false;
            }
            for (int used : used_end_edges[in.v]) {
                if (used == in.edges.back()) return false;
            }
        }
        return true;
    };
    auto apply = [&](size_t i, int delta) {
        const Info& in = info[i];
        if (in.edges.empty()) {
            end_need[in.u] -= 2 * delta;
            return;
        }
        for (int e : in.edges) edge_need[e] -= delta;
        end_need[in.u] -= delta;
        end_need[in.v] -= delta;
        if (compatible) {
            if (delta > 0) {
                used_end_edges[in.u].push_back(in.edges.front());
                used_end_edges[in.v].push_back(in.edges.back());
            } else {
                used_end_edges[in.u].pop_back();
                used_end_edges[in.v].pop_back();
            }
        }
    };

    std::vector<std::vector<size_t>> by_edge(g.m());
    for (size_t i = 0; i < paths.size(); ++i) {
        for (int e : info[i].edges) by_edge[e].push_back(i);
    }

    // Each edge lies in exactly two chosen paths (possibly the same one
    // twice), so both are committed together, ordered within the pair.
    std::function<bool()> rec = [&]() -> bool {
        int target = -1;
        for (int e = 0; e < g.m(); ++e) {
            if (edge_need[e] > 0) { target = e; break; }
        }
        if (target < 0) {
            for (int x = 0; x < g.n(); ++x) {
                if (end_need[x] == 0) continue;
                if (compatible || end_need[x] != 2) return false;
                chosen.push_back(x);  // trivial path index == vertex id
                end_need[x] = 0;
            }
            return true;
        }
        const auto& candidates = by_edge[target];
        if (edge_need[target] == 1) {
            for (size_t i : candidates) {
                if (!fits(i)) continue;
                chosen.push_back(static_cast<int>(i));
                apply(i, 1);
                if (rec()) return true;
                apply(i, -1);
                chosen.pop_back();
            }
            return false;
        }
        for (size_t a = 0; a < candidates.size(); ++a) {
            size_t i = candidates[a];
            if (!fits(i)) continue;
            chosen.push_back(static_cast<int>(i));
            apply(i, 1);
            for (size_t b = a; b < candidates.size(); ++b) {
                size_t j = candidates[b];
                if (!fits(j)) continue;
                chosen.push_back(static_cast<int>(j));
                apply(j, 1);
                if (rec()) return true;
                apply(j, -1);
                chosen.pop_back();
            }
            apply(i, -1);
            chosen.pop_back();
        }
        return false;
    };
    if (!rec()) return std::nullopt;
    PathCollection out;
    for (int i : chosen) out.paths.push_back(paths[i]);
    return out;
}

}  // namespace

std::optional<PathCollection> find_cppdc(const GeneralGraph& g, int guard_n) {
    return find_cover(g, guard_n, true);
}

std::optional<PathCollection> find_ppdc(const GeneralGraph& g, int guard_n) {
    return find_cover(g, guard_n, false);
}

GeneralGraph cycle_graph(int n) {
    if (n < 3) throw ParseError("cycle needs at least 3 vertices");
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return GeneralGraph(n, std::move(edges));
}

GeneralGraph theta_graph(int len1, int len2, int len3) {
    for (int l : {len1, len2, len3}) {
        if (l < 2) throw ParseError("each branch needs length at least 2");
    }
    std::vector<std::array<int, 2>> edges;
    int next = 2;
    for (int l : {len1, len2, len3}) {
        int prev = 0;
        for (int i = 0; i < l - 1; ++i) {
            edges.push_back({prev, next});
            prev = next++;
        }
        edges.push_back({prev, 1});
    }
    return GeneralGraph(next, std::move(edges));
}

GeneralGraph shared_vertex_cycles(int len1, int len2) {
    if (len1 < 3 || len2 < 3) throw ParseError("cycles need at least 3 vertices");
    std::vector<std::array<int, 2>> edges;
    int next = 1;
    for (int l : {len1, len2}) {
        int prev = 0;
        for (int i = 0; i < l - 1; ++i) {
            edges.push_back({prev, next});
            prev = next++;
        }
        edges.push_back({prev, 0});
    }
    return GeneralGraph(next, std::move(edges));
}

GeneralGraph as_general(const CubicMultigraph& g) {
    std::vector<std::array<int, 2>> edges;
    for (int e = 0; e < g.m(); ++e) {
        if (g.is_loop(e)) throw PreconditionError("graph has a loop");
        edges.push_back({g.endpoint(e, 0), g.endpoint(e, 1)});
    }
    return GeneralGraph(g.n(), std::move(edges));
}

}  // namespace trails
