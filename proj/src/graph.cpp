#include "trails/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace trails {

CubicMultigraph::CubicMultigraph(int n, std::vector<std::array<int, 2>> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 2 || n_ % 2 != 0) {
        throw ParseError("vertex count must be even and at least 2, got " + std::to_string(n_));
    }
    if (static_cast<int>(edges_.size()) != 3 * n_ / 2) {
        throw ParseError("expected " + std::to_string(3 * n_ / 2) + " edges, got " +
                         std::to_string(edges_.size()));
    }
    std::vector<int> degree(n_, 0);
    for (const auto& e : edges_) {
        for (int side = 0; side < 2; ++side) {
            if (e[side] < 0 || e[side] >= n_) {
                throw ParseError("vertex id " + std::to_string(e[side]) + " out of range");
            }
            ++degree[e[side]];
        }
    }
    for (int v = 0; v < n_; ++v) {
        if (degree[v] != 3) {
            throw ParseError("vertex " + std::to_string(v) + " has degree " +
                             std::to_string(degree[v]) + ", expected 3");
        }
    }
    darts_at_.assign(n_, {-1, -1, -1});
    std::vector<int> fill(n_, 0);
    for (int e = 0; e < m(); ++e) {
        for (int side = 0; side < 2; ++side) {
            int v = edges_[e][side];
            darts_at_[v][fill[v]++] = make_dart(e, side);
        }
    }
}

std::vector<Dart> CubicMultigraph::edge_darts_at(int v) const {
    std::vector<Dart> out;
    for (Dart d : darts_at_[v]) {
        if (dart_side(d) == 1 && is_loop(dart_edge(d))) continue;
        out.push_back(d);
    }
    return out;
}

Dart CubicMultigraph::dart_at(int v, int edge) const {
    if (edges_[edge][0] == v) return make_dart(edge, 0);
    if (edges_[edge][1] == v) return make_dart(edge, 1);
    throw PreconditionError("edge " + std::to_string(edge) + " not incident to vertex " +
                            std::to_string(v));
}

CubicMultigraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1, m = -1;
    std::vector<std::array<int, 2>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b;
        if (!(ls >> a)) continue;  // blank / comment-only line
        if (!(ls >> b)) {
            throw ParseError("line " + std::to_string(lineno) + ": expected two integers");
        }
        std::string rest;
        if (ls >> rest) {
            throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + rest + "'");
        }
        if (n < 0) {
            n = a;
            m = b;
        } else {
            edges.push_back({a, b});
        }
    }
    if (n < 0) throw ParseError("empty graph document");
    if (static_cast<int>(edges.size()) != m) {
        throw ParseError("header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    }
    return CubicMultigraph(n, std::move(edges));
}

CubicMultigraph parse_graph6(const std::string& line) {
    std::string s = line;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
    if (s.empty()) throw ParseError("empty graph6 line");
    size_t pos = 0;
    auto byte = [&](size_t i) -> int {
        int c = static_cast<unsigned char>(s[i]) - 63;
        if (c < 0 || c > 63) throw ParseError("invalid graph6 character");
        return c;
    };
    long n;
    if (s[0] != '~') {
        n = byte(0);
        pos = 1;
    } else if (s.size() >= 4 && s[1] != '~') {
        n = (static_cast<long>(byte(1)) << 12) | (byte(2) << 6) | byte(3);
        pos = 4;
    } else {
        throw ParseError("graph6 vertex count too large");
    }
    std::vector<std::array<int, 2>> edges;
    long bit = 0;
    long nbits = n * (n - 1) / 2;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            size_t idx = pos + bit / 6;
            if (idx >= s.size()) throw ParseError("graph6 line truncated");
            if ((byte(idx) >> (5 - bit % 6)) & 1) edges.push_back({u, v});
            ++bit;
        }
    }
    (void)nbits;
    return CubicMultigraph(static_cast<int>(n), std::move(edges));
}

std::string emit_edge_list(const CubicMultigraph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.m() << '\n';
    for (const auto& e : g.edges()) out << e[0] << ' ' << e[1] << '\n';
    return out.str();
}

namespace {

CubicMultigraph from_pairs(int n, std::initializer_list<std::array<int, 2>> edges) {
    return CubicMultigraph(n, std::vector<std::array<int, 2>>(edges));
}

CubicMultigraph make_prism(int k) {
    if (k < 3) throw ParseError("prism needs k >= 3");
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
    for (int i = 0; i < k; ++i) edges.push_back({k + i, k + (i + 1) % k});
    for (int i = 0; i < k; ++i) edges.push_back({i, k + i});
    return CubicMultigraph(2 * k, std::move(edges));
}

CubicMultigraph make_flower_snark(int k) {
    if (k < 3 || k % 2 == 0) throw ParseError("flower_snark needs odd k >= 3");
    // Vertices per gadget i: hub h=4i, tips a=4i+1, b=4i+2, c=4i+3.
    std::vector<std::array<int, 2>> edges;
    auto h = [](int i) { return 4 * i; };
    auto a = [](int i) { return 4 * i + 1; };
    auto b = [](int i) { return 4 * i + 2; };
    auto c = [](int i) { return 4 * i + 3; };
    for (int i = 0; i < k; ++i) {
        edges.push_back({h(i), a(i)});
        edges.push_back({h(i), b(i)});
        edges.push_back({h(i), c(i)});
    }
    for (int i = 0; i < k; ++i) edges.push_back({a(i), a((i + 1) % k)});
    for (int i = 0; i < k - 1; ++i) edges.push_back({b(i), b(i + 1)});
    for (int i = 0; i < k - 1; ++i) edges.push_back({c(i), c(i + 1)});
    edges.push_back({b(k - 1), c(0)});
    edges.push_back({c(k - 1), b(0)});
    return CubicMultigraph(4 * k, std::move(edges));
}

}  // namespace

CubicMultigraph random_cubic(int n, std::uint64_t seed, const RandomGraphOptions& opts) {
    if (n < 2 || n % 2 != 0) throw ParseError("random cubic graph needs even n >= 2");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<int> points(3 * n);
        for (int i = 0; i < 3 * n; ++i) points[i] = i / 3;
        std::shuffle(points.begin(), points.end(), rng);
        std::vector<std::array<int, 2>> edges;
        bool ok = true;
        std::vector<std::vector<int>> mult(n);
        for (size_t i = 0; i + 1 < points.size(); i += 2) {
            int u = points[i], v = points[i + 1];
            if (u == v && !opts.allow_loops) { ok = false; break; }
            if (u != v && !opts.allow_parallel) {
                int lo = std::min(u, v), hi = std::max(u, v);
                if (std::find(mult[lo].begin(), mult[lo].end(), hi) != mult[lo].end()) {
                    ok = false;
                    break;
                }
                mult[lo].push_back(hi);
            }
            edges.push_back({std::min(u, v), std::max(u, v)});
        }
        if (ok) return CubicMultigraph(n, std::move(edges));
    }
    throw Error("rejection sampling failed to produce a cubic graph");
}

CubicMultigraph random_bipartite_cubic(int n, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw ParseError("random bipartite cubic graph needs even n >= 2");
    int h = n / 2;  // classes {0..h-1} and {h..n-1}
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<std::array<int, 2>> edges;
        std::vector<std::vector<int>> seen(h);
        bool ok = true;
        for (int round = 0; round < 3 && ok; ++round) {
            std::vector<int> perm(h);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (int i = 0; i < h; ++i) {
                if (std::find(seen[i].begin(), seen[i].end(), perm[i]) != seen[i].end()) {
                    ok = false;
                    break;
                }
                seen[i].push_back(perm[i]);
                edges.push_back({i, h + perm[i]});
            }
        }
        if (ok) return CubicMultigraph(n, std::move(edges));
    }
    throw Error("rejection sampling failed to produce a bipartite cubic graph");
}

CubicMultigraph random_colorable_cubic(int n, std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) throw ParseError("random colorable cubic graph needs even n >= 4");
    std::mt19937_64 rng(seed);
    std::vector<int> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 0);
    std::shuffle(cycle.begin(), cycle.end(), rng);
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({cycle[i], cycle[(i + 1) % n]});
    // Chord matching: pair even cycle positions with odd ones so that the
    // cycle's alternating 2-coloring extends to a proper 3-edge-coloring.
    std::vector<int> evens, odds;
    for (int i = 0; i < n; i += 2) evens.push_back(i);
    for (int i = 1; i < n; i += 2) odds.push_back(i);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::shuffle(odds.begin(), odds.end(), rng);
        bool ok = true;
        for (int i = 0; i < n / 2; ++i) {
            int dist = std::abs(evens[i] - odds[i]);
            if (dist == 1 || dist == n - 1) { ok = false; break; }  // avoid parallel to cycle edge
        }
        if (!ok) continue;
        auto out = edges;
        for (int i = 0; i < n / 2; ++i) out.push_back({cycle[evens[i]], cycle[odds[i]]});
        return CubicMultigraph(n, std::move(out));
    }
    throw Error("rejection sampling failed to produce a colorable cubic graph");
}

CubicMultigraph generate(const std::string& name, const std::vector<int>& params,
                         std::uint64_t seed, const RandomGraphOptions& opts) {
    auto need = [&](size_t k) {
        if (params.size() != k) {
            throw ParseError("generator '" + name + "' expects " + std::to_string(k) +
                             " parameter(s)");
        }
    };
    if (name == "theta") {
        need(0);
        return from_pairs(2, {{0, 1}, {0, 1}, {0, 1}});
    }
    if (name == "dumbbell") {
        need(0);
        return from_pairs(2, {{0, 0}, {0, 1}, {1, 1}});
    }
    if (name == "k4") {
        need(0);
        return from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    }
    if (name == "k33") {
        need(0);
        return from_pairs(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    }
    if (name == "cube") {
        need(0);
        return from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                              {4, 5}, {5, 6}, {6, 7}, {7, 4},
                              {0, 4}, {1, 5}, {2, 6}, {3, 7}});
    }
    if (name == "petersen") {
        need(0);
        return from_pairs(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                               {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
                               {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
    }
    if (name == "bridged6") {
        need(0);
        // Two triangles with one doubled edge each, joined by a bridge.
        return from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {1, 2},
                              {3, 4}, {3, 5}, {4, 5}, {4, 5},
                              {0, 3}});
    }
    if (name == "looped4") {
        need(0);
        // Loopy 4-vertex multigraph: loop at 0, rest loopless.
        return from_pairs(4, {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 3}});
    }
    if (name == "prism") {
        need(1);
        return make_prism(params[0]);
    }
    if (name == "flower_snark") {
        need(1);
        return make_flower_snark(params[0]);
    }
    if (name == "random") {
        need(1);
        return random_cubic(params[0], seed, opts);
    }
    if (name == "random_bipartite") {
        need(1);
        return random_bipartite_cubic(params[0], seed);
    }
    if (name == "random_colorable") {
        need(1);
        return random_colorable_cubic(params[0], seed);
    }
    throw ParseError("unknown graph name '" + name + "'");
}

StructureReport structure_report(const CubicMultigraph& g) {
    StructureReport r;
    int n = g.n();
    for (int e = 0; e < g.m(); ++e) {
        if (g.is_loop(e)) r.has_loop = true;
    }
    {
        std::vector<std::array<int, 2>> sorted;
        for (const auto& e : g.edges()) {
            sorted.push_back({std::min(e[0], e[1]), std::max(e[0], e[1])});
        }
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i + 1 < sorted.size(); ++i) {
            if (sorted[i] == sorted[i + 1] && sorted[i][0] != sorted[i][1]) r.has_parallel = true;
        }
    }
    // Connectivity and bipartition by BFS.
    std::vector<int> color(n, -1);
    color[0] = 0;
    std::queue<int> q;
    q.push(0);
    int reached = 1;
    bool bip = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (Dart d : g.darts_at(v)) {
            int w = g.dart_target(d);
            if (w == v) {  // loop
                if (g.is_loop(dart_edge(d))) bip = false;
                continue;
            }
            if (color[w] == -1) {
                color[w] = color[v] ^ 1;
                q.push(w);
                ++reached;
            } else if (color[w] == color[v]) {
                bip = false;
            }
        }
    }
    r.is_connected = (reached == n);
    r.is_bipartite = bip && r.is_connected && !r.has_loop;
    if (!r.is_connected) {
        // finish the coloring on remaining components for the bipartite flag
        for (int s = 0; s < n; ++s) {
            if (color[s] != -1) continue;
            color[s] = 0;
            std::queue<int> q2;
            q2.push(s);
            while (!q2.empty()) {
                int v = q2.front();
                q2.pop();
                for (Dart d : g.darts_at(v)) {
                    int w = g.dart_target(d);
                    if (w == v) {
                        if (g.is_loop(dart_edge(d))) bip = false;
                        continue;
                    }
                    if (color[w] == -1) {
                        color[w] = color[v] ^ 1;
                        q2.push(w);
                    } else if (color[w] == color[v]) {
                        bip = false;
                    }
                }
            }
        }
        r.is_bipartite = bip && !r.has_loop;
    }
    if (r.is_bipartite) r.bipartition = color;

    // Bridges by a low-link pass over darts; a parallel pair is never a
    // bridge because only the entering edge instance is skipped.
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[v] = low[v] = timer++;
        for (Dart d : g.darts_at(v)) {
            int e = dart_edge(d);
            if (e == parent_edge || g.is_loop(e)) continue;
            int w = g.dart_target(d);
            if (disc[w] == -1) {
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) r.bridges.push_back(e);
            } else {
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (int v = 0; v < n; ++v) {
        if (disc[v] == -1) dfs(v, -1);
    }
    std::sort(r.bridges.begin(), r.bridges.end());
    r.is_2_edge_connected = r.is_connected && r.bridges.empty();
    return r;
}

std::optional<int> girth(const CubicMultigraph& g) {
    int best = -1;
    for (int e = 0; e < g.m(); ++e) {
        if (g.is_loop(e)) return 1;
    }
    // Parallel pair => girth 2.
    {
        std::vector<std::array<int, 2>> sorted;
        for (const auto& e : g.edges()) {
            sorted.push_back({std::min(e[0], e[1]), std::max(e[0], e[1])});
        }
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i + 1 < sorted.size(); ++i) {
            if (sorted[i] == sorted[i + 1]) return 2;
        }
    }
    // Simple graph: BFS from every vertex.
    for (int s = 0; s < g.n(); ++s) {
        std::vector<int> dist(g.n(), -1), parent(g.n(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (Dart d : g.darts_at(v)) {
                int w = g.dart_target(d);
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push(w);
                } else if (w != parent[v]) {
                    int len = dist[v] + dist[w] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    if (best == -1) return std::nullopt;
    return best;
}

GeneralGraph::GeneralGraph(int n, std::vector<std::array<int, 2>> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
    for (const auto& e : edges_) {
        if (e[0] < 0 || e[0] >= n_ || e[1] < 0 || e[1] >= n_) {
            throw ParseError("general graph vertex id out of range");
        }
        if (e[0] == e[1]) throw ParseError("general graph must be loopless");
        if (has_edge(e[0], e[1])) throw ParseError("general graph must be simple");
        adj_[e[0]].push_back(e[1]);
        adj_[e[1]].push_back(e[0]);
    }
}

bool GeneralGraph::has_edge(int u, int v) const {
    const auto& a = adj_[u];
    return std::find(a.begin(), a.end(), v) != a.end();
}

}  // namespace trails
