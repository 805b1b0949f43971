#include "trails/partition.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace trails {

Trail::Trail(const CubicMultigraph& g, std::vector<Dart> darts) : darts_(std::move(darts)) {
    if (darts_.empty()) throw PreconditionError("a trail has at least one edge");
    std::vector<char> used(g.m(), 0);
    for (size_t i = 0; i < darts_.size(); ++i) {
        int e = dart_edge(darts_[i]);
        if (e < 0 || e >= g.m()) throw PreconditionError("trail dart out of range");
        if (used[e]) throw PreconditionError("trail repeats edge " + std::to_string(e));
        used[e] = 1;
        if (i > 0 && g.dart_vertex(darts_[i]) != g.dart_target(darts_[i - 1])) {
            throw PreconditionError("trail darts are not consecutive at position " +
                                    std::to_string(i));
        }
    }
}

std::vector<int> Trail::vertices(const CubicMultigraph& g) const {
    std::vector<int> out;
    out.reserve(darts_.size() + 1);
    out.push_back(g.dart_vertex(darts_.front()));
    for (Dart d : darts_) out.push_back(g.dart_target(d));
    return out;
}

int Trail::end_vertex(const CubicMultigraph& g, int which) const {
    return which == 0 ? g.dart_vertex(darts_.front()) : g.dart_target(darts_.back());
}

Trail Trail::reversed() const {
    Trail t;
    t.darts_.reserve(darts_.size());
    for (auto it = darts_.rbegin(); it != darts_.rend(); ++it) {
        t.darts_.push_back(dart_opposite(*it));
    }
    return t;
}

bool Trail::is_path(const CubicMultigraph& g) const {
    auto vs = vertices(g);
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

TrailPartition::TrailPartition(const CubicMultigraph& g, std::vector<Trail> trails)
    : trails_(std::move(trails)) {
    std::vector<char> used(g.m(), 0);
    int count = 0;
    for (const Trail& t : trails_) {
        for (Dart d : t.darts()) {
            int e = dart_edge(d);
            if (used[e]) {
                throw PreconditionError("partition covers edge " + std::to_string(e) + " twice");
            }
            used[e] = 1;
            ++count;
        }
    }
    if (count != g.m()) {
        throw PreconditionError("partition covers " + std::to_string(count) + " of " +
                                std::to_string(g.m()) + " edges");
    }
}

Dart canonical_dart(const CubicMultigraph& g, Dart d) {
    if (g.is_loop(dart_edge(d))) return make_dart(dart_edge(d), 0);
    return d;
}

std::vector<VertexStatus> status(const CubicMultigraph& g, const TrailPartition& t) {
    std::vector<VertexStatus> st(g.n());
    std::vector<int> end_count(g.n(), 0);
    for (size_t i = 0; i < t.trails().size(); ++i) {
        const Trail& tr = t.trails()[i];
        int v0 = tr.end_vertex(g, 0);
        int vk = tr.end_vertex(g, 1);
        ++end_count[v0];
        ++end_count[vk];
        if (end_count[v0] == 1) st[v0].marked_dart = canonical_dart(g, tr.darts().front());
        if (end_count[vk] == 1) {
            st[vk].marked_dart = canonical_dart(g, dart_opposite(tr.darts().back()));
        }
        auto vs = tr.vertices(g);
        for (size_t p = 1; p + 1 < vs.size(); ++p) {
            st[vs[p]].internal_trail = static_cast<int>(i);
        }
    }
    for (int v = 0; v < g.n(); ++v) {
        st[v].role = (end_count[v] == 1) ? VertexRole::Normal : VertexRole::Eccentric;
        if (st[v].role == VertexRole::Eccentric) {
            st[v].marked_dart = -1;
            st[v].end_set.clear();
        } else if (st[v].internal_trail >= 0) {
            const Trail& tr = t.trails()[st[v].internal_trail];
            st[v].end_set = {tr.end_vertex(g, 0), tr.end_vertex(g, 1)};
        }
    }
    return st;
}

bool is_normal(const CubicMultigraph& g, const TrailPartition& t) {
    for (const auto& s : status(g, t)) {
        if (s.role != VertexRole::Normal) return false;
    }
    return true;
}

bool is_odd(const TrailPartition& t) {
    return std::all_of(t.trails().begin(), t.trails().end(),
                       [](const Trail& tr) { return tr.odd(); });
}

bool is_path_partition(const CubicMultigraph& g, const TrailPartition& t) {
    return std::all_of(t.trails().begin(), t.trails().end(),
                       [&](const Trail& tr) { return tr.is_path(g); });
}

int partition_length(const TrailPartition& t) {
    int l = 0;
    for (const Trail& tr : t.trails()) l = std::max(l, tr.length());
    return l;
}

NormalizeResult greedy_normalize(const CubicMultigraph& g, const TrailPartition& t) {
    std::vector<Trail> trails = t.trails();
    int steps = 0;
    for (;;) {
        // ends[v]: indices of trails ending at v, with multiplicity.
        std::vector<std::vector<int>> ends(g.n());
        for (size_t i = 0; i < trails.size(); ++i) {
            ends[trails[i].end_vertex(g, 0)].push_back(static_cast<int>(i));
            ends[trails[i].end_vertex(g, 1)].push_back(static_cast<int>(i));
        }
        int v = -1;
        for (int w = 0; w < g.n(); ++w) {
            if (ends[w].size() > 1) { v = w; break; }
        }
        if (v < 0) break;
        int i = ends[v][0];
        int j = -1;
        for (size_t k = 1; k < ends[v].size(); ++k) {
            if (ends[v][k] != i) { j = ends[v][k]; break; }
        }
        // Two distinct trails always end at an eccentric vertex: a closed
        // trail accounts for at most two of the three ends.
        if (j < 0) throw Error("internal: no concatenation partner at eccentric vertex");
        Trail a = trails[i].end_vertex(g, 1) == v ? trails[i] : trails[i].reversed();
        Trail b = trails[j].end_vertex(g, 0) == v ? trails[j] : trails[j].reversed();
        std::vector<Dart> joined = a.darts();
        joined.insert(joined.end(), b.darts().begin(), b.darts().end());
        Trail merged(g, joined);
        std::vector<Trail> next;
        for (size_t k = 0; k < trails.size(); ++k) {
            if (static_cast<int>(k) != i && static_cast<int>(k) != j) next.push_back(trails[k]);
        }
        next.push_back(merged);
        trails = std::move(next);
        ++steps;
    }
    return {TrailPartition(g, std::move(trails)), steps};
}

namespace {

template <typename Chooser>
TrailPartition grow_partition(const CubicMultigraph& g, Chooser&& choose) {
    std::vector<char> used(g.m(), 0);
    std::vector<Trail> trails;
    int remaining = g.m();
    while (remaining > 0) {
        // start dart
        std::vector<Dart> starts;
        for (int e = 0; e < g.m(); ++e) {
            if (!used[e]) starts.push_back(make_dart(e, 0));
        }
        Dart start = starts[choose(starts.size(), true)];
        used[dart_edge(start)] = 1;
        --remaining;
        std::vector<Dart> seq{start};
        for (;;) {
            int v = g.dart_target(seq.back());
            std::vector<Dart> options;
            for (Dart d : g.edge_darts_at(v)) {
                if (!used[dart_edge(d)]) options.push_back(d);
            }
            if (options.empty()) break;
            size_t pick = choose(options.size(), false);
            if (pick >= options.size()) break;  // chooser may stop early
            Dart d = options[pick];
            used[dart_edge(d)] = 1;
            --remaining;
            seq.push_back(d);
        }
        trails.emplace_back(g, std::move(seq));
    }
    return TrailPartition(g, std::move(trails));
}

}  // namespace

TrailPartition greedy_partition(const CubicMultigraph& g) {
    return grow_partition(g, [](size_t, bool) -> size_t { return 0; });
}

TrailPartition random_trail_partition(const CubicMultigraph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return grow_partition(g, [&rng](size_t count, bool starting) -> size_t {
        if (!starting && rng() % 10 < 3) return count;  // stop this trail early
        return static_cast<size_t>(rng() % count);
    });
}

TrailPartition random_normal_partition(const CubicMultigraph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        Marking f;
        f.mark.resize(g.n());
        for (int v = 0; v < g.n(); ++v) {
            auto cands = g.edge_darts_at(v);
            f.mark[v] = cands[rng() % cands.size()];
        }
        if (check_marking(g, f).valid) return from_marking(g, f);
    }
    throw Error("failed to sample a valid marking");
}

PartitionStats stats(const TrailPartition& t) {
    PartitionStats s;
    s.trail_count = t.size();
    long total = 0;
    s.odd = true;
    for (const Trail& tr : t.trails()) {
        ++s.length_counts[tr.length()];
        total += tr.length();
        s.max_length = std::max(s.max_length, tr.length());
        if (!tr.odd()) s.odd = false;
    }
    s.average = t.size() > 0 ? static_cast<double>(total) / t.size() : 0.0;
    return s;
}

Marking to_marking(const CubicMultigraph& g, const TrailPartition& t) {
    auto st = status(g, t);
    Marking f;
    f.mark.resize(g.n());
    for (int v = 0; v < g.n(); ++v) {
        if (st[v].role != VertexRole::Normal) {
            throw PreconditionError("to_marking requires a normal partition; vertex " +
                                    std::to_string(v) + " is eccentric");
        }
        f.mark[v] = st[v].marked_dart;
    }
    return f;
}

MarkingValidity check_marking(const CubicMultigraph& g, const Marking& f) {
    if (static_cast<int>(f.mark.size()) != g.n()) {
        throw PreconditionError("marking size does not match vertex count");
    }
    std::vector<int> marked(g.m(), 0);
    for (int v = 0; v < g.n(); ++v) {
        Dart d = f.mark[v];
        if (d < 0 || dart_edge(d) >= g.m() || g.dart_vertex(d) != v) {
            throw PreconditionError("marking of vertex " + std::to_string(v) +
                                    " is not an incident dart");
        }
        ++marked[dart_edge(d)];
    }
    // Union-find over unmarked edges; report the first cycle found.
    std::vector<int> parent(g.n());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<std::pair<int, int>>> forest(g.n());  // (neighbor, edge)
    for (int e = 0; e < g.m(); ++e) {
        if (marked[e] > 0) continue;
        int a = g.endpoint(e, 0), b = g.endpoint(e, 1);
        if (a == b) return {false, {e}};
        int ra = find(a), rb = find(b);
        if (ra == rb) {
            // witness: path a..b in the current forest plus e
            std::vector<int> prev_vertex(g.n(), -1), prev_edge(g.n(), -1);
            std::queue<int> q;
            q.push(a);
            prev_vertex[a] = a;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                if (x == b) break;
                for (auto [y, ey] : forest[x]) {
                    if (prev_vertex[y] == -1) {
                        prev_vertex[y] = x;
                        prev_edge[y] = ey;
                        q.push(y);
                    }
                }
            }
            std::vector<int> witness{e};
            for (int x = b; x != a; x = prev_vertex[x]) witness.push_back(prev_edge[x]);
            std::sort(witness.begin(), witness.end());
            return {false, witness};
        }
        parent[ra] = rb;
        forest[a].push_back({b, e});
        forest[b].push_back({a, e});
    }
    return {true, {}};
}

TrailPartition from_marking(const CubicMultigraph& g, const Marking& f) {
    auto validity = check_marking(g, f);
    if (!validity.valid) {
        std::ostringstream msg;
        msg << "marking is not a transversal of the cycles; unmarked cycle:";
        for (int e : validity.cycle_witness) msg << ' ' << e;
        throw PreconditionError(msg.str());
    }
    std::vector<int> marked(g.m(), 0);
    for (int v = 0; v < g.n(); ++v) ++marked[dart_edge(f.mark[v])];

    // Unmarked darts per vertex.
    std::vector<std::vector<Dart>> unmarked(g.n());
    for (int e = 0; e < g.m(); ++e) {
        if (marked[e] > 0) continue;
        unmarked[g.endpoint(e, 0)].push_back(make_dart(e, 0));
        unmarked[g.endpoint(e, 1)].push_back(make_dart(e, 1));
    }
    std::vector<Trail> trails;
    std::vector<char> edge_done(g.m(), 0);
    std::vector<char> vertex_done(g.n(), 0);

    // Extension items at a trail end u: the marked loop when u marks its
    // loop, plus marked non-loop edges incident to u other than u's mark.
    auto extensions_at = [&](int u) {
        std::vector<Dart> items;  // darts at u; a loop item is its side-0 dart
        int me = dart_edge(f.mark[u]);
        for (Dart d : g.edge_darts_at(u)) {
            int e = dart_edge(d);
            if (marked[e] == 0) continue;
            if (e == me) {
                if (g.is_loop(e)) items.push_back(make_dart(e, 0));
                continue;
            }
            items.push_back(d);
        }
        std::sort(items.begin(), items.end());
        return items;
    };
    // Traversal darts: appended at the back directly; at the front an item
    // dart at u becomes the dart entering u (loops stay as-is).
    auto front_dart = [&](Dart item) {
        return g.is_loop(dart_edge(item)) ? item : dart_opposite(item);
    };

    for (int s = 0; s < g.n(); ++s) {
        if (vertex_done[s] || unmarked[s].size() > 1) continue;
        // Walk the path component starting at end (or isolated) vertex s.
        std::vector<Dart> seq;
        int cur = s;
        vertex_done[cur] = 1;
        for (;;) {
            Dart next = -1;
            for (Dart d : unmarked[cur]) {
                if (!edge_done[dart_edge(d)]) { next = d; break; }
            }
            if (next < 0) break;
            edge_done[dart_edge(next)] = 1;
            seq.push_back(next);
            cur = g.dart_target(next);
            vertex_done[cur] = 1;
        }
        int u = s, w = cur;
        if (seq.empty()) {
            auto items = extensions_at(u);
            if (items.size() != 2) throw Error("internal: isolated vertex extension count");
            seq = {front_dart(items[0]), items[1]};
        } else {
            auto fu = extensions_at(u);
            auto fw = extensions_at(w);
            if (fu.size() != 1 || fw.size() != 1) {
                throw Error("internal: path end extension count");
            }
            seq.insert(seq.begin(), front_dart(fu[0]));
            seq.push_back(fw[0]);
        }
        trails.emplace_back(g, std::move(seq));
    }
    // Doubly-marked non-loop edges become trails of length 1.
    for (int e = 0; e < g.m(); ++e) {
        if (marked[e] == 2) trails.emplace_back(g, std::vector<Dart>{make_dart(e, 0)});
    }
    return TrailPartition(g, std::move(trails));
}

namespace {

// Union-find with rollback for incremental acyclicity pruning.
class RollbackDsu {
public:
    explicit RollbackDsu(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
        return true;
    }
    size_t mark() const { return history_.size(); }
    void rollback(size_t to) {
        while (history_.size() > to) {
            int b = history_.back();
            history_.pop_back();
            size_[find(b)] -= size_[b];
            parent_[b] = b;
        }
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> history_;
};

}  // namespace

void enumerate_normal_partitions(
    const CubicMultigraph& g, const EnumerateOptions& opts,
    const std::function<bool(const Marking&, const TrailPartition&)>& visit) {
    if (g.n() > opts.guard_n) {
        throw GuardError("enumeration guard exceeded: n = " + std::to_string(g.n()) +
                         " > " + std::to_string(opts.guard_n));
    }
    // Edges become known-unmarked once both endpoint marks are assigned.
    std::vector<std::vector<int>> finalized_at(g.n());
    for (int e = 0; e < g.m(); ++e) {
        finalized_at[std::max(g.endpoint(e, 0), g.endpoint(e, 1))].push_back(e);
    }
    Marking f;
    f.mark.resize(g.n());
    RollbackDsu dsu(g.n());
    bool stop = false;

    std::function<void(int)> rec = [&](int v) {
        if (stop) return;
        if (v == g.n()) {
            TrailPartition p = from_marking(g, f);
            if (opts.filter == PartitionFilter::Odd && !is_odd(p)) return;
            if (opts.filter == PartitionFilter::MaxLength &&
                partition_length(p) > opts.max_length) {
                return;
            }
            if (!visit(f, p)) stop = true;
            return;
        }
        for (Dart d : g.edge_darts_at(v)) {
            f.mark[v] = d;
            size_t snapshot = dsu.mark();
            bool ok = true;
            for (int e : finalized_at[v]) {
                int a = g.endpoint(e, 0), b = g.endpoint(e, 1);
                if (dart_edge(f.mark[a]) == e || dart_edge(f.mark[b]) == e) continue;
                if (a == b || !dsu.unite(a, b)) { ok = false; break; }
            }
            if (ok) rec(v + 1);
            dsu.rollback(snapshot);
            if (stop) return;
        }
    };
    rec(0);
}

std::vector<Marking> enumerate_markings(const CubicMultigraph& g, const EnumerateOptions& opts) {
    std::vector<Marking> out;
    enumerate_normal_partitions(g, opts, [&](const Marking& f, const TrailPartition&) {
        out.push_back(f);
        return true;
    });
    return out;
}

CompatibilityResult markings_compatible(const CubicMultigraph& g, const Marking& a,
                                        const Marking& b) {
    for (int v = 0; v < g.n(); ++v) {
        if (dart_edge(a.mark[v]) == dart_edge(b.mark[v])) return {false, v};
    }
    return {true, -1};
}

CompatibilityResult are_compatible(const CubicMultigraph& g, const TrailPartition& a,
                                   const TrailPartition& b) {
    return markings_compatible(g, to_marking(g, a), to_marking(g, b));
}

}  // namespace trails
