#include "trails/switching.hpp"

#include <string>

namespace trails {

namespace {

std::vector<SwitchMove> switches_at(const CubicMultigraph& g, const Marking& f, int v,
                                    bool odd_only) {
    std::vector<SwitchMove> moves;
    int current = dart_edge(f.mark[v]);
    for (Dart d : g.edge_darts_at(v)) {
        if (dart_edge(d) == current) continue;
        Marking flipped = f;
        flipped.mark[v] = d;
        if (!check_marking(g, flipped).valid) continue;
        if (odd_only && !is_odd(from_marking(g, flipped))) continue;
        moves.push_back({0, v, d});
    }
    return moves;
}

}  // namespace

std::vector<SwitchMove> feasible_switches(const CubicMultigraph& g, const TrailPartition& t,
                                          int v) {
    return switches_at(g, to_marking(g, t), v, false);
}

std::vector<SwitchMove> feasible_odd_switches(const CubicMultigraph& g, const TrailPartition& t,
                                              int v) {
    return switches_at(g, to_marking(g, t), v, true);
}

TrailPartition apply_switch(const CubicMultigraph& g, const TrailPartition& t,
                            const SwitchMove& move) {
    Marking f = to_marking(g, t);
    if (move.vertex < 0 || move.vertex >= g.n() || g.dart_vertex(move.new_mark) != move.vertex) {
        throw PreconditionError("switch move does not name a dart at its vertex");
    }
    if (dart_edge(move.new_mark) == dart_edge(f.mark[move.vertex])) {
        throw PreconditionError("switch must change the marked edge at vertex " +
                                std::to_string(move.vertex));
    }
    f.mark[move.vertex] = canonical_dart(g, move.new_mark);
    return from_marking(g, f);  // throws with witness when infeasible
}

TrailPartition odd_switch(const CubicMultigraph& g, const TrailPartition& t, int v) {
    if (!is_odd(t)) throw PreconditionError("odd_switch requires an odd partition");
    auto moves = switches_at(g, to_marking(g, t), v, true);
    if (moves.empty()) {
        throw FalsificationError("no oddness-preserving switch at vertex " + std::to_string(v));
    }
    return apply_switch(g, t, moves.front());
}

std::vector<SwitchMove> switching_sequence(const CubicMultigraph& g, const TrailPartition& from,
                                           const TrailPartition& to, bool odd_only) {
    Marking fa = to_marking(g, from);
    Marking fb = to_marking(g, to);
    if (odd_only && (!is_odd(from) || !is_odd(to))) {
        throw PreconditionError("odd_only requires odd partitions");
    }
    std::vector<SwitchMove> trace;
    auto try_flip = [&](Marking& f, int side, int v, Dart target) {
        Marking flipped = f;
        flipped.mark[v] = canonical_dart(g, target);
        if (!check_marking(g, flipped).valid) return false;
        if (odd_only && !is_odd(from_marking(g, flipped))) return false;
        f = flipped;
        trace.push_back({side, v, flipped.mark[v]});
        return true;
    };
    for (int v = 0; v < g.n(); ++v) {
        if (dart_edge(fa.mark[v]) == dart_edge(fb.mark[v])) continue;
        if (try_flip(fa, 0, v, fb.mark[v])) continue;
        if (try_flip(fb, 1, v, fa.mark[v])) continue;
        // Move both to the third edge at v; a loop vertex cannot
        // disagree, so a third edge exists.
        Dart third = -1;
        for (Dart d : g.edge_darts_at(v)) {
            int e = dart_edge(d);
            if (e != dart_edge(fa.mark[v]) && e != dart_edge(fb.mark[v])) third = d;
        }
        if (third < 0 || !try_flip(fa, 0, v, third) || !try_flip(fb, 1, v, third)) {
            throw FalsificationError("switching sequence stuck at vertex " + std::to_string(v));
        }
    }
    return trace;
}

std::pair<TrailPartition, TrailPartition> replay_trace(const CubicMultigraph& g,
                                                       const TrailPartition& from,
                                                       const TrailPartition& to,
                                                       const std::vector<SwitchMove>& trace) {
    TrailPartition a = from;
    TrailPartition b = to;
    for (const SwitchMove& move : trace) {
        (move.side == 0 ? a : b) = apply_switch(g, move.side == 0 ? a : b, move);
    }
    return {a, b};
}

}  // namespace trails
