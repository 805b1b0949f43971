#pragma once

#include <vector>

#include "trails/partition.hpp"

namespace trails {

// A single switch, identified by the vertex and the resulting marked
// dart there.  By the marking bijection this pins down the result: a
// switch at v is exactly a change of mark at v that keeps the marking
// valid, all other marks unchanged.  `side` selects which of the two
// evolving partitions an equivalence trace applies the move to.
struct SwitchMove {
    int side = 0;  // 0 = first partition, 1 = second
    int vertex = -1;
    Dart new_mark = -1;

    bool operator==(const SwitchMove&) const = default;
};

// All switches available at v: at most two (the other two edges at v),
// exactly one when v is an end of its own internal trail, none at a
// loop vertex (the loop is always the marked edge there).
std::vector<SwitchMove> feasible_switches(const CubicMultigraph& g, const TrailPartition& t,
                                          int v);
// As above, keeping only moves whose result is an odd partition.
std::vector<SwitchMove> feasible_odd_switches(const CubicMultigraph& g, const TrailPartition& t,
                                              int v);

// Applies the move; throws PreconditionError when it is not feasible.
TrailPartition apply_switch(const CubicMultigraph& g, const TrailPartition& t,
                            const SwitchMove& move);

// First feasible oddness-preserving switch at v.  Throws
// FalsificationError when none exists: the switching-equivalence
// argument asserts this can never happen for odd partitions.
TrailPartition odd_switch(const CubicMultigraph& g, const TrailPartition& t, int v);

// A two-sided trace of at most 2n moves transforming (from, to) into a
// common partition: per disagreeing vertex, move `from` toward `to`'s
// mark, else `to` toward `from`'s, else both toward the third edge.
// With odd_only, only oddness-preserving moves are used; infeasibility
// raises FalsificationError.
std::vector<SwitchMove> switching_sequence(const CubicMultigraph& g, const TrailPartition& from,
                                           const TrailPartition& to, bool odd_only = false);

// Replays a trace; returns the two final partitions (equal markings on
// a trace produced by switching_sequence).
std::pair<TrailPartition, TrailPartition> replay_trace(const CubicMultigraph& g,
                                                       const TrailPartition& from,
                                                       const TrailPartition& to,
                                                       const std::vector<SwitchMove>& trace);

}  // namespace trails
