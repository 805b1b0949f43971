#pragma once

#include <optional>
#include <vector>

#include "trails/graph.hpp"

namespace trails {

// Proper 3-edge-coloring with colors 0 (alpha), 1 (beta), 2 (gamma).
struct EdgeColoring {
    std::vector<int> color;  // indexed by edge id

    bool operator==(const EdgeColoring&) const = default;
};

bool is_proper_coloring(const CubicMultigraph& g, const EdgeColoring& c);

// All perfect matchings as sorted edge-id sets, found by backtracking on
// the lowest uncovered vertex.  Loops never belong to a matching.  When
// limit is set, at most that many are returned.
std::vector<std::vector<int>> perfect_matchings(const CubicMultigraph& g,
                                                std::optional<int> limit = std::nullopt);

// Exhaustive backtracking; nullopt certifies absence.
std::optional<EdgeColoring> proper_3_edge_coloring(const CubicMultigraph& g);

// Vertex sequence plus the explicit edge id used at each step, so
// parallel edges are unambiguous.  A cycle closes back to vertices[0]
// with edges.back().
struct VertexWalk {
    std::vector<int> vertices;
    std::vector<int> edges;
};

std::optional<VertexWalk> hamiltonian_path(const CubicMultigraph& g);
std::optional<VertexWalk> hamiltonian_cycle(const CubicMultigraph& g);

// Spanning 2-regular subgraph as dart cycles; the dart at position i is
// traversed from its own vertex.  A loop forms a 1-cycle, a parallel
// pair a 2-cycle.  Cycles start at their lowest vertex and follow the
// lowest available dart, so the decomposition is deterministic.
struct TwoFactor {
    std::vector<std::vector<Dart>> cycles;
};

// The 2-factor left by removing a perfect matching.
TwoFactor complement_two_factor(const CubicMultigraph& g, const std::vector<int>& matching);
// The 2-factor induced by two color classes of a proper coloring.
TwoFactor colored_two_factor(const CubicMultigraph& g, const EdgeColoring& c, int c1, int c2);

// Per-vertex outgoing dart along the cycles of a 2-factor.
struct Orientation {
    std::vector<Dart> out;  // indexed by vertex; -1 off the 2-factor

    Dart out_dart(int v) const { return out[v]; }
};

Orientation orient(const CubicMultigraph& g, const TwoFactor& f);
Orientation reversed(const CubicMultigraph& g, const TwoFactor& f, const Orientation& o);

// An induced matching inside the given 2-factor meeting every cycle
// exactly once (hence inclusion-minimal among such).  Found by
// backtracking over one edge per cycle; nullopt when the search
// exhausts, which certifies absence.
std::optional<std::vector<int>> strong_matching_meeting_2factor(const CubicMultigraph& g,
                                                                const TwoFactor& f);

}  // namespace trails
