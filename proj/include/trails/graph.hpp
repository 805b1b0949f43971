#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trails/errors.hpp"

namespace trails {

// A dart is one of the two ends of an edge, encoded as 2*edge + side.
// Loops have two darts at the same vertex; parallel edges have darts on
// distinct edges.  All trail and marking code works at the dart level.
using Dart = int;

inline int dart_edge(Dart d) { return d >> 1; }
inline int dart_side(Dart d) { return d & 1; }
inline Dart make_dart(int edge, int side) { return 2 * edge + side; }
inline Dart dart_opposite(Dart d) { return d ^ 1; }

// Cubic multigraph with stable edge ids.  Loops (u == v) and parallel
// edges are allowed; every vertex has degree exactly 3, a loop
// contributing 2 to its vertex.
class CubicMultigraph {
public:
    CubicMultigraph() = default;
    CubicMultigraph(int n, std::vector<std::array<int, 2>> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }

    int endpoint(int edge, int side) const { return edges_[edge][side]; }
    bool is_loop(int edge) const { return edges_[edge][0] == edges_[edge][1]; }
    int dart_vertex(Dart d) const { return edges_[dart_edge(d)][dart_side(d)]; }
    int dart_target(Dart d) const { return dart_vertex(dart_opposite(d)); }

    // The three darts incident to v, in edge-id order.  A loop at v
    // contributes both of its darts.
    const std::array<Dart, 3>& darts_at(int v) const { return darts_at_[v]; }

    // Incident darts deduplicated by edge (a loop contributes its side-0
    // dart once).  Size 3, or 2 for a loop vertex.
    std::vector<Dart> edge_darts_at(int v) const;

    // The dart of `edge` whose vertex is v; side 0 for loops.
    Dart dart_at(int v, int edge) const;

private:
    int n_ = 0;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::array<Dart, 3>> darts_at_;
};

struct StructureReport {
    bool has_loop = false;
    bool has_parallel = false;
    bool is_connected = false;
    bool is_bipartite = false;
    bool is_2_edge_connected = false;
    std::vector<int> bridges;                  // edge ids, increasing
    std::vector<int> bipartition;              // per vertex: 0 (W) / 1 (B); empty if not bipartite
};

// Parses the multigraph edge-list format: first non-comment line "n m",
// then m lines "u v"; '#' starts a comment.  Throws ParseError on
// malformed input or degree violations.
CubicMultigraph parse_edge_list(const std::string& text);

// graph6 import, accepted for simple graphs only.
CubicMultigraph parse_graph6(const std::string& line);

std::string emit_edge_list(const CubicMultigraph& g);

struct RandomGraphOptions {
    bool allow_loops = true;
    bool allow_parallel = true;
};

// Named and random generators.  Recognized names: theta, dumbbell, k4,
// k33, cube, petersen, prism(k), flower_snark(k odd >= 3), bridged6,
// looped4, random(n), random_bipartite(n), random_colorable(n).
CubicMultigraph generate(const std::string& name, const std::vector<int>& params,
                         std::uint64_t seed = 0,
                         const RandomGraphOptions& opts = {});

// Configuration/pairing model with rejection sampling.
CubicMultigraph random_cubic(int n, std::uint64_t seed, const RandomGraphOptions& opts = {});
// Union of three random perfect matchings between the two classes.
CubicMultigraph random_bipartite_cubic(int n, std::uint64_t seed);
// Hamiltonian cycle plus a random chord matching; 3-edge-colorable by
// construction (the cycle is even).
CubicMultigraph random_colorable_cubic(int n, std::uint64_t seed);

StructureReport structure_report(const CubicMultigraph& g);

// Shortest cycle length (loops count 1, parallel pairs 2); nullopt for forests.
std::optional<int> girth(const CubicMultigraph& g);

// Simple graph used only by the ppdc module.
class GeneralGraph {
public:
    GeneralGraph() = default;
    GeneralGraph(int n, std::vector<std::array<int, 2>> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }
    bool has_edge(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

private:
    int n_ = 0;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace trails
