#pragma once

#include <array>
#include <optional>
#include <vector>

#include "trails/partition.hpp"
#include "trails/search.hpp"

namespace trails {

struct CompatibleTriple {
    TrailPartition t1, t2, t3;

    const TrailPartition& member(int i) const { return i == 0 ? t1 : (i == 1 ? t2 : t3); }
};

// Per-edge internality across a triple: in how many members the edge is
// internal, and for doubly-internal edges which member carries it as a
// length-1 trail.  `violations` lists edges breaking the expected
// structure (count outside {1,2}, or a count-2 edge with no singleton);
// a nonempty list contradicts the theory and is treated as a
// falsification by callers.
struct EdgeInternality {
    std::vector<int> count;             // indexed by edge id, 0..3
    std::vector<int> singleton_member;  // member index for count-2 edges, else -1
    std::vector<int> violations;        // offending edge ids
    bool has_singly_internal = false;   // at least one count-1 edge exists
};

// Builds a normal partition from vertex-disjoint paths covering V(G)
// (each of length >= 1): every path is extended by one leftover edge at
// each end, chosen via a deterministic orientation of the leftover
// components; unused leftover edges become length-1 trails.
TrailPartition partition_from_perfect_path_partition(const CubicMultigraph& g,
                                                     const std::vector<VertexWalk>& paths);

// Resolves vertex sequences to explicit walks, lowest edge id per step.
std::vector<VertexWalk> paths_from_vertices(const CubicMultigraph& g,
                                            const std::vector<std::vector<int>>& paths);

// Normal partition with one trail of length n+1 (the path plus one
// distinct extension edge at each end) and (n-2)/2 length-1 trails.
TrailPartition partition_from_hamiltonian_path(const CubicMultigraph& g, const VertexWalk& p);
// Inverse: the internal vertices of the unique length-(n+1) trail.
VertexWalk extract_hamiltonian_path(const CubicMultigraph& g, const TrailPartition& t);

// Normal partition of a hamiltonian graph with prescribed trail
// lengths (each >= 1 and != 2, n/2 of them summing to 3n/2), laid out
// along the given hamiltonian cycle.
TrailPartition partition_with_lengths(const CubicMultigraph& g, const VertexWalk& cycle,
                                      std::vector<int> lengths);

// Normal odd partition of length 3: one trail per matching edge uv,
// entering u against the orientation and leaving v along it.
TrailPartition odd_partition_from_matching(const CubicMultigraph& g,
                                           const std::vector<int>& matching,
                                           const Orientation& o);
TrailPartition odd_partition_from_matching(const CubicMultigraph& g,
                                           const std::vector<int>& matching);
// The two orientations of the complement 2-factor give a compatible pair.
std::pair<TrailPartition, TrailPartition> compatible_pair_from_matching(
    const CubicMultigraph& g, const std::vector<int>& matching);

// The odd edges of an odd partition (both deletion subtrails odd) form
// a perfect matching.
std::vector<int> matching_from_odd_partition(const CubicMultigraph& g, const TrailPartition& t);

// Three pairwise compatible normal partitions of any loopless cubic
// multigraph, by reduction (contracting a parallel pair or a
// simple-neighborhood edge) with an exhaustive fallback on tiny graphs.
CompatibleTriple three_compatible(const CubicMultigraph& g);

// Triple with shapes (odd, length 3, length <= 4) for 3-edge-colorable
// graphs; multigraphs are reduced on parallel pairs first.
CompatibleTriple three_compatible_colored(const CubicMultigraph& g, const EdgeColoring& c);

// Triple of odd length-3 partitions for bipartite cubic graphs: each
// trail takes one edge of each color, ends chosen by bipartition class.
CompatibleTriple three_compatible_bipartite(const CubicMultigraph& g, const EdgeColoring& c);

EdgeInternality analyze_triple(const CubicMultigraph& g, const CompatibleTriple& triple);

// Replaces vertex v by a triangle (new vertices n, n+1); an odd
// compatible triple of g lifts to one of the expanded graph.
std::pair<CubicMultigraph, CompatibleTriple> triangle_expand(const CubicMultigraph& g, int v,
                                                             const CompatibleTriple& triple);

// Three perfect matchings with empty common intersection, extracted
// from an odd compatible triple.
std::array<std::vector<int>, 3> fan_raspaud_from_triple(const CubicMultigraph& g,
                                                        const CompatibleTriple& triple);

struct TripleSearchOptions {
    PartitionFilter filter = PartitionFilter::None;  // applied to all members
    int max_length = 0;
    int guard_n = 14;
};

// Exhaustive search for the lexicographically least pairwise compatible
// triple of (filtered) normal partitions; nullopt certifies absence.
std::optional<CompatibleTriple> search_compatible_triple(const CubicMultigraph& g,
                                                         const TripleSearchOptions& opts = {});

}  // namespace trails
