#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trails/graph.hpp"

namespace trails {

// A trail is an ordered dart sequence; the dart at position i is
// traversed from its own vertex to the opposite endpoint.  Edges are
// pairwise distinct, vertices may repeat.  A loop occupies a single
// position.
class Trail {
public:
    Trail() = default;
    Trail(const CubicMultigraph& g, std::vector<Dart> darts);

    const std::vector<Dart>& darts() const { return darts_; }
    int length() const { return static_cast<int>(darts_.size()); }
    bool odd() const { return length() % 2 == 1; }

    // Vertices v0..vk along the walk.
    std::vector<int> vertices(const CubicMultigraph& g) const;
    int end_vertex(const CubicMultigraph& g, int which) const;  // which in {0,1}
    Trail reversed() const;

    // True when no vertex repeats (the trail is a path).
    bool is_path(const CubicMultigraph& g) const;

private:
    std::vector<Dart> darts_;
};

class TrailPartition {
public:
    TrailPartition() = default;
    // Validates that the trails cover every edge of g exactly once.
    TrailPartition(const CubicMultigraph& g, std::vector<Trail> trails);

    const std::vector<Trail>& trails() const { return trails_; }
    int size() const { return static_cast<int>(trails_.size()); }

private:
    std::vector<Trail> trails_;
};

enum class VertexRole { Normal, Eccentric };

struct VertexStatus {
    VertexRole role = VertexRole::Normal;
    Dart marked_dart = -1;        // e_T(v), valid when normal
    int internal_trail = -1;      // trail with v internal, -1 when none
    std::vector<int> end_set;     // E_T(v): ends of that trail (empty when eccentric)
};

struct PartitionStats {
    std::map<int, int> length_counts;  // n_T^i
    double average = 0.0;              // mu(T)
    int max_length = 0;                // l(T)
    bool odd = false;
    int trail_count = 0;
};

// Per-vertex marking: one incident dart per vertex.  Loop darts are
// canonicalized to side 0 so markings biject with normal partitions.
struct Marking {
    std::vector<Dart> mark;  // indexed by vertex

    bool operator==(const Marking&) const = default;
};

Dart canonical_dart(const CubicMultigraph& g, Dart d);

std::vector<VertexStatus> status(const CubicMultigraph& g, const TrailPartition& t);
bool is_normal(const CubicMultigraph& g, const TrailPartition& t);
bool is_odd(const TrailPartition& t);
bool is_path_partition(const CubicMultigraph& g, const TrailPartition& t);
int partition_length(const TrailPartition& t);

struct NormalizeResult {
    TrailPartition partition;
    int steps = 0;  // concatenations performed
};

// Greedy normalization: concatenates pairs of trails at eccentric
// vertices until every vertex is normal.
NormalizeResult greedy_normalize(const CubicMultigraph& g, const TrailPartition& t);

// A deterministic initial partition into trails (maximal greedy walks).
TrailPartition greedy_partition(const CubicMultigraph& g);
// Seeded random partition into trails, for normalization tests.
TrailPartition random_trail_partition(const CubicMultigraph& g, std::uint64_t seed);
// Seeded random normal partition, sampled via random valid markings.
TrailPartition random_normal_partition(const CubicMultigraph& g, std::uint64_t seed);

PartitionStats stats(const TrailPartition& t);

Marking to_marking(const CubicMultigraph& g, const TrailPartition& t);

struct MarkingValidity {
    bool valid = false;
    std::vector<int> cycle_witness;  // unmarked edges forming a cycle when invalid
};

// A marking is valid when the unmarked edges are acyclic (a loop is a
// 1-cycle, a parallel pair a 2-cycle).
MarkingValidity check_marking(const CubicMultigraph& g, const Marking& f);

// Reconstructs the unique normal partition whose marking is f; throws
// PreconditionError with the cycle witness message when f is invalid.
TrailPartition from_marking(const CubicMultigraph& g, const Marking& f);

enum class PartitionFilter { None, Odd, MaxLength };

struct EnumerateOptions {
    PartitionFilter filter = PartitionFilter::None;
    int max_length = 0;   // used when filter == MaxLength
    int guard_n = 14;     // size guard for the 3^n marking space
};

// Enumerates all normal partitions of g via their markings, in
// lexicographic marking order.  The visitor returns false to stop.
// Throws GuardError when n exceeds the guard.
void enumerate_normal_partitions(const CubicMultigraph& g, const EnumerateOptions& opts,
                                 const std::function<bool(const Marking&, const TrailPartition&)>& visit);

// Convenience: collect markings of all normal partitions matching the filter.
std::vector<Marking> enumerate_markings(const CubicMultigraph& g, const EnumerateOptions& opts = {});

struct CompatibilityResult {
    bool compatible = false;
    int witness_vertex = -1;  // vertex where markings agree, when incompatible
};

// Two normal partitions are compatible when their marked edges differ at
// every vertex (edge-level; the two darts of a loop count as equal).
CompatibilityResult are_compatible(const CubicMultigraph& g, const TrailPartition& a,
                                   const TrailPartition& b);
CompatibilityResult markings_compatible(const CubicMultigraph& g, const Marking& a,
                                        const Marking& b);

}  // namespace trails
