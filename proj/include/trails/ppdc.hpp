#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trails/graph.hpp"

namespace trails {

// Paths over a GeneralGraph as vertex sequences; a single vertex is a
// path of length 0.
struct PathCollection {
    std::vector<std::vector<int>> paths;
};

struct VerifyResult {
    bool ok = false;
    std::string witness;  // empty when ok
};

// Every edge in exactly two members, every vertex a path end exactly
// twice (a length-0 path counts as two ends at its vertex).
VerifyResult verify_ppdc(const GeneralGraph& g, const PathCollection& p);
// Additionally the two end edges at every vertex are distinct; a
// length-0 path has no end edge and always fails.
VerifyResult verify_cppdc(const GeneralGraph& g, const PathCollection& p);

bool is_2_edge_connected(const GeneralGraph& g);
// 2-edge-connected, and deleting any single edge breaks that.
bool is_minimal_2ec(const GeneralGraph& g);

// Inductive construction on a lowest-id degree-2 vertex; the result
// passes verify_cppdc.  Throws PreconditionError unless the graph is
// minimal 2-edge-connected with at least 3 vertices, and
// FalsificationError if a case the argument rules out occurs.
PathCollection cppdc_minimal_2ec(const GeneralGraph& g);

// Exhaustive backtracking over simple paths; nullopt certifies that no
// collection satisfies the verifier.  Guarded by vertex count.
std::optional<PathCollection> find_cppdc(const GeneralGraph& g, int guard_n = 9);
std::optional<PathCollection> find_ppdc(const GeneralGraph& g, int guard_n = 9);

// Small corpus of minimal 2-edge-connected graphs.
GeneralGraph cycle_graph(int n);
// Two endpoints joined by three internally disjoint paths of the given
// edge lengths (each >= 2).
GeneralGraph theta_graph(int len1, int len2, int len3);
// Two cycles sharing exactly one vertex.
GeneralGraph shared_vertex_cycles(int len1, int len2);

// View of a simple cubic graph for the path-cover verifiers.
GeneralGraph as_general(const CubicMultigraph& g);

}  // namespace trails
