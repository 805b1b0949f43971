#pragma once

#include <string>
#include <vector>

#include "trails/constructions.hpp"
#include "trails/partition.hpp"
#include "trails/ppdc.hpp"
#include "trails/switching.hpp"

namespace trails {

// Text documents; every emitter round-trips bit-exactly through its
// parser.  Parsers throw ParseError on malformed input.

// One line per trail: "v0 (e1) v1 (e2) ... vk".
std::string emit_partition(const CubicMultigraph& g, const TrailPartition& t);
TrailPartition parse_partition(const CubicMultigraph& g, const std::string& text);

// n lines "v: edge_id side", in vertex order.
std::string emit_marking(const CubicMultigraph& g, const Marking& f);
Marking parse_marking(const CubicMultigraph& g, const std::string& text);

// One move per line: "side vertex variant", the variant being the
// resulting marked dart.
std::string emit_trace(const std::vector<SwitchMove>& trace);
std::vector<SwitchMove> parse_trace(const std::string& text);

// One path per line as whitespace-separated vertex ids.
std::string emit_path_collection(const PathCollection& p);
PathCollection parse_path_collection(const std::string& text);

// Three marking documents separated by blank lines.
std::string emit_triple(const CubicMultigraph& g, const CompatibleTriple& t);
CompatibleTriple parse_triple(const CubicMultigraph& g, const std::string& text);

// Table "edge_id count [singleton_member]", one line per edge.
std::string emit_internality(const EdgeInternality& in);

// DOT drawing; when a partition is given, each edge is labeled with its
// id and a marked end carries the end-bar annotation.
std::string emit_dot(const CubicMultigraph& g, const TrailPartition* t = nullptr);

}  // namespace trails
