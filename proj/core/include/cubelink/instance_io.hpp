#pragma once

#include <string>
#include <string_view>

#include "cubelink/host_graph.hpp"
#include "cubelink/linkage.hpp"

// JSON documents exchanged with the CLI and stored as replay files.
//
//   instance: {"host": {"type": "cube", "d": 5, "forbidden": ["00000"]}
//                    | {"type": "graph", "vertices": ["a", ...],
//                       "edges": [["a", "b"], ...], "forbidden": [...]},
//              "pairs": [["s", "t"], ...]}
//   linkage:  {"paths": [["s", ..., "t"], ...], "scenario_trace": [...]}
//
// Vertices are always written by name: binary strings (most significant
// coordinate first) for cubes, the listed names for graphs.

namespace cubelink {

struct Instance {
  HostGraph host;
  Pairing pairs;
};

/// Throws ParseError (with byte offset) on malformed JSON or schema errors.
HostGraph parse_host(std::string_view json);
Instance parse_instance(std::string_view json);
Linkage parse_linkage(std::string_view json, const HostGraph& host);

std::string host_to_json(const HostGraph& host);
/// Single-line instance document; `indent` >= 0 pretty-prints.
std::string instance_to_json(const HostGraph& host, const Pairing& y, int indent = -1);
std::string linkage_to_json(const HostGraph& host, const Linkage& linkage, int indent = -1);

}  // namespace cubelink
