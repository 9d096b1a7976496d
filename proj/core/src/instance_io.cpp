#include "cubelink/instance_io.hpp"

#include <json.hpp>

#include "cubelink/errors.hpp"

namespace cubelink {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(what, 0); }

const json& member(const json& object, const char* key) {
  if (!object.is_object()) schema_error(std::string("expected an object holding \"") + key + "\"");
  const auto it = object.find(key);
  if (it == object.end()) schema_error(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string vertex_name(const json& value) {
  if (!value.is_string()) schema_error("vertices must be given as strings");
  return value.get<std::string>();
}

std::vector<VertexId> parse_forbidden(const json& host_doc, const HostGraph& host) {
  std::vector<VertexId> out;
  const auto it = host_doc.find("forbidden");
  if (it == host_doc.end()) return out;
  if (!it->is_array()) schema_error("\"forbidden\" must be an array");
  for (const auto& v : *it) out.push_back(host.parse(vertex_name(v)));
  return out;
}

HostGraph host_from(const json& doc) {
  const std::string type = member(doc, "type").is_string() ? member(doc, "type").get<std::string>() : "";
  if (type == "cube") {
    const auto& d = member(doc, "d");
    if (!d.is_number_integer()) schema_error("\"d\" must be an integer");
    const int dim = d.get<int>();
    if (dim < 1 || dim > kMaxDim) schema_error("cube dimension out of range");
    HostGraph bare = HostGraph::cube(dim);
    const auto forbidden = parse_forbidden(doc, bare);
    return HostGraph::cube(dim, forbidden);
  }
  if (type == "graph") {
    const auto& vertices = member(doc, "vertices");
    if (!vertices.is_array()) schema_error("\"vertices\" must be an array");
    std::vector<std::string> names;
    for (const auto& v : vertices) names.push_back(vertex_name(v));
    HostGraph bare = HostGraph::from_edges(names, {});
    std::vector<std::pair<VertexId, VertexId>> edges;
    const auto& edge_list = member(doc, "edges");
    if (!edge_list.is_array()) schema_error("\"edges\" must be an array");
    for (const auto& e : edge_list) {
      if (!e.is_array() || e.size() != 2) schema_error("each edge must be a two-element array");
      edges.emplace_back(bare.parse(vertex_name(e[0])), bare.parse(vertex_name(e[1])));
    }
    const auto forbidden = parse_forbidden(doc, bare);
    return HostGraph::from_edges(std::move(names), edges, forbidden);
  }
  schema_error("host \"type\" must be \"cube\" or \"graph\"");
}

json names_of(const HostGraph& host, const Path& path) {
  json out = json::array();
  for (VertexId v : path) out.push_back(host.name(v));
  return out;
}

json host_json(const HostGraph& host) {
  json doc;
  if (host.is_cube()) {
    doc["type"] = "cube";
    doc["d"] = host.cube_dim();
  } else {
    doc["type"] = "graph";
    doc["vertices"] = host.names();
    json edges = json::array();
    for (VertexId v = 0; v < host.vertex_count(); ++v) {
      for (VertexId u : host.sorted_neighbors(v)) {
        if (v < u) edges.push_back({host.name(v), host.name(u)});
      }
    }
    doc["edges"] = std::move(edges);
  }
  doc["forbidden"] = names_of(host, host.forbidden());
  return doc;
}

}  // namespace

HostGraph parse_host(std::string_view text) {
  try {
    return host_from(parse_document(text));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

Instance parse_instance(std::string_view text) {
  const json doc = parse_document(text);
  try {
    HostGraph host = host_from(member(doc, "host"));
    const auto& pair_list = member(doc, "pairs");
    if (!pair_list.is_array()) schema_error("\"pairs\" must be an array");
    std::vector<TerminalPair> pairs;
    for (const auto& p : pair_list) {
      if (!p.is_array() || p.size() != 2) schema_error("each pair must be a two-element array");
      pairs.push_back({host.parse(vertex_name(p[0])), host.parse(vertex_name(p[1]))});
    }
    Pairing y(std::move(pairs));
    return Instance{std::move(host), std::move(y)};
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

Linkage parse_linkage(std::string_view text, const HostGraph& host) {
  const json doc = parse_document(text);
  Linkage linkage;
  const auto& paths = member(doc, "paths");
  if (!paths.is_array()) schema_error("\"paths\" must be an array");
  for (const auto& p : paths) {
    if (!p.is_array()) schema_error("each path must be an array");
    Path path;
    for (const auto& v : p) path.push_back(host.parse(vertex_name(v)));
    linkage.paths.push_back(std::move(path));
  }
  if (const auto it = doc.find("scenario_trace"); it != doc.end() && it->is_array()) {
    for (const auto& step : *it) linkage.scenario_trace.push_back(vertex_name(step));
  }
  return linkage;
}

std::string host_to_json(const HostGraph& host) { return host_json(host).dump(); }

std::string instance_to_json(const HostGraph& host, const Pairing& y, int indent) {
  json doc;
  doc["host"] = host_json(host);
  json pairs = json::array();
  for (const auto& p : y) pairs.push_back({host.name(p.s), host.name(p.t)});
  doc["pairs"] = std::move(pairs);
  return doc.dump(indent);
}

std::string linkage_to_json(const HostGraph& host, const Linkage& linkage, int indent) {
  json doc;
  json paths = json::array();
  for (const auto& p : linkage.paths) paths.push_back(names_of(host, p));
  doc["paths"] = std::move(paths);
  doc["scenario_trace"] = linkage.scenario_trace;
  return doc.dump(indent);
}

}  // namespace cubelink
