#include "cubelink/host_graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "cubelink/errors.hpp"

namespace cubelink {

HostGraph HostGraph::cube(int dim, std::span<const VertexId> forbidden) {
  const Cube q(dim);
  HostGraph g;
  g.cube_dim_ = dim;
  g.vertex_count_ = q.vertex_count();
  g.set_forbidden(forbidden);
  return g;
}

HostGraph HostGraph::from_edges(std::vector<std::string> names,
                                std::span<const std::pair<VertexId, VertexId>> edges,
                                std::span<const VertexId> forbidden) {
  HostGraph g;
  g.vertex_count_ = static_cast<VertexId>(names.size());
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw PreconditionError("graph vertex names must be distinct");
    }
  }
  g.names_ = std::move(names);

  std::vector<std::vector<VertexId>> adj(g.vertex_count_);
  for (const auto& [a, b] : edges) {
    if (a >= g.vertex_count_ || b >= g.vertex_count_) {
      throw PreconditionError("edge endpoint outside the vertex list");
    }
    if (a == b) throw PreconditionError("self-loops are not allowed");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  g.offsets_.assign(1, 0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());
    g.offsets_.push_back(g.adjacency_.size());
  }
  g.reverse_.resize(g.adjacency_.size());
  for (VertexId v = 0; v < g.vertex_count_; ++v) {
    for (std::size_t i = g.offsets_[v]; i < g.offsets_[v + 1]; ++i) {
      const VertexId u = g.adjacency_[i];
      const auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
      const auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
      g.reverse_[i] = static_cast<int>(std::lower_bound(first, last, v) - first);
    }
  }
  g.set_forbidden(forbidden);
  return g;
}

HostGraph HostGraph::pyramid2_quad() {
  // 0=s1 1=s2 2=t1 3=t2 4=x 5=y
  const std::vector<std::pair<VertexId, VertexId>> edges = {
      {0, 1}, {1, 2}, {2, 3}, {3, 0},                  // quadrangle
      {4, 0}, {4, 1}, {4, 2}, {4, 3},                  // apex x
      {5, 0}, {5, 1}, {5, 2}, {5, 3}, {4, 5}};         // apex y
  return from_edges({"s1", "s2", "t1", "t2", "x", "y"}, edges);
}

void HostGraph::set_forbidden(std::span<const VertexId> forbidden) {
  blocked_.assign(vertex_count_, false);
  for (VertexId v : forbidden) {
    if (!contains(v)) throw PreconditionError("forbidden vertex outside the host graph");
    blocked_[v] = true;
  }
  forbidden_.assign(forbidden.begin(), forbidden.end());
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

bool HostGraph::adjacent(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) return false;
  if (is_cube()) return cubelink::adjacent(u, v);
  const auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
  const auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
  return std::binary_search(first, last, v);
}

std::vector<VertexId> HostGraph::sorted_neighbors(VertexId v) const {
  std::vector<VertexId> out;
  const int n = slot_count(v);
  out.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) out.push_back(neighbor(v, s));
  if (is_cube()) std::sort(out.begin(), out.end());
  return out;
}

std::string HostGraph::name(VertexId v) const {
  if (is_cube()) return format_vertex(v, cube_dim_);
  return names_.at(v);
}

std::optional<VertexId> HostGraph::find(std::string_view name) const {
  if (is_cube()) {
    if (name.size() != static_cast<std::size_t>(cube_dim_)) return std::nullopt;
    if (name.find_first_not_of("01") != std::string_view::npos) return std::nullopt;
    return parse_vertex(name, cube_dim_);
  }
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

VertexId HostGraph::parse(std::string_view name) const {
  if (is_cube()) return parse_vertex(name, cube_dim_);
  if (auto v = find(name)) return *v;
  throw ParseError("unknown vertex name \"" + std::string(name) + "\"", 0);
}

HostGraph HostGraph::without(std::span<const VertexId> extra) const {
  HostGraph g = *this;
  std::vector<VertexId> all = forbidden_;
  all.insert(all.end(), extra.begin(), extra.end());
  g.set_forbidden(all);
  return g;
}

HostGraph link_graph(const Cube& cube, VertexId v) {
  if (cube.dim() < 2) throw PreconditionError("vertex links need dimension at least 2");
  if (!cube.contains(v)) throw PreconditionError("link apex outside the cube");
  const VertexId removed[] = {v, cube.opposite(v)};
  return HostGraph::cube(cube.dim(), removed);
}

}  // namespace cubelink
