#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubelink/cube.hpp"

namespace cubelink {

/// Graph that paths are routed in: a cube Q_d (neighbours computed by bit
/// flips) or an explicit adjacency-list graph, either one minus a set of
/// forbidden vertices. Forbidden vertices stay addressable but never appear on
/// a returned path.
///
/// Every neighbour of a vertex occupies a "slot"; (vertex, slot) pairs have a
/// dense index, which lets flow and search code keep per-arc state in flat
/// arrays for both representations.
class HostGraph {
 public:
  static HostGraph cube(int dim, std::span<const VertexId> forbidden = {});
  /// Vertex names must be distinct; edges refer to name indices.
  static HostGraph from_edges(std::vector<std::string> names,
                              std::span<const std::pair<VertexId, VertexId>> edges,
                              std::span<const VertexId> forbidden = {});
  /// Two-fold pyramid over a quadrangle: s1,s2,t1,t2 on a 4-cycle in that
  /// cyclic order, apexes x and y adjacent to everything and to each other.
  static HostGraph pyramid2_quad();

  bool is_cube() const noexcept { return cube_dim_ > 0; }
  /// Dimension for cube hosts, 0 otherwise.
  int cube_dim() const noexcept { return cube_dim_; }

  VertexId vertex_count() const noexcept { return vertex_count_; }
  bool contains(VertexId v) const noexcept { return v < vertex_count_; }
  bool allowed(VertexId v) const { return contains(v) && !blocked_[v]; }
  const std::vector<VertexId>& forbidden() const noexcept { return forbidden_; }

  int slot_count(VertexId v) const {
    return is_cube() ? cube_dim_ : static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }
  VertexId neighbor(VertexId v, int slot) const {
    return is_cube() ? v ^ (VertexId{1} << slot) : adjacency_[offsets_[v] + static_cast<std::size_t>(slot)];
  }
  /// Slot of v inside the neighbour list of neighbor(v, slot).
  int reverse_slot(VertexId v, int slot) const {
    return is_cube() ? slot : reverse_[offsets_[v] + static_cast<std::size_t>(slot)];
  }
  std::size_t arc_index(VertexId v, int slot) const {
    return is_cube() ? static_cast<std::size_t>(v) * static_cast<std::size_t>(cube_dim_) +
                           static_cast<std::size_t>(slot)
                     : offsets_[v] + static_cast<std::size_t>(slot);
  }
  std::size_t arc_count() const noexcept {
    return is_cube() ? static_cast<std::size_t>(vertex_count_) * static_cast<std::size_t>(cube_dim_)
                     : adjacency_.size();
  }

  bool adjacent(VertexId u, VertexId v) const;

  /// Neighbours in increasing vertex order, forbidden ones included.
  std::vector<VertexId> sorted_neighbors(VertexId v) const;

  std::string name(VertexId v) const;
  std::optional<VertexId> find(std::string_view name) const;
  /// Like find(), but throws ParseError for unknown names.
  VertexId parse(std::string_view name) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Same graph with `extra` added to the forbidden set.
  HostGraph without(std::span<const VertexId> extra) const;

 private:
  HostGraph() = default;
  void set_forbidden(std::span<const VertexId> forbidden);

  int cube_dim_ = 0;
  VertexId vertex_count_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<int> reverse_;
  std::vector<std::string> names_;
  std::vector<VertexId> forbidden_;
  std::vector<bool> blocked_;
};

/// Graph of lk(v, Q_d): the cube with v and its opposite vertex removed.
HostGraph link_graph(const Cube& cube, VertexId v);

}  // namespace cubelink
