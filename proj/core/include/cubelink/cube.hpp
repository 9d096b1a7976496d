#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubelink {

/// A vertex of Q_d encoded as a d-bit word; bit i is coordinate i.
using VertexId = std::uint32_t;

inline constexpr int kMaxDim = 20;

/// The d-dimensional cube Q_d. Immutable; 1 <= dim <= kMaxDim.
class Cube {
 public:
  explicit Cube(int dim);

  int dim() const noexcept { return dim_; }
  VertexId vertex_count() const noexcept { return VertexId{1} << dim_; }
  VertexId full_mask() const noexcept { return vertex_count() - 1; }

  bool contains(VertexId v) const noexcept { return v <= full_mask(); }
  VertexId opposite(VertexId v) const noexcept { return v ^ full_mask(); }

  /// Neighbours of v, ordered by coordinate.
  std::vector<VertexId> neighbors(VertexId v) const;

 private:
  int dim_;
};

inline int distance(VertexId u, VertexId v) noexcept { return std::popcount(u ^ v); }

inline bool adjacent(VertexId u, VertexId v) noexcept { return distance(u, v) == 1; }

/// One of the d edge classes of Q_d: all edges {v, v ^ 2^coord}.
struct Direction {
  int coord = 0;

  friend bool operator==(const Direction&, const Direction&) = default;
  friend auto operator<=>(const Direction&, const Direction&) = default;
};

/// A subcube given by the coordinates it fixes.
struct Face {
  int dim = 0;                ///< dimension of the ambient cube
  VertexId fixed_mask = 0;    ///< 1 = coordinate fixed
  VertexId fixed_values = 0;  ///< values on fixed coordinates, 0 elsewhere

  static Face facet(int dim, int coord, int value);
  static Face whole(int dim) { return Face{dim, 0, 0}; }

  bool contains(VertexId v) const noexcept { return (v & fixed_mask) == fixed_values; }
  int dimension() const noexcept { return dim - std::popcount(fixed_mask); }
  bool is_facet() const noexcept { return std::popcount(fixed_mask) == 1; }

  /// Fixed coordinate of a facet. Throws PreconditionError for non-facets.
  int facet_coord() const;
  int facet_value() const { return static_cast<int>((fixed_values >> facet_coord()) & 1U); }
  /// The disjoint facet F^o. Throws PreconditionError for non-facets.
  Face opposite() const;

  std::vector<VertexId> vertices() const;

  friend bool operator==(const Face&, const Face&) = default;
};

/// Projection onto a facet: identity on `target`, flips the fixed bit otherwise.
VertexId project(VertexId v, const Face& target);

/// Directions whose edges occur in the subgraph induced by `z`.
std::vector<Direction> associated_pairs(const Cube& cube, std::span<const VertexId> z);

/// Lowest direction not associated with `z`. Throws PreconditionError when every
/// direction is associated (only possible when |z| > d).
Direction free_direction(const Cube& cube, std::span<const VertexId> z);

/// Removes coordinate `coord` from `v`, renumbering higher coordinates down by one.
constexpr VertexId drop_coord(VertexId v, int coord) noexcept {
  const VertexId low = v & ((VertexId{1} << coord) - 1);
  return low | ((v >> (coord + 1)) << coord);
}

/// Inverse of drop_coord: reinserts `coord` with the given bit value.
constexpr VertexId insert_coord(VertexId v, int coord, int bit) noexcept {
  const VertexId low = v & ((VertexId{1} << coord) - 1);
  return low | (static_cast<VertexId>(bit & 1) << coord) | ((v >> coord) << (coord + 1));
}

/// Binary string of length dim, most significant coordinate first.
std::string format_vertex(VertexId v, int dim);
/// Parses a binary vertex string of exactly `dim` characters.
VertexId parse_vertex(std::string_view text, int dim);

/// Pattern over {0,1,*}, most significant coordinate first ("1**").
std::string format_face(const Face& face);
Face parse_face(std::string_view text);

}  // namespace cubelink
