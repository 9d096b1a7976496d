#include "cubelink/cube.hpp"

#include <algorithm>

#include "cubelink/errors.hpp"

namespace cubelink {

Cube::Cube(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw PreconditionError("cube dimension must lie in [1, " + std::to_string(kMaxDim) +
                            "], got " + std::to_string(dim));
  }
}

std::vector<VertexId> Cube::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(dim_));
  for (int c = 0; c < dim_; ++c) out.push_back(v ^ (VertexId{1} << c));
  return out;
}

Face Face::facet(int dim, int coord, int value) {
  if (coord < 0 || coord >= dim) {
    throw PreconditionError("facet coordinate " + std::to_string(coord) + " outside [0, " +
                            std::to_string(dim) + ")");
  }
  const VertexId bit = VertexId{1} << coord;
  return Face{dim, bit, value ? bit : 0};
}

int Face::facet_coord() const {
  if (!is_facet()) throw PreconditionError("face " + format_face(*this) + " is not a facet");
  return std::countr_zero(fixed_mask);
}

Face Face::opposite() const {
  if (!is_facet()) throw PreconditionError("face " + format_face(*this) + " is not a facet");
  return Face{dim, fixed_mask, fixed_values ^ fixed_mask};
}

std::vector<VertexId> Face::vertices() const {
  std::vector<VertexId> out;
  const VertexId full = (VertexId{1} << dim) - 1;
  const VertexId free_mask = full & ~fixed_mask;
  // Enumerate submasks of the free coordinates in increasing order.
  VertexId sub = 0;
  while (true) {
    out.push_back(sub | fixed_values);
    if (sub == free_mask) break;
    sub = (sub - free_mask) & free_mask;
  }
  return out;
}

VertexId project(VertexId v, const Face& target) {
  if (!target.is_facet()) {
    throw PreconditionError("projection target " + format_face(target) + " is not a facet");
  }
  return target.contains(v) ? v : v ^ target.fixed_mask;
}

std::vector<Direction> associated_pairs(const Cube& cube, std::span<const VertexId> z) {
  if (z.empty()) throw PreconditionError("associated_pairs needs a nonempty vertex set");
  VertexId seen = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const VertexId diff = z[i] ^ z[j];
      if (std::has_single_bit(diff)) seen |= diff;
    }
  }
  std::vector<Direction> out;
  for (int c = 0; c < cube.dim(); ++c) {
    if (seen & (VertexId{1} << c)) out.push_back(Direction{c});
  }
  return out;
}

Direction free_direction(const Cube& cube, std::span<const VertexId> z) {
  if (z.empty()) return Direction{0};
  const auto used = associated_pairs(cube, z);
  for (int c = 0; c < cube.dim(); ++c) {
    if (!std::binary_search(used.begin(), used.end(), Direction{c})) return Direction{c};
  }
  throw PreconditionError("no free direction: all " + std::to_string(cube.dim()) +
                          " directions are associated with a set of " +
                          std::to_string(z.size()) + " vertices");
}

std::string format_vertex(VertexId v, int dim) {
  std::string out(static_cast<std::size_t>(dim), '0');
  for (int c = 0; c < dim; ++c) {
    if (v & (VertexId{1} << c)) out[static_cast<std::size_t>(dim - 1 - c)] = '1';
  }
  return out;
}

VertexId parse_vertex(std::string_view text, int dim) {
  if (text.size() != static_cast<std::size_t>(dim)) {
    throw ParseError("vertex \"" + std::string(text) + "\" must have exactly " +
                         std::to_string(dim) + " binary digits",
                     0);
  }
  VertexId v = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch != '0' && ch != '1') {
      throw ParseError("vertex \"" + std::string(text) + "\" contains non-binary digit", i);
    }
    v = (v << 1) | static_cast<VertexId>(ch - '0');
  }
  return v;
}

std::string format_face(const Face& face) {
  std::string out(static_cast<std::size_t>(face.dim), '*');
  for (int c = 0; c < face.dim; ++c) {
    const VertexId bit = VertexId{1} << c;
    if (face.fixed_mask & bit) {
      out[static_cast<std::size_t>(face.dim - 1 - c)] = (face.fixed_values & bit) ? '1' : '0';
    }
  }
  return out;
}

Face parse_face(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxDim)) {
    throw ParseError("face pattern length must lie in [1, " + std::to_string(kMaxDim) + "]", 0);
  }
  Face face{static_cast<int>(text.size()), 0, 0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    const VertexId bit = VertexId{1} << (text.size() - 1 - i);
    switch (text[i]) {
      case '*':
        break;
      case '0':
        face.fixed_mask |= bit;
        break;
      case '1':
        face.fixed_mask |= bit;
        face.fixed_values |= bit;
        break;
      default:
        throw ParseError("face pattern may only contain 0, 1 and *", i);
    }
  }
  return face;
}

}  // namespace cubelink
