#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubelink/cube.hpp"
#include "cubelink/host_graph.hpp"
#include "cubelink/linkage.hpp"

// Exact decision procedures used as ground truth for the constructive engine.
// Nothing in here calls into the engine.

namespace cubelink {

struct MengerResult {
  int flow = 0;                    ///< min(count, max number of disjoint A-B paths)
  std::vector<Path> paths;         ///< `flow` disjoint A-B paths
  std::vector<VertexId> separator; ///< minimum separator, only when flow < count
  bool reached_count = false;      ///< flow == count
};

/// Disjoint A-B paths by unit-capacity max-flow on the vertex-split digraph.
///
/// Each path meets A only at its first vertex and B only at its last. Paths
/// are pairwise vertex-disjoint, except that when A (or B) is a single vertex
/// every path may share that endpoint (the fan / two-vertex form of Menger's
/// theorem). Stops once `count` paths are found; otherwise also returns a
/// minimum separator of size flow < count.
MengerResult menger_disjoint_paths(const HostGraph& g, std::span<const VertexId> a,
                                   std::span<const VertexId> b, int count);

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

enum class Decision { Linked, Unlinked, BudgetExceeded };

struct DecideResult {
  Decision outcome = Decision::Unlinked;
  std::optional<Linkage> linkage;    ///< set iff outcome == Linked
  std::vector<int> pair_order;       ///< routing order that was exhausted / used
  std::uint64_t nodes = 0;           ///< search nodes expanded
};

/// Exact backtracking decision of whether `y` is linked in `g`. Pairs are
/// routed in input order, each path grown lowest-numbered neighbour first, and
/// branches are cut as soon as some remaining pair is disconnected in the
/// residual graph. Exceeding `budget` search nodes yields BudgetExceeded, never
/// Unlinked.
DecideResult decide_linked(const HostGraph& g, const Pairing& y,
                           std::uint64_t budget = kDefaultNodeBudget);

/// Shortest s-t path in g minus `avoid` (BFS, lowest-numbered neighbour first).
std::optional<Path> avoid_path(const HostGraph& g, VertexId s, VertexId t,
                               std::span<const VertexId> avoid = {});

enum class SeparatorKind { NotSeparator, Neighborhood, Violation };

struct SeparatorCheck {
  SeparatorKind kind = SeparatorKind::NotSeparator;
  VertexId center = 0;      ///< u with S = N(u), for Neighborhood
  bool independent = true;  ///< no edge inside S
};

/// Classifies a d-element vertex set of Q_d: not separating, the neighbourhood
/// of some vertex, or a counterexample to the d-separator structure of cubes.
SeparatorCheck check_separator_structure(const Cube& cube, std::span<const VertexId> s);

enum class LinkageClause {
  Ok,
  PathCount,
  EmptyPath,
  UnknownVertex,
  Endpoints,
  Forbidden,
  Adjacency,
  RepeatedVertex,
  Disjointness,
};

struct ValidationReport {
  LinkageClause clause = LinkageClause::Ok;
  int path_index = -1;
  VertexId witness = 0;
  std::string message;

  bool ok() const noexcept { return clause == LinkageClause::Ok; }
};

std::string to_string(LinkageClause clause);

/// Checks every linkage invariant and reports the first one violated.
ValidationReport validate_linkage(const HostGraph& g, const Pairing& y, const Linkage& linkage);

/// |N(u) ∩ N(v)| in Q_d.
int max_shared_neighbors(const Cube& cube, VertexId u, VertexId v);

}  // namespace cubelink
