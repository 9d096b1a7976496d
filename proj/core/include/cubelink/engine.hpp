#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cubelink/cube.hpp"
#include "cubelink/errors.hpp"
#include "cubelink/host_graph.hpp"
#include "cubelink/linkage.hpp"

// Constructive linkage algorithms for hypercubes.
//
// solve_linkage() follows the inductive construction for ⌊(d+1)/2⌋-linkedness
// of Q_d (d != 3): search on Q_d for d <= 4, a Menger reduction onto a facet
// for even d, and three cases for odd d (all pairs antipodal, all terminals in
// one facet, everything else). Sub-problems on a facet are re-indexed as
// instances on Q_{d-1}. Every public solver validates its own output before
// returning and throws InvariantFailure if that check ever fails.

namespace cubelink {

/// Obstruction to 2-linkedness in Q_3: four terminals on a 2-face with one pair
/// on a diagonal of that face.
struct Config3F {
  Face face;
  VertexId witness_terminal = 0;  ///< s_1: its partner's face-neighbours are all terminals
};

/// Scans the six 2-faces of Q_3 in facet order. Requires >= 4 terminals in Q_3.
std::optional<Config3F> detect_config_3F(const Pairing& y);

/// Q_3 is not 2-linked; carries a Config3F certificate when the instance has one.
class NotLinkableError : public PreconditionError {
 public:
  NotLinkableError(const std::string& message, std::optional<Config3F> certificate)
      : PreconditionError(message), certificate_(certificate) {}
  const std::optional<Config3F>& certificate() const noexcept { return certificate_; }

 private:
  std::optional<Config3F> certificate_;
};

/// Y-linkage in Q_d for k = |Y| <= ⌊(d+1)/2⌋, d != 3 unless k == 1.
Linkage solve_linkage(int d, const Pairing& y);

/// Linkage in `g` minus `avoid` found by exact search. Intended for Q_d with
/// d <= 4, where linkedness theorems guarantee success; an UNLINKED answer is
/// reported as InvariantFailure.
Linkage base_solve(const HostGraph& g, const Pairing& y, std::span<const VertexId> avoid = {});

/// Even d >= 6, k = d/2: disjoint stubs from the terminals into the facet
/// {x_{d-1} = 0}, then a linkage of the stub ends inside that facet.
Linkage even_reduction(int d, const Pairing& y);

/// Odd d >= 5, every pair at distance d.
Linkage scenario1(int d, const Pairing& y);

/// Odd d >= 5, every terminal in facet `f`.
Linkage scenario2(int d, const Pairing& y, const Face& f);

struct ShortDistanceResult {
  std::size_t pair_index = 0;
  Path path;  ///< s_i-t_i path inside the facet with no other terminal on it
};

/// First pair (in order) joined inside `f` by a path avoiding all other
/// terminals. `f` must have dimension >= 4 and contain every terminal.
ShortDistanceResult short_distance_pair(const Face& f, const Pairing& y);

/// Odd d >= 5, neither of the other two scenarios applies.
Linkage scenario3(int d, const Pairing& y);

/// Bookkeeping of the third odd-dimensional case. Vertex sets are sorted.
struct ScenarioContext {
  int dim = 0;
  Face facet;                              ///< F, contains pair 0
  std::vector<TerminalPair> pairs;         ///< pairs, the chosen one moved to index 0
  std::vector<std::size_t> order;          ///< order[i]: input index of pairs[i]
  std::map<VertexId, VertexId> partner;    ///< rho
  std::vector<VertexId> in_facet;          ///< X_F: terminals in F other than s_1, t_1
  std::vector<VertexId> alpha;             ///< X_alpha: joined by an edge of F
  std::vector<VertexId> beta;              ///< X_beta = X_F \ X_alpha
  std::vector<std::size_t> alpha_pairs;    ///< indices (into `pairs`) forming Y_alpha
  std::map<VertexId, VertexId> omega;      ///< injective, defined on X_beta
  std::vector<int> obstruction_sizes;      ///< |O_x| for each x with omega(x) != x
  std::map<VertexId, Path> entry;          ///< M_x, for every x outside X_alpha ∪ {s_1,t_1}
  std::vector<VertexId> projected;         ///< X^o: endpoints of the entry paths in F^o
  std::vector<TerminalPair> projected_pairs;  ///< Y^o (degenerate pairs excluded)
  std::vector<std::size_t> projected_owner;   ///< index into `pairs` of each Y^o pair
  std::vector<VertexId> merged;            ///< F^o vertices where an entry path meets its partner
  std::vector<VertexId> avoid;             ///< S: vertices of F the s_1-t_1 path must miss
};

/// Builds the context through omega, entry paths and S for a third-scenario
/// instance (odd d >= 5).
ScenarioContext build_scenario3_context(int d, const Pairing& y);

/// Assigns omega in ascending order of X_beta. Fills ctx.omega and
/// ctx.obstruction_sizes; throws InvariantFailure if a terminal is left without
/// a candidate.
void build_omega(ScenarioContext& ctx);

/// Y-linkage in Q_d avoiding x, for k <= ⌊d/2⌋ and x not a terminal.
Linkage solve_strong(int d, const Pairing& y, VertexId x);

/// Y-linkage in lk(v, Q_{d+1}) = Q_{d+1} - {v, v^o}, for d >= 2, d != 3 and
/// k <= ⌊(d+1)/2⌋.
Linkage solve_link(int d_plus_1, VertexId v, const Pairing& y);

}  // namespace cubelink
