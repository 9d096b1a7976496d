#include "cubelink/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "cubelink/errors.hpp"

namespace cubelink {

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max();
constexpr std::size_t kNoArc = std::numeric_limits<std::size_t>::max();

// Unit-capacity flow on the vertex-split digraph of a HostGraph. Node 2v is
// the in-copy of v, 2v+1 its out-copy; the last two nodes are source and sink.
class SplitFlow {
 public:
  SplitFlow(const HostGraph& g, std::span<const VertexId> a, std::span<const VertexId> b)
      : g_(g),
        n_(g.vertex_count()),
        source_(2 * static_cast<std::size_t>(n_)),
        sink_(source_ + 1),
        in_a_(n_, false),
        in_b_(n_, false),
        cap_(n_, 1),
        through_(n_, 0),
        from_source_(n_, 0),
        to_sink_(n_, 0),
        arc_flow_(g.arc_count(), 0),
        parent_(sink_ + 1, kUnvisited),
        parent_arc_(sink_ + 1, kNoArc) {
    for (VertexId v : a) in_a_[v] = true;
    for (VertexId v : b) in_b_[v] = true;
    for (VertexId v : a) sources_.push_back(v);
    std::sort(sources_.begin(), sources_.end());
    sources_.erase(std::unique(sources_.begin(), sources_.end()), sources_.end());
    if (sources_.size() == 1 && !in_b_[sources_[0]]) cap_[sources_[0]] = kUnbounded;
    std::vector<VertexId> sinks(b.begin(), b.end());
    std::sort(sinks.begin(), sinks.end());
    sinks.erase(std::unique(sinks.begin(), sinks.end()), sinks.end());
    if (sinks.size() == 1 && !in_a_[sinks[0]]) cap_[sinks[0]] = kUnbounded;
  }

  bool augment() {
    std::fill(parent_.begin(), parent_.end(), kUnvisited);
    std::deque<std::size_t> queue{source_};
    parent_[source_] = source_;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      if (node == source_) {
        for (VertexId a : sources_) visit(node, in(a), kNoArc, queue);
        continue;
      }
      const auto v = static_cast<VertexId>(node / 2);
      const bool is_out = node % 2 == 1;
      const int slots = g_.slot_count(v);
      if (!is_out) {
        if (through_[v] < cap_[v]) visit(node, out(v), kNoArc, queue);
        for (int s = 0; s < slots; ++s) {
          const VertexId u = g_.neighbor(v, s);
          if (!g_.allowed(u)) continue;
          const std::size_t arc = g_.arc_index(u, g_.reverse_slot(v, s));
          if (arc_flow_[arc] > 0) visit(node, out(u), arc, queue);
        }
      } else {
        if (in_b_[v]) {
          visit(node, sink_, kNoArc, queue);
          if (parent_[sink_] != kUnvisited) break;
        }
        for (int s = 0; s < slots; ++s) {
          const VertexId u = g_.neighbor(v, s);
          if (!g_.allowed(u)) continue;
          const std::size_t arc = g_.arc_index(v, s);
          if (arc_flow_[arc] == 0) visit(node, in(u), arc, queue);
        }
        if (through_[v] > 0) visit(node, in(v), kNoArc, queue);
      }
    }
    if (parent_[sink_] == kUnvisited) return false;

    for (std::size_t node = sink_; node != source_; node = parent_[node]) {
      const std::size_t prev = parent_[node];
      if (prev == source_) {
        ++from_source_[node / 2];
      } else if (node == sink_) {
        ++to_sink_[prev / 2];
      } else if (prev % 2 == 0 && node % 2 == 1) {
        if (prev / 2 == node / 2) {
          ++through_[prev / 2];
        } else {
          --arc_flow_[parent_arc_[node]];
        }
      } else {
        if (prev / 2 == node / 2) {
          --through_[prev / 2];
        } else {
          ++arc_flow_[parent_arc_[node]];
        }
      }
    }
    return true;
  }

  // Minimum vertex separator read off the residual graph right after a failed
  // augment(). A crossing split arc names its vertex; a crossing edge arc is
  // saturated and names an endpoint that carries a single unit. An edge
  // between two uncapacitated endpoints cannot be cut and names nothing.
  std::vector<VertexId> cut() const {
    std::vector<VertexId> out;
    const auto reached = [&](std::size_t node) { return parent_[node] != kUnvisited; };
    for (VertexId v = 0; v < n_; ++v) {
      if (!g_.allowed(v)) continue;
      if (reached(in(v)) && !reached(this->out(v))) out.push_back(v);
      if (!reached(this->out(v))) continue;
      for (int s = 0; s < g_.slot_count(v); ++s) {
        const VertexId u = g_.neighbor(v, s);
        if (!g_.allowed(u) || reached(in(u)) || arc_flow_[g_.arc_index(v, s)] == 0) continue;
        if (cap_[v] != kUnbounded) {
          out.push_back(v);
        } else if (cap_[u] != kUnbounded) {
          out.push_back(u);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Path> decompose() {
    std::vector<Path> paths;
    std::vector<int> position(n_, -1);
    for (VertexId a : sources_) {
      while (from_source_[a] > 0) {
        --from_source_[a];
        Path walk{a};
        position[a] = 0;
        VertexId v = a;
        while (true) {
          if (in_b_[v] && to_sink_[v] > 0) {
            --to_sink_[v];
            break;
          }
          VertexId next = v;
          bool moved = false;
          for (int s = 0; s < g_.slot_count(v); ++s) {
            const std::size_t arc = g_.arc_index(v, s);
            if (arc_flow_[arc] > 0) {
              --arc_flow_[arc];
              next = g_.neighbor(v, s);
              moved = true;
              break;
            }
          }
          if (!moved) throw InvariantFailure("flow decomposition found no outgoing arc");
          if (position[next] >= 0) {
            // Drop a circulation.
            while (walk.back() != next) {
              position[walk.back()] = -1;
              walk.pop_back();
            }
          } else {
            position[next] = static_cast<int>(walk.size());
            walk.push_back(next);
          }
          v = next;
        }
        for (VertexId w : walk) position[w] = -1;
        std::size_t first = 0;
        for (std::size_t i = 0; i < walk.size(); ++i) {
          if (in_a_[walk[i]]) first = i;
        }
        std::size_t last = first;
        while (!in_b_[walk[last]]) ++last;
        paths.emplace_back(walk.begin() + static_cast<std::ptrdiff_t>(first),
                           walk.begin() + static_cast<std::ptrdiff_t>(last) + 1);
      }
    }
    return paths;
  }

 private:
  static constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

  std::size_t in(VertexId v) const { return 2 * static_cast<std::size_t>(v); }
  std::size_t out(VertexId v) const { return 2 * static_cast<std::size_t>(v) + 1; }

  void visit(std::size_t from, std::size_t to, std::size_t arc, std::deque<std::size_t>& queue) {
    if (parent_[to] != kUnvisited) return;
    parent_[to] = from;
    parent_arc_[to] = arc;
    queue.push_back(to);
  }

  const HostGraph& g_;
  VertexId n_;
  std::size_t source_;
  std::size_t sink_;
  std::vector<bool> in_a_;
  std::vector<bool> in_b_;
  std::vector<VertexId> sources_;
  std::vector<int> cap_;
  std::vector<int> through_;
  std::vector<int> from_source_;
  std::vector<int> to_sink_;
  std::vector<std::uint8_t> arc_flow_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_arc_;
};

// Depth-first search over path systems, one pair at a time.
class LinkSearch {
 public:
  LinkSearch(const HostGraph& g, const Pairing& y, std::uint64_t budget)
      : g_(g), y_(y), budget_(budget), owner_(g.vertex_count(), kFree),
        component_(g.vertex_count(), 0), paths_(y.size()) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      owner_[y[i].s] = static_cast<int>(i);
      owner_[y[i].t] = static_cast<int>(i);
    }
    neighbors_.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!g.allowed(v)) continue;
      for (VertexId u : g.sorted_neighbors(v)) {
        if (g.allowed(u)) neighbors_[v].push_back(u);
      }
    }
  }

  struct BudgetExhausted {};

  bool run() {
    paths_[0].push_back(y_[0].s);
    return route(0, y_[0].s);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::vector<Path>& paths() const noexcept { return paths_; }

 private:
  static constexpr int kFree = -1;

  bool route(std::size_t pair, VertexId tip) {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    const VertexId target = y_[pair].t;
    if (tip == target) {
      if (pair + 1 == y_.size()) return true;
      paths_[pair + 1].push_back(y_[pair + 1].s);
      if (route(pair + 1, y_[pair + 1].s)) return true;
      paths_[pair + 1].pop_back();
      return false;
    }
    if (!feasible(pair, tip)) return false;
    for (VertexId u : neighbors_[tip]) {
      if (u == target) {
        paths_[pair].push_back(u);
        if (route(pair, u)) return true;
        paths_[pair].pop_back();
        continue;
      }
      if (owner_[u] != kFree) continue;
      owner_[u] = static_cast<int>(pair);
      paths_[pair].push_back(u);
      if (route(pair, u)) return true;
      paths_[pair].pop_back();
      owner_[u] = kFree;
    }
    return false;
  }

  // Every unrouted pair (and the current tip) must still reach its partner
  // through free vertices.
  bool feasible(std::size_t pair, VertexId tip) {
    ++stamp_;
    int label = 0;
    std::vector<VertexId> stack;
    for (std::size_t j = pair; j < y_.size(); ++j) {
      const VertexId from = j == pair ? tip : y_[j].s;
      const VertexId to = y_[j].t;
      bool ok = false;
      for (VertexId u : neighbors_[from]) {
        if (u == to) {
          ok = true;
          break;
        }
      }
      if (ok) continue;
      // Label free components touching `from`, then look for them next to `to`.
      for (VertexId u : neighbors_[from]) {
        if (owner_[u] != kFree || component_stamp(u)) continue;
        ++label;
        flood(u, label, stack);
      }
      for (VertexId u : neighbors_[to]) {
        if (owner_[u] != kFree || !component_stamp(u)) continue;
        for (VertexId w : neighbors_[from]) {
          if (owner_[w] == kFree && component_stamp(w) && component_[w] == component_[u]) {
            ok = true;
            break;
          }
        }
        if (ok) break;
      }
      if (!ok) return false;
    }
    return true;
  }

  bool component_stamp(VertexId v) const { return stamps_.size() > v && stamps_[v] == stamp_; }

  void flood(VertexId start, int label, std::vector<VertexId>& stack) {
    if (stamps_.size() < g_.vertex_count()) stamps_.assign(g_.vertex_count(), 0);
    stack.assign(1, start);
    stamps_[start] = stamp_;
    component_[start] = label;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : neighbors_[v]) {
        if (owner_[u] != kFree || stamps_[u] == stamp_) continue;
        stamps_[u] = stamp_;
        component_[u] = label;
        stack.push_back(u);
      }
    }
  }

  const HostGraph& g_;
  const Pairing& y_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> owner_;
  std::vector<int> component_;
  std::vector<std::uint64_t> stamps_;
  std::uint64_t stamp_ = 0;
  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<Path> paths_;
};

void require_vertex(const HostGraph& g, VertexId v, const char* what) {
  if (!g.contains(v)) throw PreconditionError(std::string(what) + " outside the host graph");
  if (!g.allowed(v)) {
    throw PreconditionError(std::string(what) + " " + g.name(v) + " is a forbidden vertex");
  }
}

}  // namespace

MengerResult menger_disjoint_paths(const HostGraph& g, std::span<const VertexId> a,
                                   std::span<const VertexId> b, int count) {
  if (count <= 0) throw PreconditionError("menger_disjoint_paths needs a positive path count");
  if (a.empty() || b.empty()) throw PreconditionError("menger_disjoint_paths needs nonempty A and B");
  for (VertexId v : a) require_vertex(g, v, "A vertex");
  for (VertexId v : b) require_vertex(g, v, "B vertex");

  SplitFlow flow(g, a, b);
  MengerResult result;
  while (result.flow < count && flow.augment()) ++result.flow;
  result.reached_count = result.flow == count;
  if (!result.reached_count) result.separator = flow.cut();
  result.paths = flow.decompose();
  return result;
}

DecideResult decide_linked(const HostGraph& g, const Pairing& y, std::uint64_t budget) {
  for (const auto& p : y) {
    require_vertex(g, p.s, "terminal");
    require_vertex(g, p.t, "terminal");
  }
  DecideResult result;
  for (std::size_t i = 0; i < y.size(); ++i) result.pair_order.push_back(static_cast<int>(i));
  LinkSearch search(g, y, budget);
  try {
    const bool linked = search.run();
    result.outcome = linked ? Decision::Linked : Decision::Unlinked;
    if (linked) result.linkage = Linkage{search.paths(), {}};
  } catch (const LinkSearch::BudgetExhausted&) {
    result.outcome = Decision::BudgetExceeded;
  }
  result.nodes = std::min(search.nodes(), budget);
  return result;
}

std::optional<Path> avoid_path(const HostGraph& g, VertexId s, VertexId t,
                               std::span<const VertexId> avoid) {
  require_vertex(g, s, "path start");
  require_vertex(g, t, "path end");
  if (std::find(avoid.begin(), avoid.end(), s) != avoid.end() ||
      std::find(avoid.begin(), avoid.end(), t) != avoid.end()) {
    throw PreconditionError("avoid_path endpoints must not be avoided");
  }
  if (s == t) return Path{s};

  constexpr VertexId kNone = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> parent(g.vertex_count(), kNone);
  for (VertexId v : avoid) {
    if (g.contains(v)) parent[v] = v;
  }
  parent[s] = s;
  std::deque<VertexId> queue{s};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId u : g.sorted_neighbors(v)) {
      if (parent[u] != kNone || !g.allowed(u)) continue;
      parent[u] = v;
      if (u == t) {
        Path path{t};
        for (VertexId w = t; w != s; w = parent[w]) path.push_back(parent[w]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(u);
    }
  }
  return std::nullopt;
}

SeparatorCheck check_separator_structure(const Cube& cube, std::span<const VertexId> s) {
  if (s.size() != static_cast<std::size_t>(cube.dim())) {
    throw PreconditionError("separator check needs exactly d = " + std::to_string(cube.dim()) +
                            " vertices");
  }
  std::vector<VertexId> set(s.begin(), s.end());
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    throw PreconditionError("separator candidate has repeated vertices");
  }
  for (VertexId v : set) {
    if (!cube.contains(v)) throw PreconditionError("separator vertex outside the cube");
  }

  SeparatorCheck result;
  for (std::size_t i = 0; i < set.size() && result.independent; ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (adjacent(set[i], set[j])) {
        result.independent = false;
        break;
      }
    }
  }

  std::vector<bool> seen(cube.vertex_count(), false);
  for (VertexId v : set) seen[v] = true;
  VertexId start = 0;
  while (seen[start]) ++start;
  std::vector<VertexId> stack{start};
  seen[start] = true;
  VertexId reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (int c = 0; c < cube.dim(); ++c) {
      const VertexId u = v ^ (VertexId{1} << c);
      if (seen[u]) continue;
      seen[u] = true;
      ++reached;
      stack.push_back(u);
    }
  }
  if (reached + set.size() == cube.vertex_count()) return result;

  for (VertexId u : cube.neighbors(set.front())) {
    auto around = cube.neighbors(u);
    std::sort(around.begin(), around.end());
    if (around == set) {
      result.kind = SeparatorKind::Neighborhood;
      result.center = u;
      // Q_2 has two centres per neighbourhood; report the smaller.
      for (VertexId w : cube.neighbors(set.front())) {
        auto other = cube.neighbors(w);
        std::sort(other.begin(), other.end());
        if (other == set) result.center = std::min(result.center, w);
      }
      return result;
    }
  }
  result.kind = SeparatorKind::Violation;
  return result;
}

std::string to_string(LinkageClause clause) {
  switch (clause) {
    case LinkageClause::Ok: return "OK";
    case LinkageClause::PathCount: return "PATH_COUNT";
    case LinkageClause::EmptyPath: return "EMPTY_PATH";
    case LinkageClause::UnknownVertex: return "UNKNOWN_VERTEX";
    case LinkageClause::Endpoints: return "ENDPOINTS";
    case LinkageClause::Forbidden: return "FORBIDDEN";
    case LinkageClause::Adjacency: return "ADJACENCY";
    case LinkageClause::RepeatedVertex: return "REPEATED_VERTEX";
    case LinkageClause::Disjointness: return "DISJOINTNESS";
  }
  return "UNKNOWN";
}

ValidationReport validate_linkage(const HostGraph& g, const Pairing& y, const Linkage& linkage) {
  auto fail = [](LinkageClause clause, int index, VertexId witness, std::string message) {
    return ValidationReport{clause, index, witness, std::move(message)};
  };
  if (linkage.paths.size() != y.size()) {
    return fail(LinkageClause::PathCount, -1, 0,
                "expected " + std::to_string(y.size()) + " paths, got " +
                    std::to_string(linkage.paths.size()));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Path& path = linkage.paths[i];
    const int index = static_cast<int>(i);
    if (path.empty()) return fail(LinkageClause::EmptyPath, index, 0, "path is empty");
    for (VertexId v : path) {
      if (!g.contains(v)) {
        return fail(LinkageClause::UnknownVertex, index, v,
                    "vertex id " + std::to_string(v) + " is not in the host graph");
      }
    }
    const bool forward = path.front() == y[i].s && path.back() == y[i].t;
    const bool backward = path.front() == y[i].t && path.back() == y[i].s;
    if (!forward && !backward) {
      return fail(LinkageClause::Endpoints, index, path.front(),
                  "path does not join " + g.name(y[i].s) + " and " + g.name(y[i].t));
    }
    for (VertexId v : path) {
      if (!g.allowed(v)) {
        return fail(LinkageClause::Forbidden, index, v, "path uses forbidden vertex " + g.name(v));
      }
    }
    for (std::size_t j = 1; j < path.size(); ++j) {
      if (!g.adjacent(path[j - 1], path[j])) {
        return fail(LinkageClause::Adjacency, index, path[j],
                    "hop " + g.name(path[j - 1]) + " -> " + g.name(path[j]) + " is not an edge");
      }
    }
  }
  std::vector<int> owner(g.vertex_count(), -1);
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (VertexId v : linkage.paths[i]) {
      if (owner[v] == static_cast<int>(i)) {
        return fail(LinkageClause::RepeatedVertex, static_cast<int>(i), v,
                    "path visits " + g.name(v) + " twice");
      }
      if (owner[v] >= 0) {
        return fail(LinkageClause::Disjointness, static_cast<int>(i), v,
                    "paths " + std::to_string(owner[v]) + " and " + std::to_string(i) +
                        " share vertex " + g.name(v));
      }
      owner[v] = static_cast<int>(i);
    }
  }
  return {};
}

int max_shared_neighbors(const Cube& cube, VertexId u, VertexId v) {
  if (u == v) throw PreconditionError("max_shared_neighbors needs distinct vertices");
  int shared = 0;
  for (VertexId w : cube.neighbors(u)) {
    if (adjacent(w, v)) ++shared;
  }
  return shared;
}

}  // namespace cubelink
