#pragma once

// Reference computations for tests. Everything here is deliberately naive and
// shares no code with the library's search or flow routines.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include <cubelink/host_graph.hpp>
#include <cubelink/linkage.hpp>

namespace reference {

using cubelink::HostGraph;
using cubelink::Path;
using cubelink::TerminalPair;
using cubelink::VertexId;

/// Neighbours of v in the host, skipping forbidden vertices.
inline std::vector<VertexId> neighbours(const HostGraph& g, VertexId v) {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    if (u != v && g.allowed(u) && g.adjacent(u, v)) out.push_back(u);
  }
  return out;
}

/// Every simple s-t path in g whose vertices avoid `blocked` (bitmask over V).
inline void simple_paths(const HostGraph& g, VertexId s, VertexId t, std::uint64_t blocked,
                         std::vector<std::pair<Path, std::uint64_t>>& out) {
  Path path{s};
  std::uint64_t used = std::uint64_t{1} << s;
  std::function<void(VertexId)> walk = [&](VertexId v) {
    if (v == t) {
      out.emplace_back(path, used);
      return;
    }
    for (VertexId u : neighbours(g, v)) {
      const std::uint64_t bit = std::uint64_t{1} << u;
      if ((used & bit) != 0 || (blocked & bit) != 0) continue;
      used |= bit;
      path.push_back(u);
      walk(u);
      path.pop_back();
      used &= ~bit;
    }
  };
  walk(s);
}

/// Linkedness by trying every combination of simple paths. Hosts up to 64 vertices.
inline bool linked(const HostGraph& g, const std::vector<TerminalPair>& pairs) {
  std::uint64_t terminals = 0;
  for (const auto& p : pairs) terminals |= (std::uint64_t{1} << p.s) | (std::uint64_t{1} << p.t);
  std::vector<std::vector<std::pair<Path, std::uint64_t>>> options(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::uint64_t others = terminals & ~((std::uint64_t{1} << pairs[i].s) | (std::uint64_t{1} << pairs[i].t));
    simple_paths(g, pairs[i].s, pairs[i].t, others, options[i]);
  }
  std::function<bool(std::size_t, std::uint64_t)> choose = [&](std::size_t i, std::uint64_t used) {
    if (i == pairs.size()) return true;
    for (const auto& [path, mask] : options[i]) {
      if ((mask & used) == 0 && choose(i + 1, used | mask)) return true;
    }
    return false;
  };
  return choose(0, 0);
}

/// Independent linkage check: endpoints, host edges, forbidden vertices, disjointness.
inline bool valid_linkage(const HostGraph& g, const std::vector<TerminalPair>& pairs, const std::vector<Path>& paths) {
  if (paths.size() != pairs.size()) return false;
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    if (p.empty()) return false;
    const bool forward = p.front() == pairs[i].s && p.back() == pairs[i].t;
    const bool backward = p.front() == pairs[i].t && p.back() == pairs[i].s;
    if (!forward && !backward) return false;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!g.contains(p[j]) || !g.allowed(p[j])) return false;
      if (!seen.insert(p[j]).second) return false;
      if (j > 0 && !g.adjacent(p[j - 1], p[j])) return false;
    }
  }
  return true;
}

/// Whether some A-B path survives in g - cut. `skip_direct` ignores the edge a-b
/// between two singleton endpoints (counted separately by the caller).
inline bool connected(const HostGraph& g, const std::vector<VertexId>& a, const std::vector<VertexId>& b,
                      const std::vector<bool>& cut, bool skip_direct) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> stack;
  for (VertexId v : a) {
    if (!cut[v]) seen[v] = true, stack.push_back(v);
  }
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    if (std::find(b.begin(), b.end(), v) != b.end()) return true;
    for (VertexId u : neighbours(g, v)) {
      if (seen[u] || cut[u]) continue;
      if (skip_direct && v == a[0] && u == b[0]) continue;
      seen[u] = true;
      stack.push_back(u);
    }
  }
  return false;
}

/// Maximum number of A-B paths under the library's Menger semantics, computed
/// as a minimum separator by enumerating vertex sets in order of size. A single
/// endpoint outside the other side may be shared by all paths, so it cannot be
/// cut; when both sides are such singletons and adjacent, their edge adds one.
inline int max_disjoint_paths(const HostGraph& g, std::vector<VertexId> a, std::vector<VertexId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto in = [](const std::vector<VertexId>& s, VertexId v) { return std::binary_search(s.begin(), s.end(), v); };
  std::vector<bool> uncuttable(g.vertex_count(), false);
  if (a.size() == 1 && !in(b, a[0])) uncuttable[a[0]] = true;
  if (b.size() == 1 && !in(a, b[0])) uncuttable[b[0]] = true;
  const bool direct = a.size() == 1 && b.size() == 1 && a[0] != b[0] && g.adjacent(a[0], b[0]);

  std::vector<VertexId> cuttable;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.allowed(v) && !uncuttable[v]) cuttable.push_back(v);
  }
  for (std::size_t size = 0; size <= cuttable.size(); ++size) {
    std::vector<bool> pick(cuttable.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<bool> cut(g.vertex_count(), false);
      for (std::size_t i = 0; i < cuttable.size(); ++i) {
        if (pick[i]) cut[cuttable[i]] = true;
      }
      if (!connected(g, a, b, cut, direct)) return static_cast<int>(size) + (direct ? 1 : 0);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return -1;
}

/// Number of connected components of Q_d minus `removed`, by flood fill.
inline int components_without(int d, const std::vector<VertexId>& removed) {
  const VertexId n = VertexId{1} << d;
  std::vector<bool> gone(n, false);
  for (VertexId v : removed) gone[v] = true;
  std::vector<bool> seen(n, false);
  int count = 0;
  for (VertexId start = 0; start < n; ++start) {
    if (gone[start] || seen[start]) continue;
    ++count;
    std::vector<VertexId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (int i = 0; i < d; ++i) {
        const VertexId u = v ^ (VertexId{1} << i);
        if (!gone[u] && !seen[u]) seen[u] = true, stack.push_back(u);
      }
    }
  }
  return count;
}

/// Directions with an edge inside Z, by checking every pair.
inline std::set<int> edge_directions(const std::vector<VertexId>& z) {
  std::set<int> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const VertexId diff = z[i] ^ z[j];
      if (std::popcount(diff) == 1) out.insert(std::countr_zero(diff));
    }
  }
  return out;
}

}  // namespace reference
