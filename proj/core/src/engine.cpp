#include "cubelink/engine.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "cubelink/instance_io.hpp"
#include "cubelink/oracle.hpp"

namespace cubelink {

namespace {

using Pairs = std::vector<TerminalPair>;
using Vertices = std::vector<VertexId>;

int bit(VertexId v, int coord) { return static_cast<int>((v >> coord) & 1U); }

bool has(const Vertices& set, VertexId v) { return std::find(set.begin(), set.end(), v) != set.end(); }

Vertices terminals_of(const Pairs& pairs) {
  Vertices out;
  for (const auto& p : pairs) {
    out.push_back(p.s);
    out.push_back(p.t);
  }
  return out;
}

Vertices sorted(Vertices v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Largest number of pairs Q_d links (the Q_3 exception is handled by callers).
int pair_capacity(int d) { return (d + 1) / 2; }

[[noreturn]] void fail(const std::string& what) { throw InvariantFailure(what); }

/// Appends `tail`, merging the shared vertex when tail starts where path ends.
void append(Path& path, const Path& tail) {
  auto from = tail.begin();
  if (!path.empty() && from != tail.end() && path.back() == *from) ++from;
  path.insert(path.end(), from, tail.end());
}

Path reversed(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

Path lift(const Path& p, const Face& f) {
  Path out;
  out.reserve(p.size());
  for (VertexId v : p) out.push_back(insert_coord(v, f.facet_coord(), f.facet_value()));
  return out;
}

VertexId lower(VertexId v, const Face& f) { return drop_coord(v, f.facet_coord()); }

/// Removes any cycle a walk makes, keeping its endpoints.
Path shortcut(const Path& walk) {
  Path out;
  for (VertexId v : walk) {
    const auto seen = std::find(out.begin(), out.end(), v);
    if (seen != out.end()) {
      out.erase(seen + 1, out.end());
    } else {
      out.push_back(v);
    }
  }
  return out;
}

Path cube_path(int d, VertexId s, VertexId t, const Vertices& avoid) {
  if (has(avoid, s) || has(avoid, t)) fail("path endpoint lies in its avoid set");
  const HostGraph g = HostGraph::cube(d, avoid);
  auto p = avoid_path(g, s, t);
  if (!p) fail("no path between " + format_vertex(s, d) + " and " + format_vertex(t, d));
  return *p;
}

/// Path inside facet `f` of Q_d avoiding `avoid` (vertices outside f are ignored).
Path face_path(const Face& f, VertexId s, VertexId t, const Vertices& avoid) {
  Vertices local;
  for (VertexId z : avoid) {
    if (f.contains(z)) local.push_back(lower(z, f));
  }
  return lift(cube_path(f.dim - 1, lower(s, f), lower(t, f), local), f);
}

class Engine {
 public:
  /// Linkage of `pairs` in Q_d - avoid. Paths are returned in pair order, path
  /// i running from pairs[i].s to pairs[i].t.
  std::vector<Path> link(int d, const Pairs& pairs, const Vertices& avoid);

  std::vector<Path> base(int d, const Pairs& pairs, const Vertices& avoid);
  std::vector<Path> even(int d, const Pairs& pairs, const Vertices& avoid);
  std::vector<Path> antipodal(int d, const Pairs& pairs);
  std::vector<Path> common_facet(int d, const Pairs& pairs, const Face& f);
  std::vector<Path> general(int d, const Pairs& pairs);
  std::vector<Path> general(ScenarioContext& ctx);
  std::vector<Path> strong(int d, const Pairs& pairs, VertexId x);
  std::vector<Path> vertex_link(int d_plus_1, VertexId v, const Pairs& pairs);

  std::vector<std::string> take_trace() { return std::move(trace_); }

 private:
  std::vector<Path> on_facet(const Face& f, const Pairs& pairs, const Vertices& avoid);
  std::vector<Path> single(int d, const Pairs& pairs, const Vertices& avoid);
  std::vector<Path> with_dummies(int d, const Pairs& pairs, const Vertices& avoid);
  void note(int d, const char* step) { trace_.push_back("Q" + std::to_string(d) + ":" + step); }

  std::vector<std::string> trace_;
};

std::vector<Path> Engine::link(int d, const Pairs& pairs, const Vertices& avoid) {
  const int l = static_cast<int>(pairs.size());
  const int z = static_cast<int>(avoid.size());
  if (l == 0) return {};
  const bool fits = (l == 1 && z <= d - 1) || (d == 4 && l == 2 && z <= 1) ||
                    (d != 3 && 2 * l + z <= 2 * pair_capacity(d));
  if (!fits) {
    fail("sub-instance on Q_" + std::to_string(d) + " with " + std::to_string(l) + " pairs and " +
         std::to_string(z) + " avoided vertices exceeds the linkage bound");
  }
  if (l == 1) return single(d, pairs, avoid);
  if (d <= 4) return base(d, pairs, avoid);
  if (d % 2 == 0) return even(d, pairs, avoid);
  if (!avoid.empty()) return with_dummies(d, pairs, avoid);

  if (std::all_of(pairs.begin(), pairs.end(), [d](const auto& p) { return distance(p.s, p.t) == d; })) {
    return antipodal(d, pairs);
  }
  const Vertices x = terminals_of(pairs);
  for (int c = 0; c < d; ++c) {
    const int value = bit(x.front(), c);
    if (std::all_of(x.begin(), x.end(), [&](VertexId v) { return bit(v, c) == value; })) {
      return common_facet(d, pairs, Face::facet(d, c, value));
    }
  }
  return general(d, pairs);
}

std::vector<Path> Engine::on_facet(const Face& f, const Pairs& pairs, const Vertices& avoid) {
  Pairs local;
  for (const auto& p : pairs) local.push_back({lower(p.s, f), lower(p.t, f)});
  Vertices local_avoid;
  for (VertexId v : avoid) local_avoid.push_back(lower(v, f));
  auto paths = link(f.dim - 1, local, local_avoid);
  for (auto& p : paths) p = lift(p, f);
  return paths;
}

std::vector<Path> Engine::single(int d, const Pairs& pairs, const Vertices& avoid) {
  note(d, "single-path");
  return {cube_path(d, pairs[0].s, pairs[0].t, avoid)};
}

std::vector<Path> Engine::base(int d, const Pairs& pairs, const Vertices& avoid) {
  note(d, "base-search");
  const HostGraph g = HostGraph::cube(d, avoid);
  const auto result = decide_linked(g, Pairing(pairs));
  if (result.outcome == Decision::BudgetExceeded) fail("base search exceeded its node budget");
  if (result.outcome != Decision::Linked) {
    fail("base search found no linkage on Q_" + std::to_string(d));
  }
  return result.linkage->paths;
}

std::vector<Path> Engine::even(int d, const Pairs& pairs, const Vertices& avoid) {
  note(d, "even-reduction");
  const Face f = Face::facet(d, d - 1, 0);
  const Vertices x = terminals_of(pairs);
  Vertices targets;
  for (VertexId v : f.vertices()) {
    if (!has(avoid, v)) targets.push_back(v);
  }
  const HostGraph g = HostGraph::cube(d, avoid);
  const auto menger = menger_disjoint_paths(g, x, targets, static_cast<int>(x.size()));
  if (!menger.reached_count) fail("terminals cannot be joined disjointly to the facet");

  std::map<VertexId, Path> stub;
  for (const auto& p : menger.paths) stub[p.front()] = p;
  Pairs inner_pairs;
  for (const auto& p : pairs) inner_pairs.push_back({stub.at(p.s).back(), stub.at(p.t).back()});
  Vertices inner_avoid;
  for (VertexId v : avoid) {
    if (f.contains(v)) inner_avoid.push_back(v);
  }
  const auto inner = on_facet(f, inner_pairs, inner_avoid);

  std::vector<Path> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Path p = stub.at(pairs[i].s);
    append(p, inner[i]);
    append(p, reversed(stub.at(pairs[i].t)));
    out.push_back(std::move(p));
  }
  return out;
}

// Odd d with avoided vertices: the avoided vertices become extra pairs among
// themselves, so a plain linkage of the enlarged pairing misses them.
std::vector<Path> Engine::with_dummies(int d, const Pairs& pairs, const Vertices& avoid) {
  note(d, "avoid-pairing");
  Pairs all = pairs;
  const Vertices z = sorted(avoid);
  for (std::size_t i = 0; i + 1 < z.size(); i += 2) all.push_back({z[i], z[i + 1]});
  if (z.size() % 2 == 1) {
    const Vertices used = terminals_of(pairs);
    VertexId y = 0;
    while (has(used, y) || has(z, y)) ++y;
    all.push_back({z.back(), y});
  }
  auto paths = link(d, all, {});
  paths.resize(pairs.size());
  return paths;
}

std::vector<Path> Engine::antipodal(int d, const Pairs& input) {
  note(d, "scenario-1");
  const Cube cube(d);
  const VertexId s1 = input[0].s;
  Vertices rest = terminals_of(input);
  rest.erase(rest.begin());
  std::set<int> associated;
  for (const auto& dir : associated_pairs(cube, rest)) associated.insert(dir.coord);

  const std::size_t k = input.size();
  for (int c = 0; c < d; ++c) {
    if (associated.count(c) != 0) continue;
    const Face fo = Face::facet(d, c, bit(s1, c));  // contains s_1
    const Face f = fo.opposite();
    Pairs pairs = input;
    std::vector<bool> flipped(k, false);
    for (std::size_t i = 0; i < k; ++i) {
      if (!fo.contains(pairs[i].s)) {
        std::swap(pairs[i].s, pairs[i].t);
        flipped[i] = true;
      }
    }
    std::size_t second = 0;
    for (std::size_t i = 1; i < k && second == 0; ++i) {
      if (project(pairs[i].t, fo) != s1) second = i;
    }
    if (second == 0) continue;

    std::vector<std::size_t> order{0, second};
    for (std::size_t i = 1; i < k; ++i) {
      if (i != second) order.push_back(i);
    }
    const auto& p1 = pairs[order[0]];
    const auto& p2 = pairs[order[1]];
    const Vertices x = terminals_of(pairs);

    Pairs in_f;
    Vertices starts;  // s_3..s_k
    for (std::size_t j = 2; j < k; ++j) {
      const auto& p = pairs[order[j]];
      if (has(x, project(p.s, f))) fail("projected terminal collides with a terminal");
      in_f.push_back({project(p.s, f), p.t});
      starts.push_back(p.s);
    }
    if (k >= 4 && static_cast<int>(starts.size()) > 2 * static_cast<int>(k) - 6) {
      fail("too many avoided vertices in the opposite facet");
    }
    const Pairs in_fo{{p1.s, project(p1.t, fo)}, {p2.s, project(p2.t, fo)}};
    if (has(x, in_fo[0].t) || has(x, in_fo[1].t)) fail("projected terminal collides with a terminal");

    const auto lower_paths = on_facet(f, in_f, {p1.t, p2.t});
    const auto upper_paths = on_facet(fo, in_fo, starts);

    std::vector<Path> out(k);
    for (std::size_t j = 0; j < 2; ++j) {
      Path p = upper_paths[j];
      p.push_back(pairs[order[j]].t);
      out[order[j]] = std::move(p);
    }
    for (std::size_t j = 2; j < k; ++j) {
      Path p{pairs[order[j]].s};
      append(p, lower_paths[j - 2]);
      out[order[j]] = std::move(p);
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (flipped[i]) out[i] = reversed(std::move(out[i]));
    }
    return out;
  }
  fail("no free direction separates the antipodal pairs");
}

std::vector<Path> Engine::common_facet(int d, const Pairs& pairs, const Face& f) {
  note(d, "scenario-2");
  const auto chosen = short_distance_pair(f, Pairing(pairs));
  const Face fo = f.opposite();
  Pairs rest;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i != chosen.pair_index) rest.push_back({project(pairs[i].s, fo), project(pairs[i].t, fo)});
  }
  const auto inner = on_facet(fo, rest, {});
  std::vector<Path> out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == chosen.pair_index) {
      out.push_back(chosen.path);
      continue;
    }
    Path p{pairs[i].s};
    append(p, inner[next++]);
    p.push_back(pairs[i].t);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Path> Engine::general(int d, const Pairs& pairs) {
  note(d, "scenario-3");
  ScenarioContext ctx = build_scenario3_context(d, Pairing(pairs));
  return general(ctx);
}

std::vector<Path> Engine::general(ScenarioContext& ctx) {
  const Face fo = ctx.facet.opposite();
  const auto inner = on_facet(fo, ctx.projected_pairs, ctx.merged);
  std::map<std::size_t, const Path*> inner_of;
  for (std::size_t j = 0; j < ctx.projected_owner.size(); ++j) inner_of[ctx.projected_owner[j]] = &inner[j];

  const std::size_t k = ctx.pairs.size();
  std::vector<Path> local(k);
  local[0] = face_path(ctx.facet, ctx.pairs[0].s, ctx.pairs[0].t, ctx.avoid);
  for (std::size_t i : ctx.alpha_pairs) local[i] = {ctx.pairs[i].s, ctx.pairs[i].t};
  for (std::size_t i = 1; i < k; ++i) {
    if (!local[i].empty()) continue;
    const Path& ms = ctx.entry.at(ctx.pairs[i].s);
    const Path& mt = ctx.entry.at(ctx.pairs[i].t);
    Path p = ms;
    if (const auto it = inner_of.find(i); it != inner_of.end()) append(p, *it->second);
    append(p, reversed(mt));
    local[i] = std::move(p);
  }
  std::vector<Path> out(k);
  for (std::size_t i = 0; i < k; ++i) out[ctx.order[i]] = std::move(local[i]);
  return out;
}

std::vector<Path> Engine::strong(int d, const Pairs& pairs, VertexId x) {
  if (d <= 3) {
    note(d, "single-path");
    return {cube_path(d, pairs[0].s, pairs[0].t, {x})};
  }
  if (d == 4) return base(d, pairs, {x});
  if (d % 2 == 1) {
    note(d, "strong-extra-pair");
    Pairs all = pairs;
    const Vertices used = terminals_of(pairs);
    VertexId y = 0;
    while (y == x || has(used, y)) ++y;
    all.push_back({x, y});
    auto paths = link(d, all, {});
    paths.resize(pairs.size());
    return paths;
  }
  note(d, "strong-projection");
  const Cube cube(d);
  const Vertices terminals = terminals_of(pairs);
  const int c = free_direction(cube, terminals).coord;
  const Face f = Face::facet(d, c, 1 - bit(x, c));
  Pairs projected;
  for (const auto& p : pairs) projected.push_back({project(p.s, f), project(p.t, f)});
  const auto inner = on_facet(f, projected, {});
  std::vector<Path> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Path p{pairs[i].s};
    append(p, inner[i]);
    if (p.back() != pairs[i].t) p.push_back(pairs[i].t);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Path> Engine::vertex_link(int d_plus_1, VertexId v, const Pairs& pairs) {
  const int n = d_plus_1;
  const Cube cube(n);
  const Vertices x = terminals_of(pairs);
  const int c = free_direction(cube, x).coord;
  Face a_face = Face::facet(n, c, bit(v, c));
  const auto count_in = [&](const Face& f) {
    return std::count_if(x.begin(), x.end(), [&](VertexId u) { return f.contains(u); });
  };
  if (count_in(a_face.opposite()) > count_in(a_face)) a_face = a_face.opposite();
  const Face b_face = a_face.opposite();
  const VertexId a = a_face.contains(v) ? v : cube.opposite(v);
  const VertexId b = cube.opposite(a);

  if (count_in(b_face) == 0) {
    note(n, "link-one-side");
    auto paths = on_facet(a_face, pairs, {});
    for (auto& p : paths) {
      const auto at = std::find(p.begin(), p.end(), a);
      if (at == p.end()) continue;
      note(n, "link-detour");
      const VertexId w1 = *(at - 1);
      const VertexId w2 = *(at + 1);
      const Path around = face_path(b_face, project(w1, b_face), project(w2, b_face), {b});
      Path q(p.begin(), at);
      append(q, around);
      q.insert(q.end(), at + 1, p.end());
      p = std::move(q);
    }
    return paths;
  }

  note(n, "link-two-sides");
  std::size_t j = pairs.size();
  bool flip = false;
  for (std::size_t i = 0; i < pairs.size() && j == pairs.size(); ++i) {
    if (b_face.contains(pairs[i].t) && project(pairs[i].t, a_face) == a) j = i;
    if (b_face.contains(pairs[i].s) && project(pairs[i].s, a_face) == a) j = i, flip = true;
  }
  if (j == pairs.size()) {
    VertexId lowest = 0;
    bool found = false;
    for (VertexId u : x) {
      if (b_face.contains(u) && (!found || u < lowest)) lowest = u, found = true;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].t == lowest) j = i, flip = false;
      if (pairs[i].s == lowest) j = i, flip = true;
    }
  }
  const VertexId s1 = flip ? pairs[j].t : pairs[j].s;
  const VertexId t1 = flip ? pairs[j].s : pairs[j].t;

  Pairs in_a;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == j) {
      in_a.push_back({project(s1, a_face), a});
    } else {
      in_a.push_back({project(pairs[i].s, a_face), project(pairs[i].t, a_face)});
    }
  }
  const auto inner = on_facet(a_face, in_a, {});

  std::vector<Path> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == j) {
      const Path& m1 = inner[i];
      const VertexId w = m1[m1.size() - 2];
      const VertexId start = project(w, b_face);
      Vertices blocked{b};
      for (VertexId u : x) {
        if (b_face.contains(u) && u != t1) blocked.push_back(u);
      }
      Path p;
      if (start == s1) {
        blocked.erase(std::find(blocked.begin(), blocked.end(), s1));
        p = face_path(b_face, s1, t1, blocked);
      } else {
        if (has(blocked, start)) fail("detour start is a blocked vertex");
        if (b_face.contains(s1)) p.push_back(s1);
        p.insert(p.end(), m1.begin(), m1.end() - 1);
        append(p, face_path(b_face, start, t1, blocked));
      }
      p = shortcut(p);
      if (flip) p = reversed(std::move(p));
      out.push_back(std::move(p));
      continue;
    }
    Path p;
    if (b_face.contains(pairs[i].s)) p.push_back(pairs[i].s);
    append(p, inner[i]);
    if (b_face.contains(pairs[i].t)) p.push_back(pairs[i].t);
    out.push_back(std::move(p));
  }
  return out;
}

/// Runs `body`, attaching the instance dump to any invariant failure and
/// validating the result against `host`.
template <typename Body>
Linkage guarded(const HostGraph& host, const Pairing& y, Body&& body) {
  Linkage linkage;
  try {
    Engine engine;
    linkage.paths = body(engine);
    linkage.scenario_trace = engine.take_trace();
  } catch (const InvariantFailure& e) {
    if (!e.instance().empty()) throw;
    throw InvariantFailure(e.detail(), instance_to_json(host, y));
  }
  const auto report = validate_linkage(host, y, linkage);
  if (!report.ok()) {
    throw InvariantFailure("output fails validation (" + to_string(report.clause) + "): " + report.message,
                           instance_to_json(host, y));
  }
  return linkage;
}

void check_dim(int d, int lowest) {
  if (d < lowest || d > kMaxDim) {
    throw PreconditionError("dimension " + std::to_string(d) + " outside [" + std::to_string(lowest) +
                            ", " + std::to_string(kMaxDim) + "]");
  }
}

void check_in_cube(int d, const Pairing& y) {
  const Cube cube(d);
  for (VertexId v : y.terminals()) {
    if (!cube.contains(v)) throw PreconditionError("terminal outside Q_" + std::to_string(d));
  }
}

void check_odd_scenario(int d, const Pairing& y) {
  check_dim(d, 5);
  if (d % 2 == 0) throw PreconditionError("odd-dimensional case needs odd d");
  check_in_cube(d, y);
  if (static_cast<int>(y.size()) > pair_capacity(d)) throw PreconditionError("too many pairs");
}

Pairs pairs_of(const Pairing& y) { return {y.begin(), y.end()}; }

}  // namespace

std::optional<Config3F> detect_config_3F(const Pairing& y) {
  check_in_cube(3, y);
  if (y.size() < 2) throw PreconditionError("a 2-face obstruction needs at least two pairs");
  for (int c = 0; c < 3; ++c) {
    for (int value = 0; value <= 1; ++value) {
      const Face face = Face::facet(3, c, value);
      const auto verts = face.vertices();
      if (!std::all_of(verts.begin(), verts.end(), [&](VertexId v) { return y.is_terminal(v); })) continue;
      for (const auto& p : y) {
        if (face.contains(p.s) && face.contains(p.t) && distance(p.s, p.t) == 2) {
          return Config3F{face, p.s};
        }
      }
    }
  }
  return std::nullopt;
}

Linkage solve_linkage(int d, const Pairing& y) {
  check_dim(d, 1);
  check_in_cube(d, y);
  if (static_cast<int>(y.size()) > pair_capacity(d)) {
    throw PreconditionError("Q_" + std::to_string(d) + " links at most " + std::to_string(pair_capacity(d)) +
                            " pairs");
  }
  if (d == 3 && y.size() == 2) {
    throw NotLinkableError("Q_3 is not 2-linked", detect_config_3F(y));
  }
  const HostGraph host = HostGraph::cube(d);
  return guarded(host, y, [&](Engine& e) { return e.link(d, pairs_of(y), {}); });
}

Linkage base_solve(const HostGraph& g, const Pairing& y, std::span<const VertexId> avoid) {
  const HostGraph host = g.without(avoid);
  for (VertexId v : y.terminals()) {
    if (!host.allowed(v)) throw PreconditionError("terminal " + host.name(v) + " is not available");
  }
  return guarded(host, y, [&](Engine&) {
    const auto result = decide_linked(host, y);
    if (result.outcome == Decision::BudgetExceeded) fail("base search exceeded its node budget");
    if (result.outcome != Decision::Linked) fail("base search found no linkage");
    return result.linkage->paths;
  });
}

Linkage even_reduction(int d, const Pairing& y) {
  check_dim(d, 6);
  if (d % 2 == 1) throw PreconditionError("even reduction needs even d");
  check_in_cube(d, y);
  if (static_cast<int>(y.size()) > d / 2) throw PreconditionError("too many pairs");
  const HostGraph host = HostGraph::cube(d);
  return guarded(host, y, [&](Engine& e) { return e.even(d, pairs_of(y), {}); });
}

Linkage scenario1(int d, const Pairing& y) {
  check_odd_scenario(d, y);
  if (y.size() < 2) throw PreconditionError("antipodal case needs at least two pairs");
  for (const auto& p : y) {
    if (distance(p.s, p.t) != d) throw PreconditionError("antipodal case needs every pair at distance d");
  }
  const HostGraph host = HostGraph::cube(d);
  return guarded(host, y, [&](Engine& e) { return e.antipodal(d, pairs_of(y)); });
}

Linkage scenario2(int d, const Pairing& y, const Face& f) {
  check_odd_scenario(d, y);
  if (f.dim != d || !f.is_facet()) throw PreconditionError("expected a facet of Q_" + std::to_string(d));
  for (VertexId v : y.terminals()) {
    if (!f.contains(v)) throw PreconditionError("every terminal must lie in the facet");
  }
  const HostGraph host = HostGraph::cube(d);
  return guarded(host, y, [&](Engine& e) { return e.common_facet(d, pairs_of(y), f); });
}

ShortDistanceResult short_distance_pair(const Face& f, const Pairing& y) {
  if (!f.is_facet() || f.dimension() < 4) throw PreconditionError("expected a facet of dimension >= 4");
  const Vertices x = y.terminals();
  for (VertexId v : x) {
    if (!f.contains(v)) throw PreconditionError("every terminal must lie in the facet");
  }
  const Cube sub(f.dim - 1);
  for (std::size_t i = 0; i < y.size(); ++i) {
    Vertices others;
    for (VertexId v : x) {
      if (v != y[i].s && v != y[i].t) others.push_back(lower(v, f));
    }
    const HostGraph g = HostGraph::cube(sub.dim(), others);
    if (auto p = avoid_path(g, lower(y[i].s, f), lower(y[i].t, f))) return {i, lift(*p, f)};
  }
  fail("no pair can be joined inside the facet");
}

Linkage scenario3(int d, const Pairing& y) {
  check_odd_scenario(d, y);
  const HostGraph host = HostGraph::cube(d);
  return guarded(host, y, [&](Engine& e) { return e.general(d, pairs_of(y)); });
}

ScenarioContext build_scenario3_context(int d, const Pairing& y) {
  check_odd_scenario(d, y);
  ScenarioContext ctx;
  ctx.dim = d;
  std::size_t first = y.size();
  for (std::size_t i = 0; i < y.size() && first == y.size(); ++i) {
    if (distance(y[i].s, y[i].t) < d) first = i;
  }
  if (first == y.size()) throw PreconditionError("some pair must be at distance below d");
  ctx.order.push_back(first);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i != first) ctx.order.push_back(i);
  }
  for (std::size_t i : ctx.order) ctx.pairs.push_back(y[i]);

  const TerminalPair p1 = ctx.pairs[0];
  int c = 0;
  while (bit(p1.s, c) != bit(p1.t, c)) ++c;
  ctx.facet = Face::facet(d, c, bit(p1.s, c));
  const Face fo = ctx.facet.opposite();

  for (const auto& p : ctx.pairs) {
    ctx.partner[p.s] = p.t;
    ctx.partner[p.t] = p.s;
  }
  for (std::size_t i = 1; i < ctx.pairs.size(); ++i) {
    const auto& p = ctx.pairs[i];
    const bool s_in = ctx.facet.contains(p.s);
    const bool t_in = ctx.facet.contains(p.t);
    if (s_in) ctx.in_facet.push_back(p.s);
    if (t_in) ctx.in_facet.push_back(p.t);
    if (s_in && t_in && adjacent(p.s, p.t)) {
      ctx.alpha.push_back(p.s);
      ctx.alpha.push_back(p.t);
      ctx.alpha_pairs.push_back(i);
    }
  }
  ctx.in_facet = sorted(ctx.in_facet);
  ctx.alpha = sorted(ctx.alpha);
  for (VertexId v : ctx.in_facet) {
    if (!has(ctx.alpha, v)) ctx.beta.push_back(v);
  }

  build_omega(ctx);

  for (std::size_t i = 1; i < ctx.pairs.size(); ++i) {
    if (std::find(ctx.alpha_pairs.begin(), ctx.alpha_pairs.end(), i) != ctx.alpha_pairs.end()) continue;
    for (VertexId u : {ctx.pairs[i].s, ctx.pairs[i].t}) {
      if (!ctx.facet.contains(u)) {
        ctx.entry[u] = {u};
        continue;
      }
      const VertexId w = ctx.omega.at(u);
      Path m{u};
      if (w != u) m.push_back(w);
      m.push_back(project(w, fo));
      ctx.entry[u] = std::move(m);
    }
    const VertexId es = ctx.entry[ctx.pairs[i].s].back();
    const VertexId et = ctx.entry[ctx.pairs[i].t].back();
    ctx.projected.push_back(es);
    if (es == et) {
      ctx.merged.push_back(es);
    } else {
      ctx.projected.push_back(et);
      ctx.projected_pairs.push_back({es, et});
      ctx.projected_owner.push_back(i);
    }
  }
  ctx.projected = sorted(ctx.projected);
  ctx.merged = sorted(ctx.merged);

  ctx.avoid = ctx.in_facet;
  for (const auto& [x, w] : ctx.omega) {
    if (!ctx.partner.count(w)) ctx.avoid.push_back(w);
  }
  ctx.avoid = sorted(ctx.avoid);
  if (static_cast<int>(ctx.avoid.size()) > d - 1) fail("the s_1-t_1 avoid set exceeds d - 1 vertices");
  if (static_cast<int>(ctx.projected.size()) > d - 1) fail("more than d - 1 projected terminals");
  return ctx;
}

void build_omega(ScenarioContext& ctx) {
  const int d = ctx.dim;
  const Face& f = ctx.facet;
  const Face fo = f.opposite();
  const int c = f.facet_coord();
  ctx.omega.clear();
  ctx.obstruction_sizes.clear();
  Vertices assigned;
  for (VertexId x : ctx.beta) {
    const VertexId rho = ctx.partner.at(x);
    const VertexId across = project(x, fo);
    if (!ctx.partner.count(across) || across == rho) {
      ctx.omega[x] = x;
      assigned.push_back(x);
      continue;
    }
    int obstructed = 0;
    std::optional<VertexId> choice;
    for (int i = 0; i < d; ++i) {
      if (i == c) continue;
      const VertexId u = x ^ (VertexId{1} << i);
      const VertexId above = project(u, fo);
      const bool blocked = ctx.partner.count(u) != 0 || (ctx.partner.count(above) != 0 && above != rho) ||
                           has(assigned, u);
      if (blocked) {
        ++obstructed;
      } else if (!choice || u < *choice) {
        choice = u;
      }
    }
    ctx.obstruction_sizes.push_back(obstructed);
    if (obstructed > d - 2) fail("obstruction set of " + format_vertex(x, d) + " exceeds d - 2");
    if (!choice) fail("no entry vertex left for " + format_vertex(x, d));
    ctx.omega[x] = *choice;
    assigned.push_back(*choice);
  }
}

Linkage solve_strong(int d, const Pairing& y, VertexId x) {
  check_dim(d, 2);
  check_in_cube(d, y);
  if (static_cast<int>(y.size()) > d / 2) {
    throw PreconditionError("Q_" + std::to_string(d) + " strongly links at most " + std::to_string(d / 2) +
                            " pairs");
  }
  if (!Cube(d).contains(x)) throw PreconditionError("forbidden vertex outside the cube");
  if (y.is_terminal(x)) throw PreconditionError("the forbidden vertex is a terminal");
  const VertexId removed[] = {x};
  const HostGraph host = HostGraph::cube(d, removed);
  return guarded(host, y, [&](Engine& e) { return e.strong(d, pairs_of(y), x); });
}

Linkage solve_link(int d_plus_1, VertexId v, const Pairing& y) {
  const int d = d_plus_1 - 1;
  check_dim(d_plus_1, 3);
  if (d == 3) throw PreconditionError("the link of a vertex in Q_4 is not handled (d = 3)");
  const Cube cube(d_plus_1);
  if (!cube.contains(v)) throw PreconditionError("apex outside the cube");
  check_in_cube(d_plus_1, y);
  if (static_cast<int>(y.size()) > pair_capacity(d)) throw PreconditionError("too many pairs");
  if (y.is_terminal(v) || y.is_terminal(cube.opposite(v))) {
    throw PreconditionError("terminals must avoid the apex and its antipode");
  }
  const HostGraph host = link_graph(cube, v);
  return guarded(host, y, [&](Engine& e) { return e.vertex_link(d_plus_1, v, pairs_of(y)); });
}

}  // namespace cubelink
