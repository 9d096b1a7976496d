#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <cubelink/certifier.hpp>
#include <cubelink/engine.hpp>
#include <cubelink/oracle.hpp>
#include <cubelink/rng.hpp>

#include "reference.hpp"

namespace cubelink {
namespace {

VertexId v(const char* s) { return parse_vertex(s, static_cast<int>(std::char_traits<char>::length(s))); }

std::vector<TerminalPair> pairs_of(const Pairing& y) { return {y.begin(), y.end()}; }

void expect_valid(const HostGraph& host, const Pairing& y, const Linkage& l) {
  EXPECT_TRUE(reference::valid_linkage(host, pairs_of(y), l.paths));
  EXPECT_TRUE(validate_linkage(host, y, l).ok());
}

std::string top(const Linkage& l) { return l.scenario_trace.empty() ? "" : l.scenario_trace.front(); }

bool uses(const Linkage& l, VertexId x) {
  return std::any_of(l.paths.begin(), l.paths.end(),
                     [x](const Path& p) { return std::find(p.begin(), p.end(), x) != p.end(); });
}

TEST(SolveLinkage, SingleEdgeInQ1) {
  const Pairing y({{0, 1}});
  const auto l = solve_linkage(1, y);
  EXPECT_EQ(l.paths, (std::vector<Path>{{0, 1}}));
}

TEST(SolveLinkage, OnePairInQ2AndQ3) {
  const Pairing y2({{v("00"), v("11")}});
  expect_valid(HostGraph::cube(2), y2, solve_linkage(2, y2));
  const Pairing y3({{v("000"), v("111")}});
  const auto l = solve_linkage(3, y3);
  expect_valid(HostGraph::cube(3), y3, l);
  EXPECT_EQ(l.paths[0].size(), 4U);
}

TEST(SolveLinkage, Q3WithTwoPairsCarriesTheFaceCertificate) {
  const Pairing y({{v("000"), v("110")}, {v("100"), v("010")}});
  try {
    solve_linkage(3, y);
    FAIL() << "Q3 with two pairs must be rejected";
  } catch (const NotLinkableError& e) {
    ASSERT_TRUE(e.certificate());
    EXPECT_EQ(format_face(e.certificate()->face), "**0");
    EXPECT_EQ(e.certificate()->witness_terminal, v("000"));
  }
  const Pairing linked({{v("000"), v("110")}, {v("011"), v("101")}});
  try {
    solve_linkage(3, linked);
    FAIL() << "Q3 with two pairs must be rejected";
  } catch (const NotLinkableError& e) {
    EXPECT_FALSE(e.certificate());
  }
}

TEST(SolveLinkage, RejectsTooManyPairsAndForeignTerminals) {
  const Pairing three({{0, 1}, {2, 3}, {4, 5}});
  EXPECT_THROW(solve_linkage(4, three), PreconditionError);
  EXPECT_THROW(solve_linkage(2, Pairing({{0, 1}, {2, 3}})), PreconditionError);
  EXPECT_THROW(solve_linkage(3, Pairing({{0, 8}})), PreconditionError);
  EXPECT_THROW(solve_linkage(0, Pairing({{0, 1}})), PreconditionError);
}

TEST(SolveLinkage, AntipodalPairsInQ5TakeTheFirstCase) {
  const Pairing y({{v("00000"), v("11111")}, {v("00001"), v("11110")}, {v("00010"), v("11101")}});
  const auto l = solve_linkage(5, y);
  expect_valid(HostGraph::cube(5), y, l);
  EXPECT_EQ(top(l), "Q5:scenario-1");
  EXPECT_EQ(decide_linked(HostGraph::cube(5), y).outcome, Decision::Linked);
}

TEST(SolveLinkage, AntipodalPairsInQ7) {
  const Pairing y({{v("0000000"), v("1111111")},
                   {v("0000001"), v("1111110")},
                   {v("0000010"), v("1111101")},
                   {v("0000100"), v("1111011")}});
  const auto l = scenario1(7, y);
  expect_valid(HostGraph::cube(7), y, l);
  EXPECT_EQ(top(l), "Q7:scenario-1");
}

TEST(SolveLinkage, TwoAntipodalPairsInOddCubes) {
  // Every second pair has its projection onto s_1's facet equal to s_1 in the
  // lowest free direction, forcing the next direction.
  const Pairing y({{v("00000"), v("11111")}, {v("11110"), v("00001")}});
  const auto l = solve_linkage(5, y);
  expect_valid(HostGraph::cube(5), y, l);
  EXPECT_EQ(top(l), "Q5:scenario-1");
  SplitMix64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const VertexId a = static_cast<VertexId>(rng.below(32));
    VertexId b = static_cast<VertexId>(rng.below(32));
    while (b == a || b == (a ^ 31U)) b = static_cast<VertexId>(rng.below(32));
    const Pairing z({{a, a ^ 31U}, {b, b ^ 31U}});
    expect_valid(HostGraph::cube(5), z, scenario1(5, z));
  }
}

TEST(SolveLinkage, ScenarioOneIsInvariantUnderRelabelling) {
  std::vector<TerminalPair> pairs{{v("00000"), v("11111")}, {v("00001"), v("11110")}, {v("00010"), v("11101")}};
  std::sort(pairs.begin(), pairs.end(), [](auto a, auto b) { return a.s < b.s; });
  do {
    const Pairing y(pairs);
    expect_valid(HostGraph::cube(5), y, solve_linkage(5, y));
    std::vector<TerminalPair> flipped = pairs;
    for (auto& p : flipped) std::swap(p.s, p.t);
    const Pairing z(flipped);
    expect_valid(HostGraph::cube(5), z, solve_linkage(5, z));
  } while (std::next_permutation(pairs.begin(), pairs.end(), [](auto a, auto b) { return a.s < b.s; }));
}

TEST(Scenario1, RejectsNonAntipodalPairs) {
  const Pairing y({{v("00000"), v("11111")}, {v("00001"), v("11100")}, {v("00010"), v("11101")}});
  EXPECT_THROW(scenario1(5, y), PreconditionError);
}

TEST(Scenario2, AllTerminalsInOneFacet) {
  const Face f = Face::facet(5, 4, 0);
  const Pairing y({{v("00000"), v("01111")}, {v("00001"), v("01110")}, {v("00110"), v("01001")}});
  const auto l = scenario2(5, y, f);
  expect_valid(HostGraph::cube(5), y, l);
  EXPECT_EQ(top(l), "Q5:scenario-2");
  EXPECT_EQ(top(solve_linkage(5, y)), "Q5:scenario-2");
  // The pair joined inside F keeps its path there; the others pass through F^o.
  int inside = 0;
  for (const auto& p : l.paths) {
    inside += std::all_of(p.begin(), p.end(), [&](VertexId u) { return f.contains(u); }) ? 1 : 0;
  }
  EXPECT_GE(inside, 1);
  EXPECT_THROW(scenario2(5, Pairing({{v("00000"), v("11111")}}), f), PreconditionError);
}

TEST(Scenario2, SeededInstancesInsideAFacetOfQ5AndQ7) {
  SplitMix64 rng(23);
  for (int d : {5, 7}) {
    const int k = (d + 1) / 2;
    const Face f = Face::facet(d, 2, 1);
    const auto verts = f.vertices();
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<VertexId> x;
      while (static_cast<int>(x.size()) < 2 * k) {
        const VertexId u = verts[rng.below(verts.size())];
        if (std::find(x.begin(), x.end(), u) == x.end()) x.push_back(u);
      }
      std::vector<TerminalPair> pairs;
      for (int i = 0; i < k; ++i) pairs.push_back({x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]});
      const Pairing y(pairs);
      expect_valid(HostGraph::cube(d), y, scenario2(d, y, f));
    }
  }
}

TEST(ShortDistancePair, BlockedFirstPairFallsToTheSecond) {
  const Face f = Face::facet(5, 4, 0);
  // Everything except s_1 and t_1 surrounds s_1 inside F.
  const Pairing y({{v("00000"), v("00011")}, {v("00001"), v("00010")}, {v("00100"), v("01000")}});
  const auto r = short_distance_pair(f, y);
  EXPECT_EQ(r.pair_index, 1U);
  EXPECT_EQ(r.path.front(), v("00001"));
  EXPECT_EQ(r.path.back(), v("00010"));
  for (VertexId u : r.path) {
    EXPECT_TRUE(f.contains(u));
    EXPECT_TRUE(u == v("00001") || u == v("00010") || !y.is_terminal(u));
  }
}

TEST(ShortDistancePair, FirstUnblockedPairWins) {
  const Face f = Face::facet(5, 4, 0);
  const Pairing y({{v("00000"), v("01111")}, {v("00001"), v("01110")}, {v("00110"), v("01001")}});
  EXPECT_EQ(short_distance_pair(f, y).pair_index, 0U);
  EXPECT_THROW(short_distance_pair(Face::facet(4, 0, 0), Pairing({{0, 2}})), PreconditionError);
}

// Pairs (s_1, t_1) = (00000, 00011); F is {coordinate 2 = 0}.
TEST(Scenario3, ForeignTerminalAcrossFForcesAnEntryDetour) {
  const VertexId x = v("01000");
  const Pairing y({{v("00000"), v("00011")}, {x, v("10100")}, {v("01100"), v("11111")}});
  const auto ctx = build_scenario3_context(5, y);
  EXPECT_EQ(ctx.facet, Face::facet(5, 2, 0));
  EXPECT_EQ(ctx.beta, (std::vector<VertexId>{x}));
  const VertexId w = ctx.omega.at(x);
  EXPECT_NE(w, x);
  EXPECT_EQ(distance(w, x), 1);
  EXPECT_TRUE(ctx.facet.contains(w));
  EXPECT_FALSE(y.is_terminal(w));
  EXPECT_FALSE(y.is_terminal(project(w, ctx.facet.opposite())));
  EXPECT_EQ(ctx.entry.at(x), (Path{x, w, project(w, ctx.facet.opposite())}));

  const auto l = scenario3(5, y);
  expect_valid(HostGraph::cube(5), y, l);
  EXPECT_EQ(top(l), "Q5:scenario-3");
}

TEST(Scenario3, PartnerAcrossFKeepsOmegaTheIdentity) {
  const VertexId x = v("01000");
  const Pairing y({{v("00000"), v("00011")}, {x, v("01100")}, {v("10100"), v("11111")}});
  const auto ctx = build_scenario3_context(5, y);
  EXPECT_EQ(ctx.omega.at(x), x);
  // The entry path of x ends on its own partner: the pair is routed by M_x alone.
  EXPECT_EQ(ctx.merged, (std::vector<VertexId>{v("01100")}));
  expect_valid(HostGraph::cube(5), y, scenario3(5, y));
}

TEST(Scenario3, UnobstructedTerminalKeepsOmegaTheIdentity) {
  const VertexId x = v("01000");
  const Pairing y({{v("00000"), v("00011")}, {x, v("10101")}, {v("10100"), v("11111")}});
  const auto ctx = build_scenario3_context(5, y);
  EXPECT_EQ(ctx.omega.at(x), x);
  EXPECT_TRUE(ctx.obstruction_sizes.empty());
}

TEST(Scenario3, NoTerminalsInFBesidesTheFirstPair) {
  const Pairing y({{v("00000"), v("00011")}, {v("00100"), v("11111")}, {v("10110"), v("01101")}});
  const auto ctx = build_scenario3_context(5, y);
  EXPECT_TRUE(ctx.in_facet.empty());
  EXPECT_TRUE(ctx.beta.empty());
  EXPECT_TRUE(ctx.omega.empty());
  for (const auto& [terminal, path] : ctx.entry) EXPECT_EQ(path, (Path{terminal}));
  expect_valid(HostGraph::cube(5), y, scenario3(5, y));
}

TEST(Scenario3, AdjacentPairInsideFIsJoinedByItsEdge) {
  const Pairing y({{v("00000"), v("00011")}, {v("01000"), v("01001")}, {v("10100"), v("11111")}});
  const auto ctx = build_scenario3_context(5, y);
  EXPECT_EQ(ctx.alpha_pairs, (std::vector<std::size_t>{1}));
  const auto l = scenario3(5, y);
  expect_valid(HostGraph::cube(5), y, l);
  EXPECT_EQ(l.paths[1], (Path{v("01000"), v("01001")}));
}

TEST(Scenario3, ChosenPairMovesToTheFront) {
  const Pairing y({{v("00000"), v("11111")}, {v("00001"), v("00110")}, {v("10000"), v("11100")}});
  const auto ctx = build_scenario3_context(5, y);
  EXPECT_EQ(ctx.order.front(), 1U);
  EXPECT_EQ(ctx.pairs.front(), y[1]);
  expect_valid(HostGraph::cube(5), y, scenario3(5, y));
}

// Structural invariants of the third case on random instances.
TEST(Scenario3, ContextInvariantsOnRandomInstances) {
  for (int d : {5, 7, 9}) {
    const int k = (d + 1) / 2;
    const auto instances = sample_instances(HostGraph::cube(d), k, 400, 99);
    int checked = 0;
    for (const auto& inst : instances) {
      const Pairing y(inst.pairs);
      const auto x = y.terminals();
      bool common = false;
      for (int c = 0; c < d && !common; ++c) {
        common = std::all_of(x.begin(), x.end(), [&](VertexId u) { return ((u ^ x[0]) >> c & 1U) == 0; });
      }
      if (common) continue;
      ++checked;
      const auto ctx = build_scenario3_context(d, y);
      const Face fo = ctx.facet.opposite();
      for (const auto& [a, b] : ctx.partner) EXPECT_EQ(ctx.partner.at(b), a);
      std::set<VertexId> parts(ctx.alpha.begin(), ctx.alpha.end());
      for (VertexId u : ctx.beta) EXPECT_TRUE(parts.insert(u).second);
      EXPECT_EQ(parts, std::set<VertexId>(ctx.in_facet.begin(), ctx.in_facet.end()));
      std::set<VertexId> images;
      for (const auto& [u, w] : ctx.omega) {
        EXPECT_TRUE(images.insert(w).second);
        EXPECT_TRUE(w == u || (distance(w, u) == 1 && ctx.facet.contains(w)));
        for (VertexId z : {w, project(w, fo)}) {
          EXPECT_TRUE(z == u || z == ctx.partner.at(u) || !y.is_terminal(z));
        }
      }
      for (int size : ctx.obstruction_sizes) EXPECT_LE(size, d - 2);
      std::set<VertexId> entry_vertices;
      for (const auto& [u, path] : ctx.entry) {
        EXPECT_LE(path.size(), 3U);
        EXPECT_EQ(path.front(), u);
        EXPECT_TRUE(fo.contains(path.back()));
        for (VertexId z : path) {
          const bool fresh = entry_vertices.insert(z).second;
          if (!fresh) EXPECT_EQ(z, path.back());  // only a pair's own entry paths may meet
        }
      }
      EXPECT_LE(static_cast<int>(ctx.projected.size()), d - 1);
      EXPECT_LE(static_cast<int>(ctx.avoid.size()), d - 1);
    }
    EXPECT_GT(checked, 300);
  }
}

TEST(EvenReduction, TerminalsInsideTheFacetKeepTrivialStubs) {
  const Pairing y({{v("000000"), v("011111")}, {v("000001"), v("011110")}, {v("000010"), v("011101")}});
  const auto l = even_reduction(6, y);
  expect_valid(HostGraph::cube(6), y, l);
  ASSERT_GE(l.scenario_trace.size(), 2U);
  EXPECT_EQ(l.scenario_trace[0], "Q6:even-reduction");
  EXPECT_EQ(l.scenario_trace[1].rfind("Q5:", 0), 0U);
  const Face f = Face::facet(6, 5, 0);
  for (const auto& p : l.paths) {
    EXPECT_TRUE(std::all_of(p.begin(), p.end(), [&](VertexId u) { return f.contains(u); }));
  }
}

TEST(EvenReduction, FreeProjectionEdgeIsTheStub) {
  const VertexId u = v("100000");
  const Pairing y({{u, v("011111")}, {v("000001"), v("011110")}, {v("000010"), v("011101")}});
  const auto l = even_reduction(6, y);
  expect_valid(HostGraph::cube(6), y, l);
  ASSERT_GE(l.paths[0].size(), 2U);
  EXPECT_EQ(l.paths[0][1], project(u, Face::facet(6, 5, 0)));
}

TEST(EvenReduction, RejectsOddOrSmallDimensions) {
  const Pairing y({{0, 1}});
  EXPECT_THROW(even_reduction(5, y), PreconditionError);
  EXPECT_THROW(even_reduction(4, y), PreconditionError);
}

TEST(BaseSolve, StrongQ4Example) {
  const Pairing y({{v("0000"), v("0011")}, {v("0101"), v("1010")}});
  const std::vector<VertexId> avoid{v("1111")};
  const auto l = base_solve(HostGraph::cube(4), y, avoid);
  expect_valid(HostGraph::cube(4, avoid), y, l);
  EXPECT_FALSE(uses(l, v("1111")));
}

TEST(BaseSolve, FourCycle) {
  const Pairing y({{v("00"), v("11")}});
  const auto l = base_solve(HostGraph::cube(2), y);
  EXPECT_TRUE(l.paths[0] == (Path{0, 1, 3}) || l.paths[0] == (Path{0, 2, 3}));
}

TEST(BaseSolve, UnlinkedInputIsAnInvariantFailureWithADump) {
  const Pairing y({{v("000"), v("110")}, {v("100"), v("010")}});
  try {
    base_solve(HostGraph::cube(3), y);
    FAIL() << "expected an invariant failure";
  } catch (const InvariantFailure& e) {
    EXPECT_NE(e.instance().find("\"pairs\""), std::string::npos);
    EXPECT_EQ(std::string(e.what()).rfind("invariant failure: ", 0), 0U);
  }
}

TEST(SolveStrong, Q3SinglePathAvoidsTheVertex) {
  const Pairing y({{v("000"), v("011")}});
  const auto l = solve_strong(3, y, v("001"));
  EXPECT_EQ(l.paths[0], (Path{v("000"), v("010"), v("011")}));
}

TEST(SolveStrong, ProjectionInEvenCubesStartsWithTheProjectionEdge) {
  // x and u lie on the same side of the lowest free direction.
  const VertexId x = v("000000");
  const VertexId u = v("000001");
  const Pairing y({{u, v("111111")}, {v("010010"), v("101100")}, {v("001110"), v("110100")}});
  const auto l = solve_strong(6, y, x);
  const std::vector<VertexId> removed{x};
  expect_valid(HostGraph::cube(6, removed), y, l);
  EXPECT_EQ(top(l), "Q6:strong-projection");
  const int c = free_direction(Cube(6), y.terminals()).coord;
  const Face f = Face::facet(6, c, 1 - static_cast<int>((x >> c) & 1U));
  if (!f.contains(u)) {
    const Path& p = l.paths[0];
    const Path& oriented = p.front() == u ? p : Path(p.rbegin(), p.rend());
    EXPECT_EQ(oriented[1], project(u, f));
  }
  EXPECT_FALSE(uses(l, x));
}

TEST(SolveStrong, RandomInstancesAvoidTheForbiddenVertex) {
  for (int d : {2, 3, 4, 5, 6, 7, 8}) {
    const auto instances = sample_instances(HostGraph::cube(d), d / 2, 150, 31, true);
    for (const auto& inst : instances) {
      const Pairing y(inst.pairs);
      const auto l = solve_strong(d, y, *inst.forbidden);
      const std::vector<VertexId> removed{*inst.forbidden};
      expect_valid(HostGraph::cube(d, removed), y, l);
      EXPECT_FALSE(uses(l, *inst.forbidden));
    }
  }
}

TEST(SolveStrong, Rejections) {
  EXPECT_THROW(solve_strong(5, Pairing({{0, 1}, {2, 3}, {4, 5}}), 9), PreconditionError);
  EXPECT_THROW(solve_strong(4, Pairing({{0, 1}}), 1), PreconditionError);
  EXPECT_THROW(solve_strong(4, Pairing({{0, 1}}), 16), PreconditionError);
}

TEST(SolveLink, AllTerminalsOnTheApexSide) {
  const VertexId apex = v("00000");
  // Terminals all have coordinate 0 free and share the apex side.
  const Pairing y({{v("00010"), v("00100")}, {v("01000"), v("10000")}});
  const auto l = solve_link(5, apex, y);
  expect_valid(link_graph(Cube(5), apex), y, l);
  EXPECT_FALSE(uses(l, apex));
  EXPECT_FALSE(uses(l, v("11111")));
}

TEST(SolveLink, TerminalAboveTheApexBecomesT1) {
  const VertexId apex = v("00000");
  const VertexId t = v("00001");
  const Pairing y({{v("00110"), v("01010")}, {v("10010"), t}});
  const auto l = solve_link(5, apex, y);
  expect_valid(link_graph(Cube(5), apex), y, l);
  EXPECT_EQ(top(l), "Q5:link-two-sides");
}

TEST(SolveLink, MoreTerminalsAwayFromTheApexSwapsTheSides) {
  const VertexId apex = v("00000");
  // Coordinate 0 is free; all four terminals have it set, opposite the apex.
  const Pairing y({{v("00011"), v("00101")}, {v("01001"), v("10001")}});
  const auto l = solve_link(5, apex, y);
  expect_valid(link_graph(Cube(5), apex), y, l);
  EXPECT_EQ(top(l), "Q5:link-one-side");
}

TEST(SolveLink, ExhaustiveOverApexSideInstancesOfQ5) {
  // Every two-pair instance whose terminals share the apex side in some free
  // direction; these reach the detour branch whenever the apex is used.
  const VertexId apex = 0;
  const HostGraph host = link_graph(Cube(5), apex);
  int detours = 0;
  int count = 0;
  for_each_exhaustive(host, 2, false, [&](std::uint64_t, const CertInstance& inst) {
    if (count >= 20000) return false;
    ++count;
    const Pairing y(inst.pairs);
    const auto l = solve_link(5, apex, y);
    EXPECT_TRUE(reference::valid_linkage(host, inst.pairs, l.paths));
    detours += std::count(l.scenario_trace.begin(), l.scenario_trace.end(), "Q5:link-detour");
    return true;
  });
  EXPECT_GT(detours, 0);
}

TEST(SolveLink, RandomInstancesInLargerLinks) {
  for (int n : {3, 6, 7, 8}) {
    const Cube cube(n);
    const VertexId apex = static_cast<VertexId>(cube.vertex_count() / 3);
    const HostGraph host = link_graph(cube, apex);
    const int k = n / 2;
    for (const auto& inst : sample_instances(host, k, 150, 41)) {
      const Pairing y(inst.pairs);
      const auto l = solve_link(n, apex, y);
      EXPECT_TRUE(reference::valid_linkage(host, inst.pairs, l.paths));
    }
  }
}

TEST(SolveLink, Rejections) {
  EXPECT_THROW(solve_link(4, 0, Pairing({{1, 2}})), PreconditionError);
  EXPECT_THROW(solve_link(5, 0, Pairing({{0, 3}})), PreconditionError);
  EXPECT_THROW(solve_link(5, 0, Pairing({{31, 3}})), PreconditionError);
  EXPECT_THROW(solve_link(5, 0, Pairing({{1, 2}, {4, 8}, {16, 3}})), PreconditionError);
}

TEST(DetectConfig3F, Examples) {
  const auto hit = detect_config_3F(Pairing({{v("000"), v("110")}, {v("100"), v("010")}}));
  ASSERT_TRUE(hit);
  EXPECT_EQ(format_face(hit->face), "**0");
  EXPECT_EQ(hit->witness_terminal, v("000"));
  EXPECT_FALSE(detect_config_3F(Pairing({{v("000"), v("110")}, {v("011"), v("101")}})));
  EXPECT_FALSE(detect_config_3F(Pairing({{v("000"), v("011")}, {v("101"), v("110")}})));
}

TEST(DetectConfig3F, WitnessSatisfiesTheDefinition) {
  // Exhaustive over |X| = 4 and |X| = 6.
  for (int k : {2, 3}) {
    for_each_exhaustive(HostGraph::cube(3), k, false, [&](std::uint64_t, const CertInstance& inst) {
      const Pairing y(inst.pairs);
      const auto hit = detect_config_3F(y);
      if (!hit) return true;
      EXPECT_EQ(hit->face.dimension(), 2);
      for (VertexId u : hit->face.vertices()) EXPECT_TRUE(y.is_terminal(u));
      const auto it = std::find_if(y.begin(), y.end(), [&](const auto& p) {
        return p.s == hit->witness_terminal || p.t == hit->witness_terminal;
      });
      if (it == y.end()) {
        ADD_FAILURE() << "witness is not a terminal";
        return false;
      }
      const VertexId partner = it->s == hit->witness_terminal ? it->t : it->s;
      EXPECT_TRUE(hit->face.contains(partner));
      EXPECT_EQ(distance(partner, hit->witness_terminal), 2);
      return true;
    });
  }
}

TEST(DetectConfig3F, CoincidesWithUnlinkedQ3Instances) {
  for_each_exhaustive(HostGraph::cube(3), 2, false, [&](std::uint64_t, const CertInstance& inst) {
    EXPECT_EQ(detect_config_3F(Pairing(inst.pairs)).has_value(), !reference::linked(HostGraph::cube(3), inst.pairs));
    return true;
  });
}

TEST(Completeness, SampledCubesUpToQ10) {
  for (int d = 1; d <= 10; ++d) {
    for (int k = 1; k <= (d + 1) / 2; ++k) {
      if (d == 3 && k == 2) continue;
      const HostGraph host = HostGraph::cube(d);
      for (const auto& inst : sample_instances(host, k, d <= 7 ? 300 : 40, 1000 + static_cast<std::uint64_t>(d))) {
        const Pairing y(inst.pairs);
        const auto l = solve_linkage(d, y);
        EXPECT_TRUE(reference::valid_linkage(host, inst.pairs, l.paths)) << "d=" << d << " k=" << k;
      }
    }
  }
}

TEST(Completeness, OracleAgreesOnQ5) {
  const HostGraph host = HostGraph::cube(5);
  for (const auto& inst : sample_instances(host, 3, 200, 77)) {
    const Pairing y(inst.pairs);
    expect_valid(host, y, solve_linkage(5, y));
    EXPECT_EQ(decide_linked(host, y).outcome, Decision::Linked);
  }
}

TEST(Determinism, IdenticalInputsGiveIdenticalLinkages) {
  for (const auto& inst : sample_instances(HostGraph::cube(7), 4, 50, 5)) {
    const Pairing y(inst.pairs);
    const auto a = solve_linkage(7, y);
    const auto b = solve_linkage(7, y);
    EXPECT_EQ(a.paths, b.paths);
    EXPECT_EQ(a.scenario_trace, b.scenario_trace);
  }
}

}  // namespace
}  // namespace cubelink
