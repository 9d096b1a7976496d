#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubelink/host_graph.hpp"
#include "cubelink/linkage.hpp"
#include "cubelink/oracle.hpp"

// Exhaustive and sampled certification of linkage claims.
//
// An instance is a list of k terminal pairs, plus a forbidden vertex for the
// strong claim. Instances are numbered; worker w of W handles the indices
// congruent to w mod W, so the report never depends on the worker count.

namespace cubelink {

/// Seed used by sampled jobs unless one is given.
inline constexpr std::uint64_t kDefaultSeed = 1;

enum class Claim {
  Linked,      ///< every k-pairing of the host is linked
  Strong,      ///< ... also after deleting any one non-terminal vertex
  VertexLink,  ///< host is Q_{d+1} - {v, v^o}
};

enum class Mode { Exhaustive, Sampled };

enum class SolverKind { Engine, Oracle, Both };

struct CertificationJob {
  HostGraph host = HostGraph::cube(1);
  int k = 1;
  Claim claim = Claim::Linked;
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  SolverKind solver = SolverKind::Engine;
  std::optional<VertexId> apex;  ///< VertexLink: v, with host = link_graph(Q_{d+1}, v)
  std::uint64_t budget = kDefaultNodeBudget;
  int workers = 1;
  bool fail_fast = false;
};

/// Builds the VertexLink host around `apex` in Q_{dim}.
CertificationJob vertex_link_job(int dim, VertexId apex, int k);

struct CertInstance {
  std::vector<TerminalPair> pairs;
  std::optional<VertexId> forbidden;
};

struct CertFailure {
  std::uint64_t index = 0;
  std::string reason;
  std::string instance;  ///< replayable instance document
};

struct CertificationReport {
  std::uint64_t instances = 0;
  std::uint64_t successes = 0;
  std::uint64_t budget_exceeded = 0;
  std::vector<CertFailure> failures;             ///< sorted by index
  std::map<std::string, std::uint64_t> counters; ///< top-level engine case, oracle outcome, ...
  double wall_seconds = 0.0;

  bool passed() const noexcept { return failures.empty() && budget_exceeded == 0; }
  /// Associative; failures stay sorted by index.
  void merge(const CertificationReport& other);
};

CertificationReport certify(const CertificationJob& job);

/// Number of instances an exhaustive job enumerates.
std::uint64_t exhaustive_count(const CertificationJob& job);

/// Calls `visit(index, instance)` for every exhaustive instance in canonical
/// order: terminal sets lexicographically, the smallest terminal paired first
/// with partners ascending, and for Strong the forbidden vertex outermost.
/// Stops early when `visit` returns false.
template <typename Visit>
void for_each_exhaustive(const HostGraph& host, int k, bool strong, Visit&& visit);

/// Instance `index` of a sampled stream: 2k (+1 when strong) distinct vertices
/// drawn from `pool` by a partial Fisher-Yates shuffle under
/// SplitMix64(instance_seed(seed, index)); consecutive draws form the pairs and
/// the extra draw is the forbidden vertex.
CertInstance sample_instance(const std::vector<VertexId>& pool, int k, bool strong, std::uint64_t seed,
                             std::uint64_t index);

/// The first n instances of the sampled stream over the allowed vertices of `host`.
std::vector<CertInstance> sample_instances(const HostGraph& host, int k, std::uint64_t n, std::uint64_t seed,
                                           bool strong = false);

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 10'000;  ///< per sampled dimension
};

/// association_bound | separator_structure | shared_neighbors | omega_conditions.
/// Throws PreconditionError for any other name.
CertificationReport property_suite(const std::string& name, const SuiteOptions& options = {});

std::vector<std::string> property_suite_names();

std::string to_string(Claim claim);
std::string to_string(Mode mode);
std::string to_string(SolverKind solver);

std::string report_to_json(const CertificationReport& report, bool timing = false, int indent = 2);
/// Aligned human-readable summary.
std::string report_to_text(const CertificationReport& report, bool timing = false);

// ---------------------------------------------------------------------------

namespace detail {

/// Canonical pairings of a sorted terminal list; returns false if stopped.
template <typename Visit>
bool for_each_pairing(std::vector<VertexId>& rest, std::vector<TerminalPair>& acc, Visit& visit) {
  if (rest.empty()) return visit(acc);
  const VertexId s = rest.front();
  for (std::size_t j = 1; j < rest.size(); ++j) {
    const VertexId t = rest[j];
    std::vector<VertexId> next;
    next.reserve(rest.size() - 2);
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (i != j) next.push_back(rest[i]);
    }
    acc.push_back({s, t});
    const bool go_on = for_each_pairing(next, acc, visit);
    acc.pop_back();
    if (!go_on) return false;
  }
  return true;
}

/// Lexicographic r-subsets of `pool`; returns false if stopped.
template <typename Visit>
bool for_each_subset(const std::vector<VertexId>& pool, std::size_t r, Visit& visit) {
  if (r > pool.size()) return true;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  std::vector<VertexId> chosen(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) chosen[i] = pool[idx[i]];
    if (!visit(chosen)) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == pool.size() - r + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<VertexId> allowed_vertices(const HostGraph& host);

}  // namespace detail

template <typename Visit>
void for_each_exhaustive(const HostGraph& host, int k, bool strong, Visit&& visit) {
  const std::vector<VertexId> pool = detail::allowed_vertices(host);
  std::uint64_t index = 0;
  const auto run = [&](const std::vector<VertexId>& candidates, std::optional<VertexId> forbidden) {
    auto on_set = [&](const std::vector<VertexId>& set) {
      std::vector<VertexId> rest = set;
      std::vector<TerminalPair> acc;
      auto on_pairing = [&](const std::vector<TerminalPair>& pairs) {
        return static_cast<bool>(visit(index++, CertInstance{pairs, forbidden}));
      };
      return detail::for_each_pairing(rest, acc, on_pairing);
    };
    return detail::for_each_subset(candidates, static_cast<std::size_t>(2 * k), on_set);
  };
  if (!strong) {
    run(pool, std::nullopt);
    return;
  }
  for (VertexId x : pool) {
    std::vector<VertexId> others;
    for (VertexId v : pool) {
      if (v != x) others.push_back(v);
    }
    if (!run(others, x)) return;
  }
}

}  // namespace cubelink
