#include "cubelink/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "cubelink/engine.hpp"
#include "cubelink/errors.hpp"
#include "cubelink/instance_io.hpp"
#include "cubelink/rng.hpp"

namespace cubelink {

namespace detail {

std::vector<VertexId> allowed_vertices(const HostGraph& host) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < host.vertex_count(); ++v) {
    if (host.allowed(v)) out.push_back(v);
  }
  return out;
}

}  // namespace detail

namespace {

using nlohmann::json;

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

std::uint64_t pairing_count(int k) {
  std::uint64_t out = 1;
  for (int i = 2 * k - 1; i > 1; i -= 2) out *= static_cast<std::uint64_t>(i);
  return out;
}

enum class Verdict { Success, Failure, Budget };

struct Outcome {
  Verdict verdict = Verdict::Success;
  std::string reason;
  std::string counter;
};

Linkage run_engine(const CertificationJob& job, const Pairing& y, const CertInstance& inst) {
  const int dim = job.host.cube_dim();
  switch (job.claim) {
    case Claim::Linked:
      return solve_linkage(dim, y);
    case Claim::Strong:
      return solve_strong(dim, y, *inst.forbidden);
    case Claim::VertexLink:
      return solve_link(dim, *job.apex, y);
  }
  throw PreconditionError("unknown claim");
}

Outcome evaluate(const CertificationJob& job, const CertInstance& inst) {
  const Pairing y(inst.pairs);
  std::vector<VertexId> extra;
  if (inst.forbidden) extra.push_back(*inst.forbidden);
  const HostGraph host = job.host.without(extra);

  Outcome out;
  const auto failed = [&](std::string why) {
    out.verdict = Verdict::Failure;
    out.reason = std::move(why);
    return out;
  };

  if (job.solver != SolverKind::Oracle) {
    Linkage linkage;
    try {
      linkage = run_engine(job, y, inst);
    } catch (const InvariantFailure& e) {
      return failed(e.what());
    } catch (const PreconditionError& e) {
      return failed(std::string("engine rejected the instance: ") + e.what());
    }
    const auto report = validate_linkage(host, y, linkage);
    if (!report.ok()) return failed("engine output invalid: " + report.message);
    out.counter = linkage.scenario_trace.empty() ? "engine" : linkage.scenario_trace.front();
    if (job.solver == SolverKind::Engine) return out;
  }

  const auto decision = decide_linked(host, y, job.budget);
  switch (decision.outcome) {
    case Decision::BudgetExceeded:
      out.verdict = Verdict::Budget;
      out.reason = "node budget exceeded";
      out.counter = "oracle:budget-exceeded";
      return out;
    case Decision::Unlinked:
      out.counter = "oracle:unlinked";
      return failed(job.solver == SolverKind::Both ? "oracle reports UNLINKED for an engine-linked instance"
                                                   : "oracle reports UNLINKED");
    case Decision::Linked:
      break;
  }
  const auto report = validate_linkage(host, y, *decision.linkage);
  if (!report.ok()) return failed("oracle output invalid: " + report.message);
  if (job.solver == SolverKind::Oracle) out.counter = "oracle:linked";
  return out;
}

void check_job(const CertificationJob& job, const std::vector<VertexId>& pool) {
  if (job.k < 1) throw PreconditionError("k must be at least 1");
  const bool strong = job.claim == Claim::Strong;
  const std::size_t needed = static_cast<std::size_t>(2 * job.k) + (strong ? 1 : 0);
  if (needed > pool.size()) throw PreconditionError("host has fewer than the required number of vertices");
  if (job.mode == Mode::Sampled && job.samples < 1) throw PreconditionError("sampled mode needs n >= 1");
  if (job.workers < 1) throw PreconditionError("at least one worker is required");
  if (job.solver != SolverKind::Oracle) {
    if (!job.host.is_cube()) throw PreconditionError("the engine only runs on cube hosts");
    if (job.claim == Claim::VertexLink) {
      if (!job.apex) throw PreconditionError("vertex-link certification needs an apex");
    } else if (!job.host.forbidden().empty()) {
      throw PreconditionError("the engine needs an intact cube for this claim");
    }
  }
  if (job.claim == Claim::VertexLink && !job.apex) throw PreconditionError("vertex-link certification needs an apex");
}

void record(CertificationReport& report, const CertificationJob& job, std::uint64_t index,
            const CertInstance& inst, const Outcome& outcome) {
  ++report.instances;
  if (!outcome.counter.empty()) ++report.counters[outcome.counter];
  switch (outcome.verdict) {
    case Verdict::Success:
      ++report.successes;
      break;
    case Verdict::Budget:
      ++report.budget_exceeded;
      break;
    case Verdict::Failure: {
      std::vector<VertexId> extra;
      if (inst.forbidden) extra.push_back(*inst.forbidden);
      const HostGraph host = job.host.without(extra);
      report.failures.push_back({index, outcome.reason, instance_to_json(host, Pairing(inst.pairs))});
      break;
    }
  }
}

/// Runs `body(worker)` on `workers` threads (inline for one) and merges.
template <typename Body>
CertificationReport fan_out(int workers, Body&& body) {
  std::vector<CertificationReport> parts(static_cast<std::size_t>(workers));
  if (workers == 1) {
    body(0, parts[0]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back([&, w] { body(w, parts[static_cast<std::size_t>(w)]); });
    for (auto& t : threads) t.join();
  }
  CertificationReport merged;
  for (const auto& part : parts) merged.merge(part);
  return merged;
}

std::string vertex_list_json(const std::vector<VertexId>& vs, int dim) {
  json out = json::array();
  for (VertexId v : vs) out.push_back(format_vertex(v, dim));
  return out.dump();
}

/// Distinct vertices of Q_d, count of them, drawn by sparse Fisher-Yates.
std::vector<VertexId> draw_distinct(SplitMix64& rng, VertexId universe, std::size_t count) {
  std::unordered_map<VertexId, VertexId> swapped;
  const auto at = [&](VertexId i) {
    const auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < count; ++i) {
    const VertexId pos = static_cast<VertexId>(i);
    const VertexId j = pos + static_cast<VertexId>(rng.below(universe - pos));
    const VertexId picked = at(j);
    swapped[j] = at(pos);
    out.push_back(picked);
  }
  return out;
}

CertificationReport association_bound(const SuiteOptions& options) {
  CertificationReport report;
  const auto check = [&](int d, const std::vector<VertexId>& z, std::uint64_t index, const std::string& label) {
    ++report.instances;
    ++report.counters[label];
    const auto assoc = associated_pairs(Cube(d), z);
    if (assoc.size() + 1 <= z.size()) {
      ++report.successes;
    } else {
      report.failures.push_back({index, std::to_string(assoc.size()) + " associated directions for " +
                                            std::to_string(z.size()) + " vertices",
                                 vertex_list_json(z, d)});
    }
  };
  std::uint64_t index = 0;
  for (VertexId mask = 1; mask < 256; ++mask) {
    std::vector<VertexId> z;
    for (VertexId v = 0; v < 8; ++v) {
      if ((mask >> v) & 1U) z.push_back(v);
    }
    check(3, z, index++, "Q3:exhaustive");
  }
  for (int d = 4; d <= 8; ++d) {
    const VertexId n = VertexId{1} << d;
    for (std::uint64_t i = 0; i < options.samples; ++i, ++index) {
      SplitMix64 rng(instance_seed(options.seed + static_cast<std::uint64_t>(d), i));
      const std::size_t size = 1 + rng.below(std::min<std::uint64_t>(n, 2 * static_cast<std::uint64_t>(d)));
      check(d, draw_distinct(rng, n, size), index, "Q" + std::to_string(d) + ":sampled");
    }
  }
  return report;
}

CertificationReport separator_structure(const SuiteOptions& options) {
  CertificationReport report;
  const auto check = [&](int d, const std::vector<VertexId>& s, std::uint64_t index) {
    ++report.instances;
    const auto result = check_separator_structure(Cube(d), s);
    const std::string prefix = "Q" + std::to_string(d) + ":";
    switch (result.kind) {
      case SeparatorKind::NotSeparator:
        ++report.counters[prefix + "not-separating"];
        ++report.successes;
        break;
      case SeparatorKind::Neighborhood:
        ++report.counters[prefix + "neighbourhood"];
        if (result.independent) {
          ++report.successes;
        } else {
          report.failures.push_back({index, "separating neighbourhood with an inner edge", vertex_list_json(s, d)});
        }
        break;
      case SeparatorKind::Violation:
        ++report.counters[prefix + "violation"];
        report.failures.push_back({index, "separating set is not a vertex neighbourhood", vertex_list_json(s, d)});
        break;
    }
  };
  std::uint64_t index = 0;
  std::vector<VertexId> all3(8);
  for (VertexId v = 0; v < 8; ++v) all3[v] = v;
  auto visit = [&](const std::vector<VertexId>& s) {
    check(3, s, index++);
    return true;
  };
  detail::for_each_subset(all3, 3, visit);
  for (std::uint64_t i = 0; i < options.samples; ++i) {
    SplitMix64 rng(instance_seed(options.seed, i));
    auto s = draw_distinct(rng, 16, 4);
    std::sort(s.begin(), s.end());
    check(4, s, index++);
  }
  return report;
}

CertificationReport shared_neighbors(const SuiteOptions&) {
  CertificationReport report;
  std::uint64_t index = 0;
  for (int d = 1; d <= 6; ++d) {
    const Cube cube(d);
    for (VertexId u = 0; u < cube.vertex_count(); ++u) {
      for (VertexId v = u + 1; v < cube.vertex_count(); ++v, ++index) {
        const int shared = max_shared_neighbors(cube, u, v);
        ++report.instances;
        ++report.counters["shared=" + std::to_string(shared)];
        if (shared <= 2) {
          ++report.successes;
        } else {
          report.failures.push_back({index, std::to_string(shared) + " common neighbours",
                                     vertex_list_json({u, v}, d)});
        }
      }
    }
  }
  return report;
}

/// Checks the conditions omega must meet; returns an empty string when they hold.
std::string omega_violation(const ScenarioContext& ctx) {
  const int d = ctx.dim;
  const Face fo = ctx.facet.opposite();
  std::set<VertexId> images;
  for (const auto& [x, w] : ctx.omega) {
    if (!images.insert(w).second) return "omega is not injective";
    const VertexId rho = ctx.partner.at(x);
    const auto terminal_other_than_rho = [&](VertexId v) { return ctx.partner.count(v) != 0 && v != rho; };
    if (w == x) {
      if (terminal_other_than_rho(project(x, fo))) return "omega(x) = x although x is blocked across F";
      continue;
    }
    if (!adjacent(w, x) || !ctx.facet.contains(w)) return "omega(x) is not an F-neighbour of x";
    if (ctx.partner.count(w) != 0) return "omega(x) is a terminal";
    if (terminal_other_than_rho(project(w, fo))) return "omega(x) projects onto another terminal";
  }
  for (int size : ctx.obstruction_sizes) {
    if (size > d - 2) return "obstruction set larger than d - 2";
  }
  if (static_cast<int>(ctx.avoid.size()) > d - 1) return "s_1-t_1 avoid set larger than d - 1";
  std::vector<VertexId> local;
  for (VertexId v : ctx.avoid) local.push_back(drop_coord(v, ctx.facet.facet_coord()));
  const HostGraph f = HostGraph::cube(d - 1, local);
  const int c = ctx.facet.facet_coord();
  if (!avoid_path(f, drop_coord(ctx.pairs[0].s, c), drop_coord(ctx.pairs[0].t, c))) {
    return "no s_1-t_1 path inside F avoiding S";
  }
  return {};
}

CertificationReport omega_conditions(const SuiteOptions& options) {
  CertificationReport report;
  std::uint64_t index = 0;
  for (int d = 5; d <= 9; d += 2) {
    const int k = (d + 1) / 2;
    const HostGraph host = HostGraph::cube(d);
    const auto pool = detail::allowed_vertices(host);
    const std::string prefix = "Q" + std::to_string(d) + ":";
    for (std::uint64_t i = 0; i < options.samples; ++i, ++index) {
      const CertInstance inst = sample_instance(pool, k, false, options.seed + static_cast<std::uint64_t>(d), i);
      const Pairing y(inst.pairs);
      const auto x = y.terminals();
      const bool antipodal = std::all_of(y.begin(), y.end(), [d](const auto& p) { return distance(p.s, p.t) == d; });
      bool common = false;
      for (int c = 0; c < d && !common; ++c) {
        common = std::all_of(x.begin(), x.end(), [&](VertexId v) { return ((v ^ x[0]) >> c & 1U) == 0; });
      }
      if (antipodal || common) {
        ++report.counters[prefix + "skipped"];
        continue;
      }
      ++report.instances;
      ++report.counters[prefix + "checked"];
      std::string why;
      try {
        why = omega_violation(build_scenario3_context(d, y));
      } catch (const InvariantFailure& e) {
        why = e.what();
      }
      if (why.empty()) {
        ++report.successes;
      } else {
        report.failures.push_back({index, why, instance_to_json(host, y)});
      }
    }
  }
  return report;
}

}  // namespace

void CertificationReport::merge(const CertificationReport& other) {
  instances += other.instances;
  successes += other.successes;
  budget_exceeded += other.budget_exceeded;
  for (const auto& [name, count] : other.counters) counters[name] += count;
  const auto middle = failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  std::inplace_merge(failures.begin(), middle, failures.end(),
                     [](const CertFailure& a, const CertFailure& b) { return a.index < b.index; });
  wall_seconds = std::max(wall_seconds, other.wall_seconds);
}

CertificationJob vertex_link_job(int dim, VertexId apex, int k) {
  CertificationJob job;
  job.host = link_graph(Cube(dim), apex);
  job.k = k;
  job.claim = Claim::VertexLink;
  job.apex = apex;
  return job;
}

std::uint64_t exhaustive_count(const CertificationJob& job) {
  const auto n = static_cast<std::uint64_t>(detail::allowed_vertices(job.host).size());
  const auto r = static_cast<std::uint64_t>(2 * job.k);
  if (job.claim == Claim::Strong) return n * binomial(n - 1, r) * pairing_count(job.k);
  return binomial(n, r) * pairing_count(job.k);
}

CertInstance sample_instance(const std::vector<VertexId>& pool, int k, bool strong, std::uint64_t seed,
                             std::uint64_t index) {
  const std::size_t count = static_cast<std::size_t>(2 * k) + (strong ? 1 : 0);
  if (count > pool.size()) throw PreconditionError("2k exceeds the number of host vertices");
  SplitMix64 rng(instance_seed(seed, index));
  const auto picks = draw_distinct(rng, static_cast<VertexId>(pool.size()), count);
  CertInstance inst;
  for (int i = 0; i < k; ++i) {
    inst.pairs.push_back({pool[picks[static_cast<std::size_t>(2 * i)]], pool[picks[static_cast<std::size_t>(2 * i + 1)]]});
  }
  if (strong) inst.forbidden = pool[picks.back()];
  return inst;
}

std::vector<CertInstance> sample_instances(const HostGraph& host, int k, std::uint64_t n, std::uint64_t seed,
                                           bool strong) {
  if (n < 1) throw PreconditionError("sample count must be at least 1");
  if (k < 1) throw PreconditionError("k must be at least 1");
  const auto pool = detail::allowed_vertices(host);
  std::vector<CertInstance> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(sample_instance(pool, k, strong, seed, i));
  return out;
}

CertificationReport certify(const CertificationJob& job) {
  const auto start = std::chrono::steady_clock::now();
  const auto pool = detail::allowed_vertices(job.host);
  check_job(job, pool);
  const bool strong = job.claim == Claim::Strong;
  const auto workers = static_cast<std::uint64_t>(job.workers);
  std::atomic<bool> stop{false};

  auto report = fan_out(job.workers, [&](int worker, CertificationReport& part) {
    const auto mine = static_cast<std::uint64_t>(worker);
    const auto handle = [&](std::uint64_t index, const CertInstance& inst) {
      if (stop.load(std::memory_order_relaxed)) return false;
      if (index % workers != mine) return true;
      const Outcome outcome = evaluate(job, inst);
      record(part, job, index, inst, outcome);
      if (outcome.verdict == Verdict::Failure && job.fail_fast) stop = true;
      return true;
    };
    if (job.mode == Mode::Exhaustive) {
      for_each_exhaustive(job.host, job.k, strong, handle);
    } else {
      for (std::uint64_t i = mine; i < job.samples; i += workers) {
        if (!handle(i, sample_instance(pool, job.k, strong, job.seed, i))) break;
      }
    }
  });
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<std::string> property_suite_names() {
  return {"association_bound", "separator_structure", "shared_neighbors", "omega_conditions"};
}

CertificationReport property_suite(const std::string& name, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CertificationReport report;
  if (name == "association_bound") {
    report = association_bound(options);
  } else if (name == "separator_structure") {
    report = separator_structure(options);
  } else if (name == "shared_neighbors") {
    report = shared_neighbors(options);
  } else if (name == "omega_conditions") {
    report = omega_conditions(options);
  } else {
    throw PreconditionError("unknown property suite \"" + name + "\"");
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string to_string(Claim claim) {
  switch (claim) {
    case Claim::Linked:
      return "linked";
    case Claim::Strong:
      return "strong";
    case Claim::VertexLink:
      return "vertex-link";
  }
  return "?";
}

std::string to_string(Mode mode) { return mode == Mode::Exhaustive ? "exhaustive" : "sampled"; }

std::string to_string(SolverKind solver) {
  switch (solver) {
    case SolverKind::Engine:
      return "engine";
    case SolverKind::Oracle:
      return "oracle";
    case SolverKind::Both:
      return "both";
  }
  return "?";
}

std::string report_to_json(const CertificationReport& report, bool timing, int indent) {
  json doc;
  doc["passed"] = report.passed();
  doc["instances"] = report.instances;
  doc["successes"] = report.successes;
  doc["budget_exceeded"] = report.budget_exceeded;
  json failures = json::array();
  for (const auto& f : report.failures) {
    json entry{{"index", f.index}, {"reason", f.reason}};
    entry["instance"] = json::parse(f.instance, nullptr, false);
    failures.push_back(std::move(entry));
  }
  doc["failures"] = std::move(failures);
  doc["counters"] = report.counters;
  if (timing) doc["wall_seconds"] = report.wall_seconds;
  return doc.dump(indent);
}

std::string report_to_text(const CertificationReport& report, bool timing) {
  std::ostringstream out;
  const auto row = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(18) << label << value << '\n';
  };
  row("result", report.passed() ? "PASS" : "FAIL");
  row("instances", std::to_string(report.instances));
  row("successes", std::to_string(report.successes));
  row("failures", std::to_string(report.failures.size()));
  row("budget exceeded", std::to_string(report.budget_exceeded));
  if (timing) {
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(3) << report.wall_seconds << " s";
    row("wall time", secs.str());
  }
  if (!report.counters.empty()) {
    std::size_t width = 0;
    for (const auto& [name, count] : report.counters) width = std::max(width, name.size());
    out << "counters\n";
    for (const auto& [name, count] : report.counters) {
      out << "  " << std::left << std::setw(static_cast<int>(width) + 2) << name << count << '\n';
    }
  }
  for (const auto& f : report.failures) {
    out << "failure #" << f.index << ": " << f.reason << '\n' << "  " << f.instance << '\n';
  }
  return out.str();
}

}  // namespace cubelink
