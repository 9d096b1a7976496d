#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubelink/certifier.hpp"
#include "cubelink/engine.hpp"
#include "cubelink/errors.hpp"
#include "cubelink/instance_io.hpp"
#include "cubelink/oracle.hpp"

namespace cubelink::cli {

namespace {

using nlohmann::json;

struct Options {
  int dim = 0;
  std::string pairs;
  std::string avoid;
  std::string apex;
  std::string host;
  std::string instance;
  std::string linkage;
  int k = 0;
  std::string mode = "exhaustive";
  std::uint64_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string solver = "engine";
  int workers = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  bool fail_fast = false;
  bool timing = false;
  bool strong = false;
  std::string format = "json";
  std::string suite;
};

/// A usage problem detected after flag parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, sep)) out.push_back(item);
  return out;
}

Pairing parse_pairs(const HostGraph& host, const std::string& text) {
  std::vector<TerminalPair> pairs;
  for (const auto& item : split(text, ',')) {
    const auto ends = split(item, ':');
    if (ends.size() != 2) throw UsageError("pairs are written s:t and separated by commas");
    pairs.push_back({host.parse(ends[0]), host.parse(ends[1])});
  }
  return Pairing(std::move(pairs));
}

/// The instance named by --instance, or else the one given by --dim/--pairs
/// (with --avoid / --apex removed from the cube).
Instance load_instance(const Options& o, std::istream& in) {
  if (!o.instance.empty()) return parse_instance(read_source(o.instance, in));
  if (o.dim < 1 || o.pairs.empty()) throw UsageError("give --instance, or --dim together with --pairs");
  const HostGraph cube = HostGraph::cube(o.dim);
  std::vector<VertexId> removed;
  if (!o.avoid.empty()) removed.push_back(cube.parse(o.avoid));
  if (!o.apex.empty()) {
    const VertexId v = cube.parse(o.apex);
    removed.push_back(v);
    removed.push_back(Cube(o.dim).opposite(v));
  }
  return Instance{HostGraph::cube(o.dim, removed), parse_pairs(cube, o.pairs)};
}

HostGraph load_host(const Options& o, std::istream& in, int& link_dim) {
  link_dim = 0;
  const auto colon = o.host.find(':');
  const std::string kind = o.host.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : o.host.substr(colon + 1);
  if (kind == "pyramid2-quad") return HostGraph::pyramid2_quad();
  if (kind == "graph") {
    const std::string text = read_source(arg, in);
    const json doc = json::parse(text, nullptr, false);
    if (!doc.is_discarded() && doc.is_object() && doc.contains("host")) return parse_host(doc["host"].dump());
    return parse_host(text);
  }
  if (kind == "cube" || kind == "link") {
    int d = 0;
    try {
      d = std::stoi(arg);
    } catch (const std::exception&) {
      throw UsageError("--host " + kind + ":D needs an integer dimension");
    }
    if (d < 1 || d > kMaxDim) throw UsageError("dimension out of range");
    if (kind == "cube") return HostGraph::cube(d);
    link_dim = d;
    const VertexId v = o.apex.empty() ? 0 : parse_vertex(o.apex, d);
    return link_graph(Cube(d), v);
  }
  throw UsageError("--host must be cube:D, link:D, pyramid2-quad or graph:PATH");
}

json document(const std::string& text) { return json::parse(text); }

json instance_json(const HostGraph& host, const Pairing& y) { return document(instance_to_json(host, y)); }

void print_solution(const Options& o, const HostGraph& host, const Pairing& y, const Linkage& linkage,
                    std::ostream& out) {
  if (o.format == "text") {
    for (std::size_t i = 0; i < linkage.paths.size(); ++i) {
      out << "path " << (i + 1) << ":";
      for (VertexId v : linkage.paths[i]) out << ' ' << host.name(v);
      out << '\n';
    }
    out << "trace:";
    for (const auto& step : linkage.scenario_trace) out << ' ' << step;
    out << '\n';
    return;
  }
  json doc = document(linkage_to_json(host, linkage));
  doc["instance"] = instance_json(host, y);
  out << doc.dump(2) << '\n';
}

int cmd_solve(const Options& o, std::istream& in, std::ostream& out) {
  const Instance inst = load_instance(o, in);
  if (!inst.host.is_cube() || !inst.host.forbidden().empty()) {
    throw UsageError("solve needs an intact cube host; use strong-solve or link-solve otherwise");
  }
  const Linkage linkage = solve_linkage(inst.host.cube_dim(), inst.pairs);
  print_solution(o, inst.host, inst.pairs, linkage, out);
  return kOk;
}

int cmd_strong_solve(const Options& o, std::istream& in, std::ostream& out) {
  const Instance inst = load_instance(o, in);
  if (!inst.host.is_cube() || inst.host.forbidden().size() != 1) {
    throw UsageError("strong-solve needs a cube host with exactly one forbidden vertex (--avoid)");
  }
  const Linkage linkage = solve_strong(inst.host.cube_dim(), inst.pairs, inst.host.forbidden().front());
  print_solution(o, inst.host, inst.pairs, linkage, out);
  return kOk;
}

int cmd_link_solve(const Options& o, std::istream& in, std::ostream& out) {
  const Instance inst = load_instance(o, in);
  const auto& removed = inst.host.forbidden();
  if (!inst.host.is_cube() || removed.size() != 2 ||
      Cube(inst.host.cube_dim()).opposite(removed[0]) != removed[1]) {
    throw UsageError("link-solve needs a cube host missing exactly an antipodal pair (--apex)");
  }
  const VertexId apex = std::min(removed[0], removed[1]);
  const Linkage linkage = solve_link(inst.host.cube_dim(), apex, inst.pairs);
  print_solution(o, inst.host, inst.pairs, linkage, out);
  return kOk;
}

int cmd_decide(const Options& o, std::istream& in, std::ostream& out) {
  std::optional<Instance> inst;
  if (!o.host.empty() && o.instance.empty()) {
    int link_dim = 0;
    HostGraph host = load_host(o, in, link_dim);
    if (o.pairs.empty()) throw UsageError("decide --host needs --pairs");
    Pairing y = parse_pairs(host, o.pairs);
    inst.emplace(Instance{std::move(host), std::move(y)});
  } else {
    inst.emplace(load_instance(o, in));
  }
  const HostGraph& host = inst->host;
  const auto result = decide_linked(host, inst->pairs, o.budget);

  json doc;
  doc["instance"] = instance_json(host, inst->pairs);
  doc["nodes"] = result.nodes;
  doc["pair_order"] = result.pair_order;
  int code = kUnlinked;
  switch (result.outcome) {
    case Decision::Linked:
      doc["outcome"] = "LINKED";
      doc["paths"] = document(linkage_to_json(host, *result.linkage))["paths"];
      code = kOk;
      break;
    case Decision::Unlinked:
      doc["outcome"] = "UNLINKED";
      break;
    case Decision::BudgetExceeded:
      doc["outcome"] = "BUDGET_EXCEEDED";
      break;
  }
  if (result.outcome == Decision::Unlinked && host.is_cube() && host.cube_dim() == 3 &&
      host.forbidden().empty() && inst->pairs.size() >= 2) {
    if (const auto cert = detect_config_3F(inst->pairs)) {
      doc["certificate"] = {{"type", "config-3F"},
                            {"face", format_face(cert->face)},
                            {"witness", host.name(cert->witness_terminal)}};
    }
  }
  if (o.format == "text") {
    out << doc["outcome"].get<std::string>() << " after " << result.nodes << " search nodes\n";
    if (doc.contains("certificate")) {
      out << "config-3F on face " << doc["certificate"]["face"].get<std::string>() << ", witness "
          << doc["certificate"]["witness"].get<std::string>() << '\n';
    }
  } else {
    out << doc.dump(2) << '\n';
  }
  return code;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const std::string source = o.instance.empty() ? "-" : o.instance;
  const std::string text = read_source(source, in);
  Instance inst = [&] {
    const json doc = json::parse(text, nullptr, false);
    if (!doc.is_discarded() && doc.is_object() && doc.contains("instance")) return parse_instance(doc["instance"].dump());
    return parse_instance(text);
  }();
  const Linkage linkage = parse_linkage(o.linkage.empty() ? text : read_source(o.linkage, in), inst.host);
  const auto report = validate_linkage(inst.host, inst.pairs, linkage);

  json doc{{"valid", report.ok()}};
  if (!report.ok()) {
    doc["clause"] = to_string(report.clause);
    doc["path_index"] = report.path_index;
    doc["witness"] = inst.host.contains(report.witness) ? inst.host.name(report.witness) : "";
    doc["message"] = report.message;
  }
  if (o.format == "text") {
    out << (report.ok() ? "valid" : "invalid: " + report.message) << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
  return report.ok() ? kOk : kUnlinked;
}

SolverKind solver_kind(const std::string& name) {
  if (name == "engine") return SolverKind::Engine;
  if (name == "oracle") return SolverKind::Oracle;
  return SolverKind::Both;
}

void print_report(const Options& o, const CertificationReport& report, std::ostream& out) {
  if (o.format == "text") {
    out << report_to_text(report, o.timing);
  } else {
    out << report_to_json(report, o.timing) << '\n';
  }
}

int cmd_certify(const Options& o, std::istream& in, std::ostream& out) {
  if (o.host.empty()) throw UsageError("certify needs --host");
  if (o.k < 1) throw UsageError("certify needs --k >= 1");
  // Checked here rather than by CLI11, which silently drops invalid environment values.
  if (o.workers < 1 || o.workers > 256) throw UsageError("--workers / LINKAGE_WORKERS must be in [1, 256]");
  int link_dim = 0;
  CertificationJob job;
  job.host = load_host(o, in, link_dim);
  job.k = o.k;
  if (link_dim > 0) {
    if (o.strong) throw UsageError("--strong cannot be combined with a link host");
    job.claim = Claim::VertexLink;
    job.apex = o.apex.empty() ? 0 : parse_vertex(o.apex, link_dim);
  } else {
    job.claim = o.strong ? Claim::Strong : Claim::Linked;
  }
  job.mode = o.mode == "sampled" ? Mode::Sampled : Mode::Exhaustive;
  if (job.mode == Mode::Sampled && o.samples < 1) throw UsageError("sampled mode needs --samples >= 1");
  job.samples = o.samples;
  job.seed = o.seed;
  job.solver = solver_kind(o.solver);
  job.workers = o.workers;
  job.budget = o.budget;
  job.fail_fast = o.fail_fast;
  const auto report = certify(job);
  print_report(o, report, out);
  return report.passed() ? kOk : kUnlinked;
}

int cmd_suite(const Options& o, std::ostream& out) {
  SuiteOptions options;
  options.seed = o.seed;
  if (o.samples > 0) options.samples = o.samples;
  const auto report = property_suite(o.suite, options);
  print_report(o, report, out);
  return report.passed() ? kOk : kUnlinked;
}

double percentile(const std::vector<double>& sorted_values, double q) {
  const auto rank = static_cast<std::size_t>(q * static_cast<double>(sorted_values.size() - 1) + 0.5);
  return sorted_values[std::min(rank, sorted_values.size() - 1)];
}

int cmd_bench(const Options& o, std::istream& in, std::ostream& out) {
  if (o.host.empty() && o.dim < 1) throw UsageError("bench needs --dim or --host");
  Options local = o;
  if (local.host.empty()) local.host = "cube:" + std::to_string(o.dim);
  int link_dim = 0;
  const HostGraph host = load_host(local, in, link_dim);
  if (!host.is_cube()) throw UsageError("bench runs the engine and needs a cube or link host");
  const int d = host.cube_dim();
  const int k = o.k > 0 ? o.k : (link_dim > 0 ? d / 2 : (o.strong ? d / 2 : (d + 1) / 2));
  const std::uint64_t n = o.samples > 0 ? o.samples : 100;
  const VertexId apex = link_dim > 0 && !o.apex.empty() ? parse_vertex(o.apex, d) : 0;

  const auto instances = sample_instances(host, k, n, o.seed, o.strong);
  std::vector<double> millis;
  for (const auto& inst : instances) {
    const Pairing y(inst.pairs);
    const auto start = std::chrono::steady_clock::now();
    if (link_dim > 0) {
      solve_link(d, apex, y);
    } else if (o.strong) {
      solve_strong(d, y, *inst.forbidden);
    } else {
      solve_linkage(d, y);
    }
    millis.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(millis.begin(), millis.end());
  json doc{{"host", local.host},   {"k", k},
           {"samples", n},         {"seed", o.seed},
           {"p50_ms", percentile(millis, 0.5)}, {"p90_ms", percentile(millis, 0.9)},
           {"p99_ms", percentile(millis, 0.99)}, {"max_ms", millis.back()}};
  if (o.format == "text") {
    out << std::fixed << std::setprecision(3) << local.host << " k=" << k << " n=" << n
        << "  p50 " << percentile(millis, 0.5) << " ms  p90 " << percentile(millis, 0.9) << " ms  p99 "
        << percentile(millis, 0.99) << " ms  max " << millis.back() << " ms\n";
  } else {
    out << doc.dump(2) << '\n';
  }
  return kOk;
}

std::string write_replay(const std::string& dump) {
  std::filesystem::path dir;
  try {
    dir = std::filesystem::temp_directory_path();
  } catch (const std::filesystem::filesystem_error&) {
    dir = ".";
  }
  const auto path = dir / ("cubelink-replay-" + std::to_string(std::hash<std::string>{}(dump)) + ".json");
  std::ofstream file(path);
  file << dump << '\n';
  return path.string();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disjoint path linkages in hypercubes", "cubelink"};
  app.require_subcommand(1);
  Options o;

  const auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--dim", o.dim, "Cube dimension")->check(CLI::Range(1, kMaxDim));
    cmd->add_option("--pairs", o.pairs, "Terminal pairs s:t,s:t,...");
    cmd->add_option("--instance", o.instance, "Instance JSON file ('-' for stdin); overrides flags");
  };
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  const auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", o.budget, "Search-node budget per oracle call")->envname("LINKAGE_BUDGET");
  };

  auto* solve = app.add_subcommand("solve", "Construct a linkage in Q_d");
  add_instance_flags(solve);
  add_format(solve);

  auto* strong = app.add_subcommand("strong-solve", "Construct a linkage in Q_d avoiding one vertex");
  add_instance_flags(strong);
  strong->add_option("--avoid", o.avoid, "Forbidden vertex");
  add_format(strong);

  auto* link = app.add_subcommand("link-solve", "Construct a linkage in Q_d minus an antipodal pair");
  add_instance_flags(link);
  link->add_option("--apex", o.apex, "Removed vertex v (v and its antipode are deleted)");
  add_format(link);

  auto* decide = app.add_subcommand("decide", "Exact linkedness decision by search");
  add_instance_flags(decide);
  decide->add_option("--host", o.host, "cube:D | link:D | pyramid2-quad | graph:PATH")->excludes("--dim");
  decide->add_option("--avoid", o.avoid, "Forbidden vertex (with --dim)")->excludes("--host");
  decide->add_option("--apex", o.apex, "Link apex (with --dim or --host link:D)");
  add_budget(decide);
  add_format(decide);

  auto* verify = app.add_subcommand("verify", "Validate a linkage against its instance");
  verify->add_option("--instance", o.instance, "Instance (or solve output) JSON file, '-' for stdin");
  verify->add_option("--linkage", o.linkage, "Linkage JSON file when not embedded in the instance document");
  add_format(verify);

  auto* cert = app.add_subcommand("certify", "Certify a linkage claim over many instances");
  cert->add_option("--host", o.host, "cube:D | link:D | pyramid2-quad | graph:PATH")->required();
  cert->add_option("--k", o.k, "Number of pairs")->required()->check(CLI::PositiveNumber);
  cert->add_option("--mode", o.mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
  cert->add_option("--samples", o.samples, "Instances in sampled mode");
  cert->add_option("--seed", o.seed, "Sampling seed");
  cert->add_option("--solver", o.solver, "engine | oracle | both")->check(CLI::IsMember({"engine", "oracle", "both"}));
  cert->add_flag("--strong", o.strong, "Certify strong linkedness (one extra forbidden vertex)");
  cert->add_option("--apex", o.apex, "Apex for link:D hosts (default all zeros)");
  cert->add_option("--workers", o.workers, "Worker threads")->envname("LINKAGE_WORKERS");
  add_budget(cert);
  cert->add_flag("--fail-fast", o.fail_fast, "Stop at the first failure");
  cert->add_flag("--timing", o.timing, "Report wall time");
  add_format(cert);

  auto* suite = app.add_subcommand("suite", "Run a structural property suite");
  suite->add_option("name", o.suite, "Suite name")->required()->check(CLI::IsMember(property_suite_names()));
  suite->add_option("--samples", o.samples, "Samples per sampled dimension");
  suite->add_option("--seed", o.seed, "Sampling seed");
  suite->add_flag("--timing", o.timing, "Report wall time");
  add_format(suite);

  auto* bench = app.add_subcommand("bench", "Time the engine on seeded random instances");
  bench->add_option("--dim", o.dim, "Cube dimension")->check(CLI::Range(1, kMaxDim));
  bench->add_option("--host", o.host, "cube:D | link:D")->excludes("--dim");
  bench->add_option("--k", o.k, "Number of pairs (default: the largest guaranteed)");
  bench->add_option("--samples", o.samples, "Instances (default 100)");
  bench->add_option("--seed", o.seed, "Sampling seed");
  bench->add_option("--apex", o.apex, "Apex for link:D hosts");
  bench->add_flag("--strong", o.strong, "Add a forbidden vertex to each instance");
  add_format(bench);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto chosen = app.get_subcommands();
    err << (chosen.empty() ? app.help() : chosen.front()->help());
    return kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, in, out);
    if (strong->parsed()) return cmd_strong_solve(o, in, out);
    if (link->parsed()) return cmd_link_solve(o, in, out);
    if (decide->parsed()) return cmd_decide(o, in, out);
    if (verify->parsed()) return cmd_verify(o, in, out);
    if (cert->parsed()) return cmd_certify(o, in, out);
    if (suite->parsed()) return cmd_suite(o, out);
    if (bench->parsed()) return cmd_bench(o, in, out);
  } catch (const NotLinkableError& e) {
    json doc{{"outcome", "NOT_LINKABLE"}, {"message", e.what()}};
    if (const auto& cert3 = e.certificate()) {
      doc["certificate"] = {{"type", "config-3F"},
                            {"face", format_face(cert3->face)},
                            {"witness", format_vertex(cert3->witness_terminal, 3)}};
    }
    out << doc.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kUnlinked;
  } catch (const InvariantFailure& e) {
    err << "error: " << e.what() << '\n';
    if (!e.instance().empty()) err << "replay dump: " << write_replay(e.instance()) << '\n';
    return kInternal;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cubelink::cli
