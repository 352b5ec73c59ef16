#include "cmf/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cmf/baselines.hpp"
#include "cmf/generator.hpp"
#include "cmf/io.hpp"
#include "cmf/solve.hpp"

namespace cmf {

namespace {

FlowNetwork load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_dimacs(in);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

struct SolveArgs {
  std::string input;
  std::string solver = "compact";
  bool check = false;
  bool trace = false;
  std::string flow_out;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const SolverKind kind = parse_solver(args.solver);
  const FlowNetwork net = load_instance(args.input);
  SolveOptions options;
  options.instance = args.input;
  options.trace = args.trace ? &err : nullptr;
  const SolveOutcome result = solve(net, kind, options);
  out << "value " << result.value << '\n' << write_stats(result.record);
  if (!args.flow_out.empty()) {
    std::ofstream file(args.flow_out);
    file << write_flow_file(net, result.state.arc_flows());
    if (!file) throw UsageError("cannot write " + args.flow_out);
  }
  if (args.check) {
    const CheckReport report = check_solution(net, result, kind == SolverKind::kCompact);
    if (!report.ok) {
      err << "check failed: " << report.message << '\n';
      return kExitVerify;
    }
    out << "check ok\n";
  }
  return kExitOk;
}

struct GenArgs {
  std::string family = "random-sparse";
  VertexId n = 10;
  ArcIndex m = 20;
  Capacity max_cap = 100;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  GeneratorSpec spec;
  spec.family = parse_family(args.family);
  spec.n = args.n;
  spec.m = args.m;
  spec.max_capacity = args.max_cap;
  spec.seed = args.seed;
  const std::string text = write_dimacs(generate(spec));
  if (args.output.empty()) {
    out << text;
  } else {
    std::ofstream file(args.output, std::ios::binary);
    file << text;
    if (!file) throw UsageError("cannot write " + args.output);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string dir;
  std::string solvers = "compact,ek";
};

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  std::string dir = args.dir;
  if (dir.empty()) {
    const char* env = std::getenv("MAXFLOW_CORPUS");
    if (env == nullptr) throw UsageError("no corpus directory given and MAXFLOW_CORPUS is unset");
    dir = env;
  }
  if (!std::filesystem::is_directory(dir)) throw UsageError("not a directory: " + dir);
  std::vector<BenchSolver> solvers;
  for (const std::string& name : split_list(args.solvers)) solvers.push_back(bench_solver(parse_solver(name)));
  if (solvers.empty()) throw UsageError("no solvers selected");

  std::vector<BenchInstance> corpus;
  for (const auto& path : list_corpus(dir)) corpus.push_back({path.string(), load_instance(path.string())});
  try {
    const BenchReport report = run_bench(corpus, solvers);
    for (const StatsRecord& r : report.records) out << write_stats(r);
    for (const std::string& line : report.summary) out << "# " << line << '\n';
  } catch (const BenchDisagreement& e) {
    err << "bench aborted at " << e.instance() << ": " << e.what() << '\n';
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_verify(const std::string& instance, const std::string& flow_path, std::ostream& out, std::ostream& err) {
  const FlowNetwork net = load_instance(instance);
  std::ifstream in(flow_path);
  if (!in) throw ParseError(0, "cannot open " + flow_path);
  ResidualState state(net, parse_flow_file(in, net));
  const FlowVerdict verdict = verify_flow(net, state);
  if (!verdict.verdict) {
    err << "verify_flow: " << verdict.verdict.message << '\n';
    return kExitVerify;
  }
  try {
    min_cut_check(net, state);
  } catch (const CertificateError& e) {
    err << "min_cut_check: " << e.what() << '\n';
    return kExitVerify;
  }
  out << "ok value " << verdict.value << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum flow by compact-network excess scaling"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a DIMACS instance");
  solve_cmd->add_option("input", solve_args.input, "DIMACS max-flow file")->required();
  solve_cmd->add_option("--solver", solve_args.solver, "compact, ek, gt or ao");
  solve_cmd->add_flag("--check", solve_args.check, "Verify the flow, its cut and (compact) the oracle value");
  solve_cmd->add_flag("--trace", solve_args.trace, "Per-phase trace lines on stderr");
  solve_cmd->add_option("--flow-out", solve_args.flow_out, "Write per-arc flows here");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", gen_args.family, "random-sparse, grid or star-heavy");
  gen_cmd->add_option("--n", gen_args.n, "Vertex count (grid: lattice size)");
  gen_cmd->add_option("--m", gen_args.m, "Arc count");
  gen_cmd->add_option("--max-cap", gen_args.max_cap, "Largest capacity");
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed");
  gen_cmd->add_option("-o,--out", gen_args.output, "Output file (default stdout)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run solvers over a corpus directory");
  bench_cmd->add_option("dir", bench_args.dir, "Corpus directory (default $MAXFLOW_CORPUS)");
  bench_cmd->add_option("--solver", bench_args.solvers, "Comma-separated solver list");

  std::string verify_instance;
  std::string verify_flow_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a flow file against an instance");
  verify_cmd->add_option("instance", verify_instance, "DIMACS max-flow file")->required();
  verify_cmd->add_option("flow", verify_flow_path, "Flow file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*gen_cmd) return cmd_gen(gen_args, out);
    if (*bench_cmd) return cmd_bench(bench_args, out, err);
    if (*verify_cmd) return cmd_verify(verify_instance, verify_flow_path, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kExitVerify;
  }
  return kExitUsage;
}

}  // namespace cmf
