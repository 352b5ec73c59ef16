#include "cmf/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "cmf/baselines.hpp"
#include "cmf/transform.hpp"

namespace cmf {

SolverKind parse_solver(std::string_view name) {
  if (name == "compact") return SolverKind::kCompact;
  if (name == "ek") return SolverKind::kEdmondsKarp;
  if (name == "gt") return SolverKind::kGoldbergTarjan;
  if (name == "ao") return SolverKind::kAhujaOrlin;
  throw UsageError("unknown solver '" + std::string(name) + "' (expected compact, ek, gt or ao)");
}

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kCompact:
      return "compact";
    case SolverKind::kEdmondsKarp:
      return "ek";
    case SolverKind::kGoldbergTarjan:
      return "gt";
    case SolverKind::kAhujaOrlin:
      return "ao";
  }
  return "?";
}

namespace {

bool needs_reduction(const FlowNetwork& net) {
  return !within_degree_bound(net, degree_bound(net));
}

SolveOutcome from_baseline(BaselineResult r) {
  SolveOutcome out{r.value, std::move(r.state), {}, std::nullopt, false};
  out.record.phases = static_cast<std::int64_t>(r.phases);
  return out;
}

}  // namespace

SolveOutcome solve(const FlowNetwork& net, SolverKind kind, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out{0, ResidualState(net), {}, std::nullopt, false};
  switch (kind) {
    case SolverKind::kCompact: {
      EngineOptions engine_options;
      engine_options.trace = options.trace;
      if (needs_reduction(net)) {
        const DegreeReduction red = to_bounded_degree(net);
        MaxFlowResult r = max_flow(red.reduced, engine_options);
        out = {r.value, map_flow_back(red, r.state), {}, std::move(r.stats), true};
      } else {
        MaxFlowResult r = max_flow(net, engine_options);
        out = {r.value, std::move(r.state), {}, std::move(r.stats), false};
      }
      const RunStats& s = *out.compact_stats;
      out.record.phases = s.phases;
      out.record.saturating_pushes = static_cast<std::int64_t>(s.saturating_pushes);
      out.record.high_nonsat_pushes = static_cast<std::int64_t>(s.high_nonsat_pushes);
      out.record.low_nonsat_pushes = static_cast<std::int64_t>(s.low_nonsat_pushes);
      out.record.relabels = static_cast<std::int64_t>(s.relabels);
      out.record.compact_vertex_sum = static_cast<std::int64_t>(s.compact_vertex_sum);
      out.record.dyntree_ops = static_cast<std::int64_t>(s.dyntree_ops);
      break;
    }
    case SolverKind::kEdmondsKarp:
      out = from_baseline(edmonds_karp(net));
      break;
    case SolverKind::kGoldbergTarjan:
      out = from_baseline(goldberg_tarjan(net));
      break;
    case SolverKind::kAhujaOrlin:
      out = from_baseline(ahuja_orlin(net));
      break;
  }
  out.record.instance = options.instance;
  out.record.solver = to_string(kind);
  out.record.flow_value = out.value;
  out.record.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

CheckReport check_solution(const FlowNetwork& net, const SolveOutcome& outcome, bool against_oracle) {
  const FlowVerdict verdict = verify_flow(net, outcome.state);
  if (!verdict.verdict) return {false, "verify_flow: " + verdict.verdict.message};
  if (verdict.value != outcome.value) {
    return {false, "reported value " + std::to_string(outcome.value) + " differs from the flow's value " +
                       std::to_string(verdict.value)};
  }
  try {
    min_cut_check(net, outcome.state);
  } catch (const CertificateError& e) {
    return {false, std::string("min_cut_check: ") + e.what()};
  }
  if (against_oracle) {
    const Capacity oracle = edmonds_karp(net).value;
    if (oracle != outcome.value) {
      return {false, "value " + std::to_string(outcome.value) + " differs from the oracle's " +
                         std::to_string(oracle)};
    }
  }
  return {};
}

BenchSolver bench_solver(SolverKind kind) {
  return {to_string(kind), [kind](const FlowNetwork& net, const std::string& instance) {
            SolveOptions options;
            options.instance = instance;
            return solve(net, kind, options);
          }};
}

BenchReport run_bench(const std::vector<BenchInstance>& corpus, const std::vector<BenchSolver>& solvers) {
  BenchReport report;
  double high_constant = 0;
  double low_constant = 0;
  double compact_constant = 0;
  double phase_ratio_sum = 0;
  double phase_ratio_max = 0;
  std::size_t compact_runs = 0;

  for (const BenchInstance& inst : corpus) {
    std::optional<Capacity> agreed;
    std::string first;
    for (const BenchSolver& solver : solvers) {
      SolveOutcome out = solver.run(inst.net, inst.name);
      out.record.instance = inst.name;
      out.record.solver = solver.name;
      if (!agreed) {
        agreed = out.value;
        first = solver.name;
      } else if (*agreed != out.value) {
        throw BenchDisagreement(inst.name, "solvers disagree on " + inst.name + ": " + first + "=" +
                                               std::to_string(*agreed) + " " + solver.name + "=" +
                                               std::to_string(out.value));
      }
      if (out.compact_stats) {
        const RunStats& s = *out.compact_stats;
        const double n = inst.net.vertex_count();
        const double m = std::max<double>(1, inst.net.arc_count());
        high_constant = std::max(high_constant, s.high_push_constant);
        for (const PhaseStats& p : s.per_phase) {
          low_constant = std::max(low_constant, static_cast<double>(p.max_low_pushes_per_active) / n);
        }
        compact_constant = std::max(compact_constant, static_cast<double>(s.compact_vertex_sum) / m);
        const double ratio = s.phases / std::sqrt(m);
        phase_ratio_sum += ratio;
        phase_ratio_max = std::max(phase_ratio_max, ratio);
        ++compact_runs;
      }
      report.records.push_back(std::move(out.record));
    }
  }

  if (compact_runs > 0) {
    char line[160];
    std::snprintf(line, sizeof(line), "high_nonsat/(|V_C|*n) max=%.4f bound=16", high_constant);
    report.summary.emplace_back(line);
    std::snprintf(line, sizeof(line), "low_nonsat_per_active/n max=%.4f bound=6", low_constant);
    report.summary.emplace_back(line);
    std::snprintf(line, sizeof(line), "sum_vc/m max=%.4f bound=20", compact_constant);
    report.summary.emplace_back(line);
    std::snprintf(line, sizeof(line), "phases/sqrt(m) mean=%.4f max=%.4f (trend only)",
                  phase_ratio_sum / static_cast<double>(compact_runs), phase_ratio_max);
    report.summary.emplace_back(line);
  }
  return report;
}

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".max" || ext == ".dimacs") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace cmf
