#ifndef CMF_SOLVE_HPP_
#define CMF_SOLVE_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cmf/core.hpp"
#include "cmf/engine.hpp"
#include "cmf/io.hpp"

namespace cmf {

enum class SolverKind : std::uint8_t { kCompact, kEdmondsKarp, kGoldbergTarjan, kAhujaOrlin };

SolverKind parse_solver(std::string_view name);
const char* to_string(SolverKind kind);

struct SolveOutcome {
  Capacity value = 0;
  // Always a flow on the network that was passed in.
  ResidualState state;
  StatsRecord record;
  std::optional<RunStats> compact_stats;
  bool transformed = false;
};

struct SolveOptions {
  std::string instance;
  std::ostream* trace = nullptr;
};

// The compact solver reduces the degree first whenever some vertex exceeds
// floor(m/n) + 3, and maps the flow back afterwards.
SolveOutcome solve(const FlowNetwork& net, SolverKind kind, const SolveOptions& options = {});

struct CheckReport {
  bool ok = true;
  std::string message;
};

// verify_flow, min_cut_check and, when asked, equality with Edmonds-Karp.
CheckReport check_solution(const FlowNetwork& net, const SolveOutcome& outcome, bool against_oracle);

using SolverFn = std::function<SolveOutcome(const FlowNetwork&, const std::string& instance)>;

struct BenchSolver {
  std::string name;
  SolverFn run;
};

BenchSolver bench_solver(SolverKind kind);

struct BenchInstance {
  std::string name;
  FlowNetwork net;
};

// Two solvers returned different values on one instance.
class BenchDisagreement : public std::runtime_error {
 public:
  BenchDisagreement(std::string instance, const std::string& what)
      : std::runtime_error(what), instance_(std::move(instance)) {}
  const std::string& instance() const { return instance_; }

 private:
  std::string instance_;
};

struct BenchReport {
  std::vector<StatsRecord> records;
  // Measured constants behind the push, compaction and phase bounds.
  std::vector<std::string> summary;
};

// One record per (instance, solver), in instance order. Throws
// BenchDisagreement on the first value mismatch.
BenchReport run_bench(const std::vector<BenchInstance>& corpus, const std::vector<BenchSolver>& solvers);

// *.max and *.dimacs files directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

}  // namespace cmf

#endif  // CMF_SOLVE_HPP_
