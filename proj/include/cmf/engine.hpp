#ifndef CMF_ENGINE_HPP_
#define CMF_ENGINE_HPP_

#include <cstdint>
#include <iosfwd>
#include <set>
#include <vector>

#include "cmf/compact.hpp"
#include "cmf/core.hpp"

namespace cmf {

// d = d_h + d_ell. d_h is a distance estimate kept valid on the current
// compact network; d_ell only ever rises within a phase and throttles
// low-capacity nonsaturating pushes.
struct DualLabels {
  std::vector<int> dh;
  std::vector<int> dl;

  int d(VertexId v) const {
    return dh[static_cast<std::size_t>(v)] + dl[static_cast<std::size_t>(v)];
  }
};

// residual_in[v] lists every u with a residual arc (u, v), possibly repeated.
using ReverseAdjacency = std::vector<std::vector<VertexId>>;

ReverseAdjacency residual_in_lists(const ResidualState& state);
ReverseAdjacency residual_in_lists(const CompactNetwork& net, const ResidualState& state);

// d_h(u) := min(dist(u, s) + n, dist(u, t)) by reverse BFS from s and t;
// vertices reaching neither get 2n - 1, d_h(s) stays n and d_ell := 0.
DualLabels global_relabel(VertexId n, VertexId source, VertexId sink, const ReverseAdjacency& residual_in);

bool has_residual_path(const ResidualState& state, VertexId from, VertexId to);

enum class PushKind : std::uint8_t { kSaturating, kHighNonsaturating, kLowNonsaturating };

struct PushPlan {
  Capacity amount = 0;
  PushKind kind = PushKind::kSaturating;
};

// delta = min(e(u), r(u,v), Delta - e(v)); the last term is dropped when v is
// the source or sink. Throws UsageError when nothing can move.
PushPlan plan_push(Capacity excess_u, Capacity residual, Capacity excess_v, Capacity delta,
                   bool head_is_terminal);

// d_h(u) := 1 + min d_h over `heads` (residual out-neighbours); if that leaves
// d(u) <= d(v) for the chosen minimiser v, d_ell(u) := d_ell(v). Returns v.
// Throws UsageError on an empty neighbour list.
VertexId relabel_labels(DualLabels& labels, VertexId u, const std::vector<VertexId>& heads);

struct PhaseStats {
  int phase = 0;
  Capacity delta = 0;
  std::uint64_t saturating_pushes = 0;
  std::uint64_t high_nonsat_pushes = 0;
  std::uint64_t low_nonsat_pushes = 0;
  std::uint64_t relabels = 0;
  std::uint64_t active_vertices = 0;
  // |V_C|, as the union over every rebuild within the phase.
  std::uint64_t compact_vertices = 0;
  std::uint64_t pseudoarcs = 0;
  // Compact-network builds; more than one means the phase restarted.
  std::uint64_t builds = 0;
  std::uint64_t certifications = 0;
  std::uint64_t dyntree_ops = 0;
  std::uint64_t max_low_pushes_per_active = 0;
  std::int64_t phi_g_start = 0;
  std::int64_t phi_g_end = 0;
};

struct RunStats {
  Capacity delta0 = 0;
  int phases = 0;
  std::vector<PhaseStats> per_phase;
  std::uint64_t saturating_pushes = 0;
  std::uint64_t high_nonsat_pushes = 0;
  std::uint64_t low_nonsat_pushes = 0;
  std::uint64_t relabels = 0;
  std::uint64_t compact_vertex_sum = 0;
  std::uint64_t dyntree_ops = 0;
  // Builds beyond the first, summed over phases.
  std::uint64_t rebuilds = 0;
  int max_dh = 0;
  int max_dl = 0;
  int max_favorable_run = 0;
  // Largest observed high_nonsat / (|V_C| * n) over all phases.
  double high_push_constant = 0;
};

struct EngineOptions {
  std::ostream* trace = nullptr;
  // Hard cap on discharge steps per phase; 0 picks a size-based default.
  std::uint64_t step_budget = 0;
  // After every push and relabel, re-check label validity on every residual
  // compact arc. O(m) per step; meant for tests.
  bool audit = false;
};

// Excess-scaling push-relabel over per-phase compact networks. Construction
// performs the initialization: every source arc saturated, labels from a
// global relabel, Delta_0 = 2^ceil(log2 max(1, max e)).
class ScalingEngine {
 public:
  explicit ScalingEngine(const FlowNetwork& net, EngineOptions options = {});

  Capacity delta() const { return delta_; }
  bool done() const { return delta_ == 0; }
  const ResidualState& state() const { return state_; }
  const DualLabels& labels() const { return labels_; }
  const RunStats& stats() const { return stats_; }

  // One scaling phase at the current Delta, then the Delta update.
  PhaseStats run_phase();
  // Phases until Delta = 0, then the final certificate checks.
  void run();

 private:
  enum class Outcome { kDone, kYield, kStuck };

  VertexId n() const { return net_.vertex_count(); }
  bool internal(VertexId v) const { return v != net_.source() && v != net_.sink(); }
  Capacity excess(VertexId v) const { return excess_[static_cast<std::size_t>(v)]; }
  bool dischargeable(VertexId v) const;
  void update_queue(VertexId v);
  bool is_full(VertexId v) const;

  void rebuild(PhaseStats& ps);
  void track_favorable_runs();
  bool admissible(VertexId u, int arc) const;
  int front_arc(VertexId u);
  void refresh_edges(VertexId u);
  Outcome discharge(VertexId u, PhaseStats& ps);
  Outcome relabel(VertexId u, PhaseStats& ps);
  bool certify(VertexId u, PhaseStats& ps);
  void push(VertexId u, int arc, const PushPlan& plan, PhaseStats& ps);
  void expand(VertexId u);
  std::int64_t phi_g() const;
  void check_labels(VertexId v);
  void audit_validity() const;

  FlowNetwork net_;
  EngineOptions options_;
  ResidualState state_;
  std::vector<Capacity> excess_;
  DualLabels labels_;
  Capacity delta_ = 0;
  RunStats stats_;

  // Phase-local.
  CompactNetwork compact_;
  std::vector<VertexId> active_;
  std::vector<bool> is_active_;
  std::vector<bool> extra_full_;
  // Fullness the current compact network was built with. A vertex can turn
  // full mid-phase by receiving excess while its arcs are still folded into
  // pseudoarcs.
  std::vector<bool> built_full_;
  std::vector<bool> seen_compact_;
  std::set<std::pair<int, VertexId>> queue_;
  std::vector<int> key_;
  std::vector<std::vector<int>> edges_;
  std::vector<std::size_t> edge_front_;
  std::vector<bool> edges_stale_;
  std::vector<bool> nonsat_used_;
  std::vector<bool> certified_;
  std::vector<std::uint64_t> low_pushes_;
  std::uint64_t steps_ = 0;

  // Consecutive phases each pair has been kept for its class, and whether
  // that run began with a favorable classification.
  std::vector<int> class_run_;
  std::vector<bool> run_favorable_;
  int last_classified_phase_ = -1;
};

struct MaxFlowResult {
  Capacity value = 0;
  ResidualState state;
  RunStats stats;
};

// Requires nothing of the degree; callers wanting the bounded-degree regime
// reduce the network first (see solve.hpp).
MaxFlowResult max_flow(const FlowNetwork& net, EngineOptions options = {});

}  // namespace cmf

#endif  // CMF_ENGINE_HPP_
