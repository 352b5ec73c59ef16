#ifndef CMF_COMPACT_HPP_
#define CMF_COMPACT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "cmf/core.hpp"
#include "cmf/dyntree.hpp"

namespace cmf {

// One entry of the construction log Q. Replaying the entries in order on a
// fresh forest reproduces every tree shape seen during construction.
struct LogEntry {
  enum class Kind : std::uint8_t { kLink, kCut, kTransfer };
  Kind kind = Kind::kLink;
  VertexId u = kNoVertex;     // linked / cut / transfer vertex
  VertexId head = kNoVertex;  // link target, or pseudoarc head for a transfer
  ResidualArc arc{};          // residual arc realized by a link
  Capacity amount = 0;        // transfer size
  int pseudoarc = -1;
};

using OperationLog = std::vector<LogEntry>;

// A compact arc standing for a residual path found by capacity transfer.
// Parallel transfers between the same endpoints are merged; `members` lists
// the log indices of the transfers that make up the capacity.
struct Pseudoarc {
  VertexId tail = kNoVertex;
  VertexId head = kNoVertex;
  Capacity capacity = 0;
  ArcClass kind = ArcClass::kSmall;
  std::vector<std::size_t> members;
};

// Capacity-transfer machinery over one dynamic forest. Arc capacities live in
// `remaining` (indexed 2*pair + direction) and are debited as pseudoarcs are
// created; the forest carries the live values of linked arcs.
class PseudoarcBuilder {
 public:
  // `usable[v]`: v may appear on a pseudoarc path. `compact[v]`: v ends paths.
  PseudoarcBuilder(const ResidualTopology& topo, std::vector<Capacity> remaining,
                   std::vector<bool> usable, std::vector<bool> compact);

  // Starts a construction pass that only follows arcs with remaining > rho.
  void begin_step(Capacity rho, ArcClass kind);
  // Walks from root(u), linking along qualifying arcs, until the tree of u
  // is rooted at a compact vertex other than u. Returns that path (u first),
  // or nothing once u is exhausted.
  std::optional<std::vector<VertexId>> feasible_path(VertexId u);
  // Moves the bottleneck of path(u) onto a pseudoarc (u, root(u)); returns
  // the pseudoarc index.
  int transfer_capacity(VertexId u);
  // Cuts zero-valued arcs off path(u) until its bottleneck is positive.
  void cut_all_saturated(VertexId u);
  // Cuts every remaining link, writing values back to `remaining`.
  void end_step();

  // Runs a full pass for each tail in order.
  void create_all_pseudoarcs(const std::vector<VertexId>& tails, Capacity rho, ArcClass kind);

  const std::vector<Pseudoarc>& pseudoarcs() const { return pseudoarcs_; }
  std::vector<Pseudoarc> take_pseudoarcs() { return std::move(pseudoarcs_); }
  const OperationLog& log() const { return log_; }
  OperationLog take_log() { return std::move(log_); }
  const std::vector<Capacity>& remaining() const { return remaining_; }
  Capacity remaining(const ResidualArc& a) const {
    return remaining_[2 * static_cast<std::size_t>(a.pair) + static_cast<std::size_t>(a.dir)];
  }
  DynamicForest& forest() { return forest_; }

 private:
  Capacity& slot(const ResidualArc& a) {
    return remaining_[2 * static_cast<std::size_t>(a.pair) + static_cast<std::size_t>(a.dir)];
  }
  void link(VertexId v, const ResidualArc& arc);
  void cut(VertexId v);

  const ResidualTopology& topo_;
  std::vector<Capacity> remaining_;
  std::vector<bool> usable_;
  std::vector<bool> compact_;
  DynamicForest forest_;

  Capacity rho_ = 0;
  ArcClass kind_ = ArcClass::kSmall;
  std::vector<std::size_t> cursor_;
  std::vector<bool> dead_;
  std::vector<VertexId> parent_;
  std::vector<ResidualArc> link_arc_;
  std::vector<std::vector<VertexId>> children_;

  std::vector<Pseudoarc> pseudoarcs_;
  std::vector<std::vector<std::pair<VertexId, int>>> merged_;  // per tail: (head, index)
  OperationLog log_;
};

// An arc of the compact network, seen from its tail. Original arcs are
// residual arcs of the underlying state; pseudoarc arcs run forward with
// residual capacity - flow or backward with residual flow.
struct CompactArc {
  VertexId tail = kNoVertex;
  VertexId head = kNoVertex;
  bool pseudo = false;
  ResidualArc original{};
  int pseudoarc = -1;
  bool backward = false;
};

enum class CompactRole : std::uint8_t { kNone, kActive, kSemi };

struct CompactInputs {
  Capacity delta = 1;
  // Vertices discharged to zero (V_A).
  std::vector<VertexId> active;
  // Vertices whose residual arcs are all kept as original arcs; must contain
  // every active vertex.
  std::vector<bool> full;
  // Labels ordering the pseudoarc tails (smallest first).
  std::vector<int> order;
};

class CompactNetwork {
 public:
  Capacity delta = 1;
  std::vector<CompactRole> role;
  std::vector<VertexId> active;  // V_A
  std::vector<VertexId> semi;    // V_SC
  std::vector<PairIndex> original_pairs;
  std::vector<Capacity> original_gamma;
  // Pairs included because one direction is favorable or large at build time.
  std::vector<PairIndex> classified_pairs;
  std::vector<Pseudoarc> pseudoarcs;
  std::vector<Capacity> pseudo_flow;
  OperationLog log;
  std::vector<CompactArc> arcs;
  std::vector<std::vector<int>> out;
  std::uint64_t dyntree_ops = 0;

  bool contains(VertexId v) const { return role[static_cast<std::size_t>(v)] != CompactRole::kNone; }
  bool is_active(VertexId v) const { return role[static_cast<std::size_t>(v)] == CompactRole::kActive; }
  std::size_t vertex_count() const { return active.size() + semi.size(); }
  const std::vector<int>& out_arcs(VertexId v) const { return out[static_cast<std::size_t>(v)]; }

  Capacity residual(const ResidualState& state, int a) const;
  // Original arcs push straight into `state`; pseudoarc pushes are recorded
  // and only reach `state` through restore_all_flows.
  void push(ResidualState& state, int a, Capacity amount);
};

CompactNetwork build_compact(const ResidualState& state, const CompactInputs& in);

// Replays the construction log on a fresh forest, turning every unit of
// pseudoarc flow into pushes along the residual arcs it stands for.
void restore_all_flows(const CompactNetwork& net, ResidualState& state);

// Text listing of V_A, V_SC, A_1 and A_2 for inspection and golden tests.
std::string dump_compact(const CompactNetwork& net);

}  // namespace cmf

#endif  // CMF_COMPACT_HPP_
