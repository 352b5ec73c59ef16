#ifndef CMF_TRANSFORM_HPP_
#define CMF_TRANSFORM_HPP_

#include <vector>

#include "cmf/core.hpp"

namespace cmf {

// A network rewritten so every vertex has in- and out-degree at most
// degree_bound = floor(m/n) + 3. Arc a of the original keeps index a in the
// reduced network; tree arcs joining vertex copies are appended after them.
struct DegreeReduction {
  FlowNetwork original;
  FlowNetwork reduced;
  int degree_bound = 0;
  // Reduced vertex ids standing for each original vertex; the first entry
  // is the original id itself (the tree root).
  std::vector<std::vector<VertexId>> vertex_map;
  // Stand-in for unbounded capacity on tree arcs; no feasible flow reaches it.
  Capacity infinite_capacity = 0;

  bool is_identity() const { return reduced.arc_count() == original.arc_count(); }
  // k_u: number of reduced vertices standing for u.
  int copies(VertexId u) const {
    return static_cast<int>(vertex_map[static_cast<std::size_t>(u)].size());
  }
};

int degree_bound(const FlowNetwork& net);
bool within_degree_bound(const FlowNetwork& net, int bound);

// Splits every vertex whose in- or out-degree exceeds the bound into a
// binary tree of copies. The in-degree pass orients tree arcs child -> parent
// and the out-degree pass parent -> child, so each tree arc costs a copy one
// unit of degree on one side only.
DegreeReduction to_bounded_degree(const FlowNetwork& net);

// Projects a feasible flow on the reduced network back onto the original.
// Throws UsageError carrying the verifier message when `state` is infeasible.
ResidualState map_flow_back(const DegreeReduction& red, const ResidualState& state);

// Every target u becomes u_in (keeps id u, receives the in-arcs) and u_out (a
// new vertex owning the out-arcs), joined by a bridge arc u_in -> u_out of
// unbounded capacity.
class InOutSplit {
 public:
  InOutSplit(const FlowNetwork& net, const std::vector<VertexId>& targets);

  const FlowNetwork& network() const { return network_; }
  VertexId in_vertex(VertexId u) const { return u; }
  VertexId out_vertex(VertexId u) const;
  bool is_split(VertexId u) const;
  ArcIndex bridge_arc(VertexId u) const;

  // O(1); the bridge is dropped from current_network().
  void delete_bridge(VertexId u);
  bool bridge_deleted(VertexId u) const;
  // The split network with deleted bridges at capacity 0.
  FlowNetwork current_network() const;

 private:
  FlowNetwork network_;
  std::vector<VertexId> out_vertex_;
  std::vector<ArcIndex> bridge_;
  std::vector<bool> deleted_;
};

}  // namespace cmf

#endif  // CMF_TRANSFORM_HPP_
