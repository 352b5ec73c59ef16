#ifndef CMF_BASELINES_HPP_
#define CMF_BASELINES_HPP_

#include <stdexcept>
#include <vector>

#include "cmf/core.hpp"

namespace cmf {

struct BaselineResult {
  Capacity value = 0;
  ResidualState state;
  int phases = 0;  // scaling phases; 0 for the unscaled solvers
};

// Shortest augmenting paths. The ground-truth oracle for everything else.
BaselineResult edmonds_karp(const FlowNetwork& net);
// FIFO push-relabel with exact labels and d(s) = n.
BaselineResult goldberg_tarjan(const FlowNetwork& net);
// Excess scaling from Delta = 2^ceil(log2 U) down to 1.
BaselineResult ahuja_orlin(const FlowNetwork& net);

// A claimed flow is not maximal, or its cut does not match its value.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CutCertificate {
  std::vector<VertexId> source_side;
  Capacity capacity = 0;
};

// S = vertices reachable from s in the residual graph. Throws
// CertificateError when t is in S or cap(S) differs from the flow value, and
// UsageError when `state` is not a feasible flow.
CutCertificate min_cut_check(const FlowNetwork& net, const ResidualState& state);

struct PathFlow {
  std::vector<VertexId> vertices;
  std::vector<ArcIndex> arcs;
  Capacity amount = 0;
  bool cycle = false;
};

// Splits a feasible preflow into s-t paths, paths from s to vertices holding
// excess, and cycles. Throws UsageError on infeasible input.
std::vector<PathFlow> decompose_flow(const FlowNetwork& net, const ResidualState& state);
// Per-arc sums of a decomposition.
std::vector<Capacity> recompose(const FlowNetwork& net, const std::vector<PathFlow>& parts);

}  // namespace cmf

#endif  // CMF_BASELINES_HPP_
