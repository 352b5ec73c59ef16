#include "cmf/transform.hpp"

#include <algorithm>
#include <string>

namespace cmf {

namespace {

Capacity unbounded_capacity(const FlowNetwork& net) {
  Capacity total = 0;
  for (const Arc& a : net.arcs()) total = checked_add(total, a.capacity);
  Capacity n_times_u = 0;
  if (__builtin_mul_overflow(static_cast<Capacity>(net.vertex_count()), net.max_capacity(),
                             &n_times_u)) {
    throw InvariantViolation("capacity arithmetic overflow");
  }
  return checked_add(std::max(total, n_times_u), 1);
}

enum class Side { kIn, kOut };

// One splitting pass over the arcs in place. New copies get ids from
// `vertex_count` upward and are recorded in `owner_copies`.
void split_pass(Side side, int bound, Capacity infinite, VertexId& vertex_count,
                std::vector<Arc>& arcs, std::vector<VertexId>& owner,
                std::vector<std::vector<VertexId>>& copies_of) {
  const VertexId before = vertex_count;
  std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(before));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const VertexId end = side == Side::kIn ? arcs[i].head : arcs[i].tail;
    incident[static_cast<std::size_t>(end)].push_back(i);
  }

  std::vector<Arc> tree_arcs;
  for (VertexId u = 0; u < before; ++u) {
    const auto& mine = incident[static_cast<std::size_t>(u)];
    const auto degree = static_cast<int>(mine.size());
    if (degree <= bound) continue;

    // A tree of k nodes has k-1 tree arcs, one per non-root node; node i's
    // share of original arcs is bound minus its child count.
    const int k = (degree - 1 + (bound - 2)) / (bound - 1);
    std::vector<VertexId> node(static_cast<std::size_t>(k) + 1);
    node[1] = u;
    for (int i = 2; i <= k; ++i) {
      node[static_cast<std::size_t>(i)] = vertex_count++;
      owner.push_back(owner[static_cast<std::size_t>(u)]);
      copies_of[static_cast<std::size_t>(owner[static_cast<std::size_t>(u)])].push_back(
          node[static_cast<std::size_t>(i)]);
      const VertexId child = node[static_cast<std::size_t>(i)];
      const VertexId parent = node[static_cast<std::size_t>(i / 2)];
      tree_arcs.push_back(side == Side::kIn ? Arc{child, parent, infinite}
                                            : Arc{parent, child, infinite});
    }

    int slot = 1;
    int used = 0;
    for (std::size_t idx : mine) {
      const int children = std::max(0, std::min(k, 2 * slot + 1) - 2 * slot + 1);
      if (used == bound - children) {
        ++slot;
        used = 0;
      }
      const VertexId target = node[static_cast<std::size_t>(slot)];
      (side == Side::kIn ? arcs[idx].head : arcs[idx].tail) = target;
      ++used;
    }
  }
  arcs.insert(arcs.end(), tree_arcs.begin(), tree_arcs.end());
}

}  // namespace

int degree_bound(const FlowNetwork& net) {
  return net.arc_count() / net.vertex_count() + 3;
}

bool within_degree_bound(const FlowNetwork& net, int bound) {
  const auto in = net.in_degrees();
  const auto out = net.out_degrees();
  return std::all_of(in.begin(), in.end(), [&](int d) { return d <= bound; }) &&
         std::all_of(out.begin(), out.end(), [&](int d) { return d <= bound; });
}

DegreeReduction to_bounded_degree(const FlowNetwork& net) {
  const int bound = degree_bound(net);
  const Capacity infinite = unbounded_capacity(net);

  VertexId vertex_count = net.vertex_count();
  std::vector<Arc> arcs = net.arcs();
  std::vector<VertexId> owner(static_cast<std::size_t>(vertex_count));
  std::vector<std::vector<VertexId>> copies_of(static_cast<std::size_t>(vertex_count));
  for (VertexId v = 0; v < vertex_count; ++v) {
    owner[static_cast<std::size_t>(v)] = v;
    copies_of[static_cast<std::size_t>(v)].push_back(v);
  }

  split_pass(Side::kIn, bound, infinite, vertex_count, arcs, owner, copies_of);
  split_pass(Side::kOut, bound, infinite, vertex_count, arcs, owner, copies_of);

  FlowNetwork reduced(vertex_count, std::move(arcs), net.source(), net.sink());
  return DegreeReduction{net, std::move(reduced), bound, std::move(copies_of), infinite};
}

ResidualState map_flow_back(const DegreeReduction& red, const ResidualState& state) {
  const FlowVerdict check = verify_flow(red.reduced, state);
  if (!check.verdict) {
    throw UsageError("reduced flow is infeasible: " + check.verdict.message);
  }
  std::vector<Capacity> flows(state.arc_flows().begin(),
                              state.arc_flows().begin() + red.original.arc_count());
  return ResidualState(red.original, std::move(flows));
}

InOutSplit::InOutSplit(const FlowNetwork& net, const std::vector<VertexId>& targets)
    : network_(net),
      out_vertex_(static_cast<std::size_t>(net.vertex_count()), kNoVertex),
      bridge_(static_cast<std::size_t>(net.vertex_count()), -1) {
  VertexId next = net.vertex_count();
  for (VertexId u : targets) {
    if (!net.contains(u)) throw UsageError("split target out of range");
    if (u == net.source() || u == net.sink()) {
      throw UsageError("the source and sink cannot be split");
    }
    if (out_vertex_[static_cast<std::size_t>(u)] == kNoVertex) {
      out_vertex_[static_cast<std::size_t>(u)] = next++;
    }
  }
  if (next == net.vertex_count()) return;

  const Capacity infinite = unbounded_capacity(net);
  std::vector<Arc> arcs = net.arcs();
  for (Arc& a : arcs) {
    const VertexId moved = out_vertex_[static_cast<std::size_t>(a.tail)];
    if (moved != kNoVertex) a.tail = moved;
  }
  for (VertexId u = 0; u < net.vertex_count(); ++u) {
    const VertexId out = out_vertex_[static_cast<std::size_t>(u)];
    if (out == kNoVertex) continue;
    bridge_[static_cast<std::size_t>(u)] = static_cast<ArcIndex>(arcs.size());
    arcs.push_back({u, out, infinite});
  }
  network_ = FlowNetwork(next, std::move(arcs), net.source(), net.sink());
  deleted_.assign(static_cast<std::size_t>(net.vertex_count()), false);
}

VertexId InOutSplit::out_vertex(VertexId u) const {
  const VertexId out = out_vertex_.at(static_cast<std::size_t>(u));
  return out == kNoVertex ? u : out;
}

bool InOutSplit::is_split(VertexId u) const {
  return out_vertex_.at(static_cast<std::size_t>(u)) != kNoVertex;
}

ArcIndex InOutSplit::bridge_arc(VertexId u) const {
  if (!is_split(u)) throw UsageError("vertex " + std::to_string(u) + " is not split");
  return bridge_[static_cast<std::size_t>(u)];
}

void InOutSplit::delete_bridge(VertexId u) {
  bridge_arc(u);
  deleted_[static_cast<std::size_t>(u)] = true;
}

bool InOutSplit::bridge_deleted(VertexId u) const {
  return is_split(u) && deleted_[static_cast<std::size_t>(u)];
}

FlowNetwork InOutSplit::current_network() const {
  std::vector<Arc> arcs = network_.arcs();
  for (std::size_t u = 0; u < deleted_.size(); ++u) {
    if (deleted_[u]) arcs[static_cast<std::size_t>(bridge_[u])].capacity = 0;
  }
  return FlowNetwork(network_.vertex_count(), std::move(arcs), network_.source(),
                     network_.sink());
}

}  // namespace cmf
