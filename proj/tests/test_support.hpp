#ifndef CMF_TESTS_TEST_SUPPORT_HPP_
#define CMF_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <random>
#include <vector>

#include "cmf/compact.hpp"
#include "cmf/core.hpp"
#include "naive_forest.hpp"

namespace cmf::testing {

inline Capacity pow2_at_least(Capacity x) {
  Capacity p = 1;
  while (p < x) p *= 2;
  return p;
}

inline FlowNetwork random_network(std::mt19937_64& rng, VertexId n, int m, Capacity max_cap) {
  std::uniform_int_distribution<VertexId> vx(0, n - 1);
  std::uniform_int_distribution<Capacity> cap(1, max_cap);
  std::vector<Arc> arcs;
  while (static_cast<int>(arcs.size()) < m) {
    const VertexId u = vx(rng);
    const VertexId v = vx(rng);
    if (u != v) arcs.push_back({u, v, cap(rng)});
  }
  return FlowNetwork(n, std::move(arcs), 0, n - 1);
}

// Saturates the source arcs, then moves excess around at random so the
// state is a preflow with assorted partial flows.
inline ResidualState random_preflow(std::mt19937_64& rng, const FlowNetwork& net, int moves) {
  ResidualState st(net);
  for (const ResidualArc& a : st.topology().out_arcs(net.source())) {
    if (st.residual(a) > 0) st.push(a, st.residual(a));
  }
  std::uniform_int_distribution<VertexId> vx(0, net.vertex_count() - 1);
  for (int i = 0; i < moves; ++i) {
    const VertexId u = vx(rng);
    if (u == net.source() || u == net.sink() || st.excess(u) <= 0) continue;
    const auto& out = st.topology().out_arcs(u);
    if (out.empty()) continue;
    const ResidualArc& a = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
    const Capacity amount = std::min(st.excess(u), st.residual(a));
    if (amount <= 0) continue;
    st.push(a, std::uniform_int_distribution<Capacity>(1, amount)(rng));
  }
  return st;
}

// Standard inputs for build_compact on a preflow: Delta from the largest
// internal excess, V_A = {2e > Delta}, full = V_A.
inline CompactInputs inputs_for(const ResidualState& st) {
  const FlowNetwork& net = st.network();
  CompactInputs in;
  Capacity top = 1;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (v != net.source() && v != net.sink()) top = std::max(top, st.excess(v));
  }
  in.delta = pow2_at_least(top);
  in.full.assign(static_cast<std::size_t>(net.vertex_count()), false);
  in.order.assign(static_cast<std::size_t>(net.vertex_count()), 0);
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (2 * st.excess(v) > in.delta) {
      in.active.push_back(v);
      in.full[static_cast<std::size_t>(v)] = true;
    }
  }
  return in;
}

// Restore by walking explicit parent chains: each transfer's share is
// pushed arc by arc along the path it was taken from.
inline void naive_restore(const CompactNetwork& net, ResidualState& state) {
  std::vector<Capacity> share(net.log.size(), 0);
  for (std::size_t i = 0; i < net.pseudoarcs.size(); ++i) {
    Capacity left = net.pseudo_flow[i];
    for (std::size_t m : net.pseudoarcs[i].members) {
      share[m] = std::min(left, net.log[m].amount);
      left -= share[m];
    }
  }
  NaiveForest forest(state.network().vertex_count());
  std::vector<ResidualArc> via(static_cast<std::size_t>(state.network().vertex_count()));
  for (std::size_t i = 0; i < net.log.size(); ++i) {
    const LogEntry& e = net.log[i];
    if (e.kind == LogEntry::Kind::kLink) {
      forest.link(e.u, e.head, 0);
      via[static_cast<std::size_t>(e.u)] = e.arc;
    } else if (e.kind == LogEntry::Kind::kCut) {
      forest.cut(e.u);
    } else if (share[i] > 0) {
      for (VertexId x = e.u; forest.parent(x) != kNoVertex; x = forest.parent(x)) {
        state.push(via[static_cast<std::size_t>(x)], share[i]);
      }
    }
  }
}

inline bool same_residuals(const ResidualState& a, const ResidualState& b) {
  const ResidualTopology& topo = a.topology();
  for (PairIndex p = 0; p < topo.pair_count(); ++p) {
    if (a.residual(p, Direction::kUp) != b.residual(p, Direction::kUp)) return false;
    if (a.residual(p, Direction::kDown) != b.residual(p, Direction::kDown)) return false;
  }
  return a.excesses() == b.excesses();
}

}  // namespace cmf::testing

#endif  // CMF_TESTS_TEST_SUPPORT_HPP_
