#include "cmf/baselines.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace cmf {

namespace {

void saturate_source(ResidualState& state) {
  const VertexId s = state.network().source();
  for (const ResidualArc& a : state.topology().out_arcs(s)) {
    const Capacity r = state.residual(a);
    if (r > 0) state.push(a, r);
  }
}

// Exact distance labels: reverse BFS to t, falling back to n + distance to s.
std::vector<int> exact_labels(const ResidualState& state) {
  const ResidualTopology& topo = state.topology();
  const FlowNetwork& net = topo.network();
  const VertexId n = net.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(n), 2 * n - 1);
  auto bfs = [&](VertexId root, int offset) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<std::pair<VertexId, int>> queue{{root, 0}};
    seen[static_cast<std::size_t>(root)] = true;
    while (!queue.empty()) {
      const auto [v, dist] = queue.front();
      queue.pop_front();
      auto& l = label[static_cast<std::size_t>(v)];
      l = std::min(l, dist + offset);
      for (const ResidualArc& a : topo.out_arcs(v)) {
        // a runs v -> w; the residual arc w -> v is its opposite direction.
        const ResidualArc back = topo.arc_from(a.pair, a.head);
        if (seen[static_cast<std::size_t>(a.head)] || state.residual(back) <= 0) continue;
        seen[static_cast<std::size_t>(a.head)] = true;
        queue.emplace_back(a.head, dist + 1);
      }
    }
  };
  bfs(net.sink(), 0);
  bfs(net.source(), n);
  label[static_cast<std::size_t>(net.source())] = n;
  label[static_cast<std::size_t>(net.sink())] = 0;
  return label;
}

// Generic push-relabel core shared by the FIFO and the scaling variants.
class PushRelabel {
 public:
  explicit PushRelabel(const FlowNetwork& net) : state_(net), net_(net) {
    saturate_source(state_);
    label_ = exact_labels(state_);
    current_.assign(static_cast<std::size_t>(net.vertex_count()), 0);
  }

  bool internal(VertexId v) const { return v != net_.source() && v != net_.sink(); }

  // Pushes or relabels once at u. `room` caps what each head may receive.
  template <class Room>
  void step(VertexId u, Room room) {
    const auto& arcs = state_.topology().out_arcs(u);
    auto& cur = current_[static_cast<std::size_t>(u)];
    while (cur < arcs.size()) {
      const ResidualArc& a = arcs[cur];
      const Capacity r = state_.residual(a);
      if (r > 0 && label(u) == label(a.head) + 1) {
        const Capacity amount = std::min({state_.excess(u), r, room(a.head)});
        if (amount > 0) {
          state_.push(a, amount);
          return;
        }
      }
      ++cur;
    }
    int best = std::numeric_limits<int>::max();
    for (const ResidualArc& a : arcs) {
      if (state_.residual(a) > 0) best = std::min(best, label(a.head) + 1);
    }
    if (best == std::numeric_limits<int>::max()) {
      throw InvariantViolation("excess stranded at vertex " + std::to_string(u));
    }
    label_[static_cast<std::size_t>(u)] = best;
    cur = 0;
  }

  int label(VertexId v) const { return label_[static_cast<std::size_t>(v)]; }
  ResidualState& state() { return state_; }

 private:
  ResidualState state_;
  const FlowNetwork& net_;
  std::vector<int> label_;
  std::vector<std::size_t> current_;
};

Capacity flow_value(const ResidualState& state) {
  return -state.excess(state.network().source());
}

}  // namespace

BaselineResult edmonds_karp(const FlowNetwork& net) {
  ResidualState state(net);
  const ResidualTopology& topo = state.topology();
  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::vector<ResidualArc> via(n);
  std::vector<bool> seen(n);
  for (;;) {
    std::fill(seen.begin(), seen.end(), false);
    std::deque<VertexId> queue{net.source()};
    seen[static_cast<std::size_t>(net.source())] = true;
    while (!queue.empty() && !seen[static_cast<std::size_t>(net.sink())]) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (const ResidualArc& a : topo.out_arcs(v)) {
        const auto w = static_cast<std::size_t>(a.head);
        if (seen[w] || state.residual(a) <= 0) continue;
        seen[w] = true;
        via[w] = a;
        queue.push_back(a.head);
      }
    }
    if (!seen[static_cast<std::size_t>(net.sink())]) break;
    Capacity bottleneck = std::numeric_limits<Capacity>::max();
    for (VertexId v = net.sink(); v != net.source(); v = via[static_cast<std::size_t>(v)].tail) {
      bottleneck = std::min(bottleneck, state.residual(via[static_cast<std::size_t>(v)]));
    }
    for (VertexId v = net.sink(); v != net.source(); v = via[static_cast<std::size_t>(v)].tail) {
      state.push(via[static_cast<std::size_t>(v)], bottleneck);
    }
  }
  const Capacity value = flow_value(state);
  return {value, std::move(state), 0};
}

BaselineResult goldberg_tarjan(const FlowNetwork& net) {
  PushRelabel pr(net);
  ResidualState& state = pr.state();
  std::deque<VertexId> fifo;
  std::vector<bool> queued(static_cast<std::size_t>(net.vertex_count()), false);
  auto enqueue = [&](VertexId v) {
    if (pr.internal(v) && state.excess(v) > 0 && !queued[static_cast<std::size_t>(v)]) {
      queued[static_cast<std::size_t>(v)] = true;
      fifo.push_back(v);
    }
  };
  for (VertexId v = 0; v < net.vertex_count(); ++v) enqueue(v);
  const auto unlimited = [](VertexId) { return std::numeric_limits<Capacity>::max(); };
  while (!fifo.empty()) {
    const VertexId u = fifo.front();
    fifo.pop_front();
    queued[static_cast<std::size_t>(u)] = false;
    while (state.excess(u) > 0) {
      const int before = pr.label(u);
      pr.step(u, unlimited);
      for (const ResidualArc& a : state.topology().out_arcs(u)) enqueue(a.head);
      if (pr.label(u) != before) break;
    }
    enqueue(u);
  }
  const Capacity value = flow_value(state);
  return {value, std::move(state), 0};
}

BaselineResult ahuja_orlin(const FlowNetwork& net) {
  PushRelabel pr(net);
  ResidualState& state = pr.state();
  Capacity delta = 1;
  while (delta < net.max_capacity()) delta *= 2;
  if (net.max_capacity() == 0) delta = 0;

  int phases = 0;
  for (; delta >= 1; delta /= 2) {
    ++phases;
    const auto room = [&](VertexId v) {
      return pr.internal(v) ? std::max<Capacity>(0, delta - state.excess(v))
                            : std::numeric_limits<Capacity>::max();
    };
    for (;;) {
      // Large-excess vertex with the smallest label.
      VertexId u = kNoVertex;
      for (VertexId v = 0; v < net.vertex_count(); ++v) {
        if (pr.internal(v) && 2 * state.excess(v) > delta && (u == kNoVertex || pr.label(v) < pr.label(u))) {
          u = v;
        }
      }
      if (u == kNoVertex) break;
      pr.step(u, room);
    }
  }
  const Capacity value = flow_value(state);
  return {value, std::move(state), phases};
}

CutCertificate min_cut_check(const FlowNetwork& net, const ResidualState& state) {
  const FlowVerdict check = verify_flow(net, state);
  if (!check.verdict) throw UsageError("not a feasible flow: " + check.verdict.message);

  const ResidualTopology& topo = state.topology();
  std::vector<bool> in_s(static_cast<std::size_t>(net.vertex_count()), false);
  std::vector<VertexId> stack{net.source()};
  in_s[static_cast<std::size_t>(net.source())] = true;
  CutCertificate cert;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    cert.source_side.push_back(v);
    for (const ResidualArc& a : topo.out_arcs(v)) {
      if (in_s[static_cast<std::size_t>(a.head)] || state.residual(a) <= 0) continue;
      in_s[static_cast<std::size_t>(a.head)] = true;
      stack.push_back(a.head);
    }
  }
  if (in_s[static_cast<std::size_t>(net.sink())]) {
    throw CertificateError("flow is not maximal: the sink is reachable in the residual graph");
  }
  std::sort(cert.source_side.begin(), cert.source_side.end());
  for (const Arc& a : net.arcs()) {
    if (in_s[static_cast<std::size_t>(a.tail)] && !in_s[static_cast<std::size_t>(a.head)]) {
      cert.capacity = checked_add(cert.capacity, a.capacity);
    }
  }
  if (cert.capacity != check.value) {
    throw CertificateError("cut capacity " + std::to_string(cert.capacity) + " differs from flow value " +
                           std::to_string(check.value));
  }
  return cert;
}

std::vector<PathFlow> decompose_flow(const FlowNetwork& net, const ResidualState& state) {
  const Verdict ok = verify_preflow(net, state);
  if (!ok) throw UsageError("not a feasible preflow: " + ok.message);

  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::vector<Capacity> flow = state.arc_flows();
  std::vector<Capacity> excess(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto id = static_cast<VertexId>(v);
    if (id != net.source() && id != net.sink()) excess[v] = state.excess(id);
  }
  std::vector<std::vector<ArcIndex>> out(n);
  for (ArcIndex a = 0; a < net.arc_count(); ++a) out[static_cast<std::size_t>(net.arc(a).tail)].push_back(a);
  std::vector<std::size_t> cursor(n, 0);
  auto next_arc = [&](VertexId v) -> ArcIndex {
    auto& c = cursor[static_cast<std::size_t>(v)];
    const auto& list = out[static_cast<std::size_t>(v)];
    while (c < list.size() && flow[static_cast<std::size_t>(list[c])] == 0) ++c;
    return c < list.size() ? list[c] : -1;
  };

  std::vector<PathFlow> parts;
  std::vector<int> position(n, -1);
  auto emit = [&](std::vector<VertexId> vertices, std::vector<ArcIndex> arcs, bool cycle, Capacity cap) {
    Capacity amount = cap;
    for (ArcIndex a : arcs) amount = std::min(amount, flow[static_cast<std::size_t>(a)]);
    for (ArcIndex a : arcs) flow[static_cast<std::size_t>(a)] -= amount;
    parts.push_back({std::move(vertices), std::move(arcs), amount, cycle});
    return amount;
  };

  // Walks from `start` along positive flow. Cycles met on the way are cut
  // out; the walk ends at the sink, at a vertex holding excess, or where no
  // flow leaves.
  auto walk = [&](VertexId start, bool stop_at_excess) {
    std::vector<VertexId> path{start};
    std::vector<ArcIndex> arcs;
    position[static_cast<std::size_t>(start)] = 0;
    for (;;) {
      const VertexId v = path.back();
      const auto vi = static_cast<std::size_t>(v);
      const bool end = (v == net.sink() && !arcs.empty()) || (stop_at_excess && excess[vi] > 0);
      const ArcIndex a = end ? -1 : next_arc(v);
      if (a < 0) {
        if (!arcs.empty()) {
          const Capacity cap = excess[vi] > 0 && stop_at_excess ? excess[vi] : std::numeric_limits<Capacity>::max();
          const Capacity sent = emit(path, arcs, false, cap);
          if (excess[vi] > 0 && stop_at_excess) excess[vi] -= sent;
        }
        break;
      }
      const VertexId w = net.arc(a).head;
      const int at = position[static_cast<std::size_t>(w)];
      if (at >= 0) {
        std::vector<VertexId> cyc(path.begin() + at, path.end());
        cyc.push_back(w);
        std::vector<ArcIndex> cyc_arcs(arcs.begin() + at, arcs.end());
        cyc_arcs.push_back(a);
        emit(std::move(cyc), std::move(cyc_arcs), true, std::numeric_limits<Capacity>::max());
        for (std::size_t i = static_cast<std::size_t>(at) + 1; i < path.size(); ++i) {
          position[static_cast<std::size_t>(path[i])] = -1;
        }
        path.resize(static_cast<std::size_t>(at) + 1);
        arcs.resize(static_cast<std::size_t>(at));
        continue;
      }
      position[static_cast<std::size_t>(w)] = static_cast<int>(path.size());
      path.push_back(w);
      arcs.push_back(a);
    }
    for (VertexId v : path) position[static_cast<std::size_t>(v)] = -1;
  };

  while (next_arc(net.source()) >= 0) walk(net.source(), true);
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    while (next_arc(v) >= 0) walk(v, false);
  }
  return parts;
}

std::vector<Capacity> recompose(const FlowNetwork& net, const std::vector<PathFlow>& parts) {
  std::vector<Capacity> flow(static_cast<std::size_t>(net.arc_count()), 0);
  for (const PathFlow& p : parts) {
    for (ArcIndex a : p.arcs) flow[static_cast<std::size_t>(a)] += p.amount;
  }
  return flow;
}

}  // namespace cmf
