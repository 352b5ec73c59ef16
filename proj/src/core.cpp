#include "cmf/core.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace cmf {

namespace {

std::uint64_t pair_key(VertexId low, VertexId high) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(low)) << 32) |
         static_cast<std::uint32_t>(high);
}

}  // namespace

Capacity checked_add(Capacity a, Capacity b) {
  Capacity out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw InvariantViolation("capacity arithmetic overflow");
  }
  return out;
}

FlowNetwork::FlowNetwork(VertexId vertex_count, std::vector<Arc> arcs,
                         VertexId source, VertexId sink)
    : vertex_count_(vertex_count), arcs_(std::move(arcs)), source_(source), sink_(sink) {
  if (vertex_count_ < 2) {
    throw UsageError("a flow network needs at least two vertices");
  }
  if (!contains(source_) || !contains(sink_)) {
    throw UsageError("source or sink out of range");
  }
  if (source_ == sink_) {
    throw UsageError("source and sink must differ");
  }
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (!contains(a.tail) || !contains(a.head)) {
      throw UsageError("arc " + std::to_string(i) + " has an endpoint out of range");
    }
    if (a.tail == a.head) {
      throw UsageError("arc " + std::to_string(i) + " is a self-loop");
    }
    if (a.capacity < 0) {
      throw UsageError("arc " + std::to_string(i) + " has negative capacity");
    }
    max_capacity_ = std::max(max_capacity_, a.capacity);
  }
}

std::vector<int> FlowNetwork::in_degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count_), 0);
  for (const Arc& a : arcs_) ++deg[static_cast<std::size_t>(a.head)];
  return deg;
}

std::vector<int> FlowNetwork::out_degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count_), 0);
  for (const Arc& a : arcs_) ++deg[static_cast<std::size_t>(a.tail)];
  return deg;
}

ResidualTopology::ResidualTopology(FlowNetwork net)
    : net_(std::move(net)), adjacency_(static_cast<std::size_t>(net_.vertex_count())) {
  for (ArcIndex a = 0; a < net_.arc_count(); ++a) {
    const Arc& arc = net_.arc(a);
    const VertexId low = std::min(arc.tail, arc.head);
    const VertexId high = std::max(arc.tail, arc.head);
    auto [it, inserted] = lookup_.try_emplace(pair_key(low, high),
                                              static_cast<PairIndex>(pairs_.size()));
    if (inserted) {
      pairs_.push_back(VertexPair{low, high, {}, {}});
      const PairIndex p = it->second;
      adjacency_[static_cast<std::size_t>(low)].push_back({p, Direction::kUp, low, high});
      adjacency_[static_cast<std::size_t>(high)].push_back({p, Direction::kDown, high, low});
    }
    VertexPair& pair = pairs_[static_cast<std::size_t>(it->second)];
    (arc.tail == low ? pair.up : pair.down).push_back(a);
  }
}

std::optional<PairIndex> ResidualTopology::find_pair(VertexId u, VertexId v) const {
  auto it = lookup_.find(pair_key(std::min(u, v), std::max(u, v)));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

ResidualArc ResidualTopology::arc_from(PairIndex p, VertexId tail) const {
  const VertexPair& pair = this->pair(p);
  if (tail == pair.low) return {p, Direction::kUp, pair.low, pair.high};
  if (tail == pair.high) return {p, Direction::kDown, pair.high, pair.low};
  throw UsageError("vertex is not an endpoint of the pair");
}

ResidualState::ResidualState(const FlowNetwork& net)
    : ResidualState(std::make_shared<const ResidualTopology>(net)) {}

ResidualState::ResidualState(std::shared_ptr<const ResidualTopology> topology)
    : topology_(std::move(topology)),
      flow_(static_cast<std::size_t>(topology_->network().arc_count()), 0),
      excess_(static_cast<std::size_t>(topology_->network().vertex_count()), 0) {
  rebuild_residuals();
}

ResidualState::ResidualState(const FlowNetwork& net, std::vector<Capacity> arc_flows)
    : topology_(std::make_shared<const ResidualTopology>(net)),
      flow_(std::move(arc_flows)),
      excess_(static_cast<std::size_t>(net.vertex_count()), 0) {
  if (flow_.size() != static_cast<std::size_t>(net.arc_count())) {
    throw UsageError("flow vector does not match the arc count");
  }
  for (ArcIndex a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    excess_[static_cast<std::size_t>(arc.tail)] -= flow(a);
    excess_[static_cast<std::size_t>(arc.head)] += flow(a);
  }
  rebuild_residuals();
}

ResidualState::ResidualState(const FlowNetwork& net, std::vector<Capacity> arc_flows,
                             std::vector<Capacity> excess)
    : topology_(std::make_shared<const ResidualTopology>(net)),
      flow_(std::move(arc_flows)),
      excess_(std::move(excess)) {
  if (flow_.size() != static_cast<std::size_t>(net.arc_count()) ||
      excess_.size() != static_cast<std::size_t>(net.vertex_count())) {
    throw UsageError("state vectors do not match the network shape");
  }
  rebuild_residuals();
}

void ResidualState::rebuild_residuals() {
  const ResidualTopology& topo = *topology_;
  const FlowNetwork& net = topo.network();
  residual_.assign(2 * static_cast<std::size_t>(topo.pair_count()), 0);
  for (PairIndex p = 0; p < topo.pair_count(); ++p) {
    Capacity up = 0;
    Capacity down = 0;
    for (ArcIndex a : topo.pair(p).up) {
      up += net.arc(a).capacity - flow(a);
      down += flow(a);
    }
    for (ArcIndex a : topo.pair(p).down) {
      down += net.arc(a).capacity - flow(a);
      up += flow(a);
    }
    residual_[2 * static_cast<std::size_t>(p)] = up;
    residual_[2 * static_cast<std::size_t>(p) + 1] = down;
  }
}

void ResidualState::push(const ResidualArc& arc, Capacity amount) {
  if (amount < 0) throw UsageError("negative push amount");
  if (amount == 0) return;
  const std::size_t slot =
      2 * static_cast<std::size_t>(arc.pair) + static_cast<std::size_t>(arc.dir);
  const std::size_t back =
      2 * static_cast<std::size_t>(arc.pair) + static_cast<std::size_t>(opposite(arc.dir));
  if (amount > residual_[slot]) {
    throw UsageError("push exceeds residual capacity");
  }
  const VertexPair& pair = topology_->pair(arc.pair);
  const FlowNetwork& net = topology_->network();
  const auto& along = arc.dir == Direction::kUp ? pair.up : pair.down;
  const auto& against = arc.dir == Direction::kUp ? pair.down : pair.up;

  Capacity left = amount;
  for (ArcIndex a : against) {
    const Capacity take = std::min(left, flow(a));
    flow_[static_cast<std::size_t>(a)] -= take;
    left -= take;
    if (left == 0) break;
  }
  for (ArcIndex a : along) {
    if (left == 0) break;
    const Capacity take = std::min(left, net.arc(a).capacity - flow(a));
    flow_[static_cast<std::size_t>(a)] += take;
    left -= take;
  }
  residual_[slot] -= amount;
  residual_[back] += amount;
  excess_[static_cast<std::size_t>(arc.tail)] -= amount;
  excess_[static_cast<std::size_t>(arc.head)] += amount;
}

const char* to_string(ArcClass c) {
  switch (c) {
    case ArcClass::kFavorable:
      return "favorable";
    case ArcClass::kLarge:
      return "large";
    case ArcClass::kAbundant:
      return "abundant";
    case ArcClass::kSmall:
      return "small";
  }
  return "?";
}

namespace {

void check_vertex(const ResidualState& state, VertexId v) {
  if (!state.network().contains(v)) {
    throw UsageError("vertex id " + std::to_string(v) + " out of range");
  }
}

}  // namespace

Capacity residual_capacity(const ResidualState& state, VertexId u, VertexId v) {
  check_vertex(state, u);
  check_vertex(state, v);
  if (u == v) throw UsageError("residual capacity needs distinct endpoints");
  const auto p = state.topology().find_pair(u, v);
  if (!p) return 0;
  return state.residual(state.topology().arc_from(*p, u));
}

Capacity compaction_capacity(const ResidualState& state, VertexId u, VertexId v) {
  return residual_capacity(state, u, v) + residual_capacity(state, v, u);
}

ArcClass classify_arc(Capacity gamma, Capacity r_uv, Capacity delta) {
  if (delta <= 0) throw UsageError("excess dominator must be positive");
  if (r_uv < 0 || gamma < r_uv) throw UsageError("classify_arc needs gamma >= r >= 0");
  if (r_uv > delta) return ArcClass::kAbundant;
  // Compare in 4x scale: delta/4 -> delta, delta/2 -> 2*delta, 2*delta -> 8*delta.
  __extension__ using Wide = __int128;
  const Wide g4 = static_cast<Wide>(gamma) * 4;
  const Wide d = delta;
  if (g4 > d && g4 <= 2 * d) return ArcClass::kFavorable;
  if (g4 >= d && g4 <= 8 * d) return ArcClass::kLarge;
  return ArcClass::kSmall;
}

Verdict verify_preflow(const FlowNetwork& net, const ResidualState& state) {
  if (state.network().arc_count() != net.arc_count() ||
      state.network().vertex_count() != net.vertex_count()) {
    return {ViolationKind::kShape, "state does not belong to this network", -1};
  }
  std::vector<Capacity> excess(static_cast<std::size_t>(net.vertex_count()), 0);
  for (ArcIndex a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    const Capacity f = state.flow(a);
    if (f < 0) {
      return {ViolationKind::kNegativeFlow, "negative flow on arc " + std::to_string(a), a};
    }
    if (f > arc.capacity) {
      return {ViolationKind::kCapacity,
              "flow " + std::to_string(f) + " exceeds capacity " +
                  std::to_string(arc.capacity) + " on arc " + std::to_string(a),
              a};
    }
    excess[static_cast<std::size_t>(arc.tail)] -= f;
    excess[static_cast<std::size_t>(arc.head)] += f;
  }
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    const Capacity e = excess[static_cast<std::size_t>(v)];
    if (e != state.excess(v)) {
      return {ViolationKind::kBookkeeping,
              "stored excess " + std::to_string(state.excess(v)) + " at vertex " +
                  std::to_string(v) + " differs from recomputed " + std::to_string(e),
              v};
    }
    if (v != net.source() && v != net.sink() && e < 0) {
      return {ViolationKind::kNegativeExcess, "negative excess at vertex " + std::to_string(v),
              v};
    }
  }
  return {};
}

FlowVerdict verify_flow(const FlowNetwork& net, const ResidualState& state) {
  FlowVerdict out;
  out.verdict = verify_preflow(net, state);
  if (!out.verdict) return out;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (state.excess(v) != 0) {
      out.verdict = {ViolationKind::kConservation,
                     "conservation violated at vertex " + std::to_string(v) + " (excess " +
                         std::to_string(state.excess(v)) + ")",
                     v};
      return out;
    }
  }
  out.value = -state.excess(net.source());
  return out;
}

}  // namespace cmf
