#include "cmf/compact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cmf {

PseudoarcBuilder::PseudoarcBuilder(const ResidualTopology& topo, std::vector<Capacity> remaining,
                                   std::vector<bool> usable, std::vector<bool> compact)
    : topo_(topo),
      remaining_(std::move(remaining)),
      usable_(std::move(usable)),
      compact_(std::move(compact)),
      forest_(topo.network().vertex_count()) {
  const auto n = static_cast<std::size_t>(topo.network().vertex_count());
  if (remaining_.size() != 2 * static_cast<std::size_t>(topo.pair_count()) ||
      usable_.size() != n || compact_.size() != n) {
    throw UsageError("pseudoarc builder inputs do not match the network");
  }
  cursor_.assign(n, 0);
  dead_.assign(n, false);
  parent_.assign(n, kNoVertex);
  link_arc_.resize(n);
  children_.resize(n);
  merged_.resize(n);
}

void PseudoarcBuilder::begin_step(Capacity rho, ArcClass kind) {
  if (rho < 0) throw UsageError("negative threshold");
  rho_ = rho;
  kind_ = kind;
  std::fill(cursor_.begin(), cursor_.end(), 0);
  std::fill(dead_.begin(), dead_.end(), false);
}

void PseudoarcBuilder::link(VertexId v, const ResidualArc& arc) {
  const auto i = static_cast<std::size_t>(v);
  forest_.link(v, arc.head, slot(arc));
  parent_[i] = arc.head;
  link_arc_[i] = arc;
  children_[static_cast<std::size_t>(arc.head)].push_back(v);
  log_.push_back({LogEntry::Kind::kLink, v, arc.head, arc, 0, -1});
}

void PseudoarcBuilder::cut(VertexId v) {
  const auto i = static_cast<std::size_t>(v);
  slot(link_arc_[i]) = forest_.cut(v);
  parent_[i] = kNoVertex;
  log_.push_back({LogEntry::Kind::kCut, v, kNoVertex, link_arc_[i], 0, -1});
}

std::optional<std::vector<VertexId>> PseudoarcBuilder::feasible_path(VertexId u) {
  if (!compact_.at(static_cast<std::size_t>(u))) throw UsageError("path tail must be compact");
  for (;;) {
    const VertexId v = forest_.root(u);
    if (v != u && compact_[static_cast<std::size_t>(v)]) {
      std::vector<VertexId> path{u};
      for (VertexId x = u; x != v;) {
        x = parent_[static_cast<std::size_t>(x)];
        path.push_back(x);
      }
      return path;
    }

    const auto& arcs = topo_.out_arcs(v);
    std::size_t& c = cursor_[static_cast<std::size_t>(v)];
    bool linked = false;
    for (; c < arcs.size(); ++c) {
      const ResidualArc& a = arcs[c];
      const auto w = static_cast<std::size_t>(a.head);
      if (slot(a) <= rho_ || !usable_[w] || dead_[w]) continue;
      if (forest_.root(a.head) == v) continue;
      link(v, a);
      linked = true;
      break;
    }
    if (linked) continue;
    if (v == u) return std::nullopt;

    // Dead end: nothing below v can use it any more.
    dead_[static_cast<std::size_t>(v)] = true;
    auto& kids = children_[static_cast<std::size_t>(v)];
    for (VertexId child : kids) {
      if (parent_[static_cast<std::size_t>(child)] == v) cut(child);
    }
    kids.clear();
  }
}

int PseudoarcBuilder::transfer_capacity(VertexId u) {
  if (forest_.is_root(u)) throw UsageError("transfer needs a linked tail");
  const VertexId head = forest_.root(u);
  if (!compact_[static_cast<std::size_t>(head)]) throw UsageError("path does not end at a compact vertex");
  const Capacity delta = forest_.find_min(u).second;
  if (delta <= 0) throw UsageError("path is saturated; cut it first");
  forest_.add_val(u, -delta);

  auto& mine = merged_[static_cast<std::size_t>(u)];
  auto it = std::find_if(mine.begin(), mine.end(), [&](const auto& e) { return e.first == head; });
  int index = 0;
  if (it == mine.end()) {
    index = static_cast<int>(pseudoarcs_.size());
    pseudoarcs_.push_back({u, head, 0, kind_, {}});
    mine.emplace_back(head, index);
  } else {
    index = it->second;
  }
  Pseudoarc& p = pseudoarcs_[static_cast<std::size_t>(index)];
  p.capacity = checked_add(p.capacity, delta);
  if (kind_ == ArcClass::kAbundant) p.kind = ArcClass::kAbundant;
  p.members.push_back(log_.size());
  log_.push_back({LogEntry::Kind::kTransfer, u, head, {}, delta, index});
  return index;
}

void PseudoarcBuilder::cut_all_saturated(VertexId u) {
  while (!forest_.is_root(u)) {
    const auto [x, value] = forest_.find_min(u);
    if (value > 0) break;
    cut(x);
  }
}

void PseudoarcBuilder::end_step() {
  for (VertexId v = 0; v < static_cast<VertexId>(parent_.size()); ++v) {
    if (parent_[static_cast<std::size_t>(v)] != kNoVertex) cut(v);
  }
  for (auto& kids : children_) kids.clear();
}

void PseudoarcBuilder::create_all_pseudoarcs(const std::vector<VertexId>& tails, Capacity rho,
                                             ArcClass kind) {
  begin_step(rho, kind);
  for (VertexId u : tails) {
    while (feasible_path(u)) {
      transfer_capacity(u);
      cut_all_saturated(u);
    }
  }
  end_step();
}

Capacity CompactNetwork::residual(const ResidualState& state, int a) const {
  const CompactArc& arc = arcs[static_cast<std::size_t>(a)];
  if (!arc.pseudo) return state.residual(arc.original);
  const auto i = static_cast<std::size_t>(arc.pseudoarc);
  return arc.backward ? pseudo_flow[i] : pseudoarcs[i].capacity - pseudo_flow[i];
}

void CompactNetwork::push(ResidualState& state, int a, Capacity amount) {
  const CompactArc& arc = arcs[static_cast<std::size_t>(a)];
  if (!arc.pseudo) {
    state.push(arc.original, amount);
    return;
  }
  if (amount < 0 || amount > residual(state, a)) {
    throw UsageError("push exceeds pseudoarc residual capacity");
  }
  auto& f = pseudo_flow[static_cast<std::size_t>(arc.pseudoarc)];
  f += arc.backward ? -amount : amount;
}

CompactNetwork build_compact(const ResidualState& state, const CompactInputs& in) {
  const ResidualTopology& topo = state.topology();
  const FlowNetwork& g = topo.network();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (in.delta <= 0) throw UsageError("excess dominator must be positive");
  if (in.full.size() != n || in.order.size() != n) throw UsageError("compact inputs do not match the network");

  CompactNetwork net;
  net.delta = in.delta;
  net.role.assign(n, CompactRole::kNone);
  for (VertexId v : in.active) {
    if (!in.full[static_cast<std::size_t>(v)]) throw UsageError("active vertices must be full");
    net.role[static_cast<std::size_t>(v)] = CompactRole::kActive;
  }
  auto mark = [&](VertexId v) {
    auto& r = net.role[static_cast<std::size_t>(v)];
    if (r == CompactRole::kNone) r = CompactRole::kSemi;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (in.full[v]) mark(static_cast<VertexId>(v));
  }
  mark(g.source());
  mark(g.sink());

  std::vector<Capacity> remaining(2 * static_cast<std::size_t>(topo.pair_count()), 0);
  for (PairIndex p = 0; p < topo.pair_count(); ++p) {
    const VertexPair& pair = topo.pair(p);
    const Capacity up = state.residual(p, Direction::kUp);
    const Capacity down = state.residual(p, Direction::kDown);
    const Capacity gamma = up + down;
    if (gamma == 0) continue;
    const auto kept = [](ArcClass c) { return c == ArcClass::kFavorable || c == ArcClass::kLarge; };
    const bool classified = kept(classify_arc(gamma, up, in.delta)) ||
                            kept(classify_arc(gamma, down, in.delta));
    const bool touches_full =
        in.full[static_cast<std::size_t>(pair.low)] || in.full[static_cast<std::size_t>(pair.high)];
    if (classified) net.classified_pairs.push_back(p);
    if (classified || touches_full) {
      net.original_pairs.push_back(p);
      net.original_gamma.push_back(gamma);
      mark(pair.low);
      mark(pair.high);
    } else {
      remaining[2 * static_cast<std::size_t>(p)] = up;
      remaining[2 * static_cast<std::size_t>(p) + 1] = down;
    }
  }

  std::vector<bool> compact(n);
  std::vector<bool> usable(n);
  std::vector<VertexId> tails;
  for (std::size_t v = 0; v < n; ++v) {
    compact[v] = net.role[v] != CompactRole::kNone;
    usable[v] = !in.full[v];
    const auto id = static_cast<VertexId>(v);
    if (net.role[v] == CompactRole::kActive) {
      net.active.push_back(id);
    } else if (compact[v]) {
      net.semi.push_back(id);
      if (usable[v] && id != g.source() && id != g.sink()) tails.push_back(id);
    }
  }
  std::stable_sort(tails.begin(), tails.end(), [&](VertexId a, VertexId b) {
    return in.order[static_cast<std::size_t>(a)] < in.order[static_cast<std::size_t>(b)];
  });

  PseudoarcBuilder builder(topo, std::move(remaining), std::move(usable), std::move(compact));
  builder.create_all_pseudoarcs(tails, in.delta, ArcClass::kAbundant);
  builder.create_all_pseudoarcs(tails, 0, ArcClass::kSmall);
  net.dyntree_ops = builder.forest().operations();
  net.pseudoarcs = builder.take_pseudoarcs();
  net.log = builder.take_log();
  for (Pseudoarc& p : net.pseudoarcs) {
    if (p.capacity > in.delta) p.kind = ArcClass::kAbundant;
  }
  net.pseudo_flow.assign(net.pseudoarcs.size(), 0);

  net.out.resize(n);
  auto add = [&](CompactArc arc) {
    net.out[static_cast<std::size_t>(arc.tail)].push_back(static_cast<int>(net.arcs.size()));
    net.arcs.push_back(arc);
  };
  for (PairIndex p : net.original_pairs) {
    const VertexPair& pair = topo.pair(p);
    add({pair.low, pair.high, false, topo.arc_from(p, pair.low), -1, false});
    add({pair.high, pair.low, false, topo.arc_from(p, pair.high), -1, false});
  }
  for (std::size_t i = 0; i < net.pseudoarcs.size(); ++i) {
    const Pseudoarc& p = net.pseudoarcs[i];
    add({p.tail, p.head, true, {}, static_cast<int>(i), false});
    add({p.head, p.tail, true, {}, static_cast<int>(i), true});
  }
  return net;
}

void restore_all_flows(const CompactNetwork& net, ResidualState& state) {
  // Split each pseudoarc's net flow over its transfers, first come first
  // served; any split within the transfer sizes is feasible.
  std::vector<Capacity> share(net.log.size(), 0);
  for (std::size_t i = 0; i < net.pseudoarcs.size(); ++i) {
    Capacity left = net.pseudo_flow[i];
    for (std::size_t m : net.pseudoarcs[i].members) {
      const Capacity take = std::min(left, net.log[m].amount);
      share[m] = take;
      left -= take;
    }
    if (left != 0) throw InvariantViolation("pseudoarc flow exceeds its transfers");
  }

  DynamicForest forest(state.network().vertex_count());
  std::vector<ResidualArc> link_arc(static_cast<std::size_t>(state.network().vertex_count()));
  for (std::size_t i = 0; i < net.log.size(); ++i) {
    const LogEntry& e = net.log[i];
    switch (e.kind) {
      case LogEntry::Kind::kLink:
        forest.link(e.u, e.head, 0);
        link_arc[static_cast<std::size_t>(e.u)] = e.arc;
        break;
      case LogEntry::Kind::kTransfer:
        if (forest.root(e.u) != e.head) {
          throw InvariantViolation("restore: replay divergence at log entry " + std::to_string(i));
        }
        if (share[i] > 0) forest.add_val(e.u, share[i]);
        break;
      case LogEntry::Kind::kCut: {
        const Capacity sent = forest.cut(e.u);
        if (sent == 0) break;
        try {
          state.push(link_arc[static_cast<std::size_t>(e.u)], sent);
        } catch (const UsageError&) {
          throw InvariantViolation("capacity transfer overdrew a residual arc");
        }
        break;
      }
    }
  }
}

std::string dump_compact(const CompactNetwork& net) {
  std::ostringstream out;
  out << "delta " << net.delta << "\nV_A";
  for (VertexId v : net.active) out << ' ' << v + 1;
  out << "\nV_SC";
  for (VertexId v : net.semi) out << ' ' << v + 1;
  out << "\nA_1";
  for (const CompactArc& a : net.arcs) {
    if (!a.pseudo && a.tail < a.head) out << ' ' << a.tail + 1 << '-' << a.head + 1;
  }
  out << "\nA_2\n";
  for (const Pseudoarc& p : net.pseudoarcs) {
    out << p.tail + 1 << "->" << p.head + 1 << ' ' << p.capacity << ' ' << to_string(p.kind)
        << '\n';
  }
  return out.str();
}

}  // namespace cmf
