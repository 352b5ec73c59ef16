#include "cmf/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <string>

namespace cmf {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

std::vector<int> reverse_bfs(VertexId n, VertexId root, const ReverseAdjacency& in) {
  std::vector<int> dist(static_cast<std::size_t>(n), kUnreached);
  std::deque<VertexId> queue{root};
  dist[static_cast<std::size_t>(root)] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId u : in[static_cast<std::size_t>(v)]) {
      auto& du = dist[static_cast<std::size_t>(u)];
      if (du != kUnreached) continue;
      du = dist[static_cast<std::size_t>(v)] + 1;
      queue.push_back(u);
    }
  }
  return dist;
}

Capacity pow2_ceil(Capacity x) {
  if (x <= 0) return 0;
  Capacity p = 1;
  while (p < x) p *= 2;
  return p;
}

int ceil_log2(Capacity x) {
  int k = 0;
  while ((Capacity{1} << k) < x) ++k;
  return k;
}

}  // namespace

ReverseAdjacency residual_in_lists(const ResidualState& state) {
  const ResidualTopology& topo = state.topology();
  ReverseAdjacency in(static_cast<std::size_t>(topo.network().vertex_count()));
  for (PairIndex p = 0; p < topo.pair_count(); ++p) {
    const VertexPair& pair = topo.pair(p);
    if (state.residual(p, Direction::kUp) > 0) in[static_cast<std::size_t>(pair.high)].push_back(pair.low);
    if (state.residual(p, Direction::kDown) > 0) in[static_cast<std::size_t>(pair.low)].push_back(pair.high);
  }
  return in;
}

ReverseAdjacency residual_in_lists(const CompactNetwork& net, const ResidualState& state) {
  ReverseAdjacency in(net.out.size());
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    if (net.residual(state, static_cast<int>(a)) > 0) {
      in[static_cast<std::size_t>(net.arcs[a].head)].push_back(net.arcs[a].tail);
    }
  }
  return in;
}

DualLabels global_relabel(VertexId n, VertexId source, VertexId sink, const ReverseAdjacency& residual_in) {
  if (static_cast<std::size_t>(n) != residual_in.size()) throw UsageError("adjacency size mismatch");
  const auto to_t = reverse_bfs(n, sink, residual_in);
  const auto to_s = reverse_bfs(n, source, residual_in);
  DualLabels labels;
  labels.dh.assign(static_cast<std::size_t>(n), 2 * n - 1);
  labels.dl.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
    int best = kUnreached;
    if (to_t[v] != kUnreached) best = to_t[v];
    if (to_s[v] != kUnreached) best = std::min(best, to_s[v] + n);
    if (best != kUnreached) labels.dh[v] = best;
  }
  labels.dh[static_cast<std::size_t>(source)] = n;
  labels.dh[static_cast<std::size_t>(sink)] = 0;
  return labels;
}

bool has_residual_path(const ResidualState& state, VertexId from, VertexId to) {
  const ResidualTopology& topo = state.topology();
  std::vector<bool> seen(static_cast<std::size_t>(topo.network().vertex_count()), false);
  std::vector<VertexId> stack{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (const ResidualArc& a : topo.out_arcs(v)) {
      if (state.residual(a) <= 0 || seen[static_cast<std::size_t>(a.head)]) continue;
      seen[static_cast<std::size_t>(a.head)] = true;
      stack.push_back(a.head);
    }
  }
  return false;
}

PushPlan plan_push(Capacity excess_u, Capacity residual, Capacity excess_v, Capacity delta,
                   bool head_is_terminal) {
  if (delta <= 0) throw UsageError("excess dominator must be positive");
  Capacity amount = std::min(excess_u, residual);
  if (!head_is_terminal) amount = std::min(amount, delta - excess_v);
  if (amount <= 0) throw UsageError("push would move nothing");
  PushPlan plan{amount, PushKind::kSaturating};
  if (amount < residual) {
    plan.kind = 2 * amount > delta ? PushKind::kHighNonsaturating : PushKind::kLowNonsaturating;
  }
  return plan;
}

VertexId relabel_labels(DualLabels& labels, VertexId u, const std::vector<VertexId>& heads) {
  if (heads.empty()) throw UsageError("vertex " + std::to_string(u) + " has no residual out-arc");
  VertexId best = heads.front();
  for (VertexId v : heads) {
    if (labels.dh[static_cast<std::size_t>(v)] < labels.dh[static_cast<std::size_t>(best)]) best = v;
  }
  const auto ui = static_cast<std::size_t>(u);
  labels.dh[ui] = labels.dh[static_cast<std::size_t>(best)] + 1;
  // <= rather than <: an equal d would leave no admissible arc behind.
  if (labels.d(u) <= labels.d(best)) labels.dl[ui] = labels.dl[static_cast<std::size_t>(best)];
  return best;
}

ScalingEngine::ScalingEngine(const FlowNetwork& net, EngineOptions options)
    : net_(net), options_(options), state_(net_) {
  const VertexId s = net_.source();
  for (const ResidualArc& a : state_.topology().out_arcs(s)) {
    const Capacity r = state_.residual(a);
    if (r > 0) state_.push(a, r);
  }
  excess_ = state_.excesses();
  labels_ = global_relabel(n(), s, net_.sink(), residual_in_lists(state_));

  Capacity top = 1;
  for (VertexId v = 0; v < n(); ++v) {
    if (internal(v)) top = std::max(top, excess(v));
  }
  delta_ = pow2_ceil(top);
  stats_.delta0 = delta_;
  class_run_.assign(static_cast<std::size_t>(state_.topology().pair_count()), 0);
  run_favorable_.assign(class_run_.size(), false);
}

bool ScalingEngine::is_full(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return is_active_[i] || extra_full_[i] || (internal(v) && 2 * excess(v) > delta_);
}

bool ScalingEngine::dischargeable(VertexId v) const {
  if (!internal(v) || !compact_.contains(v)) return false;
  return is_active_[static_cast<std::size_t>(v)] ? excess(v) > 0 : 2 * excess(v) > delta_;
}

void ScalingEngine::update_queue(VertexId v) {
  const auto i = static_cast<std::size_t>(v);
  const int key = dischargeable(v) ? labels_.d(v) : -1;
  if (key == key_[i]) return;
  if (key_[i] >= 0) queue_.erase({key_[i], v});
  key_[i] = key;
  if (key >= 0) queue_.insert({key, v});
}

void ScalingEngine::check_labels(VertexId v) {
  const int dh = labels_.dh[static_cast<std::size_t>(v)];
  const int dl = labels_.dl[static_cast<std::size_t>(v)];
  if (dh >= 2 * n()) throw InvariantViolation("d_h(" + std::to_string(v) + ") reached 2n");
  if (dl > 4 * n() - 1) throw InvariantViolation("d_ell(" + std::to_string(v) + ") exceeded 4n-1");
  stats_.max_dh = std::max(stats_.max_dh, dh);
  stats_.max_dl = std::max(stats_.max_dl, dl);
}

void ScalingEngine::audit_validity() const {
  for (const CompactArc& arc : compact_.arcs) {
    // Arcs leaving s or t are never used for pushes and carry no condition.
    if (!internal(arc.tail)) continue;
    if (compact_.residual(state_, static_cast<int>(&arc - compact_.arcs.data())) <= 0) continue;
    if (labels_.dh[static_cast<std::size_t>(arc.tail)] > labels_.dh[static_cast<std::size_t>(arc.head)] + 1) {
      throw InvariantViolation("d_h invalid on compact arc " + std::to_string(arc.tail) + "->" +
                               std::to_string(arc.head));
    }
  }
}

std::int64_t ScalingEngine::phi_g() const {
  std::int64_t total = 0;
  for (VertexId v = 0; v < n(); ++v) {
    if (internal(v) && excess(v) > 0) total += labels_.d(v);
  }
  return total;
}

void ScalingEngine::track_favorable_runs() {
  const int phase = stats_.phases + 1;
  const bool consecutive = last_classified_phase_ == phase - 1;
  std::vector<int> next(class_run_.size(), 0);
  for (PairIndex p : compact_.classified_pairs) {
    const auto i = static_cast<std::size_t>(p);
    const Capacity up = state_.residual(p, Direction::kUp);
    const Capacity down = state_.residual(p, Direction::kDown);
    const bool favorable = classify_arc(up + down, up, delta_) == ArcClass::kFavorable ||
                           classify_arc(up + down, down, delta_) == ArcClass::kFavorable;
    if (consecutive && class_run_[i] > 0) {
      next[i] = class_run_[i] + 1;
    } else {
      next[i] = 1;
      run_favorable_[i] = favorable;
    }
    if (run_favorable_[i]) {
      stats_.max_favorable_run = std::max(stats_.max_favorable_run, next[i]);
      if (next[i] > 3) {
        throw InvariantViolation("favorable pair kept in the compact network for more than 3 consecutive phases");
      }
    }
  }
  class_run_ = std::move(next);
  last_classified_phase_ = phase;
}

void ScalingEngine::rebuild(PhaseStats& ps) {
  CompactInputs in;
  in.delta = delta_;
  in.active = active_;
  in.full.resize(static_cast<std::size_t>(n()));
  for (VertexId v = 0; v < n(); ++v) in.full[static_cast<std::size_t>(v)] = is_full(v);
  built_full_ = in.full;
  in.order = labels_.dh;
  compact_ = build_compact(state_, in);
  const bool first = ps.builds == 0;
  ++ps.builds;
  ps.dyntree_ops += compact_.dyntree_ops;
  ps.pseudoarcs += compact_.pseudoarcs.size();
  for (VertexId v = 0; v < n(); ++v) {
    if (compact_.contains(v)) seen_compact_[static_cast<std::size_t>(v)] = true;
  }
  if (first) track_favorable_runs();

  const DualLabels fresh =
      global_relabel(n(), net_.source(), net_.sink(), residual_in_lists(compact_, state_));
  labels_.dh = fresh.dh;
  for (VertexId v = 0; v < n(); ++v) check_labels(v);

  const auto size = static_cast<std::size_t>(n());
  edges_.assign(size, {});
  edge_front_.assign(size, 0);
  edges_stale_.assign(size, true);
  certified_.assign(size, false);
  queue_.clear();
  key_.assign(size, -1);
  for (VertexId v = 0; v < n(); ++v) update_queue(v);
  if (options_.audit) audit_validity();
}

bool ScalingEngine::admissible(VertexId u, int arc) const {
  if (compact_.residual(state_, arc) <= 0) return false;
  const VertexId v = compact_.arcs[static_cast<std::size_t>(arc)].head;
  const int dhu = labels_.dh[static_cast<std::size_t>(u)];
  if (labels_.d(u) <= labels_.d(v)) return false;
  if (labels_.dh[static_cast<std::size_t>(v)] > dhu + 1) return false;
  if (v == net_.source() && dhu < n()) return false;
  return true;
}

void ScalingEngine::refresh_edges(VertexId u) {
  const auto i = static_cast<std::size_t>(u);
  auto& list = edges_[i];
  list.clear();
  for (int a : compact_.out_arcs(u)) {
    if (admissible(u, a)) list.push_back(a);
  }
  auto key = [&](int a) {
    return std::pair{labels_.dh[static_cast<std::size_t>(compact_.arcs[static_cast<std::size_t>(a)].head)], a};
  };
  std::sort(list.begin(), list.end(), [&](int a, int b) { return key(a) < key(b); });
  edge_front_[i] = 0;
  edges_stale_[i] = false;
}

int ScalingEngine::front_arc(VertexId u) {
  const auto i = static_cast<std::size_t>(u);
  if (edges_stale_[i]) refresh_edges(u);
  for (int pass = 0; pass < 2; ++pass) {
    const auto& list = edges_[i];
    auto& f = edge_front_[i];
    while (f < list.size()) {
      if (admissible(u, list[f])) return list[f];
      ++f;
    }
    if (pass == 0) refresh_edges(u);
  }
  return -1;
}

bool ScalingEngine::certify(VertexId u, PhaseStats& ps) {
  ++ps.certifications;
  ResidualState copy = state_;
  restore_all_flows(compact_, copy);
  if (has_residual_path(copy, u, net_.sink())) return false;
  certified_[static_cast<std::size_t>(u)] = true;
  return true;
}

ScalingEngine::Outcome ScalingEngine::relabel(VertexId u, PhaseStats& ps) {
  std::vector<VertexId> heads;
  for (int a : compact_.out_arcs(u)) {
    if (compact_.residual(state_, a) > 0) heads.push_back(compact_.arcs[static_cast<std::size_t>(a)].head);
  }
  if (heads.empty()) return Outcome::kStuck;
  int best = std::numeric_limits<int>::max();
  for (VertexId v : heads) best = std::min(best, labels_.dh[static_cast<std::size_t>(v)] + 1);
  const int old = labels_.dh[static_cast<std::size_t>(u)];
  if (best < old) throw InvariantViolation("distance labels lost validity at vertex " + std::to_string(u));
  if (best >= 2 * n()) return Outcome::kStuck;

  relabel_labels(labels_, u, heads);
  ++ps.relabels;
  const auto bound = 6ull * static_cast<std::uint64_t>(n()) * static_cast<std::uint64_t>(n());
  if (stats_.relabels + ps.relabels > bound) throw InvariantViolation("more than 6n^2 relabels");
  check_labels(u);
  edges_stale_[static_cast<std::size_t>(u)] = true;
  update_queue(u);
  if (options_.audit) audit_validity();
  return Outcome::kDone;
}

void ScalingEngine::push(VertexId u, int arc, const PushPlan& plan, PhaseStats& ps) {
  const VertexId v = compact_.arcs[static_cast<std::size_t>(arc)].head;
  const auto ui = static_cast<std::size_t>(u);
  const auto vi = static_cast<std::size_t>(v);
  auto local_phi = [&] {
    std::int64_t phi = excess(u) > 0 ? labels_.d(u) : 0;
    if (internal(v) && excess(v) > 0) phi += labels_.d(v);
    return phi;
  };
  const std::int64_t phi_before = local_phi();

  compact_.push(state_, arc, plan.amount);
  excess_[ui] -= plan.amount;
  excess_[vi] += plan.amount;
  if (internal(v) && excess(v) > delta_) {
    throw InvariantViolation("excess above Delta at vertex " + std::to_string(v) + " after a push");
  }

  switch (plan.kind) {
    case PushKind::kSaturating: {
      ++ps.saturating_pushes;
      const auto bound = 6ull * static_cast<std::uint64_t>(net_.arc_count()) *
                         static_cast<std::uint64_t>(n());
      if (stats_.saturating_pushes + ps.saturating_pushes > bound) {
        throw InvariantViolation("more than 6mn saturating pushes");
      }
      break;
    }
    case PushKind::kHighNonsaturating:
      ++ps.high_nonsat_pushes;
      break;
    case PushKind::kLowNonsaturating:
      ++ps.low_nonsat_pushes;
      if (is_active_[ui] && ++low_pushes_[ui] > 6ull * static_cast<std::uint64_t>(n()) - 1) {
        throw InvariantViolation("more than 6n-1 low-capacity pushes from active vertex " + std::to_string(u));
      }
      break;
  }

  if (plan.kind != PushKind::kSaturating) {
    const std::int64_t phi_after = local_phi();
    if (phi_after > phi_before || (excess(u) == 0 && phi_after >= phi_before)) {
      throw InvariantViolation("nonsaturating push did not lower Phi_g");
    }
  }
  update_queue(u);
  update_queue(v);
  if (options_.audit) audit_validity();
}

ScalingEngine::Outcome ScalingEngine::discharge(VertexId u, PhaseStats& ps) {
  const auto ui = static_cast<std::size_t>(u);
  const bool active = is_active_[ui];
  const std::uint64_t budget =
      options_.step_budget != 0
          ? options_.step_budget
          : 256ull * static_cast<std::uint64_t>(n() + net_.arc_count() + 2) * static_cast<std::uint64_t>(n() + 2);
  while (dischargeable(u)) {
    if (++steps_ > budget) throw InvariantViolation("discharge step budget exhausted");
    if (labels_.dh[ui] >= n() && !certified_[ui] && !certify(u, ps)) return Outcome::kStuck;

    const int arc = front_arc(u);
    if (arc < 0) {
      if (relabel(u, ps) == Outcome::kStuck) return Outcome::kStuck;
      continue;
    }
    const VertexId v = compact_.arcs[static_cast<std::size_t>(arc)].head;
    if (dischargeable(v)) return Outcome::kYield;

    const PushPlan plan =
        plan_push(excess(u), compact_.residual(state_, arc), excess(v), delta_, !internal(v));
    const bool low_mode = active && 2 * excess(u) <= delta_ && labels_.dl[ui] < 4 * n() - 1;
    if (low_mode && plan.kind != PushKind::kSaturating && nonsat_used_[ui]) {
      // This d_ell value already paid for its low-capacity push.
      ++labels_.dl[ui];
      nonsat_used_[ui] = false;
      check_labels(u);
      edges_stale_[ui] = true;
      update_queue(u);
      continue;
    }
    push(u, arc, plan, ps);
    if (low_mode && plan.kind == PushKind::kLowNonsaturating) nonsat_used_[ui] = true;
  }
  return Outcome::kDone;
}

void ScalingEngine::expand(VertexId u) {
  std::vector<bool> seen(static_cast<std::size_t>(n()), false);
  std::vector<VertexId> stack{u};
  seen[static_cast<std::size_t>(u)] = true;
  int added = 0;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    const auto vi = static_cast<std::size_t>(v);
    if (!built_full_[vi]) {
      extra_full_[vi] = true;
      ++added;
    }
    for (int a : compact_.out_arcs(v)) {
      const VertexId w = compact_.arcs[static_cast<std::size_t>(a)].head;
      if (seen[static_cast<std::size_t>(w)] || compact_.residual(state_, a) <= 0) continue;
      seen[static_cast<std::size_t>(w)] = true;
      stack.push_back(w);
    }
  }
  if (added == 0) {
    throw InvariantViolation("vertex " + std::to_string(u) + " is stuck although its reachable set is fully expanded");
  }
}

PhaseStats ScalingEngine::run_phase() {
  if (done()) throw UsageError("no phase left to run");
  PhaseStats ps;
  ps.phase = stats_.phases + 1;
  ps.delta = delta_;
  const auto size = static_cast<std::size_t>(n());

  active_.clear();
  is_active_.assign(size, false);
  for (VertexId v = 0; v < n(); ++v) {
    if (!internal(v)) continue;
    if (excess(v) > delta_) throw InvariantViolation("excess above Delta at phase start");
    if (2 * excess(v) > delta_) {
      active_.push_back(v);
      is_active_[static_cast<std::size_t>(v)] = true;
    }
  }
  ps.active_vertices = active_.size();
  extra_full_.assign(size, false);
  seen_compact_.assign(size, false);
  labels_.dl.assign(size, 0);
  nonsat_used_.assign(size, false);
  low_pushes_.assign(size, 0);
  steps_ = 0;
  ps.phi_g_start = phi_g();

  rebuild(ps);
  while (!queue_.empty()) {
    const VertexId u = queue_.begin()->second;
    if (discharge(u, ps) == Outcome::kStuck) {
      expand(u);
      restore_all_flows(compact_, state_);
      rebuild(ps);
    }
  }
  restore_all_flows(compact_, state_);
  compact_.pseudo_flow.assign(compact_.pseudo_flow.size(), 0);

  if (state_.excesses() != excess_) throw InvariantViolation("restored excesses differ from the compact ones");
  for (VertexId v : active_) {
    if (excess(v) != 0) throw InvariantViolation("active vertex " + std::to_string(v) + " ended its phase with excess");
  }
  for (VertexId v = 0; v < n(); ++v) {
    if (internal(v) && 2 * excess(v) > delta_) throw InvariantViolation("excess above Delta/2 at phase end");
  }

  ps.phi_g_end = phi_g();
  ps.compact_vertices = static_cast<std::uint64_t>(std::count(seen_compact_.begin(), seen_compact_.end(), true));
  for (VertexId v : active_) ps.max_low_pushes_per_active = std::max(ps.max_low_pushes_per_active, low_pushes_[static_cast<std::size_t>(v)]);
  const auto high_bound = 16ull * ps.compact_vertices * static_cast<std::uint64_t>(n());
  if (ps.high_nonsat_pushes > high_bound) throw InvariantViolation("more than 16|V_C|n high-capacity pushes in a phase");
  if (ps.compact_vertices > 0) {
    stats_.high_push_constant = std::max(
        stats_.high_push_constant,
        static_cast<double>(ps.high_nonsat_pushes) / (static_cast<double>(ps.compact_vertices) * n()));
  }

  ++stats_.phases;
  stats_.saturating_pushes += ps.saturating_pushes;
  stats_.high_nonsat_pushes += ps.high_nonsat_pushes;
  stats_.low_nonsat_pushes += ps.low_nonsat_pushes;
  stats_.relabels += ps.relabels;
  stats_.compact_vertex_sum += ps.compact_vertices;
  stats_.dyntree_ops += ps.dyntree_ops;
  stats_.rebuilds += ps.builds - 1;
  stats_.per_phase.push_back(ps);

  labels_ = global_relabel(n(), net_.source(), net_.sink(), residual_in_lists(state_));
  Capacity top = 0;
  for (VertexId v = 0; v < n(); ++v) {
    if (internal(v)) top = std::max(top, pow2_ceil(excess(v)));
  }
  delta_ = std::min(delta_ / 2, top);

  if (options_.trace != nullptr) {
    *options_.trace << "phase=" << ps.phase << " delta=" << ps.delta << " active=" << ps.active_vertices
                    << " vc=" << ps.compact_vertices << " pseudoarcs=" << ps.pseudoarcs
                    << " sat=" << ps.saturating_pushes << " high=" << ps.high_nonsat_pushes
                    << " low=" << ps.low_nonsat_pushes << " relabels=" << ps.relabels
                    << " builds=" << ps.builds << '\n';
  }
  return ps;
}

void ScalingEngine::run() {
  while (!done()) run_phase();
  if (stats_.phases > ceil_log2(stats_.delta0) + 1) throw InvariantViolation("more phases than log2(Delta_0) + 1");
  const auto m = static_cast<std::uint64_t>(std::max<ArcIndex>(net_.arc_count(), 1));
  if (stats_.compact_vertex_sum > 20 * m) throw InvariantViolation("sum of |V_C| over phases exceeds 20m");
  const FlowVerdict check = verify_flow(net_, state_);
  if (!check.verdict) throw InvariantViolation("final state is not a flow: " + check.verdict.message);
  if (has_residual_path(state_, net_.source(), net_.sink())) {
    throw InvariantViolation("an s-t residual path remains; the flow is not maximum");
  }
}

MaxFlowResult max_flow(const FlowNetwork& net, EngineOptions options) {
  ScalingEngine engine(net, options);
  engine.run();
  const Capacity value = -engine.state().excess(net.source());
  return {value, engine.state(), engine.stats()};
}

}  // namespace cmf
