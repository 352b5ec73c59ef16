#include "cmf/dyntree.hpp"

#include <limits>
#include <string>

namespace cmf {

namespace {
constexpr Capacity kNoValue = std::numeric_limits<Capacity>::max();
}

DynamicForest::DynamicForest(VertexId n) {
  if (n < 0) throw UsageError("negative forest size");
  nodes_.resize(static_cast<std::size_t>(n));
  for (Node& node : nodes_) node.agg = kNoValue;
}

void DynamicForest::check(VertexId v) const {
  if (v < 0 || v >= static_cast<VertexId>(nodes_.size())) {
    throw UsageError("forest vertex " + std::to_string(v) + " out of range");
  }
}

bool DynamicForest::is_splay_root(VertexId x) {
  const VertexId p = at(x).parent;
  return p == kNoVertex || (at(p).child[0] != x && at(p).child[1] != x);
}

void DynamicForest::apply(VertexId x, Capacity delta) {
  if (x == kNoVertex) return;
  Node& node = at(x);
  if (node.has_val) node.val += delta;
  if (node.agg != kNoValue) node.agg += delta;
  node.lazy += delta;
}

void DynamicForest::push_down(VertexId x) {
  Node& node = at(x);
  if (node.lazy != 0) {
    apply(node.child[0], node.lazy);
    apply(node.child[1], node.lazy);
    node.lazy = 0;
  }
}

void DynamicForest::pull(VertexId x) {
  Node& node = at(x);
  Capacity agg = node.has_val ? node.val : kNoValue;
  for (VertexId c : node.child) {
    if (c != kNoVertex && at(c).agg < agg) agg = at(c).agg;
  }
  node.agg = agg;
}

void DynamicForest::rotate(VertexId x) {
  ++rotations_;
  const VertexId p = at(x).parent;
  const VertexId g = at(p).parent;
  const int side = at(p).child[1] == x ? 1 : 0;
  const VertexId moved = at(x).child[side ^ 1];

  if (!is_splay_root(p)) {
    at(g).child[at(g).child[1] == p ? 1 : 0] = x;
  }
  at(x).parent = g;
  at(x).child[side ^ 1] = p;
  at(p).parent = x;
  at(p).child[side] = moved;
  if (moved != kNoVertex) at(moved).parent = p;
  pull(p);
  pull(x);
}

void DynamicForest::splay(VertexId x) {
  // Push pending additions down the splay path, top first.
  stack_.clear();
  stack_.push_back(x);
  for (VertexId y = x; !is_splay_root(y); y = at(y).parent) stack_.push_back(at(y).parent);
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push_down(*it);

  while (!is_splay_root(x)) {
    const VertexId p = at(x).parent;
    if (!is_splay_root(p)) {
      const VertexId g = at(p).parent;
      const bool zigzig = (at(g).child[0] == p) == (at(p).child[0] == x);
      rotate(zigzig ? p : x);
    }
    rotate(x);
  }
}

void DynamicForest::access(VertexId x) {
  VertexId last = kNoVertex;
  for (VertexId y = x; y != kNoVertex; y = at(y).parent) {
    splay(y);
    at(y).child[1] = last;
    pull(y);
    last = y;
  }
  splay(x);
}

VertexId DynamicForest::root(VertexId u) {
  check(u);
  ++operations_;
  access(u);
  VertexId r = u;
  for (;;) {
    push_down(r);
    if (at(r).child[0] == kNoVertex) break;
    r = at(r).child[0];
  }
  splay(r);
  return r;
}

bool DynamicForest::is_root(VertexId u) {
  check(u);
  access(u);
  return at(u).child[0] == kNoVertex;
}

Capacity DynamicForest::value(VertexId u) {
  check(u);
  access(u);
  if (!at(u).has_val) throw UsageError("a root carries no value");
  return at(u).val;
}

void DynamicForest::link(VertexId u, VertexId v, Capacity value) {
  check(u);
  check(v);
  if (value < 0) throw UsageError("link value must be non-negative");
  if (!is_root(u)) throw UsageError("link: vertex " + std::to_string(u) + " is not a root");
  if (root(v) == u) throw UsageError("link would create a cycle");
  ++operations_;
  access(u);
  Node& node = at(u);
  node.parent = v;
  node.has_val = true;
  node.val = value;
  pull(u);
}

Capacity DynamicForest::cut(VertexId u) {
  check(u);
  ++operations_;
  access(u);
  Node& node = at(u);
  if (node.child[0] == kNoVertex) throw UsageError("cut: vertex " + std::to_string(u) + " is a root");
  at(node.child[0]).parent = kNoVertex;
  node.child[0] = kNoVertex;
  const Capacity value = node.val;
  node.has_val = false;
  node.val = 0;
  pull(u);
  return value;
}

void DynamicForest::add_val(VertexId u, Capacity delta) {
  check(u);
  ++operations_;
  access(u);
  // O(1) after access, so the check stays on in release builds too.
  if (delta < 0 && at(u).agg != kNoValue && at(u).agg + delta < 0) {
    throw UsageError("add_val would make a value negative");
  }
  apply(u, delta);
}

std::pair<VertexId, Capacity> DynamicForest::find_min(VertexId u) {
  check(u);
  ++operations_;
  access(u);
  if (at(u).child[0] == kNoVertex) throw UsageError("find_min: empty path at a root");
  const Capacity best = at(u).agg;
  VertexId x = u;
  for (;;) {
    push_down(x);
    const VertexId left = at(x).child[0];
    if (left != kNoVertex && at(left).agg == best) {
      x = left;
    } else if (at(x).has_val && at(x).val == best) {
      break;
    } else {
      x = at(x).child[1];
    }
  }
  splay(x);
  return {x, best};
}

}  // namespace cmf
