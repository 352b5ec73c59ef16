#ifndef CMF_DYNTREE_HPP_
#define CMF_DYNTREE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "cmf/core.hpp"

namespace cmf {

// Rooted dynamic forest (splay-based link-cut trees) over vertices 0..n-1.
// Every non-root vertex u carries val(u), the residual capacity of the tree
// arc (u, parent(u)). Roots carry no value. All operations run in amortized
// O(log n); rotations() counts elementary splay rotations.
//
// Sign convention: add_val(u, delta) adds delta to every value on path(u),
// so callers pass a negative delta to consume capacity.
// Measured ceiling for rotations / (operations * log2 n) on random operation
// mixes; the splay analysis gives a small constant, this is the one we test.
inline constexpr double kRotationBoundConstant = 4.0;

class DynamicForest {
 public:
  explicit DynamicForest(VertexId n = 0);

  VertexId size() const { return static_cast<VertexId>(nodes_.size()); }

  VertexId root(VertexId u);
  bool is_root(VertexId u);
  // val(u); throws UsageError at a root.
  Capacity value(VertexId u);

  // parent(u) := v with val(u) := value. u must be a root and v must lie in
  // a different tree.
  void link(VertexId u, VertexId v, Capacity value);
  // Detaches u from its parent and returns val(u) at cut time.
  Capacity cut(VertexId u);
  // Adds delta to val of every non-root vertex on path(u). No-op at a root.
  void add_val(VertexId u, Capacity delta);
  // Vertex on path(u) whose value is minimal, ties broken toward the root.
  std::pair<VertexId, Capacity> find_min(VertexId u);

  std::uint64_t rotations() const { return rotations_; }
  std::uint64_t operations() const { return operations_; }

 private:
  struct Node {
    VertexId child[2] = {kNoVertex, kNoVertex};
    VertexId parent = kNoVertex;  // splay parent or path-parent
    Capacity val = 0;
    Capacity lazy = 0;
    Capacity agg = 0;
    bool has_val = false;
  };

  Node& at(VertexId v) { return nodes_[static_cast<std::size_t>(v)]; }
  void check(VertexId v) const;
  bool is_splay_root(VertexId x);
  void apply(VertexId x, Capacity delta);
  void push_down(VertexId x);
  void pull(VertexId x);
  void rotate(VertexId x);
  void splay(VertexId x);
  void access(VertexId x);

  std::vector<Node> nodes_;
  std::vector<VertexId> stack_;
  std::uint64_t rotations_ = 0;
  std::uint64_t operations_ = 0;
};

}  // namespace cmf

#endif  // CMF_DYNTREE_HPP_
