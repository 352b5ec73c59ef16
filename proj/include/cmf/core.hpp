#ifndef CMF_CORE_HPP_
#define CMF_CORE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cmf {

using VertexId = std::int32_t;
using ArcIndex = std::int32_t;
using PairIndex = std::int32_t;
using Capacity = std::int64_t;

inline constexpr VertexId kNoVertex = -1;

// Caller broke a documented precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant of the algorithm failed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Addition that throws on signed overflow instead of wrapping.
Capacity checked_add(Capacity a, Capacity b);

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  Capacity capacity = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Immutable directed network with a distinguished source and sink.
// Parallel and antiparallel arcs are allowed; self-loops are not.
class FlowNetwork {
 public:
  FlowNetwork(VertexId vertex_count, std::vector<Arc> arcs, VertexId source,
              VertexId sink);

  VertexId vertex_count() const { return vertex_count_; }
  ArcIndex arc_count() const { return static_cast<ArcIndex>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcIndex a) const { return arcs_.at(static_cast<std::size_t>(a)); }
  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }
  // U: largest arc capacity, 0 without arcs.
  Capacity max_capacity() const { return max_capacity_; }
  bool contains(VertexId v) const { return v >= 0 && v < vertex_count_; }

  std::vector<int> in_degrees() const;
  std::vector<int> out_degrees() const;

  friend bool operator==(const FlowNetwork&, const FlowNetwork&) = default;

 private:
  VertexId vertex_count_;
  std::vector<Arc> arcs_;
  VertexId source_;
  VertexId sink_;
  Capacity max_capacity_ = 0;
};

// Direction of travel across a vertex pair {low, high} with low < high.
enum class Direction : std::uint8_t { kUp = 0, kDown = 1 };

inline Direction opposite(Direction d) {
  return d == Direction::kUp ? Direction::kDown : Direction::kUp;
}

// All arcs between two vertices, in either orientation.
struct VertexPair {
  VertexId low = 0;
  VertexId high = 0;
  std::vector<ArcIndex> up;    // low -> high
  std::vector<ArcIndex> down;  // high -> low
};

// One residual direction of a pair as seen from its tail.
struct ResidualArc {
  PairIndex pair = 0;
  Direction dir = Direction::kUp;
  VertexId tail = 0;
  VertexId head = 0;
};

// Pair structure of a network, shared by every ResidualState built on it.
class ResidualTopology {
 public:
  explicit ResidualTopology(FlowNetwork net);

  const FlowNetwork& network() const { return net_; }
  PairIndex pair_count() const { return static_cast<PairIndex>(pairs_.size()); }
  const VertexPair& pair(PairIndex p) const { return pairs_[static_cast<std::size_t>(p)]; }
  const std::vector<ResidualArc>& out_arcs(VertexId v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  std::optional<PairIndex> find_pair(VertexId u, VertexId v) const;
  ResidualArc arc_from(PairIndex p, VertexId tail) const;

 private:
  FlowNetwork net_;
  std::vector<VertexPair> pairs_;
  std::vector<std::vector<ResidualArc>> adjacency_;
  std::unordered_map<std::uint64_t, PairIndex> lookup_;
};

// Mutable preflow over a network: per-arc flow plus per-vertex excess.
// Flow between a vertex pair is canonicalized per direction: a push first
// cancels flow on opposing arcs, then fills arcs in its own direction.
class ResidualState {
 public:
  explicit ResidualState(const FlowNetwork& net);
  ResidualState(std::shared_ptr<const ResidualTopology> topology);
  // Adopts arc flows as given and derives excesses; no feasibility checks.
  ResidualState(const FlowNetwork& net, std::vector<Capacity> arc_flows);
  // Fully raw state, including a possibly inconsistent excess vector.
  ResidualState(const FlowNetwork& net, std::vector<Capacity> arc_flows,
                std::vector<Capacity> excess);

  const FlowNetwork& network() const { return topology_->network(); }
  const ResidualTopology& topology() const { return *topology_; }
  const std::shared_ptr<const ResidualTopology>& shared_topology() const {
    return topology_;
  }

  Capacity flow(ArcIndex a) const { return flow_[static_cast<std::size_t>(a)]; }
  const std::vector<Capacity>& arc_flows() const { return flow_; }
  Capacity excess(VertexId v) const { return excess_[static_cast<std::size_t>(v)]; }
  const std::vector<Capacity>& excesses() const { return excess_; }

  Capacity residual(PairIndex p, Direction d) const {
    return residual_[2 * static_cast<std::size_t>(p) + static_cast<std::size_t>(d)];
  }
  Capacity residual(const ResidualArc& a) const { return residual(a.pair, a.dir); }

  // Sends `amount` along the residual arc; throws UsageError when it exceeds
  // the residual capacity.
  void push(const ResidualArc& arc, Capacity amount);

 private:
  void rebuild_residuals();

  std::shared_ptr<const ResidualTopology> topology_;
  std::vector<Capacity> flow_;
  std::vector<Capacity> excess_;
  std::vector<Capacity> residual_;
};

enum class ArcClass : std::uint8_t { kFavorable, kLarge, kAbundant, kSmall };

const char* to_string(ArcClass c);

// r(u,v) under the three-case definition; 0 when u and v share no arc.
Capacity residual_capacity(const ResidualState& state, VertexId u, VertexId v);

// gamma(u,v) = r(u,v) + r(v,u).
Capacity compaction_capacity(const ResidualState& state, VertexId u, VertexId v);

// Capacity class of an arc for excess dominator `delta`. Thresholds compare
// exact multiples (4*gamma vs delta), never truncated quotients.
ArcClass classify_arc(Capacity gamma, Capacity r_uv, Capacity delta);

enum class ViolationKind : std::uint8_t {
  kNone,
  kShape,
  kNegativeFlow,
  kCapacity,
  kBookkeeping,
  kNegativeExcess,
  kConservation,
};

struct Verdict {
  ViolationKind kind = ViolationKind::kNone;
  std::string message;
  // Arc index for arc violations, vertex id for vertex violations.
  std::int64_t location = -1;

  bool ok() const { return kind == ViolationKind::kNone; }
  explicit operator bool() const { return ok(); }
};

struct FlowVerdict {
  Verdict verdict;
  Capacity value = 0;
};

Verdict verify_preflow(const FlowNetwork& net, const ResidualState& state);
FlowVerdict verify_flow(const FlowNetwork& net, const ResidualState& state);

}  // namespace cmf

#endif  // CMF_CORE_HPP_
