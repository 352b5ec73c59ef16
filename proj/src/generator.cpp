#include "cmf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace cmf {

Family parse_family(std::string_view name) {
  if (name == "random-sparse") return Family::kRandomSparse;
  if (name == "grid") return Family::kGrid;
  if (name == "star-heavy") return Family::kStarHeavy;
  throw UsageError("unknown family '" + std::string(name) + "'");
}

const char* to_string(Family f) {
  switch (f) {
    case Family::kRandomSparse:
      return "random-sparse";
    case Family::kGrid:
      return "grid";
    case Family::kStarHeavy:
      return "star-heavy";
  }
  return "?";
}

namespace {

using Rng = std::mt19937_64;

VertexId pick(Rng& rng, VertexId lo, VertexId hi) {
  return std::uniform_int_distribution<VertexId>(lo, hi)(rng);
}

// s = 0, t = n-1, plus a path s -> ... -> t through a random set of internal
// vertices. Returns the path arcs.
std::vector<Arc> backbone(Rng& rng, VertexId n, ArcIndex m, Capacity cap_hi) {
  std::uniform_int_distribution<Capacity> cap(1, cap_hi);
  std::vector<VertexId> inner(static_cast<std::size_t>(n - 2));
  std::iota(inner.begin(), inner.end(), 1);
  std::shuffle(inner.begin(), inner.end(), rng);
  const VertexId longest = std::min<VertexId>(n - 2, static_cast<VertexId>(m) - 1);
  inner.resize(static_cast<std::size_t>(pick(rng, 0, std::max<VertexId>(0, longest))));
  std::vector<Arc> arcs;
  VertexId prev = 0;
  for (VertexId v : inner) {
    arcs.push_back({prev, v, cap(rng)});
    prev = v;
  }
  arcs.push_back({prev, n - 1, cap(rng)});
  return arcs;
}

void check_sparse(const GeneratorSpec& spec) {
  if (spec.n < 2) throw UsageError("need at least 2 vertices");
  if (spec.m < 1) throw UsageError("need at least 1 arc");
  if (static_cast<std::int64_t>(spec.m) > 3 * static_cast<std::int64_t>(spec.n)) {
    throw UsageError("m = " + std::to_string(spec.m) + " exceeds the family maximum 3n = " +
                     std::to_string(3 * static_cast<std::int64_t>(spec.n)));
  }
}

FlowNetwork random_sparse(const GeneratorSpec& spec, Rng& rng) {
  check_sparse(spec);
  std::uniform_int_distribution<Capacity> cap(1, spec.max_capacity);
  std::vector<Arc> arcs = backbone(rng, spec.n, spec.m, spec.max_capacity);
  while (static_cast<ArcIndex>(arcs.size()) < spec.m) {
    const VertexId u = pick(rng, 0, spec.n - 1);
    const VertexId v = pick(rng, 0, spec.n - 1);
    if (u != v) arcs.push_back({u, v, cap(rng)});
  }
  return FlowNetwork(spec.n, std::move(arcs), 0, spec.n - 1);
}

FlowNetwork star_heavy(const GeneratorSpec& spec, Rng& rng) {
  check_sparse(spec);
  std::uniform_int_distribution<Capacity> cap(1, spec.max_capacity);
  std::vector<Arc> arcs = backbone(rng, spec.n, spec.m, spec.max_capacity);
  // A handful of hubs soak up most arcs, so their degree far exceeds m/n.
  const VertexId hubs = std::max<VertexId>(1, spec.n / 20);
  std::bernoulli_distribution hub_end(0.8);
  std::bernoulli_distribution outward(0.5);
  while (static_cast<ArcIndex>(arcs.size()) < spec.m) {
    VertexId u = pick(rng, 0, spec.n - 1);
    VertexId v = pick(rng, 0, spec.n - 1);
    if (hub_end(rng)) {
      const VertexId hub = pick(rng, 1, std::min<VertexId>(hubs, spec.n - 1));
      (outward(rng) ? u : v) = hub;
    }
    if (u != v) arcs.push_back({u, v, cap(rng)});
  }
  return FlowNetwork(spec.n, std::move(arcs), 0, spec.n - 1);
}

FlowNetwork grid(const GeneratorSpec& spec, Rng& rng) {
  if (spec.n < 1) throw UsageError("grid needs at least 1 lattice vertex");
  const auto rows = static_cast<VertexId>(std::sqrt(static_cast<double>(spec.n)));
  const VertexId cols = spec.n / rows;
  const VertexId s = 0;
  const VertexId t = rows * cols + 1;
  auto at = [&](VertexId r, VertexId c) { return 1 + r * cols + c; };
  std::uniform_int_distribution<Capacity> cap(1, spec.max_capacity);
  std::vector<Arc> arcs;
  for (VertexId r = 0; r < rows; ++r) arcs.push_back({s, at(r, 0), cap(rng)});
  for (VertexId r = 0; r < rows; ++r) {
    for (VertexId c = 0; c < cols; ++c) {
      if (c + 1 < cols) arcs.push_back({at(r, c), at(r, c + 1), cap(rng)});
      if (r + 1 < rows) {
        arcs.push_back({at(r, c), at(r + 1, c), cap(rng)});
        arcs.push_back({at(r + 1, c), at(r, c), cap(rng)});
      }
    }
  }
  for (VertexId r = 0; r < rows; ++r) arcs.push_back({at(r, cols - 1), t, cap(rng)});
  return FlowNetwork(t + 1, std::move(arcs), s, t);
}

}  // namespace

FlowNetwork generate(const GeneratorSpec& spec) {
  if (spec.max_capacity < 1) throw UsageError("max capacity must be at least 1");
  Rng rng(spec.seed);
  switch (spec.family) {
    case Family::kRandomSparse:
      return random_sparse(spec, rng);
    case Family::kGrid:
      return grid(spec, rng);
    case Family::kStarHeavy:
      return star_heavy(spec, rng);
  }
  throw UsageError("unknown family");
}

}  // namespace cmf
