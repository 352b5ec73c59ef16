#ifndef CMF_GENERATOR_HPP_
#define CMF_GENERATOR_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "cmf/core.hpp"

namespace cmf {

enum class Family : std::uint8_t { kRandomSparse, kGrid, kStarHeavy };

Family parse_family(std::string_view name);
const char* to_string(Family f);

struct GeneratorSpec {
  Family family = Family::kRandomSparse;
  // random-sparse and star-heavy: total vertex count. grid: lattice size;
  // the source and sink come on top.
  VertexId n = 10;
  // Target arc count. The grid family derives its own.
  ArcIndex m = 20;
  Capacity max_capacity = 100;
  std::uint64_t seed = 1;
};

// Deterministic per spec. Every family guarantees an s-t path, capacities
// in [1, max_capacity] and m <= 3n. Infeasible specs throw UsageError.
FlowNetwork generate(const GeneratorSpec& spec);

}  // namespace cmf

#endif  // CMF_GENERATOR_HPP_
