#ifndef CMF_IO_HPP_
#define CMF_IO_HPP_

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cmf/core.hpp"

namespace cmf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// DIMACS max-flow text. Vertex ids are 1-based on disk, 0-based in memory.
FlowNetwork parse_dimacs(std::istream& in);
FlowNetwork parse_dimacs(std::string_view text);
std::string write_dimacs(const FlowNetwork& net);

// Per-arc flow file: one "f U V AMOUNT" line per arc, in network arc order.
std::vector<Capacity> parse_flow_file(std::istream& in, const FlowNetwork& net);
std::string write_flow_file(const FlowNetwork& net, const std::vector<Capacity>& arc_flows);

struct StatsRecord {
  std::string instance;
  std::string solver;
  Capacity flow_value = 0;
  std::int64_t phases = 0;
  std::int64_t saturating_pushes = 0;
  std::int64_t high_nonsat_pushes = 0;
  std::int64_t low_nonsat_pushes = 0;
  std::int64_t relabels = 0;
  std::int64_t compact_vertex_sum = 0;
  std::int64_t dyntree_ops = 0;
  double wall_ms = 0.0;

  friend bool operator==(const StatsRecord&, const StatsRecord&) = default;
};

// Field order of write_stats, fixed.
inline constexpr std::string_view kStatsKeys[] = {
    "instance",   "solver",          "flow_value", "phases",
    "sat_pushes", "high_nonsat",     "low_nonsat", "relabels",
    "sum_vc",     "dyntree_ops",     "wall_ms",
};

// One line of space-separated key=value pairs, newline-terminated.
std::string write_stats(const StatsRecord& record);

}  // namespace cmf

#endif  // CMF_IO_HPP_
