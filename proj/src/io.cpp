#include "cmf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>

namespace cmf {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::int64_t parse_int(std::string_view token, std::size_t line_no, const char* what) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line_no, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

VertexId parse_vertex(std::string_view token, std::int64_t n, std::size_t line_no) {
  const std::int64_t id = parse_int(token, line_no, "vertex id");
  if (id < 1 || id > n) {
    throw ParseError(line_no, "vertex id " + std::to_string(id) + " out of range 1.." +
                                  std::to_string(n));
  }
  return static_cast<VertexId>(id - 1);
}

}  // namespace

FlowNetwork parse_dimacs(std::istream& in) {
  std::int64_t n = -1;
  std::int64_t m = -1;
  VertexId source = kNoVertex;
  VertexId sink = kNoVertex;
  std::vector<Arc> arcs;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string_view kind = tokens[0];
    if (kind == "c") continue;
    if (kind == "p") {
      if (n >= 0) throw ParseError(line_no, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "max") {
        throw ParseError(line_no, "expected 'p max N M'");
      }
      n = parse_int(tokens[2], line_no, "vertex count");
      m = parse_int(tokens[3], line_no, "arc count");
      if (n < 2 || n > INT32_MAX) throw ParseError(line_no, "vertex count out of range");
      if (m < 0 || m > INT32_MAX) throw ParseError(line_no, "arc count out of range");
      arcs.reserve(static_cast<std::size_t>(std::min<std::int64_t>(m, 1 << 20)));
      continue;
    }
    if (n < 0) throw ParseError(line_no, "line before the problem line");
    if (kind == "n") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'n ID s|t'");
      const VertexId v = parse_vertex(tokens[1], n, line_no);
      if (tokens[2] == "s") {
        if (source != kNoVertex) throw ParseError(line_no, "duplicate source designator");
        source = v;
      } else if (tokens[2] == "t") {
        if (sink != kNoVertex) throw ParseError(line_no, "duplicate sink designator");
        sink = v;
      } else {
        throw ParseError(line_no, "designator must be 's' or 't'");
      }
      continue;
    }
    if (kind == "a") {
      if (tokens.size() != 4) throw ParseError(line_no, "expected 'a U V CAP'");
      if (static_cast<std::int64_t>(arcs.size()) >= m) {
        throw ParseError(line_no, "more arcs than declared (" + std::to_string(m) + ")");
      }
      const VertexId u = parse_vertex(tokens[1], n, line_no);
      const VertexId v = parse_vertex(tokens[2], n, line_no);
      const Capacity cap = parse_int(tokens[3], line_no, "capacity");
      if (cap < 0) throw ParseError(line_no, "negative capacity");
      if (u == v) throw ParseError(line_no, "self-loop arc");
      arcs.push_back({u, v, cap});
      continue;
    }
    throw ParseError(line_no, "unknown line type '" + std::string(kind) + "'");
  }
  if (n < 0) throw ParseError(line_no, "missing problem line");
  if (source == kNoVertex) throw ParseError(line_no, "missing source designator");
  if (sink == kNoVertex) throw ParseError(line_no, "missing sink designator");
  if (source == sink) throw ParseError(line_no, "source and sink coincide");
  if (static_cast<std::int64_t>(arcs.size()) != m) {
    throw ParseError(line_no, "declared " + std::to_string(m) + " arcs, found " +
                                  std::to_string(arcs.size()));
  }
  return FlowNetwork(static_cast<VertexId>(n), std::move(arcs), source, sink);
}

FlowNetwork parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string write_dimacs(const FlowNetwork& net) {
  std::string out;
  out.reserve(32 + 24 * static_cast<std::size_t>(net.arc_count()));
  out += "p max " + std::to_string(net.vertex_count()) + " " + std::to_string(net.arc_count()) + "\n";
  out += "n " + std::to_string(net.source() + 1) + " s\n";
  out += "n " + std::to_string(net.sink() + 1) + " t\n";
  for (const Arc& a : net.arcs()) {
    out += "a " + std::to_string(a.tail + 1) + " " + std::to_string(a.head + 1) + " " +
           std::to_string(a.capacity) + "\n";
  }
  return out;
}

std::vector<Capacity> parse_flow_file(std::istream& in, const FlowNetwork& net) {
  std::vector<Capacity> flows;
  flows.reserve(static_cast<std::size_t>(net.arc_count()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] != "f" || tokens.size() != 4) throw ParseError(line_no, "expected 'f U V AMOUNT'");
    const auto index = static_cast<ArcIndex>(flows.size());
    if (index >= net.arc_count()) throw ParseError(line_no, "more flow lines than arcs");
    const VertexId u = parse_vertex(tokens[1], net.vertex_count(), line_no);
    const VertexId v = parse_vertex(tokens[2], net.vertex_count(), line_no);
    const Arc& arc = net.arc(index);
    if (u != arc.tail || v != arc.head) {
      throw ParseError(line_no, "flow line does not match arc " + std::to_string(index + 1));
    }
    flows.push_back(parse_int(tokens[3], line_no, "flow amount"));
  }
  if (static_cast<ArcIndex>(flows.size()) != net.arc_count()) {
    throw ParseError(line_no, "expected " + std::to_string(net.arc_count()) + " flow lines, found " +
                                  std::to_string(flows.size()));
  }
  return flows;
}

std::string write_flow_file(const FlowNetwork& net, const std::vector<Capacity>& arc_flows) {
  if (arc_flows.size() != static_cast<std::size_t>(net.arc_count())) {
    throw UsageError("flow vector does not match the arc count");
  }
  std::string out;
  for (ArcIndex a = 0; a < net.arc_count(); ++a) {
    const Arc& arc = net.arc(a);
    out += "f " + std::to_string(arc.tail + 1) + " " + std::to_string(arc.head + 1) + " " +
           std::to_string(arc_flows[static_cast<std::size_t>(a)]) + "\n";
  }
  return out;
}

std::string write_stats(const StatsRecord& r) {
  char wall[32];
  std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
  std::ostringstream out;
  out << "instance=" << (r.instance.empty() ? "-" : r.instance)
      << " solver=" << (r.solver.empty() ? "-" : r.solver)
      << " flow_value=" << r.flow_value << " phases=" << r.phases
      << " sat_pushes=" << r.saturating_pushes << " high_nonsat=" << r.high_nonsat_pushes
      << " low_nonsat=" << r.low_nonsat_pushes << " relabels=" << r.relabels
      << " sum_vc=" << r.compact_vertex_sum << " dyntree_ops=" << r.dyntree_ops
      << " wall_ms=" << wall << "\n";
  return out.str();
}

}  // namespace cmf
