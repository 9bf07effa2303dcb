#include "hoim/maxcut.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hoim {

double WeightedGraph::total_weight() const {
  double w = 0.0;
  for (const auto& e : edges) w += e.weight;
  return w;
}

WeightedGraph make_graph(std::size_t num_vertices, std::vector<WeightedEdge> edges) {
  std::map<std::pair<SpinIndex, SpinIndex>, double> merged;
  for (const auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u));
    if (e.u >= num_vertices || e.v >= num_vertices) throw std::invalid_argument("edge endpoint out of range");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.weight;
  }
  WeightedGraph graph;
  graph.num_vertices = num_vertices;
  for (const auto& [key, w] : merged) graph.edges.push_back({key.first, key.second, w});
  return graph;
}

WeightedGraph parse_gset(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  long long n = -1, m = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream header(line);
    if (!(header >> n >> m) || n <= 0 || m < 0) throw std::invalid_argument("malformed header: " + line);
    break;
  }
  if (n <= 0) throw std::invalid_argument("missing header");

  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long u = 0, v = 0;
    double w = 0.0;
    std::string extra;
    if (!(fields >> u >> v >> w) || (fields >> extra)) {
      throw std::invalid_argument("malformed edge at line " + std::to_string(line_no) + ": " + line);
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw std::invalid_argument("vertex out of range at line " + std::to_string(line_no));
    }
    edges.push_back({static_cast<SpinIndex>(u - 1), static_cast<SpinIndex>(v - 1), w});
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw std::invalid_argument("header declares " + std::to_string(m) + " edges, found " +
                                std::to_string(edges.size()));
  }
  return make_graph(static_cast<std::size_t>(n), std::move(edges));
}

WeightedGraph read_gset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_gset(buffer.str());
}

ClauseSystem maxcut_to_ising(const WeightedGraph& graph) {
  std::vector<Term> terms;
  terms.reserve(graph.edges.size());
  for (const auto& e : graph.edges) terms.push_back({{e.u, e.v}, -0.5 * e.weight});
  return build_clause_system(terms, graph.num_vertices);
}

double cut_value(const WeightedGraph& graph, const SpinState& spins) {
  if (spins.size() != graph.num_vertices) throw std::invalid_argument("spin count does not match the graph");
  double cut = 0.0;
  for (const auto& e : graph.edges) {
    if (spins[e.u] != spins[e.v]) cut += e.weight;
  }
  return cut;
}

double cut_from_energy(const WeightedGraph& graph, double energy) { return graph.total_weight() / 2.0 - energy; }

double energy_for_cut(const WeightedGraph& graph, double cut) { return graph.total_weight() / 2.0 - cut; }

}  // namespace hoim
