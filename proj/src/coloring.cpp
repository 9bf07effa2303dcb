#include "hoim/coloring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace hoim {

ConflictGraph::ConflictGraph(std::vector<std::vector<SpinIndex>> adjacency)
    : adjacency_(std::move(adjacency)) {
  std::size_t half_edges = 0;
  for (SpinIndex v = 0; v < adjacency_.size(); ++v) {
    auto& row = adjacency_[v];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (SpinIndex u : row) {
      if (u >= adjacency_.size()) throw std::invalid_argument("neighbour index out of range");
      if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(v));
    }
    half_edges += row.size();
  }
  for (SpinIndex v = 0; v < adjacency_.size(); ++v) {
    for (SpinIndex u : adjacency_[v]) {
      if (!std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v)) {
        throw std::invalid_argument("adjacency is not symmetric");
      }
    }
  }
  num_edges_ = half_edges / 2;
}

std::size_t ConflictGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& row : adjacency_) best = std::max(best, row.size());
  return best;
}

bool ConflictGraph::adjacent(SpinIndex a, SpinIndex b) const {
  const auto& row = adjacency_.at(a);
  return std::binary_search(row.begin(), row.end(), b);
}

ConflictGraph conflict_graph(const ClauseSystem& system) {
  std::vector<std::vector<SpinIndex>> adjacency(system.num_spins());
  for (TermIndex k = 0; k < system.num_terms(); ++k) {
    const auto members = system.term_spins(k);
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        adjacency[members[a]].push_back(members[b]);
        adjacency[members[b]].push_back(members[a]);
      }
    }
  }
  return ConflictGraph(std::move(adjacency));
}

ConflictGraph graph_from_edges(std::size_t num_vertices,
                               std::span<const std::pair<SpinIndex, SpinIndex>> edges) {
  std::vector<std::vector<SpinIndex>> adjacency(num_vertices);
  for (auto [a, b] : edges) {
    if (a >= num_vertices || b >= num_vertices) throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  return ConflictGraph(std::move(adjacency));
}

Coloring dsatur_color(const ConflictGraph& graph) {
  const std::size_t n = graph.num_vertices();
  if (n == 0) throw std::invalid_argument("cannot color an empty graph");

  constexpr std::uint32_t kUncolored = UINT32_MAX;
  std::vector<std::uint32_t> color(n, kUncolored);
  std::vector<std::set<std::uint32_t>> seen(n);
  std::vector<std::size_t> free_degree(n);
  for (SpinIndex v = 0; v < n; ++v) free_degree[v] = graph.degree(v);

  // Max saturation, then max uncolored degree, then lowest index.
  using Key = std::tuple<std::size_t, std::size_t, std::int64_t>;
  auto key = [&](SpinIndex v) { return Key{seen[v].size(), free_degree[v], -static_cast<std::int64_t>(v)}; };
  std::set<Key> queue;
  for (SpinIndex v = 0; v < n; ++v) queue.insert(key(v));

  std::uint32_t num_colors = 0;
  while (!queue.empty()) {
    const auto top = std::prev(queue.end());
    const auto v = static_cast<SpinIndex>(-std::get<2>(*top));
    queue.erase(top);

    std::uint32_t c = 0;
    for (std::uint32_t used : seen[v]) {
      if (used != c) break;
      ++c;
    }
    color[v] = c;
    num_colors = std::max(num_colors, c + 1);

    for (SpinIndex u : graph.neighbors(v)) {
      if (color[u] != kUncolored) continue;
      queue.erase(key(u));
      seen[u].insert(c);
      --free_degree[u];
      queue.insert(key(u));
    }
  }

  Coloring out;
  out.spin_color = std::move(color);
  out.groups.resize(num_colors);
  for (SpinIndex v = 0; v < n; ++v) out.groups[out.spin_color[v]].push_back(v);
  return out;
}

bool validate_coloring(const ClauseSystem& system, const Coloring& coloring) {
  const std::size_t n = system.num_spins();
  if (coloring.spin_color.size() != n) return false;
  std::vector<std::uint8_t> covered(n, 0);
  for (std::uint32_t r = 0; r < coloring.groups.size(); ++r) {
    for (SpinIndex v : coloring.groups[r]) {
      if (v >= n || covered[v] || coloring.spin_color[v] != r) return false;
      covered[v] = 1;
    }
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return false;

  std::vector<std::uint32_t> in_term;
  for (TermIndex k = 0; k < system.num_terms(); ++k) {
    in_term.clear();
    for (SpinIndex v : system.term_spins(k)) in_term.push_back(coloring.spin_color[v]);
    std::sort(in_term.begin(), in_term.end());
    if (std::adjacent_find(in_term.begin(), in_term.end()) != in_term.end()) return false;
  }
  return true;
}

}  // namespace hoim
