// Spin conflict graph and DSATUR coloring for conflict-free group updates.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hoim/core_model.hpp"

namespace hoim {

/// Undirected simple graph over spins, adjacency lists ascending.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(std::vector<std::vector<SpinIndex>> adjacency);

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  std::span<const SpinIndex> neighbors(SpinIndex v) const { return adjacency_[v]; }
  std::size_t degree(SpinIndex v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;
  bool adjacent(SpinIndex a, SpinIndex b) const;

 private:
  std::vector<std::vector<SpinIndex>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// i ~ j iff some term contains both.
ConflictGraph conflict_graph(const ClauseSystem& system);

/// Graph from an explicit edge list (self-loops rejected, duplicates merged).
ConflictGraph graph_from_edges(std::size_t num_vertices,
                               std::span<const std::pair<SpinIndex, SpinIndex>> edges);

struct Coloring {
  std::vector<std::vector<SpinIndex>> groups;  // each group ascending
  std::vector<std::uint32_t> spin_color;

  std::size_t num_colors() const { return groups.size(); }
};

/// DSATUR: pick the uncolored vertex with the most distinct neighbour colors,
/// ties by degree among uncolored neighbours, then lowest index; give it the
/// smallest free color. Throws std::invalid_argument on an empty graph.
Coloring dsatur_color(const ConflictGraph& graph);

/// Groups partition the spins, spin_color agrees with groups, and no term
/// holds two spins of one color.
bool validate_coloring(const ClauseSystem& system, const Coloring& coloring);

}  // namespace hoim
