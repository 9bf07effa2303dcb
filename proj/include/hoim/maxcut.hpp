// Weighted graphs (Gset format) and the MAX-CUT Ising encoding.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hoim/core_model.hpp"

namespace hoim {

struct WeightedEdge {
  SpinIndex u;
  SpinIndex v;
  double weight;
};

struct WeightedGraph {
  std::size_t num_vertices = 0;
  std::vector<WeightedEdge> edges;  // u < v, parallel edges merged

  double total_weight() const;
};

/// Normalizes endpoints, merges parallel edges. Throws std::invalid_argument
/// on a self-loop or an out-of-range endpoint.
WeightedGraph make_graph(std::size_t num_vertices, std::vector<WeightedEdge> edges);

/// "N M" header, then M lines "u v w" with 1-based vertices. Throws
/// std::invalid_argument on a malformed line, a bad vertex or a count mismatch.
WeightedGraph parse_gset(std::string_view text);
WeightedGraph read_gset(const std::string& path);

/// One pairwise term per edge with J = -w/2, so E = sum_e (w/2) s_u s_v and
/// cut = W/2 - E: minimizing E maximizes the cut.
ClauseSystem maxcut_to_ising(const WeightedGraph& graph);

/// sum_e w (1 - s_u s_v) / 2.
double cut_value(const WeightedGraph& graph, const SpinState& spins);

/// Cut recovered from an energy of maxcut_to_ising(graph).
double cut_from_energy(const WeightedGraph& graph, double energy);
double energy_for_cut(const WeightedGraph& graph, double cut);

}  // namespace hoim
