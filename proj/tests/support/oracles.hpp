// Brute-force references and random instance builders for tests.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hoim/cnf.hpp"
#include "hoim/core_model.hpp"
#include "hoim/maxcut.hpp"

namespace oracle {

using Rng = std::mt19937_64;

/// Bit i of `bits` set means spin i is +1.
std::vector<int> spins_from_bits(std::uint64_t bits, std::size_t n);
hoim::SpinState to_state(const std::vector<int>& spins);

/// -sum_k J_k prod s over an unmerged term list.
double poly_energy(const std::vector<hoim::Term>& terms, const std::vector<int>& spins);

/// Terms of order 1..max_order with distinct members. Integer weights in
/// [-3, 3] \ {0} when `integer`, otherwise uniform reals in [-2, 2].
std::vector<hoim::Term> random_terms(Rng& rng, std::size_t n, std::size_t m, std::size_t max_order, bool integer);

std::vector<int> random_spins(Rng& rng, std::size_t n);

/// Satisfied clauses evaluated on booleans (true = spin +1), tautologies skipped.
std::size_t count_satisfied(const hoim::CnfFormula& cnf, const std::vector<int>& spins);

hoim::CnfFormula random_cnf(Rng& rng, std::size_t n, std::size_t m, std::size_t k);

/// Erdos-Renyi graph, integer weights in [-2, 3] \ {0} or all ones.
hoim::WeightedGraph random_graph(Rng& rng, std::size_t n, double p, bool unit_weights);

/// Cut by definition: weight of edges whose endpoints differ.
double cut_direct(const hoim::WeightedGraph& graph, const std::vector<int>& spins);

/// DPLL with unit propagation. Returns a model (true = +1) or nullopt.
std::optional<std::vector<int>> dpll(const hoim::CnfFormula& cnf);

/// Uniform random k-SAT instance that dpll proves satisfiable.
hoim::CnfFormula satisfiable_ksat(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t k);

}  // namespace oracle
