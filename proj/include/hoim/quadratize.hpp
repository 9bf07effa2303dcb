// Second-order (QUBO-style) rewrites of cubic objectives with one auxiliary
// spin per clause.
//
// A QuboSystem describes an objective to MAXIMIZE,
//   H(s) = sum_{i<j} Q_ij s_i s_j + sum_i h_i s_i,
// so the matching Ising energy is E = -H. Auxiliary spins follow the
// original variables: spin num_original + k belongs to clause k.
#pragma once

#include <string>
#include <vector>

#include "hoim/cnf.hpp"
#include "hoim/core_model.hpp"
#include "hoim/xorsat.hpp"

namespace hoim {

struct PairCoupling {
  SpinIndex i;
  SpinIndex j;
  double q;
};

struct LinearBias {
  SpinIndex i;
  double h;
};

struct QuboSystem {
  std::size_t num_spins = 0;
  std::size_t num_original = 0;
  std::vector<PairCoupling> pairwise;  // i < j, merged, ascending
  std::vector<LinearBias> linear;      // merged, ascending
  std::vector<std::string> warnings;

  std::size_t num_auxiliary() const { return num_spins - num_original; }
};

/// Merges duplicates, orders i < j and drops zero entries.
QuboSystem make_qubo(std::size_t num_spins, std::size_t num_original, std::vector<PairCoupling> pairwise,
                     std::vector<LinearBias> linear);

/// H(s) for a full assignment (originals + auxiliaries).
double qubo_objective(const QuboSystem& qubo, const SpinState& spins);

/// Per clause with folded literals y_i = sigma_i s_i and auxiliary a:
/// (s_a + 1)(y1 + y2 + y3) - (y1 y2 + y1 y3 + y2 y3) - s_a, whose maximum
/// over s_a is 2 for a satisfied clause and -2 otherwise. Tautologies are
/// dropped with a warning. Throws std::invalid_argument unless every other
/// clause has exactly three literals.
QuboSystem quadratize_cnf3(const CnfFormula& cnf);

/// Per equation (y1 + y2 + y3) - (y1 y2 + y1 y3 + y2 y3) - 2 s_a
/// + 2 s_a (y1 + y2 + y3), maximum over s_a = 3 + y1 y2 y3. y = s for b_k = 0;
/// for b_k = 1 the first spin enters negated so the maximum is 3 + J_k T_k.
QuboSystem quadratize_3r3x(const PlantedInstance& instance);

/// Max over all spins of H for quadratize_cnf3 output at `satisfied` clauses
/// of `clauses`: 4 * satisfied - 2 * clauses.
double cnf3_qubo_optimum(std::size_t satisfied, std::size_t clauses);
/// Same for quadratize_3r3x: 2 * equations + 2 * satisfied.
double xorsat_qubo_optimum(std::size_t satisfied, std::size_t equations);

std::string qubo_to_json(const QuboSystem& qubo);
/// Throws std::invalid_argument on schema errors.
QuboSystem qubo_from_json(const std::string& text);

}  // namespace hoim
