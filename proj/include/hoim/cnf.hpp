// DIMACS CNF formulas and their higher-order Ising encoding.
//
// Boolean true is spin +1 throughout: a literal on x_i reads (1 + sigma*s_i)/2
// with sigma = +1 for x_i and -1 for its negation.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoim/core_model.hpp"
#include "hoim/noise_annealer.hpp"

namespace hoim {

using Literal = std::int32_t;  // +v / -v, 1-based variable

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<Literal>> clauses;  // deduplicated literals
  std::vector<std::string> warnings;           // parse-time findings

  std::size_t num_clauses() const { return clauses.size(); }
};

bool is_tautology(const std::vector<Literal>& clause);

/// Accepts comments, a "p cnf V C" header, clauses spanning lines and the
/// SATLIB '%' trailer. Throws std::invalid_argument on a malformed header,
/// an out-of-range literal or an empty clause; a clause-count mismatch only
/// adds a warning.
CnfFormula parse_dimacs_cnf(std::string_view text);
CnfFormula read_dimacs_cnf(const std::string& path);
std::string write_dimacs_cnf(const CnfFormula& cnf);

inline constexpr std::size_t kMaxClauseLength = 20;

struct SatEncoding {
  ClauseSystem system;
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;  // clauses encoded (tautologies excluded)
  std::map<std::size_t, std::size_t> length_histogram;
  std::vector<std::string> warnings;

  /// Common clause length, if every encoded clause has the same length.
  std::optional<std::size_t> uniform_length() const;
  /// Energy at `satisfied` satisfied clauses; needs a uniform clause length
  /// unless satisfied == num_clauses. Throws std::invalid_argument otherwise.
  double energy_at(std::size_t satisfied) const;
  /// Inverse of energy_at (uniform length only).
  std::size_t satisfied_at(double energy) const;
};

/// Each clause of length p contributes sum_{l=1..p} (-1)^(l-1) times every
/// product of l of its folded literals, i.e. +1 when satisfied and
/// -(2^p - 1) otherwise; E = -sum over clauses. Tautologies are dropped with
/// a warning. Throws std::invalid_argument for clauses longer than
/// max_clause_length.
SatEncoding cnf_to_ising(const CnfFormula& cnf, std::size_t max_clause_length = kMaxClauseLength);

/// Clauses with a true literal, tautologies not counted.
std::size_t satisfied_count(const CnfFormula& cnf, const SpinState& spins);
/// Non-tautological clauses.
std::size_t countable_clauses(const CnfFormula& cnf);

/// Uniform random k-SAT: each clause draws k distinct variables and signs.
CnfFormula random_ksat(std::size_t num_vars, std::size_t num_clauses, std::size_t k, NoiseSource& noise);

}  // namespace hoim
