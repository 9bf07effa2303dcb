// Variable and interconnection overhead of quadratization.
#pragma once

#include <cstddef>

#include "hoim/cnf.hpp"
#include "hoim/xorsat.hpp"

namespace hoim {

struct ResourceReport {
  std::size_t variables = 0;
  std::size_t auxiliaries = 0;
  std::size_t clauses = 0;
  std::size_t h_rows = 0;      // merged interaction terms
  std::size_t h_nonzeros = 0;
  double variable_ratio = 0.0;                  // (variables + auxiliaries) / variables
  double interconnection_ratio_dense = 0.0;     // (variables + auxiliaries)^2 / (h_rows * variables)
  double interconnection_ratio_nonzero = 0.0;   // (variables + auxiliaries)^2 / h_nonzeros
};

/// Auxiliary spins needed to quadratize one clause of length p:
/// 0 for p <= 2, 1 for p = 3, p beyond.
std::size_t auxiliaries_per_clause(std::size_t p);

ResourceReport resource_report(const CnfFormula& cnf);
ResourceReport resource_report(const PlantedInstance& instance);

}  // namespace hoim
