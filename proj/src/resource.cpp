#include "hoim/resource.hpp"

#include <stdexcept>

namespace hoim {
namespace {

ResourceReport finish(std::size_t vars, std::size_t aux, std::size_t clauses, const ClauseSystem& system) {
  if (vars == 0 || system.num_terms() == 0) throw std::invalid_argument("resource report needs a non-empty instance");
  ResourceReport r;
  r.variables = vars;
  r.auxiliaries = aux;
  r.clauses = clauses;
  r.h_rows = system.num_terms();
  r.h_nonzeros = system.num_nonzeros();
  const double total = static_cast<double>(vars + aux);
  r.variable_ratio = total / static_cast<double>(vars);
  r.interconnection_ratio_dense = total * total / (static_cast<double>(r.h_rows) * static_cast<double>(vars));
  r.interconnection_ratio_nonzero = total * total / static_cast<double>(r.h_nonzeros);
  return r;
}

}  // namespace

std::size_t auxiliaries_per_clause(std::size_t p) {
  if (p <= 2) return 0;
  if (p == 3) return 1;
  return p;
}

ResourceReport resource_report(const CnfFormula& cnf) {
  const SatEncoding enc = cnf_to_ising(cnf);
  std::size_t aux = 0;
  for (const auto& [p, count] : enc.length_histogram) aux += auxiliaries_per_clause(p) * count;
  return finish(cnf.num_vars, aux, enc.num_clauses, enc.system);
}

ResourceReport resource_report(const PlantedInstance& instance) {
  return finish(instance.num_vars(), instance.num_equations(), instance.num_equations(), instance.system);
}

}  // namespace hoim
