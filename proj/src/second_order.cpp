#include "hoim/second_order.hpp"

#include <stdexcept>

namespace hoim {

ClauseSystem lower_qubo(const QuboSystem& qubo) {
  std::vector<Term> terms;
  terms.reserve(qubo.pairwise.size() + qubo.linear.size());
  for (const auto& c : qubo.pairwise) terms.push_back({{c.i, c.j}, c.q});
  for (const auto& b : qubo.linear) terms.push_back({{b.i}, b.h});
  return build_clause_system(terms, qubo.num_spins);
}

SpinState lift_initial_state(const QuboSystem& qubo, const SpinState& original, NoiseSource& noise) {
  if (original.size() != qubo.num_original) throw std::invalid_argument("original state size mismatch");
  std::vector<Spin> full(original.values().begin(), original.values().end());
  while (full.size() < qubo.num_spins) full.push_back(noise.random_spin());
  return SpinState(std::move(full));
}

SpinState project_original(const QuboSystem& qubo, const SpinState& full) {
  if (full.size() != qubo.num_spins) throw std::invalid_argument("full state size mismatch");
  const auto values = full.values();
  return SpinState(std::vector<Spin>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(qubo.num_original)));
}

}  // namespace hoim
