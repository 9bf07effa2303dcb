#include "hoim/xorsat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hoim {
namespace {

bool pair_stubs(std::size_t n, NoiseSource& noise, std::vector<std::array<SpinIndex, 3>>& equations) {
  std::vector<SpinIndex> stubs(3 * n);
  for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<SpinIndex>(i / 3);
  for (std::size_t i = stubs.size() - 1; i > 0; --i) std::swap(stubs[i], stubs[noise.below(i + 1)]);

  equations.assign(n, {});
  for (std::size_t k = 0; k < n; ++k) {
    auto& eq = equations[k];
    std::copy_n(stubs.begin() + static_cast<std::ptrdiff_t>(3 * k), 3, eq.begin());
    std::sort(eq.begin(), eq.end());
    if (eq[0] == eq[1] || eq[1] == eq[2]) return false;
  }
  std::sort(equations.begin(), equations.end());
  return std::adjacent_find(equations.begin(), equations.end()) == equations.end();
}

}  // namespace

PlantedInstance gen_3r3x(std::size_t num_vars, NoiseSource& noise) {
  if (num_vars < 4) throw std::invalid_argument("3R-3X needs at least 4 variables");

  PlantedInstance inst;
  bool ok = false;
  for (int attempt = 0; attempt < kPlantingRetries && !ok; ++attempt) ok = pair_stubs(num_vars, noise, inst.equations);
  if (!ok) {
    throw std::runtime_error("no simple 3-regular pairing for " + std::to_string(num_vars) + " variables after " +
                             std::to_string(kPlantingRetries) + " attempts");
  }

  std::vector<std::uint8_t> x(num_vars);
  std::vector<Spin> s(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) {
    x[i] = static_cast<std::uint8_t>(noise.next() >> 63);
    s[i] = x[i] ? Spin{-1} : Spin{1};
  }
  std::vector<Term> terms;
  for (const auto& eq : inst.equations) {
    const auto b = static_cast<std::uint8_t>((x[eq[0]] + x[eq[1]] + x[eq[2]]) & 1);
    inst.rhs_bits.push_back(b);
    terms.push_back({{eq[0], eq[1], eq[2]}, b ? -1.0 : 1.0});
  }
  inst.system = build_clause_system(terms, num_vars);
  inst.planted_spins = SpinState(std::move(s));
  return inst;
}

bool is_three_regular(const PlantedInstance& instance) {
  const auto& sys = instance.system;
  if (sys.num_terms() != instance.equations.size() || sys.num_terms() != sys.num_spins()) return false;
  for (TermIndex k = 0; k < sys.num_terms(); ++k) {
    const auto row = sys.term_spins(k);
    if (row.size() != 3 || !std::equal(row.begin(), row.end(), instance.equations[k].begin())) return false;
  }
  for (SpinIndex i = 0; i < sys.num_spins(); ++i) {
    if (sys.spin_terms(i).size() != 3) return false;
  }
  return true;
}

std::size_t satisfied_equations(const PlantedInstance& instance, const SpinState& spins) {
  if (spins.size() != instance.num_vars()) throw std::invalid_argument("spin count does not match the instance");
  std::size_t count = 0;
  for (std::size_t k = 0; k < instance.equations.size(); ++k) {
    const auto& eq = instance.equations[k];
    const int product = spins[eq[0]] * spins[eq[1]] * spins[eq[2]];
    if ((product > 0) == (instance.rhs_bits[k] == 0)) ++count;
  }
  return count;
}

}  // namespace hoim
