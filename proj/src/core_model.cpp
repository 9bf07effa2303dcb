#include "hoim/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hoim {
namespace {

// Dyadic weights up to 2^-kMaxQuantumBits keep every partial sum exact in a
// double as long as the magnitudes stay far below 2^53.
constexpr int kMaxQuantumBits = 20;
constexpr double kExactMagnitudeLimit = 0x1p40;

double find_weight_quantum(std::span<const double> weights) {
  for (int bits = 0; bits <= kMaxQuantumBits; ++bits) {
    const double scale = std::ldexp(1.0, bits);
    const bool all_integral = std::all_of(weights.begin(), weights.end(), [&](double w) {
      const double scaled = w * scale;
      return std::abs(scaled) < kExactMagnitudeLimit && scaled == std::nearbyint(scaled);
    });
    if (all_integral) return 1.0 / scale;
  }
  return 0.0;
}

void check_index(const ClauseSystem& system, SpinIndex spin) {
  if (spin >= system.num_spins()) {
    throw std::out_of_range("spin index " + std::to_string(spin) + " out of range for " +
                            std::to_string(system.num_spins()) + " spins");
  }
}

void check_dimensions(const ClauseSystem& system, const ClauseState& state) {
  if (state.outputs.size() != system.num_terms()) {
    throw std::invalid_argument("clause state has " + std::to_string(state.outputs.size()) +
                                " outputs, system has " + std::to_string(system.num_terms()) +
                                " terms");
  }
}

}  // namespace

ClauseSystem build_clause_system(std::span<const Term> terms, std::size_t num_spins) {
  if (num_spins == 0) throw std::invalid_argument("clause system needs at least one spin");

  std::vector<std::vector<SpinIndex>> canonical(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto members = terms[k].spins;
    if (members.empty()) throw std::invalid_argument("term " + std::to_string(k) + " is empty");
    std::sort(members.begin(), members.end());
    if (members.back() >= num_spins) {
      throw std::invalid_argument("term " + std::to_string(k) + " references spin " +
                                  std::to_string(members.back()) + " >= " +
                                  std::to_string(num_spins));
    }
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw std::invalid_argument("term " + std::to_string(k) + " repeats a spin");
    }
    canonical[k] = std::move(members);
  }

  // Collect like terms: stable order keeps the summation order deterministic.
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return canonical[a] < canonical[b]; });

  ClauseSystem system;
  system.num_spins_ = num_spins;
  for (std::size_t pos = 0; pos < order.size();) {
    const auto& members = canonical[order[pos]];
    double weight = 0.0;
    std::size_t end = pos;
    while (end < order.size() && canonical[order[end]] == members) {
      weight += terms[order[end]].weight;
      ++end;
    }
    if (weight != 0.0) {
      system.term_members_.insert(system.term_members_.end(), members.begin(), members.end());
      system.term_offsets_.push_back(system.term_members_.size());
      system.weights_.push_back(weight);
      system.max_order_ = std::max(system.max_order_, members.size());
    }
    pos = end;
  }

  // Transpose adjacency (CSC view of H).
  std::vector<std::size_t> counts(num_spins, 0);
  for (SpinIndex i : system.term_members_) ++counts[i];
  system.spin_offsets_.assign(num_spins + 1, 0);
  for (std::size_t i = 0; i < num_spins; ++i) {
    system.spin_offsets_[i + 1] = system.spin_offsets_[i] + counts[i];
  }
  system.spin_members_.resize(system.term_members_.size());
  std::vector<std::size_t> cursor(system.spin_offsets_.begin(), system.spin_offsets_.end() - 1);
  system.column_sums_.assign(num_spins, 0.0);
  for (TermIndex k = 0; k < system.num_terms(); ++k) {
    for (SpinIndex i : system.term_spins(k)) {
      system.spin_members_[cursor[i]++] = k;
      system.column_sums_[i] += system.weights_[k];
    }
  }

  // Cross-check: every (i, k) in the transpose appears in row k.
  for (SpinIndex i = 0; i < num_spins; ++i) {
    for (TermIndex k : system.spin_terms(i)) {
      const auto row = system.term_spins(k);
      if (!std::binary_search(row.begin(), row.end(), i)) {
        throw std::logic_error("transpose adjacency mismatch");
      }
    }
  }

  system.weight_quantum_ = find_weight_quantum(system.weights_);
  system.exact_weights_ = system.weight_quantum_ > 0.0;
  return system;
}

std::vector<Term> ClauseSystem::terms() const {
  std::vector<Term> out;
  out.reserve(num_terms());
  for (TermIndex k = 0; k < num_terms(); ++k) {
    const auto row = term_spins(k);
    out.push_back(Term{{row.begin(), row.end()}, weights_[k]});
  }
  return out;
}

SpinState::SpinState(std::vector<Spin> spins) : spins_(std::move(spins)) {
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] != 1 && spins_[i] != -1) {
      throw std::invalid_argument("spin " + std::to_string(i) + " is not +1/-1");
    }
  }
}

ClauseState clause_outputs(const ClauseSystem& system, const SpinState& spins) {
  if (spins.size() != system.num_spins()) {
    throw std::invalid_argument("spin state has " + std::to_string(spins.size()) +
                                " entries, system has " + std::to_string(system.num_spins()) +
                                " spins");
  }
  ClauseState state;
  state.outputs.resize(system.num_terms());
  for (TermIndex k = 0; k < system.num_terms(); ++k) {
    int product = 1;
    for (SpinIndex i : system.term_spins(k)) product *= spins[i];
    state.outputs[k] = static_cast<Spin>(product);
    state.energy -= system.term_weight(k) * product;
  }
  return state;
}

double spin_input(const ClauseSystem& system, const ClauseState& state, SpinIndex spin) {
  check_index(system, spin);
  check_dimensions(system, state);
  double sum = 0.0;
  for (TermIndex k : system.spin_terms(spin)) {
    sum += state.outputs[k] > 0 ? system.term_weight(k) : -system.term_weight(k);
  }
  return sum;
}

double delta_energy(const ClauseSystem& system, const ClauseState& state, SpinIndex spin) {
  return 2.0 * spin_input(system, state, spin);
}

double spin_input_binary(const ClauseSystem& system, std::span<const std::uint8_t> binary_outputs,
                         SpinIndex spin) {
  check_index(system, spin);
  if (binary_outputs.size() != system.num_terms()) {
    throw std::invalid_argument("binary output vector does not match the term count");
  }
  double on_sum = 0.0;
  for (TermIndex k : system.spin_terms(spin)) {
    if (binary_outputs[k]) on_sum += system.term_weight(k);
  }
  return 2.0 * on_sum - system.column_weight_sum(spin);
}

std::vector<std::uint8_t> binary_outputs(const ClauseState& state) {
  std::vector<std::uint8_t> out(state.outputs.size());
  std::transform(state.outputs.begin(), state.outputs.end(), out.begin(),
                 [](Spin t) { return static_cast<std::uint8_t>(t > 0 ? 1 : 0); });
  return out;
}

void apply_flip(const ClauseSystem& system, ClauseState& state, SpinState& spins, SpinIndex spin) {
  check_index(system, spin);
  check_dimensions(system, state);
  if (spins.size() != system.num_spins()) throw std::invalid_argument("spin state size mismatch");
  double delta = 0.0;
  for (TermIndex k : system.spin_terms(spin)) {
    const double jt = state.outputs[k] > 0 ? system.term_weight(k) : -system.term_weight(k);
    delta += jt;
    state.outputs[k] = static_cast<Spin>(-state.outputs[k]);
  }
  state.energy += 2.0 * delta;
  spins.flip(spin);
}

double energy(const ClauseSystem& system, const SpinState& spins) {
  return clause_outputs(system, spins).energy;
}

}  // namespace hoim
