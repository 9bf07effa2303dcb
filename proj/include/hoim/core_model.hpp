// Higher-order Ising instance and the clause-output flip calculus.
//
// An instance is E(s) = -sum_k J_k * prod_{i in C_k} s_i over bipolar spins.
// Every term k is a row of a sparse 0/1 incidence matrix H; the transpose
// adjacency gives each spin its neighbourhood N(i) = {k : i in C_k}.
// Search state is carried as clause outputs T_k = prod_{i in C_k} s_i, which
// makes a spin flip a sign change on N(i) rather than a polynomial re-evaluation.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hoim {

using SpinIndex = std::uint32_t;
using TermIndex = std::uint32_t;
using Spin = std::int8_t;

/// One interaction term as given by a problem front-end (unmerged, any order).
struct Term {
  std::vector<SpinIndex> spins;
  double weight = 0.0;
};

/// Immutable sparse clause-spin incidence with per-term weights.
///
/// Terms are stored in canonical form: member spins ascending, identical
/// member sets merged by summing weights, zero-weight rows removed.
class ClauseSystem {
 public:
  ClauseSystem() = default;

  std::size_t num_spins() const { return num_spins_; }
  std::size_t num_terms() const { return weights_.size(); }
  std::size_t num_nonzeros() const { return term_members_.size(); }

  std::span<const SpinIndex> term_spins(TermIndex k) const {
    return {term_members_.data() + term_offsets_[k], term_members_.data() + term_offsets_[k + 1]};
  }
  double term_weight(TermIndex k) const { return weights_[k]; }
  std::span<const double> term_weights() const { return weights_; }

  /// N(i): terms containing spin i, ascending.
  std::span<const TermIndex> spin_terms(SpinIndex i) const {
    return {spin_members_.data() + spin_offsets_[i], spin_members_.data() + spin_offsets_[i + 1]};
  }

  /// Sum of J_k over k in N(i), i.e. the i-th column sum of diag(J) H.
  double column_weight_sum(SpinIndex i) const { return column_sums_[i]; }
  std::span<const double> column_weight_sums() const { return column_sums_; }

  /// Largest |C_k|; 0 for an empty system.
  std::size_t max_order() const { return max_order_; }

  /// True when every J_k is an integer multiple of weight_quantum().
  /// Energies and flip deltas are then sums of exactly representable
  /// dyadic values and incremental bookkeeping is exact.
  bool exact_weights() const { return exact_weights_; }
  double weight_quantum() const { return weight_quantum_; }

  std::vector<Term> terms() const;

 private:
  friend ClauseSystem build_clause_system(std::span<const Term> terms, std::size_t num_spins);

  std::size_t num_spins_ = 0;
  std::size_t max_order_ = 0;
  bool exact_weights_ = true;
  double weight_quantum_ = 1.0;
  std::vector<std::size_t> term_offsets_{0};
  std::vector<SpinIndex> term_members_;
  std::vector<double> weights_;
  std::vector<std::size_t> spin_offsets_{0};
  std::vector<TermIndex> spin_members_;
  std::vector<double> column_sums_;
};

/// Builds a canonical system. Throws std::invalid_argument on an empty term,
/// an out-of-range index, a repeated spin inside one term, or num_spins == 0.
ClauseSystem build_clause_system(std::span<const Term> terms, std::size_t num_spins);

/// Current assignment of N bipolar spins.
class SpinState {
 public:
  SpinState() = default;
  /// Throws std::invalid_argument if any entry is not +1 or -1.
  explicit SpinState(std::vector<Spin> spins);
  static SpinState all_up(std::size_t n) { return SpinState(std::vector<Spin>(n, Spin{1})); }

  std::size_t size() const { return spins_.size(); }
  Spin operator[](std::size_t i) const { return spins_[i]; }
  void flip(std::size_t i) { spins_[i] = static_cast<Spin>(-spins_[i]); }
  std::span<const Spin> values() const { return spins_; }

  friend bool operator==(const SpinState&, const SpinState&) = default;

 private:
  std::vector<Spin> spins_;
};

/// Clause outputs T_k derived from a SpinState plus the running energy.
struct ClauseState {
  std::vector<Spin> outputs;
  double energy = 0.0;

  friend bool operator==(const ClauseState&, const ClauseState&) = default;
};

/// Evaluates T and E = -sum J_k T_k from scratch.
ClauseState clause_outputs(const ClauseSystem& system, const SpinState& spins);

/// Change in energy from flipping `spin`: 2 * sum_{k in N(i)} J_k T_k.
double delta_energy(const ClauseSystem& system, const ClauseState& state, SpinIndex spin);

/// Latent-neuron input S_i = sum_{k in N(i)} J_k T_k (= delta_energy / 2).
double spin_input(const ClauseSystem& system, const ClauseState& state, SpinIndex spin);

/// Same quantity from binary clause outputs b_k = (1 + T_k) / 2:
/// 2 * (H~^T b)_i - column_weight_sum(i). Needs no multiplier per term.
double spin_input_binary(const ClauseSystem& system, std::span<const std::uint8_t> binary_outputs,
                         SpinIndex spin);

std::vector<std::uint8_t> binary_outputs(const ClauseState& state);

/// Negates spins[spin] and the outputs of N(spin); energy moves by delta_energy.
void apply_flip(const ClauseSystem& system, ClauseState& state, SpinState& spins, SpinIndex spin);

/// Direct evaluation of E(s) without clause-state bookkeeping.
double energy(const ClauseSystem& system, const SpinState& spins);

}  // namespace hoim
